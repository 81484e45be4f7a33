#pragma once

#include <array>
#include <cmath>

#include "torselab/errors.hpp"

namespace torselab {

/// Charts are at most 9-dimensional (coordinates x1..x9), so every dual
/// scalar carries a fixed block of 9 derivative lanes; lanes beyond the
/// chart dimension stay identically zero through all operations.
inline constexpr int kMaxDim = 9;

/// Forward-mode dual number: value plus one partial derivative per
/// coordinate. Arithmetic applies the product/chain rules exactly, which
/// is what makes downstream Christoffel symbols free of truncation error.
class DualScalar {
public:
    DualScalar() { deriv_.fill(0.0); }

    static DualScalar constant(double v) {
        DualScalar d;
        d.value_ = v;
        return d;
    }

    /// Seed for coordinate `axis` (0-based): value v, ∂/∂x_axis = 1.
    static DualScalar variable(double v, int axis) {
        DualScalar d;
        d.value_ = v;
        d.deriv_[static_cast<std::size_t>(axis)] = 1.0;
        return d;
    }

    double value() const { return value_; }
    double deriv(int axis) const { return deriv_[static_cast<std::size_t>(axis)]; }

    bool deriv_is_zero() const {
        for (double d : deriv_)
            if (d != 0.0) return false;
        return true;
    }

    DualScalar operator-() const {
        DualScalar r;
        r.value_ = -value_;
        for (int i = 0; i < kMaxDim; ++i) r.deriv_[i] = -deriv_[i];
        return r;
    }

    friend DualScalar operator+(const DualScalar& a, const DualScalar& b) {
        DualScalar r;
        r.value_ = a.value_ + b.value_;
        for (int i = 0; i < kMaxDim; ++i) r.deriv_[i] = a.deriv_[i] + b.deriv_[i];
        return r;
    }

    friend DualScalar operator-(const DualScalar& a, const DualScalar& b) {
        DualScalar r;
        r.value_ = a.value_ - b.value_;
        for (int i = 0; i < kMaxDim; ++i) r.deriv_[i] = a.deriv_[i] - b.deriv_[i];
        return r;
    }

    friend DualScalar operator*(const DualScalar& a, const DualScalar& b) {
        DualScalar r;
        r.value_ = a.value_ * b.value_;
        for (int i = 0; i < kMaxDim; ++i)
            r.deriv_[i] = a.deriv_[i] * b.value_ + a.value_ * b.deriv_[i];
        return r;
    }

    friend DualScalar operator/(const DualScalar& a, const DualScalar& b) {
        if (b.value_ == 0.0) throw DomainError("division by zero");
        DualScalar r;
        r.value_ = a.value_ / b.value_;
        const double inv2 = 1.0 / (b.value_ * b.value_);
        for (int i = 0; i < kMaxDim; ++i)
            r.deriv_[i] = (a.deriv_[i] * b.value_ - a.value_ * b.deriv_[i]) * inv2;
        return r;
    }

    friend DualScalar operator+(const DualScalar& a, double b) { return a + constant(b); }
    friend DualScalar operator+(double a, const DualScalar& b) { return constant(a) + b; }
    friend DualScalar operator-(const DualScalar& a, double b) { return a - constant(b); }
    friend DualScalar operator-(double a, const DualScalar& b) { return constant(a) - b; }
    friend DualScalar operator*(const DualScalar& a, double b) { return a * constant(b); }
    friend DualScalar operator*(double a, const DualScalar& b) { return constant(a) * b; }
    friend DualScalar operator/(const DualScalar& a, double b) { return a / constant(b); }
    friend DualScalar operator/(double a, const DualScalar& b) { return constant(a) / b; }

private:
    double value_ = 0.0;
    std::array<double, kMaxDim> deriv_;

    friend DualScalar chain(const DualScalar&, double, double);
};

/// Lift a scalar function through the chain rule: f(u) with f(u)=fv, f'(u)=fd.
inline DualScalar chain(const DualScalar& u, double fv, double fd) {
    DualScalar r;
    r.value_ = fv;
    for (int i = 0; i < kMaxDim; ++i) r.deriv_[i] = fd * u.deriv_[i];
    return r;
}

inline DualScalar sin(const DualScalar& u) {
    return chain(u, std::sin(u.value()), std::cos(u.value()));
}

inline DualScalar cos(const DualScalar& u) {
    return chain(u, std::cos(u.value()), -std::sin(u.value()));
}

inline DualScalar tan(const DualScalar& u) {
    const double c = std::cos(u.value());
    if (c == 0.0) throw DomainError("tan at odd multiple of pi/2");
    const double t = std::tan(u.value());
    return chain(u, t, 1.0 + t * t);
}

/// cot = cos/sin, so the pole sits where sin vanishes and the derivative
/// is -1/sin^2 (taking 1/tan instead would misbehave at multiples of pi).
inline DualScalar cot(const DualScalar& u) {
    const double s = std::sin(u.value());
    if (s == 0.0) throw DomainError("cot at multiple of pi");
    const double c = std::cos(u.value());
    return chain(u, c / s, -1.0 / (s * s));
}

inline DualScalar exp(const DualScalar& u) {
    const double e = std::exp(u.value());
    return chain(u, e, e);
}

inline DualScalar ln(const DualScalar& u) {
    if (u.value() <= 0.0) throw DomainError("ln of non-positive value");
    return chain(u, std::log(u.value()), 1.0 / u.value());
}

inline DualScalar sqrt(const DualScalar& u) {
    if (u.value() < 0.0) throw DomainError("sqrt of negative value");
    if (u.value() == 0.0) {
        if (!u.deriv_is_zero()) throw DomainError("sqrt not differentiable at 0");
        return DualScalar::constant(0.0);
    }
    const double s = std::sqrt(u.value());
    return chain(u, s, 0.5 / s);
}

/// |u|, with the usual numeric convention sign(0) = 0 for the derivative.
inline DualScalar abs(const DualScalar& u) {
    const double sg = u.value() > 0.0 ? 1.0 : (u.value() < 0.0 ? -1.0 : 0.0);
    return chain(u, std::abs(u.value()), sg);
}

inline DualScalar pow(const DualScalar& a, const DualScalar& b) {
    if (b.deriv_is_zero()) {
        // Constant exponent: power rule. Handles negative bases with
        // integer exponents the way std::pow does.
        const double v = std::pow(a.value(), b.value());
        if (!std::isfinite(v)) throw DomainError("pow outside real domain");
        if (a.deriv_is_zero()) return DualScalar::constant(v);
        const double fd = b.value() * std::pow(a.value(), b.value() - 1.0);
        if (!std::isfinite(fd)) throw DomainError("pow not differentiable here");
        return chain(a, v, fd);
    }
    // Varying exponent: a^b = exp(b ln a), defined for a > 0.
    if (a.value() <= 0.0) throw DomainError("pow with varying exponent needs positive base");
    return exp(b * ln(a));
}

}  // namespace torselab
