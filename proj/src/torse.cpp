#include "torselab/torse.hpp"

#include <cmath>
#include <limits>

namespace torselab {

std::string to_string(FieldClass c) {
    switch (c) {
        case FieldClass::parallel: return "parallel";
        case FieldClass::concurrent: return "concurrent";
        case FieldClass::concircular: return "concircular";
        case FieldClass::recurrent: return "recurrent";
        case FieldClass::torqued: return "torqued";
        case FieldClass::proper_torse_forming: return "proper-torse-forming";
        case FieldClass::not_torse_forming: return "not-torse-forming";
    }
    return "?";
}

std::optional<FieldClass> parse_field_class(std::string_view s) {
    for (FieldClass c : {FieldClass::parallel, FieldClass::concurrent, FieldClass::concircular,
                         FieldClass::recurrent, FieldClass::torqued,
                         FieldClass::proper_torse_forming, FieldClass::not_torse_forming})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

TorseFit fit_torse(const MetricSource& g, const VectorField& v, std::span<const double> p,
                   const Tolerances& tol) {
    const int n = g.dim();
    const ConnectionAt conn = christoffel(g, p, tol);
    const VectorJet vj = v.jet(p);
    if (vj.v.norm() <= tol.zero_vector)
        throw ZeroVectorError("vector field vanishes at sample point");
    const Eigen::MatrixXd J = covariant_derivative_matrix(conn, vj);

    // n² equations (∇_i V)^k = f δ_i^k + θ_i V^k in the n+1 unknowns
    // (f, θ_1, ..., θ_n); full column rank whenever V(p) ≠ 0 and n ≥ 2.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * n, n + 1);
    Eigen::VectorXd b(n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const int row = i * n + k;
            A(row, 0) = (i == k) ? 1.0 : 0.0;
            A(row, 1 + i) = vj.v(k);
            b(row) = J(k, i);
        }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);

    TorseFit fit;
    fit.point = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    fit.f = x(0);
    fit.theta = x.tail(n);
    const Eigen::MatrixXd R =
        J - fit.f * Eigen::MatrixXd::Identity(n, n) - vj.v * fit.theta.transpose();
    fit.residual = R.norm() / (J.norm() + 1.0);
    return fit;
}

PointFit point_fit(const MetricSource& g, const VectorField& v, std::span<const double> p,
                   const Tolerances& tol) {
    PointFit pf;
    pf.fit = fit_torse(g, v, p, tol);
    const ConnectionAt conn = christoffel(g, p, tol);
    const VectorJet vj = v.jet(p);
    const Eigen::MatrixXd J = covariant_derivative_matrix(conn, vj);
    pf.theta_dot_v = pf.fit.theta.dot(vj.v);
    pf.geodesic_norm = g_norm(conn.g, J * vj.v);
    return pf;
}

RhoAt rho_at(const MetricSource& g, const VectorField& v, std::span<const double> p) {
    const int n = g.dim();
    const DualMatrix gd = g.dual_components(p);
    std::vector<DualScalar> vd;
    vd.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) vd.push_back(v.component(k).dual(p));

    DualScalar gvv = DualScalar::constant(0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gvv = gvv + gd.at(i, j) * vd[static_cast<std::size_t>(i)] * vd[static_cast<std::size_t>(j)];
    const DualScalar rho = 0.5 * ln(gvv);

    RhoAt out;
    out.rho = rho.value();
    out.drho = Eigen::VectorXd(n);
    for (int i = 0; i < n; ++i) out.drho(i) = rho.deriv(i);
    return out;
}

double check_prop_1_1(const MetricSource& g, const VectorField& v, std::span<const double> p,
                      const TorseFit* precomputed, const Tolerances& tol) {
    TorseFit local;
    if (!precomputed) {
        local = fit_torse(g, v, p, tol);
        precomputed = &local;
    }
    const RhoAt rho = rho_at(g, v, p);
    const Eigen::VectorXd omega = flat(g, v, p);
    const double e2rho = std::exp(2.0 * rho.rho);
    const Eigen::VectorXd rhs = rho.drho - precomputed->f / e2rho * omega;
    return (precomputed->theta - rhs).norm();
}

ClassVerdict decide_class(std::span<const PointFit> fits, int skipped, const Tolerances& tol) {
    if (fits.size() < 8)
        throw InsufficientSamplesError("classification needs at least 8 usable sample points, got " +
                                       std::to_string(fits.size()));

    FitStats s;
    s.usable = static_cast<int>(fits.size());
    s.skipped = skipped;
    s.min_abs_f = std::numeric_limits<double>::infinity();
    s.min_theta_norm = std::numeric_limits<double>::infinity();
    for (const PointFit& pf : fits) {
        const double af = std::abs(pf.fit.f);
        const double tn = pf.fit.theta.norm();
        s.max_residual = std::max(s.max_residual, pf.fit.residual);
        s.max_abs_f = std::max(s.max_abs_f, af);
        s.min_abs_f = std::min(s.min_abs_f, af);
        s.max_abs_f_minus_1 = std::max(s.max_abs_f_minus_1, std::abs(pf.fit.f - 1.0));
        s.max_theta_norm = std::max(s.max_theta_norm, tn);
        s.min_theta_norm = std::min(s.min_theta_norm, tn);
        s.max_abs_theta_v = std::max(s.max_abs_theta_v, std::abs(pf.theta_dot_v));
        s.max_geodesic_norm = std::max(s.max_geodesic_norm, pf.geodesic_norm);
    }

    ClassVerdict verdict;
    verdict.evidence = s;
    verdict.geodesic = s.max_geodesic_norm < tol.class_zero;

    const double z = tol.class_zero;
    const bool theta_zero = s.max_theta_norm < z;
    const bool f_zero = s.max_abs_f < z;
    if (s.max_residual > tol.fit_residual) {
        verdict.klass = FieldClass::not_torse_forming;
    } else if (theta_zero && f_zero) {
        verdict.klass = FieldClass::parallel;
    } else if (theta_zero && s.max_abs_f_minus_1 < z) {
        verdict.klass = FieldClass::concurrent;
    } else if (theta_zero) {
        verdict.klass = FieldClass::concircular;
    } else if (f_zero) {
        verdict.klass = FieldClass::recurrent;
    } else if (s.max_abs_theta_v < z) {
        verdict.klass = FieldClass::torqued;
    } else if (s.min_abs_f > z && s.min_theta_norm > z) {
        verdict.klass = FieldClass::proper_torse_forming;
    } else {
        // Torse-forming, but f or θ crosses zero at isolated samples; the
        // taxonomy has no generic bucket, so report proper and say why.
        verdict.klass = FieldClass::proper_torse_forming;
        verdict.warnings.push_back(
            "f or theta vanishes at some sample points; proper-torse-forming verdict "
            "is based on the remaining samples");
    }
    return verdict;
}

ClassVerdict classify_at_points(const MetricSource& g, const VectorField& v,
                                std::span<const Eigen::VectorXd> points, const Tolerances& tol) {
    std::vector<PointFit> fits;
    std::vector<std::string> warnings;
    int skipped = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Eigen::VectorXd& p = points[i];
        try {
            fits.push_back(point_fit(
                g, v, std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), tol));
        } catch (const ZeroVectorError&) {
            ++skipped;
            warnings.push_back("point " + std::to_string(i) + " skipped: V vanishes");
        } catch (const DomainError& e) {
            ++skipped;
            warnings.push_back("point " + std::to_string(i) + " skipped: " + e.what());
        } catch (const SingularMetricError& e) {
            ++skipped;
            warnings.push_back("point " + std::to_string(i) + " skipped: " + e.what());
        }
    }
    ClassVerdict verdict = decide_class(fits, skipped, tol);
    verdict.warnings.insert(verdict.warnings.begin(), warnings.begin(), warnings.end());
    return verdict;
}

ClassVerdict classify(const MetricSource& g, const VectorField& v, const Chart& chart, int samples,
                      std::uint64_t seed, const Tolerances& tol) {
    const auto pts = sample_points(chart, samples, seed);
    return classify_at_points(g, v, pts, tol);
}

}  // namespace torselab
