#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "torselab/expr.hpp"

namespace torselab {

/// A coordinate chart: dimension, coordinate names and the open box the
/// verification samples from. Boxes are chosen to exclude singular loci
/// (e.g. the cot poles on the sphere charts).
struct Chart {
    int dim = 0;
    std::vector<std::string> names;                 // size dim
    std::vector<std::pair<double, double>> box;     // per-coordinate (lo, hi)

    void validate() const;
};

/// splitmix64; hand-rolled so that sampled points are bit-identical across
/// platforms and standard libraries (report determinism depends on it).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

std::vector<Eigen::VectorXd> sample_points(const Chart& chart, int count, std::uint64_t seed);

/// An expression bound to a chart dimension and a parameter set; the unit
/// of evaluation everywhere downstream.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(Expr expr, ParamMapPtr params, int dim);

    double value(std::span<const double> p) const { return expr_.eval(p, *params_); }
    DualScalar dual(std::span<const double> p) const { return expr_.eval_dual(p, *params_); }

    const Expr& expr() const { return expr_; }
    int dim() const { return dim_; }
    const ParamMapPtr& params() const { return params_; }

private:
    Expr expr_;
    ParamMapPtr params_;
    int dim_ = 0;
};

/// First-order data of a vector field at a point.
struct VectorJet {
    Eigen::VectorXd v;   // components v^k
    Eigen::MatrixXd dv;  // dv(k, i) = ∂_i v^k
};

/// Contravariant components in the coordinate basis.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<ScalarField> components);

    int dim() const { return static_cast<int>(comp_.size()); }
    const ScalarField& component(int k) const { return comp_[static_cast<std::size_t>(k)]; }

    Eigen::VectorXd value(std::span<const double> p) const;
    VectorJet jet(std::span<const double> p) const;

private:
    std::vector<ScalarField> comp_;
};

}  // namespace torselab
