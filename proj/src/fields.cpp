#include "torselab/fields.hpp"

#include <cmath>

namespace torselab {

void Chart::validate() const {
    if (dim < 1 || dim > kMaxDim)
        throw SchemaError("chart dimension must be in [1, 9], got " + std::to_string(dim));
    if (static_cast<int>(box.size()) != dim)
        throw SchemaError("chart box must have one interval per coordinate");
    if (!names.empty() && static_cast<int>(names.size()) != dim)
        throw SchemaError("chart names must match the dimension");
    for (int i = 0; i < dim; ++i) {
        const auto& [lo, hi] = box[static_cast<std::size_t>(i)];
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw SchemaError("chart box interval " + std::to_string(i + 1) +
                              " must be finite with lo < hi");
    }
}

std::vector<Eigen::VectorXd> sample_points(const Chart& chart, int count, std::uint64_t seed) {
    chart.validate();
    Rng rng(seed);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        Eigen::VectorXd p(chart.dim);
        for (int i = 0; i < chart.dim; ++i) {
            const auto& [lo, hi] = chart.box[static_cast<std::size_t>(i)];
            p(i) = rng.uniform(lo, hi);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

ScalarField::ScalarField(Expr expr, ParamMapPtr params, int dim)
    : expr_(std::move(expr)), params_(std::move(params)), dim_(dim) {
    if (!params_) params_ = std::make_shared<const ParamMap>();
    if (expr_.max_var_index() > dim_)
        throw DimensionMismatchError("expression '" + expr_.to_string() + "' references x" +
                                     std::to_string(expr_.max_var_index()) +
                                     " but chart dimension is " + std::to_string(dim_));
    for (const auto& name : expr_.params_used())
        if (!params_->count(name)) throw UnboundParameterError(name);
}

VectorField::VectorField(std::vector<ScalarField> components) : comp_(std::move(components)) {
    for (const auto& c : comp_)
        if (c.dim() != dim())
            throw DimensionMismatchError("vector field components disagree with dimension");
}

Eigen::VectorXd VectorField::value(std::span<const double> p) const {
    Eigen::VectorXd v(dim());
    for (int k = 0; k < dim(); ++k) v(k) = comp_[static_cast<std::size_t>(k)].value(p);
    return v;
}

VectorJet VectorField::jet(std::span<const double> p) const {
    const int n = dim();
    VectorJet j{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    for (int k = 0; k < n; ++k) {
        const DualScalar d = comp_[static_cast<std::size_t>(k)].dual(p);
        j.v(k) = d.value();
        for (int i = 0; i < n; ++i) j.dv(k, i) = d.deriv(i);
    }
    return j;
}

}  // namespace torselab
