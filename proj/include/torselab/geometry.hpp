#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "torselab/fields.hpp"
#include "torselab/tolerances.hpp"

namespace torselab {

/// Small dense grid of dual scalars (metric or covector components with
/// their first derivatives).
struct DualMatrix {
    int n = 0;
    std::vector<DualScalar> m;

    explicit DualMatrix(int n_) : n(n_), m(static_cast<std::size_t>(n_ * n_)) {}
    DualScalar& at(int i, int j) { return m[static_cast<std::size_t>(i * n + j)]; }
    const DualScalar& at(int i, int j) const { return m[static_cast<std::size_t>(i * n + j)]; }
};

/// Metric components plus all first partials at a point.
struct MetricJet {
    Eigen::MatrixXd g;                   // g_ij
    std::vector<Eigen::MatrixXd> dg;     // dg[k](i, j) = ∂_k g_ij
};

/// Anything that can serve as a Riemannian metric: evaluates its components
/// (with exact first derivatives) at a chart point. Implemented by the
/// expression-backed MetricField and by the deformed metrics.
class MetricSource {
public:
    virtual ~MetricSource() = default;
    virtual int dim() const = 0;
    virtual DualMatrix dual_components(std::span<const double> p) const = 0;

    MetricJet jet(std::span<const double> p) const;
    Eigen::MatrixXd value(std::span<const double> p) const;
};

/// Symmetric matrix of expressions g_ij; the (i,j) and (j,i) slots share
/// one expression, so the evaluated matrix is symmetric bit-for-bit.
class MetricField final : public MetricSource {
public:
    MetricField() = default;

    /// `upper` holds the entries with i <= j, row-major:
    /// (0,0), (0,1), ..., (0,n-1), (1,1), ...
    MetricField(int n, std::vector<ScalarField> upper);

    int dim() const override { return n_; }
    DualMatrix dual_components(std::span<const double> p) const override;

    const ScalarField& component(int i, int j) const;

private:
    int n_ = 0;
    std::vector<ScalarField> upper_;
};

/// Covariant components of a one-form, dual-evaluable.
class CovectorSource {
public:
    virtual ~CovectorSource() = default;
    virtual int dim() const = 0;
    virtual std::vector<DualScalar> dual_components(std::span<const double> p) const = 0;

    Eigen::VectorXd value(std::span<const double> p) const;
};

/// One-form given directly by component expressions.
class OneForm final : public CovectorSource {
public:
    OneForm() = default;
    explicit OneForm(std::vector<ScalarField> components);

    int dim() const override { return static_cast<int>(comp_.size()); }
    std::vector<DualScalar> dual_components(std::span<const double> p) const override;

private:
    std::vector<ScalarField> comp_;
};

/// ω = flat(V): ω_j(x) = g_jk(x) V^k(x), with derivatives obtained by dual
/// composition so it can feed the exterior derivative.
class FlatOneForm final : public CovectorSource {
public:
    FlatOneForm(const MetricSource& g, const VectorField& v) : g_(&g), v_(&v) {}

    int dim() const override { return g_->dim(); }
    std::vector<DualScalar> dual_components(std::span<const double> p) const override;

private:
    const MetricSource* g_;
    const VectorField* v_;
};

/// Levi-Civita connection coefficients at a point, with the metric and its
/// inverse kept alongside for downstream index gymnastics.
struct ConnectionAt {
    Eigen::VectorXd point;
    int n = 0;
    std::vector<double> gamma;  // Γ^k_ij at [k*n*n + i*n + j]
    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inv;

    double gamma_at(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>(k * n * n + i * n + j)];
    }
    /// Γ^·_ij as a vector over the upper index.
    Eigen::VectorXd gamma_vec(int i, int j) const;
};

/// Koszul formula in coordinates: Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij).
/// Throws SingularMetricError when an eigenvalue of g(p) falls below
/// tol.singular.
ConnectionAt christoffel(const MetricSource& g, std::span<const double> p,
                         const Tolerances& tol = {});

/// J(k, i) = (∇_{∂_i} V)^k = ∂_i V^k + Γ^k_ij V^j.
Eigen::MatrixXd covariant_derivative_matrix(const ConnectionAt& conn, const VectorJet& vj);
Eigen::MatrixXd covariant_derivative_matrix(const MetricSource& g, const VectorField& v,
                                            std::span<const double> p,
                                            const Tolerances& tol = {});

/// (∇_X V)(p) for vector fields X, V.
Eigen::VectorXd covariant_derivative(const MetricSource& g, const VectorField& v,
                                     const VectorField& x, std::span<const double> p,
                                     const Tolerances& tol = {});

/// Musical isomorphisms at a point.
Eigen::VectorXd flat(const MetricSource& g, const VectorField& v, std::span<const double> p);
Eigen::VectorXd sharp(const MetricSource& g, std::span<const double> covector,
                      std::span<const double> p, const Tolerances& tol = {});
Eigen::VectorXd sharp(const MetricSource& g, const CovectorSource& omega,
                      std::span<const double> p, const Tolerances& tol = {});

/// (L_V g)(∂_i, ∂_j) = g(∇_i V, ∂_j) + g(∇_j V, ∂_i).
Eigen::MatrixXd lie_derivative_metric(const MetricSource& g, const VectorField& v,
                                      std::span<const double> p, const Tolerances& tol = {});

/// dω(∂_i, ∂_j) = ½(∂_i ω_j − ∂_j ω_i)  (the ½ convention, matching
/// 2dω(X, Z) = (∇_X ω)Z − (∇_Z ω)X).
Eigen::MatrixXd exterior_derivative(const CovectorSource& omega, std::span<const double> p);

/// Same 2-form computed through the connection: 2dω(∂_i,∂_j) = g(∇_i V, ∂_j) − g(∇_j V, ∂_i)
/// for ω = flat(V).
Eigen::MatrixXd d_omega_via_connection(const MetricSource& g, const VectorField& v,
                                       std::span<const double> p, const Tolerances& tol = {});

/// Components of `vec` in the (pointwise) basis given by `frame`.
Eigen::VectorXd frame_components(const std::vector<VectorField>& frame,
                                 const Eigen::VectorXd& vec, std::span<const double> p);

/// ‖v‖_g at a point.
double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v);

struct ConnectionResiduals {
    double torsion = 0.0;        // max |Γ^k_ij − Γ^k_ji|
    double compatibility = 0.0;  // max |∂_k g_ij − Γ^l_ki g_lj − Γ^l_kj g_il|
};

/// Residuals of the two defining properties of the Levi-Civita connection,
/// recomputed from scratch at p.
ConnectionResiduals connection_invariant_residuals(const MetricSource& g,
                                                   std::span<const double> p,
                                                   const Tolerances& tol = {});

}  // namespace torselab
