#include "torselab/geometry.hpp"

#include <cmath>

namespace torselab {

MetricJet MetricSource::jet(std::span<const double> p) const {
    const int n = dim();
    const DualMatrix d = dual_components(p);
    MetricJet j;
    j.g = Eigen::MatrixXd(n, n);
    j.dg.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            j.g(i, jj) = d.at(i, jj).value();
            for (int k = 0; k < n; ++k) j.dg[static_cast<std::size_t>(k)](i, jj) = d.at(i, jj).deriv(k);
        }
    return j;
}

Eigen::MatrixXd MetricSource::value(std::span<const double> p) const {
    const int n = dim();
    const DualMatrix d = dual_components(p);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = d.at(i, j).value();
    return g;
}

MetricField::MetricField(int n, std::vector<ScalarField> upper) : n_(n), upper_(std::move(upper)) {
    const std::size_t want = static_cast<std::size_t>(n * (n + 1) / 2);
    if (upper_.size() != want)
        throw DimensionMismatchError("metric upper triangle must have n(n+1)/2 entries");
}

namespace {
inline std::size_t upper_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    // row-major upper triangle offset
    return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i));
}
}  // namespace

const ScalarField& MetricField::component(int i, int j) const {
    return upper_[upper_index(n_, i, j)];
}

DualMatrix MetricField::dual_components(std::span<const double> p) const {
    DualMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            const DualScalar v = component(i, j).dual(p);
            out.at(i, j) = v;
            out.at(j, i) = v;
        }
    return out;
}

Eigen::VectorXd CovectorSource::value(std::span<const double> p) const {
    const auto d = dual_components(p);
    Eigen::VectorXd w(dim());
    for (int i = 0; i < dim(); ++i) w(i) = d[static_cast<std::size_t>(i)].value();
    return w;
}

OneForm::OneForm(std::vector<ScalarField> components) : comp_(std::move(components)) {
    for (const auto& c : comp_)
        if (c.dim() != dim())
            throw DimensionMismatchError("one-form components disagree with dimension");
}

std::vector<DualScalar> OneForm::dual_components(std::span<const double> p) const {
    std::vector<DualScalar> out;
    out.reserve(comp_.size());
    for (const auto& c : comp_) out.push_back(c.dual(p));
    return out;
}

std::vector<DualScalar> FlatOneForm::dual_components(std::span<const double> p) const {
    const int n = dim();
    const DualMatrix g = g_->dual_components(p);
    std::vector<DualScalar> vdual;
    vdual.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) vdual.push_back(v_->component(k).dual(p));
    std::vector<DualScalar> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        DualScalar acc = DualScalar::constant(0.0);
        for (int k = 0; k < n; ++k) acc = acc + g.at(j, k) * vdual[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

Eigen::VectorXd ConnectionAt::gamma_vec(int i, int j) const {
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out(k) = gamma_at(k, i, j);
    return out;
}

ConnectionAt christoffel(const MetricSource& g, std::span<const double> p, const Tolerances& tol) {
    const int n = g.dim();
    const MetricJet jet = g.jet(p);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jet.g);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= tol.singular)
        throw SingularMetricError("metric not positive definite at sample point");

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jet.g);
    Eigen::MatrixXd ginv = lu.inverse();

    ConnectionAt conn;
    conn.point = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    conn.n = n;
    conn.g = jet.g;
    conn.g_inv = std::move(ginv);
    conn.gamma.assign(static_cast<std::size_t>(n * n * n), 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l) {
                    const double bracket = jet.dg[static_cast<std::size_t>(i)](j, l) +
                                           jet.dg[static_cast<std::size_t>(j)](i, l) -
                                           jet.dg[static_cast<std::size_t>(l)](i, j);
                    acc += conn.g_inv(k, l) * bracket;
                }
                conn.gamma[static_cast<std::size_t>(k * n * n + i * n + j)] = 0.5 * acc;
            }
    return conn;
}

Eigen::MatrixXd covariant_derivative_matrix(const ConnectionAt& conn, const VectorJet& vj) {
    const int n = conn.n;
    Eigen::MatrixXd J = vj.dv;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += conn.gamma_at(k, i, j) * vj.v(j);
            J(k, i) += acc;
        }
    return J;
}

Eigen::MatrixXd covariant_derivative_matrix(const MetricSource& g, const VectorField& v,
                                            std::span<const double> p, const Tolerances& tol) {
    return covariant_derivative_matrix(christoffel(g, p, tol), v.jet(p));
}

Eigen::VectorXd covariant_derivative(const MetricSource& g, const VectorField& v,
                                     const VectorField& x, std::span<const double> p,
                                     const Tolerances& tol) {
    return covariant_derivative_matrix(g, v, p, tol) * x.value(p);
}

Eigen::VectorXd flat(const MetricSource& g, const VectorField& v, std::span<const double> p) {
    return g.value(p) * v.value(p);
}

Eigen::VectorXd sharp(const MetricSource& g, std::span<const double> covector,
                      std::span<const double> p, const Tolerances& tol) {
    const Eigen::MatrixXd G = g.value(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= tol.singular)
        throw SingularMetricError("metric not positive definite at sample point");
    const Eigen::Map<const Eigen::VectorXd> w(covector.data(),
                                              static_cast<Eigen::Index>(covector.size()));
    return Eigen::PartialPivLU<Eigen::MatrixXd>(G).solve(w);
}

Eigen::VectorXd sharp(const MetricSource& g, const CovectorSource& omega,
                      std::span<const double> p, const Tolerances& tol) {
    const Eigen::VectorXd w = omega.value(p);
    return sharp(g, std::span<const double>(w.data(), static_cast<std::size_t>(w.size())), p, tol);
}

Eigen::MatrixXd lie_derivative_metric(const MetricSource& g, const VectorField& v,
                                      std::span<const double> p, const Tolerances& tol) {
    const ConnectionAt conn = christoffel(g, p, tol);
    const Eigen::MatrixXd J = covariant_derivative_matrix(conn, v.jet(p));
    const Eigen::MatrixXd M = conn.g * J;  // M(i, j) = g(∂_i, ∇_j V)
    return M + M.transpose();
}

Eigen::MatrixXd exterior_derivative(const CovectorSource& omega, std::span<const double> p) {
    const int n = omega.dim();
    const auto d = omega.dual_components(p);
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = 0.5 * (d[static_cast<std::size_t>(j)].deriv(i) -
                               d[static_cast<std::size_t>(i)].deriv(j));
    return out;
}

Eigen::MatrixXd d_omega_via_connection(const MetricSource& g, const VectorField& v,
                                       std::span<const double> p, const Tolerances& tol) {
    const ConnectionAt conn = christoffel(g, p, tol);
    const Eigen::MatrixXd J = covariant_derivative_matrix(conn, v.jet(p));
    const Eigen::MatrixXd M = conn.g * J;  // M(i, j) = g(∇_j V, ∂_i)
    return 0.5 * (M.transpose() - M);
}

Eigen::VectorXd frame_components(const std::vector<VectorField>& frame, const Eigen::VectorXd& vec,
                                 std::span<const double> p) {
    const int n = static_cast<int>(frame.size());
    Eigen::MatrixXd E(n, n);
    for (int a = 0; a < n; ++a) E.col(a) = frame[static_cast<std::size_t>(a)].value(p);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(E).solve(vec);
}

double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) {
    return std::sqrt(v.dot(g * v));
}

ConnectionResiduals connection_invariant_residuals(const MetricSource& g,
                                                   std::span<const double> p,
                                                   const Tolerances& tol) {
    const int n = g.dim();
    const MetricJet jet = g.jet(p);
    const ConnectionAt conn = christoffel(g, p, tol);

    ConnectionResiduals r;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                r.torsion = std::max(r.torsion,
                                     std::abs(conn.gamma_at(k, i, j) - conn.gamma_at(k, j, i)));
                // ∇_k g_ij = ∂_k g_ij − Γ^l_ki g_lj − Γ^l_kj g_il
                double c = jet.dg[static_cast<std::size_t>(k)](i, j);
                for (int l = 0; l < n; ++l)
                    c -= conn.gamma_at(l, k, i) * jet.g(l, j) +
                         conn.gamma_at(l, k, j) * jet.g(i, l);
                r.compatibility = std::max(r.compatibility, std::abs(c));
            }
    return r;
}

}  // namespace torselab
