#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torselab/geometry.hpp"

namespace torselab {

/// Pointwise least-squares decomposition ∇_{∂_i} V = f ∂_i + θ(∂_i) V.
/// `residual` is ‖∇V − fI − V⊗θ‖_F / (‖∇V‖_F + 1); exact torse-forming
/// fields fit to machine precision.
struct TorseFit {
    Eigen::VectorXd point;
    double f = 0.0;
    Eigen::VectorXd theta;  // θ(∂_i)
    double residual = 0.0;
};

/// ρ = ln‖V‖_g and its differential, from one dual evaluation of ½ ln g(V,V).
struct RhoAt {
    double rho = 0.0;
    Eigen::VectorXd drho;
};

enum class FieldClass {
    parallel,
    concurrent,
    concircular,
    recurrent,
    torqued,
    proper_torse_forming,
    not_torse_forming,
};

std::string to_string(FieldClass c);
std::optional<FieldClass> parse_field_class(std::string_view s);

/// Pooled statistics over the per-point fits. `usable` counts points where
/// the fit preconditions held.
struct FitStats {
    double max_residual = 0.0;
    double max_abs_f = 0.0;
    double min_abs_f = 0.0;
    double max_abs_f_minus_1 = 0.0;
    double max_theta_norm = 0.0;
    double min_theta_norm = 0.0;
    double max_abs_theta_v = 0.0;
    double max_geodesic_norm = 0.0;
    int usable = 0;
    int skipped = 0;
};

struct ClassVerdict {
    FieldClass klass = FieldClass::not_torse_forming;
    bool geodesic = false;
    FitStats evidence;
    std::vector<std::string> warnings;
};

/// One sample point's worth of classification evidence.
struct PointFit {
    TorseFit fit;
    double theta_dot_v = 0.0;    // θ(V)
    double geodesic_norm = 0.0;  // ‖∇_V V‖_g
};

TorseFit fit_torse(const MetricSource& g, const VectorField& v, std::span<const double> p,
                   const Tolerances& tol = {});

PointFit point_fit(const MetricSource& g, const VectorField& v, std::span<const double> p,
                   const Tolerances& tol = {});

RhoAt rho_at(const MetricSource& g, const VectorField& v, std::span<const double> p);

/// ‖θ_fit − (dρ − f e^{−2ρ} ω)‖ at p; the generating-form identity makes
/// this vanish for torse-forming fields.
double check_prop_1_1(const MetricSource& g, const VectorField& v, std::span<const double> p,
                      const TorseFit* precomputed = nullptr, const Tolerances& tol = {});

/// Pure decision procedure over pooled fits; tested independently of the
/// sampling path. Order: not-torse-forming, parallel, concurrent,
/// concircular, recurrent, torqued, proper.
ClassVerdict decide_class(std::span<const PointFit> fits, int skipped, const Tolerances& tol);

ClassVerdict classify_at_points(const MetricSource& g, const VectorField& v,
                                std::span<const Eigen::VectorXd> points,
                                const Tolerances& tol = {});

ClassVerdict classify(const MetricSource& g, const VectorField& v, const Chart& chart,
                      int samples, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace torselab
