#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torselab/torse.hpp"

namespace torselab {

enum class DeformKind { conformal, d_isometric, omega_conformal };

std::string to_string(DeformKind k);
std::optional<DeformKind> parse_deform_kind(std::string_view s);

/// A metric deformation built from a source metric g and the torse-forming
/// candidate V (whose flat ω enters the ω-dependent kinds):
///   conformal:        g̃ = e^{2σ} g
///   d-isometric:      ḡ = g + ω⊗ω
///   omega-conformal:  ĝ = e^{2σ}(g + ω⊗ω)
struct Deformation {
    DeformKind kind = DeformKind::conformal;
    MetricField source;
    VectorField field;
    std::optional<ScalarField> sigma;  // absent for d-isometric
};

/// The deformed metric as a MetricSource; components and their derivatives
/// come out of dual-number composition with the base fields.
class DeformedMetric final : public MetricSource {
public:
    explicit DeformedMetric(Deformation d);

    int dim() const override { return def_.source.dim(); }
    DualMatrix dual_components(std::span<const double> p) const override;

    const Deformation& deformation() const { return def_; }

private:
    Deformation def_;
};

Eigen::MatrixXd deform_metric(const Deformation& d, std::span<const double> p);

/// Closed-form prediction of the deformed connection on a coordinate basis
/// pair: (∇̃_{∂_i} ∂_j)^k per the conformal transformation law for the
/// conformal kind and per the deformation relations for the other two
/// kinds. All auxiliary quantities (f, ρ, ω, gradients) live under the
/// source metric; `fit` supplies f for the ω-dependent kinds.
Eigen::VectorXd predicted_connection(const Deformation& d, int i, int j,
                                     std::span<const double> p, const TorseFit* fit,
                                     const Tolerances& tol = {});

/// General-fields form: predicts (∇̃_X Y)(p).
Eigen::VectorXd predicted_connection(const Deformation& d, const VectorField& x,
                                     const VectorField& y, std::span<const double> p,
                                     const TorseFit* fit, const Tolerances& tol = {});

/// max over sample points and basis pairs of the componentwise gap between
/// the closed-form prediction and the direct Koszul computation on the
/// deformed metric.
double connection_law_residual(const Deformation& d, std::span<const Eigen::VectorXd> points,
                               const Tolerances& tol = {});

struct PredictedClass {
    FieldClass klass = FieldClass::not_torse_forming;
    bool any_torse_forming = false;  // theorem only promises "torse-forming"
};

/// Taxonomy-aware comparison: a strictly more special verdict satisfies a
/// weaker prediction (θ ≡ 0 defines concircular, so concurrent and parallel
/// qualify; any torse-forming class satisfies the generic prediction).
bool class_satisfies(FieldClass observed, const PredictedClass& predicted);

struct TheoremCheck {
    std::string theorem_id;  // "2.1" | "2.4" | "2.4-concircular" | "2.7" | "2.7-i" | "2.7-ii" | "parallel-corollary"
    DeformKind kind = DeformKind::conformal;
    double hypothesis_residual = 0.0;
    bool hypothesis_met = false;
    PredictedClass predicted;
    ClassVerdict observed;
    bool class_match = false;
    double connection_law_residual = 0.0;
    /// Literal printed form of the deformed ∇V against the direct
    /// computation, where the transcription looked doubtful; only the
    /// omega-conformal kind carries one.
    std::optional<double> printed_form_deviation;
    std::vector<std::string> warnings;
};

/// Evaluates the theorem for `d` on the given sample points: hypothesis
/// residual, predicted class (with the special-case refinements), observed
/// class by re-classifying under the deformed metric, and the
/// connection-law endpoint check.
TheoremCheck check_theorem(const Deformation& d, std::span<const Eigen::VectorXd> points,
                           const Tolerances& tol = {});

}  // namespace torselab
