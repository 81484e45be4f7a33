#pragma once

namespace torselab {

/// Central numeric thresholds. Defaults follow the verification design:
/// exact identities at 1e-10, PDE-style residuals at 1e-8, torse fits at
/// 1e-7, and classification zero-tests two orders above the fit residual.
struct Tolerances {
    double identity = 1e-10;        ///< sharp∘flat, antisymmetry, torsion
    double pde_residual = 1e-8;     ///< metric-compatibility residual
    double fit_residual = 1e-7;     ///< accept a torse-forming fit below this
    double class_zero = 1e-6;       ///< |f|, |f-1|, ‖θ‖, |θ(V)| zero-tests
    double prop11 = 1e-7;           ///< generating-form identity residual
    double hypothesis = 1e-8;       ///< theorem gradient conditions
    double connection_law = 1e-7;   ///< closed-form vs direct Koszul
    double singular = 1e-12;        ///< metric eigenvalue floor
    double zero_vector = 1e-10;     ///< treat V(p) as vanishing below this
};

}  // namespace torselab
