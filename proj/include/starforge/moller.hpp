#pragma once

#include "starforge/operators.hpp"

namespace starforge {

/// Everything the interacting-picture maps need.
struct MollerConfig {
    FreeTheory theory;
    Interaction inter;
    LambdaMode mode = LambdaMode::formal_mode();
    SeriesBounds bounds;
    int jobs = 1;
};

using FieldMap = std::vector<PolyFunctional>;  // one functional per point

FieldMap identity_field_map(const FreeTheory& th, SeriesBounds b);
/// The inverse classical Moller map: phi + lambda Delta^R V^{(1)}(phi).
FieldMap classical_moller_inverse_map(const MollerConfig& cfg);
/// The classical Moller map itself, from its fixed-point equation
/// phi -> phi - lambda Delta^R V^{(1)}(r(phi)).
FieldMap classical_moller_map(const MollerConfig& cfg);
/// Pullback of a functional along a field map.
PolyFunctional pullback(const PolyFunctional& F, const FieldMap& map);
FieldMap compose_maps(const FieldMap& outer, const FieldMap& inner);

/// Quantum Moller operator R^{-1} as the one-argument graph sum over
/// stars at the argument, coefficients (-i hbar)^{e-v} lambda^v / |Aut|.
PolyFunctional quantum_moller_inverse(const MollerConfig& cfg, const PolyFunctional& F);
/// R itself, summed over the acyclic family with the argument a
/// source, coefficients (-i hbar)^{e-v} (-lambda)^v / |Aut|.
PolyFunctional quantum_moller(const MollerConfig& cfg, const PolyFunctional& F);

/// R^{-1} straight from its defining formula
///   R^{-1}(G) = exp(-i lambda V / hbar) (exp(i lambda V / hbar) *_T G),
/// computed in a Laurent window and restricted back to power-series
/// bounds after verifying that all negative hbar powers cancel.
struct BogoliubovResult {
    PolyFunctional value;
    bool negative_free = true;
    std::string diagnostic;  // offending monomials, if any
};
BogoliubovResult smatrix_bogoliubov(const MollerConfig& cfg, const PolyFunctional& F);

/// The quantum part of R^{-1}: Upsilon = R^{-1} after pulling back
/// along the classical map, so R^{-1} = Upsilon o r^{-1}-pullback.
PolyFunctional upsilon(const MollerConfig& cfg, const PolyFunctional& F);

/// Hadamard-ordered Moller operator R_H (mixed-edge family, argument
/// a source) and its quantum part Omega with interacting edges;
/// R_H = r o Omega.
PolyFunctional moller_hadamard(const MollerConfig& cfg, const PolyFunctional& F);
PolyFunctional omega(const MollerConfig& cfg, const PolyFunctional& F);

/// Classical map as graph sums: corollas give the inverse map, trees
/// the map itself, applied to a functional by pullback-style sums.
PolyFunctional classical_moller_inverse_graphs(const MollerConfig& cfg, const PolyFunctional& F);
PolyFunctional classical_moller_graphs(const MollerConfig& cfg, const PolyFunctional& F);
/// Resummed tree expansion: interacting-edge trees with no
/// single-outgoing vertices, coefficients (-1)^v / |Aut|.
PolyFunctional classical_moller_resummed(const MollerConfig& cfg, const PolyFunctional& F);

}  // namespace starforge
