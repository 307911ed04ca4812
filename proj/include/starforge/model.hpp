#pragma once

#include "starforge/functional.hpp"

namespace starforge {

using GMatrix = std::vector<std::vector<GaussianRational>>;
using SMatrix = std::vector<std::vector<TruncatedSeries>>;
using PolyMatrix = std::vector<std::vector<PolyFunctional>>;

GMatrix gmatrix_zero(int n);
GMatrix gmatrix_transpose(const GMatrix& m);
bool gmatrix_is_symmetric(const GMatrix& m);
GMatrix gmatrix_add(const GMatrix& a, const GMatrix& b);
GMatrix gmatrix_sub(const GMatrix& a, const GMatrix& b);
GMatrix gmatrix_scaled(const GMatrix& a, const GaussianRational& c);

SMatrix smatrix_from_gmatrix(const GMatrix& m, SeriesBounds b);
SMatrix smatrix_zero(int n, SeriesBounds b);
SMatrix smatrix_add(const SMatrix& a, const SMatrix& b);
SMatrix smatrix_sub(const SMatrix& a, const SMatrix& b);
SMatrix smatrix_scaled(const SMatrix& a, const TruncatedSeries& c);
bool smatrix_is_symmetric(const SMatrix& m);

PolyMatrix pmatrix_from_gmatrix(const GMatrix& m, int n_points, SeriesBounds b);
PolyMatrix pmatrix_zero(int dim, int n_points, SeriesBounds b);
PolyMatrix pmatrix_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pmatrix_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pmatrix_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pmatrix_transpose(const PolyMatrix& a);
PolyMatrix pmatrix_scaled(const PolyMatrix& a, const TruncatedSeries& c);
bool pmatrix_is_zero(const PolyMatrix& a);
bool pmatrix_equal(const PolyMatrix& a, const PolyMatrix& b);

/// Finite causal order on model points: a strict partial order given
/// by its transitive closure, plus a deterministic linear extension.
struct CausalOrder {
    int n = 0;
    std::vector<std::vector<bool>> strictly_before;  // strictly_before[a][b]: a precedes b

    static CausalOrder total(int n);
    static CausalOrder from_relations(int n, const std::vector<std::pair<int, int>>& covers);

    bool precedes(int a, int b) const { return strictly_before[a][b]; }
    bool comparable(int a, int b) const { return a == b || precedes(a, b) || precedes(b, a); }
    std::vector<int> linear_extension() const;
};

enum class PropagatorKind { Retarded, Advanced, Causal, Dirac, Plus, Feynman };

/// Free theory data: causal order, retarded propagator, symmetric
/// Hadamard-type kernel H.  In strict mode the retarded propagator is
/// supported on strictly ordered pairs only, which is what makes the
/// interacting Neumann series nilpotent.
struct FreeTheory {
    CausalOrder order;
    GMatrix delta_R;
    GMatrix H;
    bool strict = true;

    int n() const { return order.n; }
    void validate() const;
    GMatrix propagator(PropagatorKind kind) const;
};

/// Interaction functional V: a polynomial with plain Q(i)
/// coefficients (no hbar or lambda content).  diagonal_hessian marks
/// interactions whose monomials each involve a single point.
struct Interaction {
    PolyFunctional V;
    bool diagonal_hessian = false;

    void validate() const;
    /// V^{(2)}(phi) as a symmetric matrix of functionals.
    PolyMatrix hessian() const;
};

/// How the coupling is treated: as a formal series variable, or as an
/// exact rational number (admissible only in the nilpotent regime).
struct LambdaMode {
    bool formal = true;
    Rational value = Rational(0);

    static LambdaMode formal_mode() { return LambdaMode{true, Rational(0)}; }
    static LambdaMode numeric(Rational v) { return LambdaMode{false, std::move(v)}; }

    /// lambda^k as a series scalar in the given window.
    TruncatedSeries power(SeriesBounds b, int k) const;
};

/// Interacting advanced/retarded propagator at a symbolic field
/// configuration: the Neumann series
///   sum_n (-lambda)^n Delta (V^{(2)} Delta)^n
/// truncated at lambda_max in formal mode, or summed to termination
/// in the nilpotent numeric regime.
PolyMatrix interacting_propagator(const FreeTheory& th, const Interaction& inter,
                                  PropagatorKind kind, const LambdaMode& mode, SeriesBounds b);

/// Entrywise derivative of an interacting propagator with respect to
/// phi_i (term-by-term differentiation of the Neumann series).
PolyMatrix pmatrix_partial(const PolyMatrix& m, int i);

/// Evaluate a matrix of functionals at a field point.
SMatrix pmatrix_eval(const PolyMatrix& m, const FieldPoint& phi);

enum class Separation { ABeforeB, BBeforeA, Neither };

/// Decide whether one support set can be placed entirely to the past
/// of the other by a causal cut (a down-set of the order).
Separation causally_separated(const FreeTheory& th, const std::set<int>& sa,
                              const std::set<int>& sb);

/// Fixtures used throughout the test and acceptance suites.
FreeTheory fixture_m1();
FreeTheory fixture_m2();
Interaction fixture_m2_cubic(SeriesBounds b);  // V = (1/6) phi_1^3

SeriesBounds default_bounds();  // hbar <= 3, lambda <= 4

}  // namespace starforge
