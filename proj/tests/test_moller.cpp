#include <doctest.h>

#include "starforge/moller.hpp"

using namespace starforge;

namespace {
const SeriesBounds B{0, 2, 3};

PolyFunctional phi(int n, int i) { return PolyFunctional::coordinate(n, B, i); }

MollerConfig m1_cubic() {
    MollerConfig cfg;
    cfg.theory = fixture_m1();
    cfg.inter.V = PolyFunctional::monomial(
        2, {0, 0, 0}, TruncatedSeries::monomial(B, 0, 0, GaussianRational(Rational(1, 6))));
    cfg.inter.diagonal_hessian = true;
    cfg.bounds = B;
    return cfg;
}

MollerConfig m2_cubic() {
    MollerConfig cfg;
    cfg.theory = fixture_m2();
    cfg.inter = fixture_m2_cubic(B);
    cfg.bounds = B;
    return cfg;
}

PolyFunctional hbar_zero_part(const PolyFunctional& f) {
    PolyFunctional out(f.n_points(), f.bounds());
    for (const auto& [key, s] : f.terms()) {
        for (const auto& [l, c] : s.hbar_slice(0)) {
            out.accumulate(key, TruncatedSeries::monomial(f.bounds(), 0, l, c));
        }
    }
    return out;
}
}  // namespace

TEST_CASE("classical maps on the two-point fixture") {
    MollerConfig cfg = m1_cubic();
    FieldMap rinv = classical_moller_inverse_map(cfg);
    // r^{-1}(phi_0, phi_1) = (phi_0, phi_1 + lambda phi_0^2 / 2)
    CHECK((rinv[0] - phi(2, 0)).is_zero());
    PolyFunctional expect =
        phi(2, 1) + (phi(2, 0) * phi(2, 0)).shifted(0, 1, GaussianRational(Rational(1, 2)));
    CHECK((rinv[1] - expect).is_zero());

    FieldMap r = classical_moller_map(cfg);
    CHECK((r[1] - (phi(2, 1) -
                   (phi(2, 0) * phi(2, 0)).shifted(0, 1, GaussianRational(Rational(1, 2)))))
              .is_zero());

    // round trip is the identity map
    FieldMap round = compose_maps(r, rinv);
    FieldMap id = identity_field_map(cfg.theory, B);
    for (int i = 0; i < 2; ++i) CHECK((round[i] - id[i]).is_zero());

    // numeric lambda = 2 at phi = (1, 0): r^{-1} gives (1, 1)
    MollerConfig num = cfg;
    num.mode = LambdaMode::numeric(Rational(2));
    FieldMap rinv2 = classical_moller_inverse_map(num);
    FieldPoint p;
    p.values = {Rational(1), Rational(0)};
    CHECK(rinv2[0].eval(p).coefficient(0, 0) == GaussianRational(1));
    CHECK(rinv2[1].eval(p).coefficient(0, 0) == GaussianRational(1));
}

TEST_CASE("first-order classical response") {
    // lambda^1 coefficient of r(phi) is -Delta^R V^{(1)}(phi)
    MollerConfig cfg = m2_cubic();
    FieldMap r = classical_moller_map(cfg);
    PolyMatrix dR = pmatrix_from_gmatrix(cfg.theory.propagator(PropagatorKind::Retarded), 3, B);
    for (int i = 0; i < 3; ++i) {
        PolyFunctional order1(3, B);
        for (const auto& [key, s] : r[i].terms()) {
            order1.accumulate(key, TruncatedSeries::monomial(B, 0, 0, s.coefficient(0, 1)));
        }
        PolyFunctional expect = PolyFunctional::zero(3, B);
        for (int j = 0; j < 3; ++j) expect -= dR[i][j] * cfg.inter.V.partial(j);
        CHECK((order1 - expect).is_zero());
    }
}

TEST_CASE("vanishing interaction gives identity operators") {
    MollerConfig cfg = m2_cubic();
    cfg.inter.V = PolyFunctional::zero(3, B);
    FunctionalRng rng(17);
    PolyFunctional F = rng.functional(3, B, 3);
    CHECK((quantum_moller_inverse(cfg, F) - F).is_zero());
    CHECK((quantum_moller(cfg, F) - F).is_zero());
    CHECK((omega(cfg, F) - F).is_zero());
    CHECK((moller_hadamard(cfg, F) - F).is_zero());
}

TEST_CASE("quantum round trip") {
    MollerConfig cfg = m2_cubic();
    FunctionalRng rng(27);
    PolyFunctional F = rng.functional(3, B, 3);
    CHECK((quantum_moller(cfg, quantum_moller_inverse(cfg, F)) - F).is_zero());
    CHECK((quantum_moller_inverse(cfg, quantum_moller(cfg, F)) - F).is_zero());
}

TEST_CASE("classical limit of the quantum operator") {
    MollerConfig cfg = m2_cubic();
    FunctionalRng rng(5);
    PolyFunctional F = rng.functional(3, B, 3);
    PolyFunctional quantum = quantum_moller_inverse(cfg, F);
    PolyFunctional classical = pullback(F, classical_moller_inverse_map(cfg));
    CHECK((hbar_zero_part(quantum) - classical).is_zero());
    // the classical graph expansions match the fixed-point maps
    CHECK((classical_moller_inverse_graphs(cfg, F) - classical).is_zero());
    CHECK((classical_moller_graphs(cfg, F) - pullback(F, classical_moller_map(cfg))).is_zero());
    CHECK((classical_moller_resummed(cfg, F) - pullback(F, classical_moller_map(cfg))).is_zero());
}

TEST_CASE("quantum part is the identity at leading order") {
    MollerConfig cfg = m2_cubic();
    FunctionalRng rng(41);
    PolyFunctional F = rng.functional(3, B, 3);
    PolyFunctional u = upsilon(cfg, F);
    CHECK((hbar_zero_part(u) - F).is_zero());
    // factorization: R^{-1} F = Upsilon(r^{-1}-pullback of F)
    PolyFunctional lhs = quantum_moller_inverse(cfg, F);
    PolyFunctional rhs = upsilon(cfg, pullback(F, classical_moller_inverse_map(cfg)));
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("time-ordered exponential route") {
    MollerConfig cfg = m2_cubic();
    cfg.bounds = SeriesBounds{0, 3, 3};
    cfg.inter = fixture_m2_cubic(cfg.bounds);
    FunctionalRng rng(13);
    PolyFunctional F = rng.functional(3, cfg.bounds, 3);
    BogoliubovResult res = smatrix_bogoliubov(cfg, F);
    CHECK(res.negative_free);
    CHECK(res.diagnostic.empty());
    CHECK((res.value - quantum_moller_inverse(cfg, F)).is_zero());
    // lambda-order zero of either route is F itself
    PolyFunctional lam0(3, cfg.bounds);
    for (const auto& [key, s] : res.value.terms()) {
        for (const auto& [hl, c] : s.coefficients()) {
            if (hl.second == 0) lam0.accumulate(key, TruncatedSeries::monomial(cfg.bounds, hl.first, 0, c));
        }
    }
    CHECK((lam0 - F.restricted(cfg.bounds)).is_zero());
}

TEST_CASE("hadamard-ordered operator factorizes through the classical map") {
    MollerConfig cfg = m2_cubic();
    cfg.bounds = SeriesBounds{0, 2, 2};
    cfg.inter = fixture_m2_cubic(cfg.bounds);
    FunctionalRng rng(3);
    PolyFunctional F = rng.functional(3, cfg.bounds, 3);
    PolyFunctional lhs = moller_hadamard(cfg, F);
    PolyFunctional rhs = pullback(omega(cfg, F), classical_moller_map(cfg));
    CHECK((lhs - rhs).is_zero());
    // with H = 0 the Hadamard route is the time-ordered route transported by T_H
    PolyFunctional l2 = moller_hadamard(cfg, time_ordering_H(cfg.theory, F));
    PolyFunctional r2 = time_ordering_H(cfg.theory, quantum_moller(cfg, F));
    CHECK((l2 - r2).is_zero());
}

TEST_CASE("peierls bracket intertwining") {
    MollerConfig cfg = m2_cubic();
    FunctionalRng rng(19);
    PolyFunctional F = rng.functional(3, B, 2);
    PolyFunctional G = rng.functional(3, B, 2);
    FieldMap r = classical_moller_map(cfg);
    PolyFunctional lhs = peierls_bracket_free(cfg.theory, pullback(F, r), pullback(G, r));
    PolyFunctional rhs = pullback(peierls_bracket(cfg.theory, cfg.inter, cfg.mode, F, G), r);
    CHECK((lhs - rhs).is_zero());
}
