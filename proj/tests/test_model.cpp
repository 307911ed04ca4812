#include <doctest.h>

#include <stdexcept>

#include "starforge/model.hpp"

using namespace starforge;

namespace {
const SeriesBounds B{0, 2, 3};

GMatrix gidentity(int n) {
    GMatrix m = gmatrix_zero(n);
    for (int i = 0; i < n; ++i) m[i][i] = GaussianRational(1);
    return m;
}
}  // namespace

TEST_CASE("two-point fixture propagator table") {
    FreeTheory th = fixture_m1();
    GMatrix A = th.propagator(PropagatorKind::Advanced);
    CHECK(A[0][1] == GaussianRational(1));
    CHECK(A[0][0] == GaussianRational(0));
    CHECK(A[1][0] == GaussianRational(0));
    CHECK(A[1][1] == GaussianRational(0));

    GMatrix C = th.propagator(PropagatorKind::Causal);
    CHECK(C[0][1] == GaussianRational(-1));
    CHECK(C[1][0] == GaussianRational(1));
    CHECK(C == gmatrix_sub(th.propagator(PropagatorKind::Retarded), A));

    GMatrix D = th.propagator(PropagatorKind::Dirac);
    CHECK(D[0][1] == GaussianRational(Rational(1, 2)));
    CHECK(D[1][0] == GaussianRational(Rational(1, 2)));

    GMatrix F = th.propagator(PropagatorKind::Feynman);
    CHECK(F[0][1] == GaussianRational(0, Rational(1, 2)));
    CHECK(F[1][0] == GaussianRational(0, Rational(1, 2)));
}

TEST_CASE("propagator identities") {
    for (FreeTheory th : {fixture_m1(), fixture_m2()}) {
        GMatrix C = th.propagator(PropagatorKind::Causal);
        CHECK(gmatrix_add(C, gmatrix_transpose(C)) == gmatrix_zero(th.n()));
        CHECK(gmatrix_is_symmetric(th.propagator(PropagatorKind::Dirac)));
        CHECK(gmatrix_is_symmetric(th.propagator(PropagatorKind::Feynman)));
        // Feynman - plus = i * advanced
        GMatrix lhs = gmatrix_sub(th.propagator(PropagatorKind::Feynman),
                                  th.propagator(PropagatorKind::Plus));
        GMatrix rhs = gmatrix_scaled(th.propagator(PropagatorKind::Advanced),
                                     GaussianRational::i());
        CHECK(lhs == rhs);
        // retarded is supported strictly below the diagonal: advanced^N = 0
        PolyMatrix A = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Advanced), th.n(), B);
        PolyMatrix p = A;
        for (int k = 1; k < th.n(); ++k) p = pmatrix_mul(p, A);
        CHECK(pmatrix_is_zero(p));
    }
}

TEST_CASE("causal order constructors") {
    CausalOrder tot = CausalOrder::total(3);
    CHECK(tot.precedes(0, 2));
    CHECK_FALSE(tot.precedes(2, 0));
    CausalOrder v = CausalOrder::from_relations(3, {{0, 1}, {0, 2}});
    CHECK(v.precedes(0, 1));
    CHECK_FALSE(v.comparable(1, 2));
    std::vector<int> lin = v.linear_extension();
    CHECK(lin.size() == 3);
    CHECK(lin[0] == 0);
}

TEST_CASE("interacting advanced propagator, formal mode") {
    FreeTheory th = fixture_m2();
    Interaction inter = fixture_m2_cubic(B);
    LambdaMode formal = LambdaMode::formal_mode();
    PolyMatrix AS = interacting_propagator(th, inter, PropagatorKind::Advanced, formal, B);
    // entry (0,2): 1 - lambda phi_1; every other entry equals the free kernel
    PolyFunctional expect =
        PolyFunctional::constant(3, B, GaussianRational(1)) -
        PolyFunctional::coordinate(3, B, 1).shifted(0, 1, GaussianRational(1));
    CHECK((AS[0][2] - expect).is_zero());
    GMatrix A = th.propagator(PropagatorKind::Advanced);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == 0 && j == 2) continue;
            CHECK((AS[i][j] - PolyFunctional::constant(3, B, A[i][j])).is_zero());
        }
    // V = 0 collapses to the free kernel
    Interaction none;
    none.V = PolyFunctional::zero(3, B);
    none.diagonal_hessian = true;
    PolyMatrix AS0 = interacting_propagator(th, none, PropagatorKind::Advanced, formal, B);
    CHECK(pmatrix_equal(AS0, pmatrix_from_gmatrix(A, 3, B)));
}

TEST_CASE("interacting advanced propagator, numeric mode") {
    FreeTheory th = fixture_m2();
    Interaction inter = fixture_m2_cubic(B);
    PolyMatrix AS = interacting_propagator(th, inter, PropagatorKind::Advanced,
                                           LambdaMode::numeric(Rational(2)), B);
    FieldPoint p;
    p.values = {Rational(0), Rational(3), Rational(0)};
    CHECK(AS[0][2].eval(p).coefficient(0, 0) == GaussianRational(-5));
}

TEST_CASE("numeric mode requires the nilpotent regime") {
    FreeTheory th = fixture_m2();
    Interaction inter = fixture_m2_cubic(B);
    inter.diagonal_hessian = false;
    CHECK_THROWS(interacting_propagator(th, inter, PropagatorKind::Advanced,
                                        LambdaMode::numeric(Rational(1)), B));
}

TEST_CASE("derivative of the interacting kernel") {
    FreeTheory th = fixture_m2();
    Interaction inter = fixture_m2_cubic(B);
    LambdaMode formal = LambdaMode::formal_mode();
    PolyMatrix K = interacting_propagator(th, inter, PropagatorKind::Advanced, formal, B);
    // d/dphi_1 of entry (0,2) is -lambda
    PolyFunctional d = K[0][2].partial(1);
    CHECK((d - PolyFunctional::constant(3, B, GaussianRational(1))
                   .shifted(0, 1, GaussianRational(-1)))
              .is_zero());
    // K^{(1)} = -K S''' K entrywise, with S''' = lambda V^{(3)}
    TruncatedSeries lam = TruncatedSeries::monomial(B, 0, 1, GaussianRational(1));
    for (int x = 0; x < 3; ++x) {
        PolyMatrix lhs = pmatrix_partial(K, x);
        PolyMatrix S(3, std::vector<PolyFunctional>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) S[i][j] = inter.V.partial({x, i, j}).scaled(lam);
        PolyMatrix rhs = pmatrix_scaled(pmatrix_mul(K, pmatrix_mul(S, K)),
                                        TruncatedSeries::monomial(B, 0, 0, GaussianRational(-1)));
        CHECK(pmatrix_equal(lhs, rhs));
    }
}

TEST_CASE("retarded chain identity") {
    // (id + lambda Delta^R V''(phi)) Delta^R_S(phi) = Delta^R + lambda Delta^R V''(phi) Delta^A
    FreeTheory th = fixture_m2();
    Interaction inter = fixture_m2_cubic(B);
    LambdaMode formal = LambdaMode::formal_mode();
    PolyMatrix RS = interacting_propagator(th, inter, PropagatorKind::Retarded, formal, B);
    PolyMatrix dR = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Retarded), 3, B);
    PolyMatrix dA = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Advanced), 3, B);
    TruncatedSeries lam = TruncatedSeries::monomial(B, 0, 1, GaussianRational(1));
    PolyMatrix id = pmatrix_from_gmatrix(gidentity(3), 3, B);
    PolyMatrix lRH = pmatrix_scaled(pmatrix_mul(dR, inter.hessian()), lam);
    PolyMatrix rho = pmatrix_add(id, lRH);
    PolyMatrix rhoT = pmatrix_add(id, pmatrix_scaled(pmatrix_mul(inter.hessian(), dA), lam));
    PolyMatrix lhs = pmatrix_mul(rho, pmatrix_mul(RS, rhoT));
    PolyMatrix rhs = pmatrix_add(dR, pmatrix_mul(lRH, dA));
    CHECK(pmatrix_equal(lhs, rhs));
    // the left factor alone already collapses the chain
    CHECK(pmatrix_equal(pmatrix_mul(rho, RS), dR));
}

TEST_CASE("causal cuts") {
    FreeTheory th = fixture_m2();
    CHECK(causally_separated(th, {0}, {2}) == Separation::ABeforeB);
    CHECK(causally_separated(th, {2}, {0}) == Separation::BBeforeA);
    CHECK(causally_separated(th, {0, 2}, {1}) == Separation::Neither);
    CHECK(causally_separated(th, {}, {1}) == Separation::ABeforeB);
    FreeTheory lax = th;
    lax.strict = false;
    CHECK_THROWS_AS(causally_separated(lax, {0}, {2}), std::invalid_argument);
}
