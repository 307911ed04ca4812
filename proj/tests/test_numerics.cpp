#include <doctest.h>

#include <stdexcept>

#include "starforge/numerics.hpp"

using namespace starforge;

TEST_CASE("rational parsing canonicalizes") {
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-6/3") == Rational(-2));
    CHECK(rational_to_string(parse_rational("-6/4")) == "-3/2");
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("gaussian rational ring ops") {
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    CHECK(GaussianRational::i_pow(4) == GaussianRational(1));
    CHECK(GaussianRational::i_pow(-1) == GaussianRational(0, -1));
    CHECK(GaussianRational::i_pow(-2) == GaussianRational(-1));
    GaussianRational z(Rational(2, 3), Rational(-1, 2));
    CHECK(z.conj().conj() == z);
    CHECK(z * z.conj() == GaussianRational(Rational(4, 9) + Rational(1, 4)));
    CHECK(z + (-z) == GaussianRational(0));
    // division then multiplication round-trips
    GaussianRational w(Rational(1, 5), Rational(3));
    CHECK((z / w) * w == z);
    CHECK(z.pow(3) == z * z * z);
}

TEST_CASE("series window arithmetic") {
    SeriesBounds b{0, 2, 2};
    TruncatedSeries one = TruncatedSeries::one(b);
    TruncatedSeries hl = TruncatedSeries::monomial(b, 1, 1, GaussianRational(1));
    TruncatedSeries p = (one + hl) * (one - hl);
    // (1 + hbar lambda)(1 - hbar lambda) = 1 - hbar^2 lambda^2
    CHECK(p.coefficient(0, 0) == GaussianRational(1));
    CHECK(p.coefficient(1, 1) == GaussianRational(0));
    CHECK(p.coefficient(2, 2) == GaussianRational(-1));

    // (i hbar)^2 = -hbar^2
    TruncatedSeries ih = TruncatedSeries::monomial(b, 1, 0, GaussianRational::i());
    CHECK((ih * ih).coefficient(2, 0) == GaussianRational(-1));

    // truncation drops monomials outside the window
    SeriesBounds narrow{0, 1, 2};
    TruncatedSeries q = (TruncatedSeries::one(narrow) +
                         TruncatedSeries::monomial(narrow, 1, 1, GaussianRational(1)));
    TruncatedSeries r = q * q;  // hbar^2 term falls away
    CHECK(r.coefficient(1, 1) == GaussianRational(2));
    for (const auto& [key, c] : r.coefficients()) CHECK(key.first <= 1);
}

TEST_CASE("series ring axioms on random-ish elements") {
    SeriesBounds b{0, 2, 3};
    TruncatedSeries a = TruncatedSeries::monomial(b, 0, 1, GaussianRational(2, -1)) +
                        TruncatedSeries::monomial(b, 1, 0, GaussianRational(Rational(1, 3)));
    TruncatedSeries c = TruncatedSeries::monomial(b, 2, 2, GaussianRational(0, 5)) +
                        TruncatedSeries::one(b);
    TruncatedSeries d = TruncatedSeries::monomial(b, 1, 3, GaussianRational(-7));
    CHECK(a * c == c * a);
    CHECK((a * c) * d == a * (c * d));
    CHECK(a * (c + d) == a * c + a * d);
    CHECK((a - a).is_zero());
}

TEST_CASE("mixing different windows throws") {
    TruncatedSeries a = TruncatedSeries::one(SeriesBounds{0, 2, 2});
    TruncatedSeries b = TruncatedSeries::one(SeriesBounds{0, 3, 2});
    CHECK_THROWS(a + b);
    CHECK_THROWS(a * b);
}

TEST_CASE("laurent window enforces h >= -l") {
    SeriesBounds lb{-2, 1, 2};
    CHECK(lb.laurent());
    CHECK(lb.admits(-1, 1));
    CHECK_FALSE(lb.admits(-2, 1));  // would need lambda^2 weight
    CHECK(lb.admits(-2, 2));

    // (lambda/hbar)^2 via multiplication
    TruncatedSeries lh = TruncatedSeries::monomial(lb, -1, 1, GaussianRational(1));
    TruncatedSeries sq = lh * lh;
    CHECK(sq.coefficient(-2, 2) == GaussianRational(1));

    // out-of-window set is silently dropped
    TruncatedSeries s(lb);
    s.set(-2, 1, GaussianRational(1));
    CHECK(s.is_zero());
}

TEST_CASE("exponential of positive-weight elements") {
    SeriesBounds b{0, 2, 2};
    TruncatedSeries x = TruncatedSeries::monomial(b, 1, 1, GaussianRational(3));
    TruncatedSeries e = x.exp();
    CHECK(e.coefficient(0, 0) == GaussianRational(1));
    CHECK(e.coefficient(1, 1) == GaussianRational(3));
    CHECK(e.coefficient(2, 2) == GaussianRational(Rational(9, 2)));
    // exp(x) exp(-x) = 1
    CHECK(x.exp() * (-x).exp() == TruncatedSeries::one(b));

    // Laurent: exp(i c lambda / hbar) terminates by lambda weight
    SeriesBounds lb{-2, 0, 2};
    GaussianRational ic = GaussianRational(0, 1) * GaussianRational(5);
    TruncatedSeries y = TruncatedSeries::monomial(lb, -1, 1, ic);
    TruncatedSeries ey = y.exp();
    CHECK(ey.coefficient(0, 0) == GaussianRational(1));
    CHECK(ey.coefficient(-1, 1) == ic);
    CHECK(ey.coefficient(-2, 2) == ic * ic * GaussianRational(Rational(1, 2)));
    CHECK(ey * (-y).exp() == TruncatedSeries::one(lb));
}

TEST_CASE("lambda evaluation and window restriction") {
    SeriesBounds b{0, 1, 2};
    TruncatedSeries s = TruncatedSeries::monomial(b, 1, 0, GaussianRational(1)) +
                        TruncatedSeries::monomial(b, 1, 2, GaussianRational(3)) +
                        TruncatedSeries::monomial(b, 0, 1, GaussianRational(0, 1));
    TruncatedSeries at2 = s.lambda_evaluated(Rational(2));
    // hbar coefficient: 1 + 3*4 = 13; constant: 2i
    CHECK(at2.coefficient(1, 0) == GaussianRational(13));
    CHECK(at2.coefficient(0, 0) == GaussianRational(0, 2));

    TruncatedSeries cut = s.restricted(SeriesBounds{0, 1, 1});
    CHECK(cut.coefficient(1, 2) == GaussianRational(0));
    CHECK(cut.coefficient(0, 1) == GaussianRational(0, 1));
}

TEST_CASE("hbar slices and negative-power diagnostics") {
    SeriesBounds lb{-1, 1, 2};
    TruncatedSeries s = TruncatedSeries::monomial(lb, -1, 1, GaussianRational(4)) +
                        TruncatedSeries::monomial(lb, 1, 0, GaussianRational(1));
    auto neg = s.negative_hbar_terms();
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].first == TruncatedSeries::Key{-1, 1});
    auto slice = s.hbar_slice(1);
    REQUIRE(slice.size() == 1);
    CHECK(slice[0].second == GaussianRational(1));
}
