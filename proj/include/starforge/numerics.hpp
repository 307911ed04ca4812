#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starforge {

using Rational = mpq_class;

/// Parse a rational from "p", "-p/q" style decimal strings.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

/// Element of Q(i): exact complex number with rational real and
/// imaginary parts.  All engine arithmetic bottoms out here.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(long r, long i) : re(r), im(i) {}

    static GaussianRational i() { return GaussianRational(0, 1); }
    /// i^k for any integer k (k may be negative).
    static GaussianRational i_pow(long k);

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return GaussianRational(re, -im); }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational operator-() const { return GaussianRational(-re, -im); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        a += b;
        return a;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        a -= b;
        return a;
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    GaussianRational pow(long k) const;
    std::string str() const;
};

/// Truncation window for bigraded series in hbar and lambda.  A
/// negative hbar_min switches the series into Laurent mode, where
/// every admissible monomial must satisfy h >= -l.
struct SeriesBounds {
    int hbar_min = 0;
    int hbar_max = 0;
    int lambda_max = 0;

    bool laurent() const { return hbar_min < 0; }
    bool admits(int h, int l) const {
        if (l < 0 || l > lambda_max) return false;
        if (h < hbar_min || h > hbar_max) return false;
        if (laurent() && h < -l) return false;
        return true;
    }
    friend bool operator==(const SeriesBounds&, const SeriesBounds&) = default;
    std::string str() const;
};

/// Formal polynomial in hbar and lambda over Q(i), truncated to a
/// fixed window.  Monomials outside the window are silently dropped
/// by the ring operations; combining series with different windows is
/// a configuration error and throws.
class TruncatedSeries {
  public:
    using Key = std::pair<int, int>;  // (hbar power, lambda power)

    TruncatedSeries() = default;
    explicit TruncatedSeries(SeriesBounds b) : b_(b) { validate_bounds(); }

    static TruncatedSeries zero(SeriesBounds b) { return TruncatedSeries(b); }
    static TruncatedSeries one(SeriesBounds b) { return monomial(b, 0, 0, GaussianRational(1)); }
    static TruncatedSeries monomial(SeriesBounds b, int h, int l, GaussianRational c);

    const SeriesBounds& bounds() const { return b_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<Key, GaussianRational>& coefficients() const { return c_; }
    GaussianRational coefficient(int h, int l) const;

    void set(int h, int l, GaussianRational c);
    void accumulate(int h, int l, const GaussianRational& c);

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a += b;
        return a;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        a -= b;
        return a;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.b_ == b.b_ && a.c_ == b.c_;
    }

    TruncatedSeries scaled(const GaussianRational& c) const;
    /// Multiply by c * hbar^h lambda^l.
    TruncatedSeries shifted(int h, int l, const GaussianRational& c) const;
    TruncatedSeries conj() const;

    /// exp of a series with no weight-zero part: in power mode the
    /// constant term must vanish, in Laurent mode every monomial must
    /// have l >= 1 (and h >= -l as always).
    TruncatedSeries exp() const;

    /// Substitute a numeric value for lambda; all lambda powers
    /// collapse onto l = 0.
    TruncatedSeries lambda_evaluated(const Rational& value) const;

    /// Coefficient extraction: the lambda polynomial at fixed hbar
    /// power, as (l, coeff) pairs.
    std::vector<std::pair<int, GaussianRational>> hbar_slice(int h) const;

    /// The monomials with negative hbar power (diagnostic for the
    /// Bogoliubov cancellation check).
    std::vector<std::pair<Key, GaussianRational>> negative_hbar_terms() const;

    /// Re-truncate to a (typically narrower) window, dropping
    /// monomials outside it.
    TruncatedSeries restricted(SeriesBounds nb) const;

    std::string str() const;

  private:
    void validate_bounds() const;
    void check_same_bounds(const TruncatedSeries& o) const;

    SeriesBounds b_;
    std::map<Key, GaussianRational> c_;
};

}  // namespace starforge
