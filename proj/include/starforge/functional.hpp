#pragma once

#include "starforge/numerics.hpp"

#include <functional>
#include <random>
#include <set>

namespace starforge {

/// An exact field configuration: one rational value per model point.
struct FieldPoint {
    std::vector<Rational> values;

    int size() const { return static_cast<int>(values.size()); }
};

/// Polynomial functional of the field, with TruncatedSeries
/// coefficients.  Monomials are stored as sorted index multisets, so
/// phi_0^2 phi_1 has key {0,0,1}.
class PolyFunctional {
  public:
    using Key = std::vector<int>;

    PolyFunctional() = default;
    PolyFunctional(int n_points, SeriesBounds b) : n_(n_points), b_(b) {}

    static PolyFunctional zero(int n_points, SeriesBounds b) { return PolyFunctional(n_points, b); }
    static PolyFunctional constant(int n_points, TruncatedSeries c);
    static PolyFunctional constant(int n_points, SeriesBounds b, GaussianRational c);
    /// Coordinate functional phi_i.
    static PolyFunctional coordinate(int n_points, SeriesBounds b, int i);
    static PolyFunctional monomial(int n_points, Key indices, TruncatedSeries c);

    int n_points() const { return n_; }
    const SeriesBounds& bounds() const { return b_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, TruncatedSeries>& terms() const { return terms_; }
    TruncatedSeries coefficient(Key indices) const;
    int degree() const;

    void accumulate(Key indices, const TruncatedSeries& c);

    PolyFunctional& operator+=(const PolyFunctional& o);
    PolyFunctional& operator-=(const PolyFunctional& o);
    PolyFunctional operator-() const;
    friend PolyFunctional operator+(PolyFunctional a, const PolyFunctional& b) {
        a += b;
        return a;
    }
    friend PolyFunctional operator-(PolyFunctional a, const PolyFunctional& b) {
        a -= b;
        return a;
    }
    friend PolyFunctional operator*(const PolyFunctional& a, const PolyFunctional& b);
    friend bool operator==(const PolyFunctional& a, const PolyFunctional& b);

    PolyFunctional scaled(const TruncatedSeries& c) const;
    PolyFunctional scaled(const GaussianRational& c) const;
    /// Multiply every coefficient by c * hbar^h lambda^l.
    PolyFunctional shifted(int h, int l, const GaussianRational& c) const;
    PolyFunctional conj() const;

    TruncatedSeries eval(const FieldPoint& phi) const;
    /// First functional derivative with respect to phi_i.
    PolyFunctional partial(int i) const;
    /// Iterated derivative, one index per entry of `indices`.
    PolyFunctional partial(const Key& indices) const;

    /// Pullback along a field map: substitute phi_i -> map[i].
    PolyFunctional substituted(const std::vector<PolyFunctional>& map) const;

    /// Exponential, finite because every coefficient monomial has
    /// positive weight (see TruncatedSeries::exp); the functional may
    /// have arbitrary field dependence.
    PolyFunctional exp() const;

    PolyFunctional lambda_evaluated(const Rational& value) const;
    PolyFunctional restricted(SeriesBounds nb) const;

    /// Points the functional actually depends on.
    std::set<int> support() const;

    std::string str() const;

  private:
    int n_ = 0;
    SeriesBounds b_;
    std::map<Key, TruncatedSeries> terms_;
};

/// Fully symmetric derivative tensor F^{(n)}(phi): entries indexed by
/// sorted index tuples.
struct DerivativeTensor {
    int order = 0;
    int n_points = 0;
    std::map<std::vector<int>, TruncatedSeries> entries;

    /// Look up an entry; the tuple is sorted first, so all index
    /// permutations agree by construction.
    TruncatedSeries at(std::vector<int> indices, SeriesBounds b) const;
};

DerivativeTensor derivative_tensor(const PolyFunctional& f, const FieldPoint& phi, int order);

/// Deterministic random functionals for property tests and suites.
class FunctionalRng {
  public:
    explicit FunctionalRng(unsigned seed) : eng_(seed) {}

    Rational rational(long lo = -3, long hi = 3);
    GaussianRational gaussian_rational(bool complex_parts = true);
    /// Random polynomial functional of degree <= max_degree with
    /// plain Q(i) coefficients (no hbar/lambda content).
    PolyFunctional functional(int n_points, SeriesBounds b, int max_degree, int max_terms = 6);
    int integer(int lo, int hi);

  private:
    std::mt19937 eng_;
};

}  // namespace starforge
