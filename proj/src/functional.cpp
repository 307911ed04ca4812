#include "starforge/functional.hpp"

#include <algorithm>
#include <sstream>

namespace starforge {

PolyFunctional PolyFunctional::constant(int n_points, TruncatedSeries c) {
    PolyFunctional f(n_points, c.bounds());
    f.accumulate({}, c);
    return f;
}

PolyFunctional PolyFunctional::constant(int n_points, SeriesBounds b, GaussianRational c) {
    return constant(n_points, TruncatedSeries::monomial(b, 0, 0, std::move(c)));
}

PolyFunctional PolyFunctional::coordinate(int n_points, SeriesBounds b, int i) {
    if (i < 0 || i >= n_points) throw std::out_of_range("coordinate index out of range");
    PolyFunctional f(n_points, b);
    f.accumulate({i}, TruncatedSeries::one(b));
    return f;
}

PolyFunctional PolyFunctional::monomial(int n_points, Key indices, TruncatedSeries c) {
    PolyFunctional f(n_points, c.bounds());
    std::sort(indices.begin(), indices.end());
    for (int i : indices) {
        if (i < 0 || i >= n_points) throw std::out_of_range("monomial index out of range");
    }
    f.accumulate(std::move(indices), c);
    return f;
}

TruncatedSeries PolyFunctional::coefficient(Key indices) const {
    std::sort(indices.begin(), indices.end());
    auto it = terms_.find(indices);
    return it == terms_.end() ? TruncatedSeries::zero(b_) : it->second;
}

int PolyFunctional::degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, static_cast<int>(k.size()));
    return d;
}

void PolyFunctional::accumulate(Key indices, const TruncatedSeries& c) {
    if (!(c.bounds() == b_)) {
        throw std::invalid_argument("coefficient bounds do not match functional bounds");
    }
    if (c.is_zero()) return;
    std::sort(indices.begin(), indices.end());
    auto [it, inserted] = terms_.try_emplace(std::move(indices), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyFunctional& PolyFunctional::operator+=(const PolyFunctional& o) {
    if (n_ != o.n_) throw std::invalid_argument("functionals on different models");
    for (const auto& [k, v] : o.terms_) accumulate(k, v);
    return *this;
}

PolyFunctional& PolyFunctional::operator-=(const PolyFunctional& o) {
    if (n_ != o.n_) throw std::invalid_argument("functionals on different models");
    for (const auto& [k, v] : o.terms_) accumulate(k, -v);
    return *this;
}

PolyFunctional PolyFunctional::operator-() const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, -v);
    return r;
}

PolyFunctional operator*(const PolyFunctional& a, const PolyFunctional& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("functionals on different models");
    PolyFunctional r(a.n_, a.b_);
    for (const auto& [ka, va] : a.terms_) {
        for (const auto& [kb, vb] : b.terms_) {
            TruncatedSeries c = va * vb;
            if (c.is_zero()) continue;
            PolyFunctional::Key k;
            k.reserve(ka.size() + kb.size());
            std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(k));
            r.accumulate(std::move(k), c);
        }
    }
    return r;
}

bool operator==(const PolyFunctional& a, const PolyFunctional& b) {
    return a.n_ == b.n_ && a.b_ == b.b_ && a.terms_ == b.terms_;
}

PolyFunctional PolyFunctional::scaled(const TruncatedSeries& c) const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) r.accumulate(k, v * c);
    return r;
}

PolyFunctional PolyFunctional::scaled(const GaussianRational& c) const {
    PolyFunctional r(n_, b_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.scaled(c));
    return r;
}

PolyFunctional PolyFunctional::shifted(int h, int l, const GaussianRational& c) const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) {
        TruncatedSeries s = v.shifted(h, l, c);
        if (!s.is_zero()) r.terms_.emplace(k, std::move(s));
    }
    return r;
}

PolyFunctional PolyFunctional::conj() const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.conj());
    return r;
}

TruncatedSeries PolyFunctional::eval(const FieldPoint& phi) const {
    if (phi.size() != n_) throw std::invalid_argument("field point size mismatch");
    TruncatedSeries acc = TruncatedSeries::zero(b_);
    for (const auto& [k, v] : terms_) {
        Rational p(1);
        for (int i : k) p *= phi.values[i];
        acc += v.scaled(GaussianRational(p));
    }
    return acc;
}

PolyFunctional PolyFunctional::partial(int i) const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) {
        long count = std::count(k.begin(), k.end(), i);
        if (count == 0) continue;
        Key nk;
        nk.reserve(k.size() - 1);
        bool removed = false;
        for (int idx : k) {
            if (!removed && idx == i) {
                removed = true;
                continue;
            }
            nk.push_back(idx);
        }
        r.accumulate(std::move(nk), v.scaled(GaussianRational(Rational(count))));
    }
    return r;
}

PolyFunctional PolyFunctional::partial(const Key& indices) const {
    PolyFunctional r = *this;
    for (int i : indices) r = r.partial(i);
    return r;
}

PolyFunctional PolyFunctional::substituted(const std::vector<PolyFunctional>& map) const {
    if (static_cast<int>(map.size()) != n_) {
        throw std::invalid_argument("field map size mismatch");
    }
    int m = map.empty() ? n_ : map.front().n_points();
    PolyFunctional r(m, b_);
    for (const auto& [k, v] : terms_) {
        PolyFunctional prod = PolyFunctional::constant(m, v);
        for (int i : k) prod = prod * map[i];
        r += prod;
    }
    return r;
}

PolyFunctional PolyFunctional::exp() const {
    // Termination: every coefficient monomial has positive weight, so
    // high powers of *this leave the truncation window.
    int max_weight =
        b_.laurent() ? b_.hbar_max + 2 * b_.lambda_max : b_.hbar_max + b_.lambda_max;
    for (const auto& [k, v] : terms_) {
        (void)k;
        for (const auto& [key, c] : v.coefficients()) {
            (void)c;
            int w = b_.laurent() ? key.first + 2 * key.second : key.first + key.second;
            if (w <= 0) {
                throw std::domain_error(
                    "functional exp requires positive-weight series coefficients");
            }
        }
    }
    PolyFunctional acc = PolyFunctional::constant(n_, TruncatedSeries::one(b_));
    PolyFunctional term = acc;
    Rational factorial(1);
    for (int k = 1; k <= max_weight; ++k) {
        term = term * (*this);
        if (term.is_zero()) break;
        factorial *= k;
        acc += term.scaled(GaussianRational(Rational(1) / factorial));
    }
    return acc;
}

PolyFunctional PolyFunctional::lambda_evaluated(const Rational& value) const {
    PolyFunctional r(n_, b_);
    for (const auto& [k, v] : terms_) r.accumulate(k, v.lambda_evaluated(value));
    return r;
}

PolyFunctional PolyFunctional::restricted(SeriesBounds nb) const {
    PolyFunctional r(n_, nb);
    for (const auto& [k, v] : terms_) {
        TruncatedSeries s = v.restricted(nb);
        if (!s.is_zero()) r.terms_.emplace(k, std::move(s));
    }
    return r;
}

std::set<int> PolyFunctional::support() const {
    std::set<int> s;
    for (const auto& [k, v] : terms_) {
        (void)v;
        s.insert(k.begin(), k.end());
    }
    return s;
}

std::string PolyFunctional::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << v.str() << "]";
        for (int i : k) os << " phi_" << i;
    }
    return os.str();
}

TruncatedSeries DerivativeTensor::at(std::vector<int> indices, SeriesBounds b) const {
    std::sort(indices.begin(), indices.end());
    auto it = entries.find(indices);
    return it == entries.end() ? TruncatedSeries::zero(b) : it->second;
}

namespace {
void fill_tensor(DerivativeTensor& t, const PolyFunctional& f, const FieldPoint& phi,
                 std::vector<int>& tuple, int start, int remaining) {
    if (remaining == 0) {
        TruncatedSeries v = f.partial(tuple).eval(phi);
        if (!v.is_zero()) t.entries.emplace(tuple, std::move(v));
        return;
    }
    for (int i = start; i < t.n_points; ++i) {
        tuple.push_back(i);
        fill_tensor(t, f, phi, tuple, i, remaining - 1);
        tuple.pop_back();
    }
}
}  // namespace

DerivativeTensor derivative_tensor(const PolyFunctional& f, const FieldPoint& phi, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
    DerivativeTensor t;
    t.order = order;
    t.n_points = f.n_points();
    std::vector<int> tuple;
    fill_tensor(t, f, phi, tuple, 0, order);
    return t;
}

Rational FunctionalRng::rational(long lo, long hi) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den(1, 3);
    Rational r(num(eng_), den(eng_));
    r.canonicalize();
    return r;
}

GaussianRational FunctionalRng::gaussian_rational(bool complex_parts) {
    Rational re = rational();
    Rational im = complex_parts ? rational() : Rational(0);
    return GaussianRational(re, im);
}

int FunctionalRng::integer(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng_);
}

PolyFunctional FunctionalRng::functional(int n_points, SeriesBounds b, int max_degree,
                                         int max_terms) {
    PolyFunctional f(n_points, b);
    int terms = integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        int deg = integer(0, max_degree);
        std::vector<int> key;
        for (int j = 0; j < deg; ++j) key.push_back(integer(0, n_points - 1));
        GaussianRational c = gaussian_rational();
        if (c.is_zero()) c = GaussianRational(1);
        f.accumulate(std::move(key), TruncatedSeries::monomial(b, 0, 0, c));
    }
    return f;
}

}  // namespace starforge
