#include "starforge/numerics.hpp"

#include <sstream>

namespace starforge {

Rational parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::i_pow(long k) {
    long m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational(0, 1);
        case 2: return GaussianRational(-1);
        default: return GaussianRational(0, -1);
    }
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    return GaussianRational((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}

GaussianRational GaussianRational::pow(long k) const {
    if (k < 0) return GaussianRational(1) / pow(-k);
    GaussianRational acc(1);
    GaussianRational base = *this;
    long e = k;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string GaussianRational::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re.get_str();
    } else if (re == 0) {
        os << im.get_str() << "i";
    } else {
        os << re.get_str() << (im > 0 ? "+" : "") << im.get_str() << "i";
    }
    return os.str();
}

std::string SeriesBounds::str() const {
    std::ostringstream os;
    os << "[hbar " << hbar_min << ".." << hbar_max << ", lambda 0.." << lambda_max << "]";
    return os.str();
}

void TruncatedSeries::validate_bounds() const {
    if (b_.hbar_max < b_.hbar_min || b_.lambda_max < 0) {
        throw std::invalid_argument("invalid series bounds " + b_.str());
    }
    if (b_.laurent() && b_.hbar_min < -b_.lambda_max) {
        throw std::invalid_argument("Laurent bounds deeper than -lambda_max: " + b_.str());
    }
}

void TruncatedSeries::check_same_bounds(const TruncatedSeries& o) const {
    if (!(b_ == o.b_)) {
        throw std::invalid_argument("mixing series with different truncation windows: " + b_.str() +
                                    " vs " + o.b_.str());
    }
}

TruncatedSeries TruncatedSeries::monomial(SeriesBounds b, int h, int l, GaussianRational c) {
    TruncatedSeries s(b);
    s.set(h, l, std::move(c));
    return s;
}

GaussianRational TruncatedSeries::coefficient(int h, int l) const {
    auto it = c_.find({h, l});
    return it == c_.end() ? GaussianRational() : it->second;
}

void TruncatedSeries::set(int h, int l, GaussianRational c) {
    if (!b_.admits(h, l)) return;
    if (c.is_zero()) {
        c_.erase({h, l});
    } else {
        c_[{h, l}] = std::move(c);
    }
}

void TruncatedSeries::accumulate(int h, int l, const GaussianRational& c) {
    if (!b_.admits(h, l) || c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace({h, l}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    check_same_bounds(o);
    for (const auto& [k, v] : o.c_) accumulate(k.first, k.second, v);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    check_same_bounds(o);
    for (const auto& [k, v] : o.c_) accumulate(k.first, k.second, -v);
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(b_);
    for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_same_bounds(b);
    TruncatedSeries r(a.b_);
    for (const auto& [ka, va] : a.c_) {
        for (const auto& [kb, vb] : b.c_) {
            r.accumulate(ka.first + kb.first, ka.second + kb.second, va * vb);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const GaussianRational& c) const {
    TruncatedSeries r(b_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::shifted(int h, int l, const GaussianRational& c) const {
    TruncatedSeries r(b_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : c_) r.accumulate(k.first + h, k.second + l, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::conj() const {
    TruncatedSeries r(b_);
    for (const auto& [k, v] : c_) r.c_.emplace(k, v.conj());
    return r;
}

TruncatedSeries TruncatedSeries::exp() const {
    // Weight of a monomial: h + l in power mode, h + 2l in Laurent
    // mode.  Admissible exponents must have strictly positive weight,
    // which makes the exponential a finite sum.
    for (const auto& [k, v] : c_) {
        int w = b_.laurent() ? k.first + 2 * k.second : k.first + k.second;
        (void)v;
        if (w <= 0 || (b_.laurent() && k.second < 1)) {
            throw std::domain_error("series exp requires a positive-weight argument; offending "
                                    "monomial hbar^" +
                                    std::to_string(k.first) + " lambda^" +
                                    std::to_string(k.second));
        }
    }
    int max_weight = b_.laurent() ? b_.hbar_max + 2 * b_.lambda_max : b_.hbar_max + b_.lambda_max;
    TruncatedSeries acc = one(b_);
    TruncatedSeries term = one(b_);
    Rational factorial(1);
    for (int k = 1; k <= max_weight; ++k) {
        term = term * (*this);
        if (term.is_zero()) break;
        factorial *= k;
        acc += term.scaled(GaussianRational(Rational(1) / factorial));
    }
    return acc;
}

TruncatedSeries TruncatedSeries::lambda_evaluated(const Rational& value) const {
    TruncatedSeries r(b_);
    for (const auto& [k, v] : c_) {
        Rational p(1);
        for (int j = 0; j < k.second; ++j) p *= value;
        r.accumulate(k.first, 0, v * GaussianRational(p));
    }
    return r;
}

std::vector<std::pair<int, GaussianRational>> TruncatedSeries::hbar_slice(int h) const {
    std::vector<std::pair<int, GaussianRational>> out;
    for (const auto& [k, v] : c_) {
        if (k.first == h) out.emplace_back(k.second, v);
    }
    return out;
}

std::vector<std::pair<TruncatedSeries::Key, GaussianRational>>
TruncatedSeries::negative_hbar_terms() const {
    std::vector<std::pair<Key, GaussianRational>> out;
    for (const auto& [k, v] : c_) {
        if (k.first < 0) out.emplace_back(k, v);
    }
    return out;
}

TruncatedSeries TruncatedSeries::restricted(SeriesBounds nb) const {
    TruncatedSeries r(nb);
    for (const auto& [k, v] : c_) r.set(k.first, k.second, v);
    return r;
}

std::string TruncatedSeries::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        if (k.first != 0) os << " hbar^" << k.first;
        if (k.second != 0) os << " lambda^" << k.second;
    }
    return os.str();
}

}  // namespace starforge
