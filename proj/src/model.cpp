#include "starforge/model.hpp"

#include <algorithm>

namespace starforge {

GMatrix gmatrix_zero(int n) { return GMatrix(n, std::vector<GaussianRational>(n)); }

GMatrix gmatrix_transpose(const GMatrix& m) {
    int n = static_cast<int>(m.size());
    GMatrix t = gmatrix_zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[j][i] = m[i][j];
    return t;
}

bool gmatrix_is_symmetric(const GMatrix& m) {
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(m[i][j] == m[j][i])) return false;
    return true;
}

GMatrix gmatrix_add(const GMatrix& a, const GMatrix& b) {
    int n = static_cast<int>(a.size());
    GMatrix r = gmatrix_zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

GMatrix gmatrix_sub(const GMatrix& a, const GMatrix& b) {
    int n = static_cast<int>(a.size());
    GMatrix r = gmatrix_zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

GMatrix gmatrix_scaled(const GMatrix& a, const GaussianRational& c) {
    int n = static_cast<int>(a.size());
    GMatrix r = gmatrix_zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[i][j] * c;
    return r;
}

SMatrix smatrix_from_gmatrix(const GMatrix& m, SeriesBounds b) {
    int n = static_cast<int>(m.size());
    SMatrix r(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(b)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = TruncatedSeries::monomial(b, 0, 0, m[i][j]);
    return r;
}

SMatrix smatrix_zero(int n, SeriesBounds b) {
    return SMatrix(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(b)));
}

SMatrix smatrix_add(const SMatrix& a, const SMatrix& b) {
    SMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

SMatrix smatrix_sub(const SMatrix& a, const SMatrix& b) {
    SMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

SMatrix smatrix_scaled(const SMatrix& a, const TruncatedSeries& c) {
    SMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x * c;
    return r;
}

bool smatrix_is_symmetric(const SMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j)
            if (!(m[i][j] == m[j][i])) return false;
    return true;
}

PolyMatrix pmatrix_from_gmatrix(const GMatrix& m, int n_points, SeriesBounds b) {
    int n = static_cast<int>(m.size());
    PolyMatrix r(n, std::vector<PolyFunctional>(n, PolyFunctional::zero(n_points, b)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = PolyFunctional::constant(n_points, b, m[i][j]);
    return r;
}

PolyMatrix pmatrix_zero(int dim, int n_points, SeriesBounds b) {
    return PolyMatrix(dim, std::vector<PolyFunctional>(dim, PolyFunctional::zero(n_points, b)));
}

PolyMatrix pmatrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
    int n = static_cast<int>(a.size());
    PolyMatrix r = a;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            PolyFunctional acc(a[i][j].n_points(), a[i][j].bounds());
            for (int k = 0; k < n; ++k) {
                if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
                acc += a[i][k] * b[k][j];
            }
            r[i][j] = std::move(acc);
        }
    }
    return r;
}

PolyMatrix pmatrix_add(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

PolyMatrix pmatrix_sub(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

PolyMatrix pmatrix_transpose(const PolyMatrix& a) {
    PolyMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[j][i] = a[i][j];
    return r;
}

PolyMatrix pmatrix_scaled(const PolyMatrix& a, const TruncatedSeries& c) {
    PolyMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x.scaled(c);
    return r;
}

bool pmatrix_is_zero(const PolyMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

bool pmatrix_equal(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    return true;
}

CausalOrder CausalOrder::total(int n) {
    CausalOrder o;
    o.n = n;
    o.strictly_before.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) o.strictly_before[i][j] = true;
    return o;
}

CausalOrder CausalOrder::from_relations(int n, const std::vector<std::pair<int, int>>& covers) {
    CausalOrder o;
    o.n = n;
    o.strictly_before.assign(n, std::vector<bool>(n, false));
    for (auto [a, b] : covers) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw std::invalid_argument("causal relation index out of range");
        }
        o.strictly_before[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (o.strictly_before[i][k] && o.strictly_before[k][j])
                    o.strictly_before[i][j] = true;
    for (int i = 0; i < n; ++i) {
        if (o.strictly_before[i][i]) {
            throw std::invalid_argument("causal relations contain a cycle");
        }
    }
    return o;
}

std::vector<int> CausalOrder::linear_extension() const {
    std::vector<int> out;
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool minimal = true;
            for (int u = 0; u < n; ++u) {
                if (!used[u] && strictly_before[u][v]) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) {
                out.push_back(v);
                used[v] = true;
                break;
            }
        }
    }
    return out;
}

void FreeTheory::validate() const {
    int N = n();
    if (static_cast<int>(delta_R.size()) != N || static_cast<int>(H.size()) != N) {
        throw std::invalid_argument("propagator dimensions do not match model size");
    }
    if (!gmatrix_is_symmetric(H)) throw std::invalid_argument("H must be symmetric");
    if (strict) {
        for (int x = 0; x < N; ++x) {
            for (int y = 0; y < N; ++y) {
                if (!delta_R[x][y].is_zero() && !order.precedes(y, x)) {
                    throw std::invalid_argument(
                        "strict mode: retarded propagator supported off the strict order");
                }
            }
        }
    }
}

GMatrix FreeTheory::propagator(PropagatorKind kind) const {
    const GMatrix& R = delta_R;
    GMatrix A = gmatrix_transpose(R);
    GaussianRational half(Rational(1, 2));
    GaussianRational ihalf(Rational(0), Rational(1, 2));
    switch (kind) {
        case PropagatorKind::Retarded: return R;
        case PropagatorKind::Advanced: return A;
        case PropagatorKind::Causal: return gmatrix_sub(R, A);
        case PropagatorKind::Dirac: return gmatrix_scaled(gmatrix_add(R, A), half);
        case PropagatorKind::Plus:
            return gmatrix_add(gmatrix_scaled(gmatrix_sub(R, A), ihalf), H);
        case PropagatorKind::Feynman:
            return gmatrix_add(gmatrix_scaled(gmatrix_add(R, A), ihalf), H);
    }
    throw std::logic_error("unknown propagator kind");
}

void Interaction::validate() const {
    for (const auto& [key, c] : V.terms()) {
        (void)key;
        for (const auto& [hl, v] : c.coefficients()) {
            (void)v;
            if (hl.first != 0 || hl.second != 0) {
                throw std::invalid_argument(
                    "interaction coefficients must be free of hbar and lambda");
            }
        }
    }
    if (diagonal_hessian) {
        for (const auto& [key, c] : V.terms()) {
            (void)c;
            for (size_t i = 1; i < key.size(); ++i) {
                if (key[i] != key[0]) {
                    throw std::invalid_argument(
                        "diagonal_hessian set but interaction couples distinct points");
                }
            }
        }
    }
}

PolyMatrix Interaction::hessian() const {
    int n = V.n_points();
    PolyMatrix h = pmatrix_zero(n, n, V.bounds());
    for (int i = 0; i < n; ++i) {
        PolyFunctional vi = V.partial(i);
        for (int j = i; j < n; ++j) {
            h[i][j] = vi.partial(j);
            h[j][i] = h[i][j];
        }
    }
    return h;
}

TruncatedSeries LambdaMode::power(SeriesBounds b, int k) const {
    if (formal) return TruncatedSeries::monomial(b, 0, k, GaussianRational(1));
    Rational p(1);
    for (int j = 0; j < k; ++j) p *= value;
    return TruncatedSeries::monomial(b, 0, 0, GaussianRational(p));
}

PolyMatrix interacting_propagator(const FreeTheory& th, const Interaction& inter,
                                  PropagatorKind kind, const LambdaMode& mode, SeriesBounds b) {
    if (kind != PropagatorKind::Retarded && kind != PropagatorKind::Advanced) {
        throw std::invalid_argument("interacting propagator only defined for retarded/advanced");
    }
    if (!mode.formal && !(th.strict && inter.diagonal_hessian)) {
        throw std::domain_error(
            "numeric lambda requires the nilpotent regime (strict order, diagonal hessian)");
    }
    int N = th.n();
    PolyMatrix delta = pmatrix_from_gmatrix(th.propagator(kind), N, b);
    PolyMatrix hess = inter.hessian();
    // Re-window the hessian coefficients onto b.
    for (auto& row : hess)
        for (auto& x : row) x = x.restricted(b);
    PolyMatrix term = delta;
    PolyMatrix acc = pmatrix_scaled(delta, mode.power(b, 0));
    int max_n = mode.formal ? b.lambda_max : N;
    for (int nstep = 1; nstep <= max_n; ++nstep) {
        term = pmatrix_mul(term, pmatrix_mul(hess, delta));
        if (pmatrix_is_zero(term)) break;
        GaussianRational sign((nstep % 2 == 0) ? Rational(1) : Rational(-1));
        PolyMatrix contrib = pmatrix_scaled(term, mode.power(b, nstep).scaled(sign));
        acc = pmatrix_add(acc, contrib);
    }
    return acc;
}

PolyMatrix pmatrix_partial(const PolyMatrix& m, int i) {
    PolyMatrix r = m;
    for (auto& row : r)
        for (auto& x : row) x = x.partial(i);
    return r;
}

SMatrix pmatrix_eval(const PolyMatrix& m, const FieldPoint& phi) {
    int n = static_cast<int>(m.size());
    SMatrix r(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(m[0][0].bounds())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = m[i][j].eval(phi);
    return r;
}

Separation causally_separated(const FreeTheory& th, const std::set<int>& sa,
                              const std::set<int>& sb) {
    if (!th.strict) {
        throw std::invalid_argument("causally_separated: model must be strict");
    }
    // sa fits below a causal cut avoiding sb iff no point of sb lies
    // at or below a point of sa.
    auto fits = [&](const std::set<int>& lo, const std::set<int>& hi) {
        for (int h : hi) {
            for (int l : lo) {
                if (h == l || th.order.precedes(h, l)) return false;
            }
        }
        return true;
    };
    if (fits(sa, sb)) return Separation::ABeforeB;
    if (fits(sb, sa)) return Separation::BBeforeA;
    return Separation::Neither;
}

FreeTheory fixture_m1() {
    FreeTheory th;
    th.order = CausalOrder::total(2);
    th.delta_R = gmatrix_zero(2);
    th.delta_R[1][0] = GaussianRational(1);
    th.H = gmatrix_zero(2);
    th.strict = true;
    th.validate();
    return th;
}

FreeTheory fixture_m2() {
    FreeTheory th;
    th.order = CausalOrder::total(3);
    th.delta_R = gmatrix_zero(3);
    th.delta_R[1][0] = GaussianRational(1);
    th.delta_R[2][0] = GaussianRational(1);
    th.delta_R[2][1] = GaussianRational(1);
    th.H = gmatrix_zero(3);
    th.strict = true;
    th.validate();
    return th;
}

Interaction fixture_m2_cubic(SeriesBounds b) {
    Interaction inter;
    inter.V = PolyFunctional::monomial(
        3, {1, 1, 1}, TruncatedSeries::monomial(b, 0, 0, GaussianRational(Rational(1, 6))));
    inter.diagonal_hessian = true;
    inter.validate();
    return inter;
}

SeriesBounds default_bounds() { return SeriesBounds{0, 3, 4}; }

}  // namespace starforge
