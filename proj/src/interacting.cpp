#include "starforge/interacting.hpp"

#include <algorithm>
#include <mutex>

namespace starforge {

namespace {

Rational aut_inverse(const Graph& g) {
    return Rational(1, static_cast<unsigned long>(aut_order(g)));
}

GraphDictionary free_advanced_dictionary(const MollerConfig& cfg, bool with_feynman,
                                         bool lambda_vertices) {
    const FreeTheory& th = cfg.theory;
    SeriesBounds b = cfg.bounds;
    std::optional<GMatrix> und;
    if (with_feynman) und = th.propagator(PropagatorKind::Feynman);
    std::optional<TruncatedSeries> pre;
    if (lambda_vertices) pre = cfg.mode.power(b, 1);
    return kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b, und, pre);
}

GraphDictionary interacting_dictionary(const MollerConfig& cfg, bool with_feynman) {
    const FreeTheory& th = cfg.theory;
    SeriesBounds b = cfg.bounds;
    GraphDictionary dict;
    dict.n_points = th.n();
    dict.bounds = b;
    dict.directed = interacting_propagator(th, cfg.inter, PropagatorKind::Advanced, cfg.mode, b);
    if (with_feynman) {
        dict.undirected = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Feynman), th.n(), b);
    }
    PolyFunctional V = cfg.inter.V.restricted(b);
    TruncatedSeries lam = cfg.mode.power(b, 1);
    dict.vertex = [V, lam](const std::vector<int>& tuple) {
        return V.partial(tuple).scaled(lam);
    };
    return dict;
}

}  // namespace

PolyFunctional star_tint_via_moller(const MollerConfig& cfg, const PolyFunctional& F,
                                    const PolyFunctional& G) {
    PolyFunctional rf = quantum_moller(cfg, F);
    PolyFunctional rg = quantum_moller(cfg, G);
    return quantum_moller_inverse(cfg, star(cfg.theory, StarKind::StarT, rf, rg));
}

PolyFunctional star_tint_via_G3(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G) {
    SeriesBounds b = cfg.bounds;
    if (!cfg.mode.formal) {
        throw std::domain_error("the acyclic-family route tracks lambda as a formal variable");
    }
    auto graphs = enumerate_family(graph_family("G3(2)"), b.lambda_max + b.hbar_max, b.lambda_max);
    GraphDictionary dict = free_advanced_dictionary(cfg, false, false);
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        if (k < 0 || k > b.hbar_max) return TruncatedSeries::zero(b);
        GaussianRational c = GaussianRational::i_pow(-k);  // (-i)^(e-v)
        if (g.v() % 2 == 1) c = -c;                        // (-lambda)^v
        return TruncatedSeries::monomial(b, k, g.v(), c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F, G}, coeff, cfg.jobs);
}

PolyFunctional star_tint_via_G5(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G) {
    SeriesBounds b = cfg.bounds;
    auto graphs = enumerate_family(graph_family("G5(2)"), 3 * b.hbar_max, 2 * b.hbar_max);
    GraphDictionary dict = interacting_dictionary(cfg, false);
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        if (k < 0 || k > b.hbar_max) return TruncatedSeries::zero(b);
        GaussianRational c = GaussianRational::i_pow(-k);  // (-i)^(e-v)
        if (g.v() % 2 == 1) c = -c;                        // (-1)^v
        return TruncatedSeries::monomial(b, k, 0, c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F, G}, coeff, cfg.jobs);
}

PolyFunctional star_hint_via_transport(const MollerConfig& cfg, const PolyFunctional& F,
                                       const PolyFunctional& G) {
    PolyFunctional f = time_ordering_H(cfg.theory, F, true);
    PolyFunctional g = time_ordering_H(cfg.theory, G, true);
    return time_ordering_H(cfg.theory, star_tint_via_G3(cfg, f, g));
}

namespace {

PolyFunctional star_hint_family(const MollerConfig& cfg, const char* family,
                                const PolyFunctional& F, const PolyFunctional& G) {
    SeriesBounds b = cfg.bounds;
    auto graphs = enumerate_family(graph_family(family), 3 * b.hbar_max, 2 * b.hbar_max);
    GraphDictionary dict = interacting_dictionary(cfg, true);
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        if (k < 0 || k > b.hbar_max) return TruncatedSeries::zero(b);
        GaussianRational c = GaussianRational::i_pow(-(g.v() + g.d()));  // (-i)^(v+d)
        return TruncatedSeries::monomial(b, k, 0, c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F, G}, coeff, cfg.jobs);
}

}  // namespace

PolyFunctional star_hint_via_G7(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G) {
    return star_hint_family(cfg, "G7(2)", F, G);
}

PolyFunctional star_hint_via_G8(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G) {
    return star_hint_family(cfg, "G8(2)", F, G);
}

PolyFunctional star_t_classical(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G) {
    FieldMap rmap = classical_moller_map(cfg);
    FieldMap rinv = classical_moller_inverse_map(cfg);
    PolyFunctional prod =
        star(cfg.theory, StarKind::StarT, pullback(F, rmap), pullback(G, rmap));
    return pullback(prod, rinv);
}

std::vector<LowOrderTerm> low_order_table(int order) {
    if (order < 0) throw std::invalid_argument("order must be nonnegative");
    static std::mutex mu;
    static std::map<int, std::vector<LowOrderTerm>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(order);
        if (it != cache.end()) return it->second;
    }
    auto graphs = enumerate_family(graph_family("G5(2)"), 3 * order, 2 * order);
    std::vector<LowOrderTerm> out;
    for (const auto& g : graphs) {
        if (g.e() - g.v() != order) continue;
        LowOrderTerm t;
        t.graph = g;
        t.hbar_power = order;
        t.lambda_power = g.v();
        t.coefficient = GaussianRational::i_pow(-order) * GaussianRational(aut_inverse(g));
        if (g.v() % 2 == 1) t.coefficient = -t.coefficient;
        out.push_back(std::move(t));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(order, std::move(out)).first->second;
}

void KGraph::validate() const {
    int V = vertex_count();
    for (size_t u = 0; u < vertices.size(); ++u) {
        int self = 2 + static_cast<int>(u);
        const KVertex& kv = vertices[u];
        if (kv.left < 0 || kv.left >= V || kv.right < 0 || kv.right >= V) {
            throw std::invalid_argument("K-graph edge target out of range");
        }
        if (kv.left == self || kv.right == self) {
            throw std::invalid_argument("K-graph vertices may not point at themselves");
        }
    }
}

namespace {

// A derivative provider for the interacting advanced kernel: given
// (first index, second index, derivative tuple) produce the entry.
using KernelDeriv = std::function<PolyFunctional(int, int, const std::vector<int>&)>;

PolyFunctional eval_kgraph_impl(const MollerConfig& cfg, const KGraph& kg,
                                const PolyFunctional& F, const PolyFunctional& G,
                                const KernelDeriv& kd) {
    kg.validate();
    SeriesBounds b = cfg.bounds;
    int N = cfg.theory.n();
    int nK = static_cast<int>(kg.vertices.size());
    struct HalfEdge {
        int owner;  // K-vertex index (0-based)
        int side;   // 0 = left, 1 = right
        int target;
    };
    std::vector<HalfEdge> edges;
    for (int u = 0; u < nK; ++u) {
        edges.push_back({u, 0, kg.vertices[u].left});
        edges.push_back({u, 1, kg.vertices[u].right});
    }
    PolyFunctional acc = PolyFunctional::zero(N, b);
    std::vector<int> idx(edges.size(), 0);
    while (true) {
        // factor per K-vertex and per argument
        PolyFunctional prod = PolyFunctional::constant(N, TruncatedSeries::one(b));
        bool dead = false;
        for (int u = 0; u < nK && !dead; ++u) {
            int a = -1, bb = -1;
            std::vector<int> incoming;
            for (size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].owner == u) {
                    (edges[e].side == 0 ? a : bb) = idx[e];
                }
                if (edges[e].target == 2 + u) incoming.push_back(idx[e]);
            }
            PolyFunctional f = kd(a, bb, incoming);
            if (f.is_zero()) {
                dead = true;
                break;
            }
            prod = prod * f;
        }
        if (!dead) {
            for (int j = 0; j < 2 && !dead; ++j) {
                std::vector<int> incoming;
                for (size_t e = 0; e < edges.size(); ++e) {
                    if (edges[e].target == j) incoming.push_back(idx[e]);
                }
                PolyFunctional d = (j == 0 ? F : G).partial(incoming);
                if (d.is_zero()) {
                    dead = true;
                    break;
                }
                prod = prod * d;
            }
        }
        if (!dead) acc += prod;

        size_t e = 0;
        while (e < idx.size()) {
            if (++idx[e] < N) break;
            idx[e] = 0;
            ++e;
        }
        if (e == idx.size()) break;
        if (idx.empty()) break;
    }
    return acc;
}

}  // namespace

PolyFunctional eval_kgraph(const MollerConfig& cfg, const KGraph& kg, const PolyFunctional& F,
                           const PolyFunctional& G) {
    PolyMatrix K = interacting_propagator(cfg.theory, cfg.inter, PropagatorKind::Advanced,
                                          cfg.mode, cfg.bounds);
    KernelDeriv kd = [K](int a, int b, const std::vector<int>& tuple) {
        return K[a][b].partial(tuple);
    };
    return eval_kgraph_impl(cfg, kg, F, G, kd);
}

PolyFunctional eval_kgraph_translated(const MollerConfig& cfg, const KGraph& kg,
                                      const PolyFunctional& F, const PolyFunctional& G) {
    SeriesBounds b = cfg.bounds;
    int N = cfg.theory.n();
    PolyMatrix K = interacting_propagator(cfg.theory, cfg.inter, PropagatorKind::Advanced,
                                          cfg.mode, b);
    PolyFunctional V = cfg.inter.V.restricted(b);
    TruncatedSeries lam = cfg.mode.power(b, 1);
    // S(T)[p][q] = derivative of lambda V by T and p, q
    auto s_matrix = [&](const std::vector<int>& T) {
        PolyMatrix m = pmatrix_zero(N, N, b);
        PolyFunctional base = V.partial(T).scaled(lam);
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) m[p][q] = base.partial(p).partial(q);
        return m;
    };
    // K^{(r)} = sum over ordered lists of disjoint nonempty blocks
    // covering the tuple of (-1)^blocks K S(T1) K ... S(Tk) K, the
    // image of repeatedly applying K' = -K S''' K.
    // Iterating K' = -K S''' K (with the S-factors then
    // differentiated directly) expands the r-th derivative of K as a
    // sum over ordered lists of disjoint nonempty blocks covering the
    // derivative indices:
    //   K^{(r)}[T] = sum (-1)^k K S(T1) K S(T2) ... S(Tk) K.
    auto kderiv = [&](const std::vector<int>& tuple) {
        if (tuple.empty()) return K;
        int r = static_cast<int>(tuple.size());
        PolyMatrix acc = pmatrix_zero(N, N, b);
        std::vector<std::vector<int>> blocks;
        std::function<void(int)> gen = [&](int pos) {
            if (pos == r) {
                PolyMatrix prod = K;
                for (const auto& T : blocks) {
                    prod = pmatrix_mul(prod, pmatrix_mul(s_matrix(T), K));
                }
                GaussianRational sign((blocks.size() % 2 == 0) ? Rational(1) : Rational(-1));
                acc = pmatrix_add(acc,
                                  pmatrix_scaled(prod, TruncatedSeries::monomial(b, 0, 0, sign)));
                return;
            }
            for (auto& T : blocks) {
                T.push_back(tuple[pos]);
                gen(pos + 1);
                T.pop_back();
            }
            for (size_t at = 0; at <= blocks.size(); ++at) {
                blocks.insert(blocks.begin() + at, {tuple[pos]});
                gen(pos + 1);
                blocks.erase(blocks.begin() + at);
            }
        };
        gen(0);
        return acc;
    };
    std::map<std::vector<int>, PolyMatrix> memo;
    KernelDeriv kd = [&](int a, int bb, const std::vector<int>& tuple) {
        std::vector<int> t = tuple;
        std::sort(t.begin(), t.end());
        auto it = memo.find(t);
        if (it == memo.end()) it = memo.emplace(t, kderiv(t)).first;
        return it->second[a][bb];
    };
    return eval_kgraph_impl(cfg, kg, F, G, kd);
}

std::vector<KGraph> kgraph_b2_terms() {
    // the two-vertex wedge graphs: both at the arguments; a derivative
    // into the first vertex from the left or the right; and the
    // crossed pair exchanging one edge each
    KGraph a{{{0, 1}, {0, 1}}};
    KGraph b{{{0, 1}, {0, 2}}};
    KGraph c{{{0, 1}, {2, 1}}};
    KGraph d{{{0, 3}, {2, 1}}};
    return {a, b, c, d};
}

namespace {

SMatrix constant_part(const PolyMatrix& m, int n_points) {
    FieldPoint zero;
    zero.values.assign(n_points, Rational(0));
    return pmatrix_eval(m, zero);
}

}  // namespace

QuadraticChecks perturbative_agreement(const MollerConfig& orig, const PolyFunctional& F,
                                       const PolyFunctional& G) {
    if (orig.inter.V.degree() > 2) {
        throw std::invalid_argument("perturbative agreement check expects a quadratic interaction");
    }
    // All routes are computed with the coupling as a formal variable
    // (every chain terminates, so the truncation is exact); when the
    // caller asks for an exact coupling value the two sides are
    // evaluated at it before comparing.
    MollerConfig cfg = orig;
    cfg.mode = LambdaMode::formal_mode();
    auto agree = [&](const PolyFunctional& lhs, const PolyFunctional& rhs) {
        if (orig.mode.formal) return lhs == rhs;
        return lhs.lambda_evaluated(orig.mode.value) == rhs.lambda_evaluated(orig.mode.value);
    };
    const FreeTheory& th = cfg.theory;
    SeriesBounds b = cfg.bounds;
    int N = th.n();
    QuadraticChecks out;

    // delta = i Delta^R V'' Delta^A, a constant symmetric matrix
    PolyMatrix hess = cfg.inter.hessian();
    for (auto& row : hess)
        for (auto& x : row) x = x.restricted(b);
    PolyMatrix dR = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Retarded), N, b);
    PolyMatrix dA = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Advanced), N, b);
    PolyMatrix deltaP = pmatrix_mul(dR, pmatrix_mul(hess, dA));
    SMatrix delta = smatrix_scaled(constant_part(deltaP, N), TruncatedSeries::monomial(
                                                                 b, 0, 0, GaussianRational(0, 1)));
    SMatrix lambda_delta = smatrix_scaled(delta, cfg.mode.power(b, 1));

    FieldMap rmap = classical_moller_map(cfg);

    // R = alpha_{lambda delta} o r
    {
        PolyFunctional lhs = quantum_moller(cfg, F);
        PolyFunctional rhs = gauge_map(lambda_delta, pullback(F, rmap));
        out.moller_is_gauge_times_classical = agree(lhs, rhs);
    }

    // Weyl transport: T alpha_{lambda delta} r T^{-1} = r-pullback o
    // alpha_{i(Delta^D_S - Delta^D_S0)}
    {
        PolyFunctional lhs = time_ordering(
            th, gauge_map(lambda_delta, pullback(time_ordering(th, F, true), rmap)));
        PolyMatrix RS = interacting_propagator(th, cfg.inter, PropagatorKind::Retarded, cfg.mode, b);
        PolyMatrix AS = interacting_propagator(th, cfg.inter, PropagatorKind::Advanced, cfg.mode, b);
        SMatrix dDS = constant_part(
            pmatrix_scaled(pmatrix_add(RS, AS),
                           TruncatedSeries::monomial(b, 0, 0, GaussianRational(Rational(1, 2)))),
            N);
        SMatrix dD0 = smatrix_from_gmatrix(th.propagator(PropagatorKind::Dirac), b);
        SMatrix Y = smatrix_scaled(smatrix_sub(dDS, dD0),
                                   TruncatedSeries::monomial(b, 0, 0, GaussianRational(0, 1)));
        PolyFunctional rhs = pullback(gauge_map(Y, F), rmap);
        out.weyl_moller_route = agree(lhs, rhs);
    }

    // star_tint is the exponential product with kernel -i Delta^A_S
    {
        PolyMatrix AS = interacting_propagator(th, cfg.inter, PropagatorKind::Advanced, cfg.mode, b);
        SMatrix kernel = smatrix_scaled(constant_part(AS, N),
                                        TruncatedSeries::monomial(b, 0, 0, GaussianRational(0, -1)));
        PolyFunctional lhs = star_tint_via_G5(cfg, F, G);
        PolyFunctional rhs = exp_product(kernel, F, G);
        out.star_tint_is_exponential = agree(lhs, rhs);
    }
    return out;
}

}  // namespace starforge
