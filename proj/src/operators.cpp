#include "starforge/operators.hpp"

#include <thread>

namespace starforge {

GraphDictionary kernel_dictionary(const FreeTheory& th, const Interaction& inter,
                                  const GMatrix& directed_kernel, SeriesBounds b,
                                  std::optional<GMatrix> undirected_kernel,
                                  std::optional<TruncatedSeries> vertex_prefactor) {
    GraphDictionary d;
    d.n_points = th.n();
    d.bounds = b;
    d.directed = pmatrix_from_gmatrix(directed_kernel, th.n(), b);
    if (undirected_kernel) {
        d.undirected = pmatrix_from_gmatrix(*undirected_kernel, th.n(), b);
    }
    PolyFunctional V = inter.V.restricted(b);
    auto pre = vertex_prefactor;
    d.vertex = [V, pre](const std::vector<int>& tuple) {
        PolyFunctional r = V.partial(tuple);
        if (pre) r = r.scaled(*pre);
        return r;
    };
    return d;
}

namespace {

struct SlotEntry {
    int first_vertex;   // vertex holding the kernel's first index
    int second_vertex;  // vertex holding the kernel's second index
    const PolyMatrix* kernel;
};

struct EvalContext {
    const Graph* g;
    const GraphDictionary* dict;
    const std::vector<PolyFunctional>* args;
    std::vector<SlotEntry> edge_slots;
    std::vector<std::vector<std::pair<int, int>>> nonzero;  // per edge: (first,second) index pairs
    std::vector<int> remaining;                             // open endpoint count per vertex
    std::vector<std::vector<int>> tuple;                    // accumulated indices per vertex
    std::vector<std::map<std::vector<int>, PolyFunctional>> arg_derivs;
    PolyFunctional result;
};

const PolyFunctional& arg_derivative(EvalContext& ctx, int j, std::vector<int> tuple) {
    std::sort(tuple.begin(), tuple.end());
    auto& memo = ctx.arg_derivs[j];
    auto it = memo.find(tuple);
    if (it == memo.end()) {
        it = memo.emplace(tuple, (*ctx.args)[j].partial(tuple)).first;
    }
    return it->second;
}

void eval_rec(EvalContext& ctx, size_t edge_idx, const PolyFunctional& acc) {
    if (acc.is_zero()) return;
    if (edge_idx == ctx.edge_slots.size()) {
        PolyFunctional prod = acc;
        for (int j = 0; j < ctx.g->n_labelled; ++j) {
            prod = prod * arg_derivative(ctx, j, ctx.tuple[j]);
            if (prod.is_zero()) return;
        }
        ctx.result += prod;
        return;
    }
    const SlotEntry& slot = ctx.edge_slots[edge_idx];
    for (const auto& [x, y] : ctx.nonzero[edge_idx]) {
        const PolyFunctional& kval = (*slot.kernel)[x][y];
        ctx.tuple[slot.first_vertex].push_back(x);
        ctx.tuple[slot.second_vertex].push_back(y);
        ctx.remaining[slot.first_vertex]--;
        ctx.remaining[slot.second_vertex]--;

        PolyFunctional next = acc * kval;
        bool dead = next.is_zero();
        // fold in unlabelled vertex tensors as soon as they complete
        std::vector<int> completed;
        for (int v : {slot.first_vertex, slot.second_vertex}) {
            if (dead) break;
            if (v >= ctx.g->n_labelled && ctx.remaining[v] == 0 &&
                std::find(completed.begin(), completed.end(), v) == completed.end()) {
                completed.push_back(v);
                std::vector<int> t = ctx.tuple[v];
                std::sort(t.begin(), t.end());
                PolyFunctional tv = ctx.dict->vertex(t);
                if (tv.is_zero()) {
                    dead = true;
                    break;
                }
                next = next * tv;
                dead = next.is_zero();
            }
        }
        if (!dead) eval_rec(ctx, edge_idx + 1, next);

        ctx.remaining[slot.first_vertex]++;
        ctx.remaining[slot.second_vertex]++;
        ctx.tuple[slot.first_vertex].pop_back();
        ctx.tuple[slot.second_vertex].pop_back();
    }
}

}  // namespace

PolyFunctional eval_graph(const Graph& g, const GraphDictionary& dict,
                          const std::vector<PolyFunctional>& args) {
    if (static_cast<int>(args.size()) != g.n_labelled) {
        throw std::invalid_argument("argument count does not match labelled vertices");
    }
    EvalContext ctx;
    ctx.g = &g;
    ctx.dict = &dict;
    ctx.args = &args;
    ctx.result = PolyFunctional::zero(dict.n_points, dict.bounds);
    ctx.remaining.assign(g.vertex_count(), 0);
    ctx.tuple.assign(g.vertex_count(), {});
    ctx.arg_derivs.resize(g.n_labelled);

    int N = dict.n_points;
    for (const auto& e : g.edges) {
        SlotEntry slot;
        std::vector<std::pair<int, int>> nz;
        if (e.kind == EdgeKind::Directed) {
            // kernel first index at the target, second at the source
            slot.first_vertex = e.tgt;
            slot.second_vertex = e.src;
            slot.kernel = &dict.directed;
        } else {
            if (!dict.undirected) {
                throw std::invalid_argument("graph has undirected edges but no undirected kernel");
            }
            slot.first_vertex = e.src;
            slot.second_vertex = e.tgt;
            slot.kernel = &*dict.undirected;
        }
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                if (!(*slot.kernel)[x][y].is_zero()) nz.emplace_back(x, y);
        if (nz.empty()) return ctx.result;  // a dead edge kills the graph
        ctx.edge_slots.push_back(slot);
        ctx.nonzero.push_back(std::move(nz));
        ctx.remaining[e.src]++;
        ctx.remaining[e.tgt]++;
    }

    // degenerate unlabelled vertices of valency zero cannot occur in
    // enumerated families, but guard anyway
    for (int u = g.n_labelled; u < g.vertex_count(); ++u) {
        if (ctx.remaining[u] == 0) {
            PolyFunctional tv = dict.vertex({});
            if (tv.is_zero()) return ctx.result;
        }
    }

    PolyFunctional one = PolyFunctional::constant(dict.n_points, TruncatedSeries::one(dict.bounds));
    eval_rec(ctx, 0, one);
    return ctx.result;
}

PolyFunctional graph_sum(const std::vector<Graph>& graphs, const GraphDictionary& dict,
                         const std::vector<PolyFunctional>& args,
                         const std::function<TruncatedSeries(const Graph&)>& coefficient,
                         int jobs) {
    std::vector<PolyFunctional> partial(graphs.size(),
                                        PolyFunctional::zero(dict.n_points, dict.bounds));
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            TruncatedSeries c = coefficient(graphs[i]);
            if (c.is_zero()) continue;
            partial[i] = eval_graph(graphs[i], dict, args).scaled(c);
        }
    };
    if (jobs <= 1 || graphs.size() <= 1) {
        work(0, graphs.size());
    } else {
        size_t n = graphs.size();
        size_t workers = std::min<size_t>(jobs, n);
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w) {
            size_t lo = n * w / workers, hi = n * (w + 1) / workers;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    PolyFunctional acc = PolyFunctional::zero(dict.n_points, dict.bounds);
    for (const auto& p : partial) acc += p;  // fixed (canonical) order
    return acc;
}

PolyFunctional exp_product(const SMatrix& K, const PolyFunctional& F, const PolyFunctional& G) {
    SeriesBounds b = F.bounds();
    int N = F.n_points();
    std::vector<std::pair<int, int>> nz;
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            if (!K[x][y].is_zero()) nz.emplace_back(x, y);

    PolyFunctional acc = F * G;
    int max_n = std::min({b.hbar_max - b.hbar_min, F.degree(), G.degree()});
    std::vector<int> xs, ys;
    for (int n = 1; n <= max_n; ++n) {
        PolyFunctional term = PolyFunctional::zero(N, b);
        // iterate over multisets of kernel entries; the multinomial
        // weight times 1/n! gives 1/prod(run lengths!)
        std::vector<size_t> pick;
        std::function<void(size_t, const TruncatedSeries&, Rational)> rec =
            [&](size_t start, const TruncatedSeries& kacc, Rational inv_weight) {
                if (pick.size() == static_cast<size_t>(n)) {
                    xs.clear();
                    ys.clear();
                    for (size_t idx : pick) {
                        xs.push_back(nz[idx].first);
                        ys.push_back(nz[idx].second);
                    }
                    PolyFunctional dF = F.partial(xs);
                    if (dF.is_zero()) return;
                    PolyFunctional dG = G.partial(ys);
                    if (dG.is_zero()) return;
                    term += (dF * dG).scaled(kacc.scaled(GaussianRational(inv_weight)));
                    return;
                }
                for (size_t idx = start; idx < nz.size(); ++idx) {
                    // run length of idx so far
                    int run = 1;
                    for (auto it = pick.rbegin(); it != pick.rend() && *it == idx; ++it) ++run;
                    pick.push_back(idx);
                    rec(idx, K[nz[idx].first][nz[idx].second] * kacc,
                        inv_weight / Rational(run));
                    pick.pop_back();
                }
            };
        rec(0, TruncatedSeries::one(b), Rational(1));
        if (term.is_zero()) continue;
        acc += term.shifted(n, 0, GaussianRational(1));
    }
    return acc;
}

SMatrix star_kernel(const FreeTheory& th, StarKind kind, SeriesBounds b) {
    GaussianRational i(Rational(0), Rational(1));
    GaussianRational ihalf(Rational(0), Rational(1, 2));
    GMatrix k;
    switch (kind) {
        case StarKind::Weyl:
            k = gmatrix_scaled(th.propagator(PropagatorKind::Causal), ihalf);
            break;
        case StarKind::TimeOrdered:
            k = gmatrix_scaled(th.propagator(PropagatorKind::Dirac), i);
            break;
        case StarKind::Wick: k = th.propagator(PropagatorKind::Plus); break;
        case StarKind::WickTimeOrdered: k = th.propagator(PropagatorKind::Feynman); break;
        case StarKind::StarT:
            k = gmatrix_scaled(th.propagator(PropagatorKind::Advanced), -i);
            break;
    }
    return smatrix_from_gmatrix(k, b);
}

PolyFunctional star(const FreeTheory& th, StarKind kind, const PolyFunctional& F,
                    const PolyFunctional& G) {
    return exp_product(star_kernel(th, kind, F.bounds()), F, G);
}

PolyFunctional gauge_map(const SMatrix& Y, const PolyFunctional& F) {
    if (!smatrix_is_symmetric(Y)) throw std::invalid_argument("gauge kernel must be symmetric");
    SeriesBounds b = F.bounds();
    int N = F.n_points();
    auto apply_D = [&](const PolyFunctional& f) {
        PolyFunctional r = PolyFunctional::zero(N, b);
        for (int x = 0; x < N; ++x) {
            for (int y = 0; y < N; ++y) {
                if (Y[x][y].is_zero()) continue;
                PolyFunctional d = f.partial(x).partial(y);
                if (!d.is_zero()) r += d.scaled(Y[x][y]);
            }
        }
        return r;
    };
    PolyFunctional acc = F;
    PolyFunctional term = F;
    Rational factorial(1);
    int max_k = b.hbar_max - b.hbar_min;
    for (int k = 1; k <= max_k; ++k) {
        term = apply_D(term);
        if (term.is_zero()) break;
        factorial *= k;
        Rational coeff = Rational(1) / factorial;
        for (int j = 0; j < k; ++j) coeff /= 2;
        acc += term.shifted(k, 0, GaussianRational(coeff));
    }
    return acc;
}

PolyFunctional time_ordering(const FreeTheory& th, const PolyFunctional& F, bool invert) {
    GaussianRational c(Rational(0), invert ? Rational(-1) : Rational(1));
    GMatrix Y = gmatrix_scaled(th.propagator(PropagatorKind::Dirac), c);
    return gauge_map(smatrix_from_gmatrix(Y, F.bounds()), F);
}

PolyFunctional time_ordering_H(const FreeTheory& th, const PolyFunctional& F, bool invert) {
    GMatrix Y = th.propagator(PropagatorKind::Feynman);
    if (invert) Y = gmatrix_scaled(Y, GaussianRational(-1));
    return gauge_map(smatrix_from_gmatrix(Y, F.bounds()), F);
}

PolyFunctional peierls_bracket_free(const FreeTheory& th, const PolyFunctional& F,
                                    const PolyFunctional& G) {
    GMatrix causal = th.propagator(PropagatorKind::Causal);
    int N = th.n();
    PolyFunctional r = PolyFunctional::zero(N, F.bounds());
    for (int x = 0; x < N; ++x) {
        for (int y = 0; y < N; ++y) {
            if (causal[x][y].is_zero()) continue;
            PolyFunctional fx = F.partial(x);
            if (fx.is_zero()) continue;
            PolyFunctional gy = G.partial(y);
            if (gy.is_zero()) continue;
            r += (fx * gy).scaled(causal[x][y]);
        }
    }
    return r;
}

PolyFunctional peierls_bracket(const FreeTheory& th, const Interaction& inter,
                               const LambdaMode& mode, const PolyFunctional& F,
                               const PolyFunctional& G) {
    SeriesBounds b = F.bounds();
    PolyMatrix R = interacting_propagator(th, inter, PropagatorKind::Retarded, mode, b);
    PolyMatrix A = interacting_propagator(th, inter, PropagatorKind::Advanced, mode, b);
    PolyMatrix causal = pmatrix_sub(R, A);
    int N = th.n();
    PolyFunctional r = PolyFunctional::zero(N, b);
    for (int x = 0; x < N; ++x) {
        for (int y = 0; y < N; ++y) {
            if (causal[x][y].is_zero()) continue;
            PolyFunctional fx = F.partial(x);
            if (fx.is_zero()) continue;
            PolyFunctional gy = G.partial(y);
            if (gy.is_zero()) continue;
            r += causal[x][y] * fx * gy;
        }
    }
    return r;
}

}  // namespace starforge
