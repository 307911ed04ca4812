#include "starforge/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace starforge {

int Graph::d() const {
    int c = 0;
    for (const auto& e : edges)
        if (e.kind == EdgeKind::Directed) ++c;
    return c;
}

int Graph::in_degree(int vtx) const {
    int c = 0;
    for (const auto& e : edges)
        if (e.kind == EdgeKind::Directed && e.tgt == vtx) ++c;
    return c;
}

int Graph::out_degree(int vtx) const {
    int c = 0;
    for (const auto& e : edges)
        if (e.kind == EdgeKind::Directed && e.src == vtx) ++c;
    return c;
}

int Graph::und_degree(int vtx) const {
    int c = 0;
    for (const auto& e : edges) {
        if (e.kind != EdgeKind::Undirected) continue;
        if (e.src == vtx) ++c;
        if (e.tgt == vtx) ++c;
    }
    return c;
}

int Graph::valency(int vtx) const { return in_degree(vtx) + out_degree(vtx) + und_degree(vtx); }

bool Graph::has_directed_cycle() const {
    int V = vertex_count();
    std::vector<std::vector<int>> adj(V);
    for (const auto& e : edges) {
        if (e.kind == EdgeKind::Directed) {
            if (e.src == e.tgt) return true;
            adj[e.src].push_back(e.tgt);
        }
    }
    std::vector<int> state(V, 0);
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int w : adj[v]) {
            if (state[w] == 1) return true;
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < V; ++v)
        if (state[v] == 0 && dfs(v)) return true;
    return false;
}

bool Graph::has_directed_path(int from, int to) const {
    int V = vertex_count();
    std::vector<std::vector<int>> adj(V);
    for (const auto& e : edges)
        if (e.kind == EdgeKind::Directed) adj[e.src].push_back(e.tgt);
    std::vector<bool> seen(V, false);
    std::queue<int> q;
    q.push(from);
    // a path must use at least one edge
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (w == to) return true;
            if (!seen[w]) {
                seen[w] = true;
                q.push(w);
            }
        }
    }
    return false;
}

bool Graph::connected() const {
    int V = vertex_count();
    if (V <= 1) return true;
    std::vector<std::vector<int>> adj(V);
    for (const auto& e : edges) {
        adj[e.src].push_back(e.tgt);
        adj[e.tgt].push_back(e.src);
    }
    std::vector<bool> seen(V, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == V;
}

void Graph::normalize_edges() {
    for (auto& e : edges) {
        if (e.kind == EdgeKind::Undirected && e.src > e.tgt) std::swap(e.src, e.tgt);
    }
    std::sort(edges.begin(), edges.end());
}

std::string Graph::key() const {
    auto vname = [&](int v) -> std::string {
        if (v < n_labelled) return std::to_string(v + 1);
        return std::string(1, static_cast<char>('a' + (v - n_labelled)));
    };
    std::ostringstream os;
    os << "L" << n_labelled << ":";
    if (edges.empty()) os << "empty";
    bool first = true;
    for (const auto& e : edges) {
        if (!first) os << ",";
        first = false;
        os << vname(e.src) << (e.kind == EdgeKind::Directed ? ">" : "-") << vname(e.tgt);
    }
    return os.str();
}

namespace {

using Cells = std::vector<std::vector<int>>;  // unlabelled vertex ids, grouped

// Iteratively refine unlabelled vertices into isomorphism-invariant
// ordered cells by neighborhood signatures.
Cells refine_cells(const Graph& g) {
    int L = g.n_labelled;
    int V = g.vertex_count();
    std::vector<int> color(V);
    for (int v = 0; v < L; ++v) color[v] = v;

    using Sig = std::vector<std::tuple<int, int, int>>;  // (kind, role, other color)
    auto signature = [&](int v) {
        Sig s;
        for (const auto& e : g.edges) {
            if (e.kind == EdgeKind::Directed) {
                if (e.src == v) s.emplace_back(0, 0, color[e.tgt]);
                if (e.tgt == v) s.emplace_back(0, 1, color[e.src]);
            } else {
                if (e.src == v) s.emplace_back(1, 2, color[e.tgt]);
                if (e.tgt == v) s.emplace_back(1, 2, color[e.src]);
            }
        }
        std::sort(s.begin(), s.end());
        return s;
    };

    // initial colors from degree signatures
    {
        std::map<std::tuple<int, int, int>, int> rank;
        for (int v = L; v < V; ++v) {
            rank[{g.in_degree(v), g.out_degree(v), g.und_degree(v)}] = 0;
        }
        int r = L;
        for (auto& [k, val] : rank) val = r++;
        for (int v = L; v < V; ++v) {
            color[v] = rank[{g.in_degree(v), g.out_degree(v), g.und_degree(v)}];
        }
    }

    int distinct = 0;
    for (int round = 0; round <= g.n_unlabelled; ++round) {
        std::map<std::pair<int, Sig>, int> rank;
        std::vector<std::pair<int, Sig>> sigs(V);
        for (int v = L; v < V; ++v) {
            sigs[v] = {color[v], signature(v)};
            rank[sigs[v]] = 0;
        }
        int r = L;
        for (auto& [k, val] : rank) val = r++;
        for (int v = L; v < V; ++v) color[v] = rank[sigs[v]];
        int nd = static_cast<int>(rank.size());
        if (nd == distinct) break;
        distinct = nd;
    }

    std::map<int, std::vector<int>> grouped;
    for (int v = L; v < V; ++v) grouped[color[v]].push_back(v);
    Cells cells;
    for (auto& [c, vs] : grouped) cells.push_back(vs);
    return cells;
}

// Odometer over within-cell permutations; cells hold the current
// permutation, advance returns false once all have been visited.
bool advance(Cells& cells) {
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        if (std::next_permutation(it->begin(), it->end())) return true;
    }
    return false;
}

std::vector<GraphEdge> remapped_edges(const Graph& g, const std::vector<int>& vertex_map) {
    std::vector<GraphEdge> es = g.edges;
    for (auto& e : es) {
        e.src = vertex_map[e.src];
        e.tgt = vertex_map[e.tgt];
        if (e.kind == EdgeKind::Undirected && e.src > e.tgt) std::swap(e.src, e.tgt);
    }
    std::sort(es.begin(), es.end());
    return es;
}

std::vector<int> map_from_cells(const Graph& g, const Cells& cells) {
    int L = g.n_labelled;
    std::vector<int> m(g.vertex_count());
    for (int v = 0; v < L; ++v) m[v] = v;
    int slot = L;
    for (const auto& cell : cells)
        for (int v : cell) m[v] = slot++;
    return m;
}

}  // namespace

Graph canonicalize(const Graph& g0) {
    Graph g = g0;
    g.normalize_edges();
    if (g.n_unlabelled <= 1) return g;
    Cells cells = refine_cells(g);
    bool nontrivial = false;
    for (const auto& c : cells)
        if (c.size() > 1) nontrivial = true;
    if (!nontrivial) {
        g.edges = remapped_edges(g, map_from_cells(g, cells));
        return g;
    }
    std::optional<std::vector<GraphEdge>> best;
    Cells it = cells;
    do {
        auto es = remapped_edges(g, map_from_cells(g, it));
        if (!best || es < *best) best = std::move(es);
    } while (advance(it));
    g.edges = *best;
    return g;
}

std::uint64_t aut_order(const Graph& g0) {
    Graph g = g0;
    g.normalize_edges();
    std::uint64_t vertex_perms = 1;
    if (g.n_unlabelled > 1) {
        Cells cells = refine_cells(g);
        std::uint64_t count = 0;
        Cells it = cells;
        // compare against g itself: identity lies within the cell orbits
        Cells base = cells;
        std::vector<int> base_map = map_from_cells(g, base);
        auto reference = remapped_edges(g, base_map);
        do {
            if (remapped_edges(g, map_from_cells(g, it)) == reference) ++count;
        } while (advance(it));
        vertex_perms = count;
    }
    std::uint64_t parallel = 1;
    auto fact = [](int m) {
        std::uint64_t f = 1;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    std::map<GraphEdge, int> classes;
    for (const auto& e : g.edges) classes[e]++;
    for (const auto& [e, m] : classes) {
        parallel *= fact(m);
        if (e.kind == EdgeKind::Undirected && e.src == e.tgt) {
            parallel <<= m;  // each undirected loop flip
        }
    }
    return vertex_perms * parallel;
}

namespace {

bool labelled_path_free(const Graph& g) {
    for (int j = 0; j < g.n_labelled; ++j)
        for (int k = j + 1; k < g.n_labelled; ++k)
            if (g.has_directed_path(j, k)) return false;
    return true;
}

GraphFamily make_generic(int n) {
    GraphFamily f;
    f.name = "G(" + std::to_string(n) + ")";
    f.n_labelled = n;
    f.undirected_edges = false;
    f.edge_admissible = [](const Graph&, const GraphEdge&) { return true; };
    f.viable = [](const Graph&) { return true; };
    f.vertex_deficit = [](const Graph&, int) { return 0; };
    f.member = [](const Graph&) { return true; };
    return f;
}

}  // namespace

GraphFamily graph_family(const std::string& name) {
    GraphFamily f;
    f.name = name;
    auto no_deficit = [](const Graph&, int) { return 0; };
    auto always = [](const Graph&) { return true; };
    auto acyclic_no_labelled_paths = [](const Graph& g) {
        return !g.has_directed_cycle() && labelled_path_free(g);
    };
    auto in_out_deficit = [](const Graph& g, int u) {
        return (g.in_degree(u) == 0 ? 1 : 0) + (g.out_degree(u) == 0 ? 1 : 0);
    };

    if (name == "G(1)" || name == "G(2)" || name == "G(3)") {
        return make_generic(name[2] - '0');
    }
    if (name == "G1(2)") {
        f.n_labelled = 2;
        f.edge_admissible = [](const Graph&, const GraphEdge& e) {
            return e.kind == EdgeKind::Directed && e.src == 1 && e.tgt == 0;
        };
        f.viable = always;
        f.vertex_deficit = no_deficit;
        f.member = always;
        return f;
    }
    if (name == "G2(1)" || name == "G2(2)") {
        f.n_labelled = (name == "G2(1)") ? 1 : 2;
        int L = f.n_labelled;
        f.edge_admissible = [L](const Graph&, const GraphEdge& e) {
            if (e.kind != EdgeKind::Directed) return false;
            if (L == 2 && e.src == 1 && e.tgt == 0) return true;
            return e.src < L && e.tgt >= L;
        };
        f.viable = always;
        f.vertex_deficit = no_deficit;
        f.member = always;
        return f;
    }
    if (name == "G3(2)" || name == "G3(3)") {
        f.n_labelled = name[3] - '0';
        f.edge_admissible = [](const Graph&, const GraphEdge& e) {
            return e.kind == EdgeKind::Directed && e.src != e.tgt;
        };
        f.viable = acyclic_no_labelled_paths;
        f.vertex_deficit = in_out_deficit;
        f.member = [](const Graph& g) {
            for (int u = g.n_labelled; u < g.vertex_count(); ++u)
                if (g.in_degree(u) < 1 || g.out_degree(u) < 1) return false;
            return true;
        };
        return f;
    }
    if (name == "G5(2)" || name == "G5(3)") {
        f.n_labelled = name[3] - '0';
        f.edge_admissible = [](const Graph&, const GraphEdge& e) {
            return e.kind == EdgeKind::Directed && e.src != e.tgt;
        };
        f.viable = acyclic_no_labelled_paths;
        f.vertex_deficit = [](const Graph& g, int u) {
            int io = (g.in_degree(u) == 0 ? 1 : 0) + (g.out_degree(u) == 0 ? 1 : 0);
            return std::max(3 - g.valency(u), io);
        };
        f.member = [](const Graph& g) {
            for (int u = g.n_labelled; u < g.vertex_count(); ++u) {
                if (g.valency(u) < 3 || g.in_degree(u) < 1 || g.out_degree(u) < 1) return false;
            }
            return true;
        };
        return f;
    }
    if (name == "G6(1)" || name == "G6(2)" || name == "G7(2)" || name == "G8(2)") {
        f.n_labelled = (name == "G6(1)") ? 1 : 2;
        bool no_labelled_loops = (name == "G7(2)");
        bool no_loops = (name == "G8(2)");
        f.undirected_edges = true;
        f.edge_admissible = [no_labelled_loops, no_loops](const Graph& g, const GraphEdge& e) {
            if (e.kind == EdgeKind::Directed && e.src == e.tgt) return false;
            if (e.src == e.tgt) {
                if (no_loops) return false;
                if (no_labelled_loops && g.is_labelled(e.src)) return false;
            }
            return true;
        };
        f.viable = acyclic_no_labelled_paths;
        f.vertex_deficit = [](const Graph& g, int u) {
            int io = (g.in_degree(u) == 0 ? 1 : 0) + (g.out_degree(u) == 0 ? 1 : 0);
            return std::max(3 - g.valency(u), io);
        };
        f.member = [](const Graph& g) {
            for (int u = g.n_labelled; u < g.vertex_count(); ++u) {
                if (g.valency(u) < 3 || g.in_degree(u) < 1 || g.out_degree(u) < 1) return false;
            }
            return true;
        };
        return f;
    }
    if (name == "G9(1)" || name == "Trees(1)") {
        bool g9 = (name == "G9(1)");
        f.n_labelled = 1;
        f.edge_admissible = [](const Graph& g, const GraphEdge& e) {
            if (e.kind != EdgeKind::Directed || e.src == e.tgt) return false;
            if (e.tgt < g.n_labelled) return false;           // the root stays a source
            return g.in_degree(e.tgt) == 0;                   // one ingoing edge each
        };
        f.viable = always;
        f.vertex_deficit = [g9](const Graph& g, int u) {
            return (g.in_degree(u) == 0 ? 1 : 0) + ((g9 && g.out_degree(u) == 1) ? 1 : 0);
        };
        f.member = [g9](const Graph& g) {
            if (!g.connected()) return false;
            for (int u = g.n_labelled; u < g.vertex_count(); ++u) {
                if (g.in_degree(u) != 1) return false;
                if (g9 && g.out_degree(u) == 1) return false;
            }
            return true;
        };
        return f;
    }
    if (name == "Corollas(1)") {
        f.n_labelled = 1;
        f.edge_admissible = [](const Graph& g, const GraphEdge& e) {
            return e.kind == EdgeKind::Directed && e.src == 0 && e.tgt >= 1 &&
                   g.valency(e.tgt) == 0;
        };
        f.viable = always;
        f.vertex_deficit = no_deficit;
        f.member = always;
        return f;
    }
    if (name == "G10(1)") {
        f.n_labelled = 1;
        f.edge_admissible = [](const Graph&, const GraphEdge& e) {
            return e.kind == EdgeKind::Directed && e.src != e.tgt && e.tgt != 0;
        };
        f.viable = [](const Graph& g) { return !g.has_directed_cycle(); };
        f.vertex_deficit = [](const Graph& g, int u) { return g.in_degree(u) == 0 ? 1 : 0; };
        f.member = [](const Graph& g) {
            for (int u = g.n_labelled; u < g.vertex_count(); ++u)
                if (g.in_degree(u) < 1) return false;
            return true;
        };
        return f;
    }
    if (name == "G11(1)" || name == "G12(1)" || name == "G13(1)") {
        int variant = name[1] == '1' ? (name[2] - '0') : 0;  // 1, 2 or 3
        f.n_labelled = 1;
        f.undirected_edges = true;
        f.edge_admissible = [](const Graph&, const GraphEdge& e) {
            if (e.src == e.tgt) return false;  // no loops of either kind
            if (e.kind == EdgeKind::Directed && e.tgt == 0) return false;  // 1 is a source
            return true;
        };
        f.viable = [](const Graph& g) { return !g.has_directed_cycle(); };
        f.vertex_deficit = [variant](const Graph& g, int u) {
            int din = g.in_degree(u), dout = g.out_degree(u), und = g.und_degree(u);
            if (din == 0) {
                if (variant == 3) return std::max(2 - (din + dout + und), 1);
                return 1;
            }
            if (variant == 3 && din + dout + und < 2) return 1;
            if (variant >= 2 && din == 1 && dout == 1 && und == 0) return 1;
            return 0;
        };
        f.member = [variant](const Graph& g) {
            for (int u = g.n_labelled; u < g.vertex_count(); ++u) {
                int din = g.in_degree(u), dout = g.out_degree(u), und = g.und_degree(u);
                if (din < 1) return false;
                if (variant == 3 && din + dout + und < 2) return false;
                if (variant >= 2 && din == 1 && dout == 1 && und == 0) return false;
            }
            return true;
        };
        return f;
    }
    throw std::invalid_argument("unknown graph family: " + name);
}

std::vector<std::string> graph_family_names() {
    return {"G1(2)",  "G2(1)",  "G2(2)",  "G3(2)",  "G3(3)",     "G5(2)",    "G5(3)",
            "G6(1)",  "G6(2)",  "G7(2)",  "G8(2)",  "G9(1)",     "G10(1)",   "G11(1)",
            "G12(1)", "G13(1)", "Trees(1)", "Corollas(1)", "G(1)", "G(2)"};
}

std::vector<Graph> enumerate_family(const GraphFamily& family, int max_edges, int max_unlabelled) {
    std::set<Graph> current;
    std::set<Graph> results;
    Graph empty;
    empty.n_labelled = family.n_labelled;
    current.insert(empty);
    if (family.member(empty)) results.insert(empty);

    auto total_deficit = [&](const Graph& g) {
        int t = 0;
        for (int u = g.n_labelled; u < g.vertex_count(); ++u) t += family.vertex_deficit(g, u);
        return t;
    };

    for (int level = 0; level < max_edges; ++level) {
        std::set<Graph> next;
        for (const Graph& g : current) {
            int V = g.vertex_count();
            int fresh = std::max(0, std::min(2, max_unlabelled - g.n_unlabelled));
            int Vmax = V + fresh;
            std::vector<EdgeKind> kinds{EdgeKind::Directed};
            if (family.undirected_edges) kinds.push_back(EdgeKind::Undirected);
            for (EdgeKind kind : kinds) {
                for (int s = 0; s < Vmax; ++s) {
                    for (int t = 0; t < Vmax; ++t) {
                        if (kind == EdgeKind::Undirected && s > t) continue;
                        // use fresh vertices in order
                        if ((s == V + 1 || t == V + 1) && s != V && t != V) continue;
                        Graph g2 = g;
                        g2.n_unlabelled += std::max(0, std::max(s, t) - V + 1);
                        GraphEdge e{kind, s, t};
                        if (kind == EdgeKind::Undirected && e.src > e.tgt)
                            std::swap(e.src, e.tgt);
                        if (!family.edge_admissible(g2, e)) continue;
                        g2.edges.push_back(e);
                        if (!family.viable(g2)) continue;
                        if (total_deficit(g2) > 2 * (max_edges - g2.e())) continue;
                        Graph c = canonicalize(g2);
                        if (next.insert(c).second && family.member(c)) results.insert(c);
                    }
                }
            }
        }
        current = std::move(next);
    }
    return {results.begin(), results.end()};
}

AttachmentSum attachments(const Graph& alpha, const Graph& gamma, int at) {
    if (at < 1 || at > gamma.n_labelled) throw std::invalid_argument("attachment slot out of range");
    int j = at - 1;
    int n = alpha.n_labelled;
    int m = gamma.n_labelled;
    int betaL = n + m - 1;

    // vertex maps into beta
    auto map_gamma_labelled = [&](int k) { return k < j ? k : k + n - 1; };
    auto map_alpha_vertex = [&](int v) {
        return v < n ? j + v : betaL + (v - n);  // alpha unlabelled first
    };
    auto map_gamma_unlabelled = [&](int u) { return betaL + alpha.n_unlabelled + (u - m); };

    // alpha's vertices, as beta indices, are the attachment choices
    std::vector<int> choices;
    for (int v = 0; v < alpha.vertex_count(); ++v) choices.push_back(map_alpha_vertex(v));

    // collect the half-edge slots of gamma incident to j
    struct Slot {
        int edge;
        bool at_src;
    };
    std::vector<Slot> slots;
    for (int idx = 0; idx < gamma.e(); ++idx) {
        if (gamma.edges[idx].src == j) slots.push_back({idx, true});
        if (gamma.edges[idx].tgt == j) slots.push_back({idx, false});
    }

    Graph base;
    base.n_labelled = betaL;
    base.n_unlabelled = alpha.n_unlabelled + gamma.n_unlabelled;
    for (const auto& e : alpha.edges) {
        base.edges.push_back({e.kind, map_alpha_vertex(e.src), map_alpha_vertex(e.tgt)});
    }

    AttachmentSum out;
    std::vector<int> pick(slots.size(), 0);
    while (true) {
        Graph beta = base;
        for (int idx = 0; idx < gamma.e(); ++idx) {
            GraphEdge e = gamma.edges[idx];
            int s = e.src, t = e.tgt;
            int s2 = (s == j) ? -1 : (s < m ? map_gamma_labelled(s) : map_gamma_unlabelled(s));
            int t2 = (t == j) ? -1 : (t < m ? map_gamma_labelled(t) : map_gamma_unlabelled(t));
            for (size_t k = 0; k < slots.size(); ++k) {
                if (slots[k].edge != idx) continue;
                if (slots[k].at_src)
                    s2 = choices[pick[k]];
                else
                    t2 = choices[pick[k]];
            }
            beta.edges.push_back({e.kind, s2, t2});
        }
        out.multiplicity[canonicalize(beta)] += 1;

        size_t k = 0;
        while (k < pick.size()) {
            if (++pick[k] < static_cast<int>(choices.size())) break;
            pick[k] = 0;
            ++k;
        }
        if (k == pick.size()) break;
        if (pick.empty()) break;
    }
    return out;
}

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::uint64_t subgraph_quotient_count(const Graph& beta, const Graph& alpha, const Graph& gamma,
                                      int at) {
    int j = at - 1;
    int n = alpha.n_labelled;
    int m = gamma.n_labelled;
    int betaL = n + m - 1;
    if (beta.n_labelled != betaL) throw std::invalid_argument("beta has wrong labelled count");
    Graph gamma_c = canonicalize(gamma);

    // the labelled part of alpha's image is forced
    auto alpha_labelled_image = [&](int i) { return j + i; };

    std::vector<int> beta_unlab;
    for (int u = betaL; u < beta.vertex_count(); ++u) beta_unlab.push_back(u);

    // candidate injective images of alpha's unlabelled block
    std::vector<std::vector<int>> injections;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == alpha.n_unlabelled) {
            injections.push_back(cur);
            return;
        }
        for (int u : beta_unlab) {
            if (std::find(cur.begin(), cur.end(), u) == cur.end()) {
                cur.push_back(u);
                rec();
                cur.pop_back();
            }
        }
    };
    rec();

    // image signature: vertex set + per-edge-class selected count
    std::set<std::pair<std::vector<int>, std::map<GraphEdge, int>>> images_seen;
    std::uint64_t total = 0;

    std::map<GraphEdge, int> beta_classes;
    for (const auto& e : beta.edges) beta_classes[e]++;

    for (const auto& inj : injections) {
        auto image_of = [&](int v) {
            return v < n ? alpha_labelled_image(v) : inj[v - n];
        };
        std::map<GraphEdge, int> selected;
        bool ok = true;
        for (const auto& e : alpha.edges) {
            GraphEdge be{e.kind, image_of(e.src), image_of(e.tgt)};
            if (be.kind == EdgeKind::Undirected && be.src > be.tgt) std::swap(be.src, be.tgt);
            selected[be]++;
        }
        for (const auto& [cls, cnt] : selected) {
            auto it = beta_classes.find(cls);
            if (it == beta_classes.end() || it->second < cnt) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        std::vector<int> vset;
        for (int i = 0; i < n; ++i) vset.push_back(alpha_labelled_image(i));
        for (int u : inj) vset.push_back(u);
        std::sort(vset.begin(), vset.end());
        if (!images_seen.insert({vset, selected}).second) continue;

        // build the quotient and compare with gamma
        std::set<int> in_image(vset.begin(), vset.end());
        // quotient vertex map: labelled block collapses to j, other
        // labelled keep gamma order, unlabelled outside image persist
        std::vector<int> qmap(beta.vertex_count(), -1);
        for (int k = 0; k < j; ++k) qmap[k] = k;
        for (int i = 0; i < n; ++i) qmap[j + i] = j;
        for (int k = j + 1; k < m; ++k) qmap[k + n - 1] = k;
        int next_unlab = m;
        for (int u : beta_unlab) {
            if (in_image.count(u))
                qmap[u] = j;
            else
                qmap[u] = next_unlab++;
        }
        Graph quot;
        quot.n_labelled = m;
        quot.n_unlabelled = next_unlab - m;
        std::map<GraphEdge, int> remaining = beta_classes;
        for (const auto& [cls, cnt] : selected) remaining[cls] -= cnt;
        bool valid = true;
        for (const auto& [cls, cnt] : remaining) {
            for (int c = 0; c < cnt; ++c) {
                GraphEdge e{cls.kind, qmap[cls.src], qmap[cls.tgt]};
                if (e.kind == EdgeKind::Undirected && e.src > e.tgt) std::swap(e.src, e.tgt);
                quot.edges.push_back(e);
            }
        }
        if (!valid) continue;
        if (canonicalize(quot) == gamma_c) {
            std::uint64_t ways = 1;
            for (const auto& [cls, cnt] : selected) ways *= binomial(beta_classes[cls], cnt);
            total += ways;
        }
    }
    return total;
}

std::vector<Extension> extensions(const Graph& alpha, const Graph& gamma, int at) {
    AttachmentSum sum = attachments(alpha, gamma, at);
    std::vector<Extension> out;
    for (const auto& [beta, mult] : sum.multiplicity) {
        Extension ext;
        ext.beta = beta;
        ext.attachment_count = mult;
        ext.d_beta = subgraph_quotient_count(beta, alpha, gamma, at);
        out.push_back(std::move(ext));
    }
    return out;
}

}  // namespace starforge
