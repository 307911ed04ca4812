#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace starforge {

enum class EdgeKind : std::uint8_t { Directed, Undirected };

struct GraphEdge {
    EdgeKind kind = EdgeKind::Directed;
    int src = 0;
    int tgt = 0;

    friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

/// Directed/mixed multigraph with a fixed block of labelled vertices
/// (indices 0 .. n_labelled-1, standing for arguments 1..n) followed
/// by interchangeable unlabelled vertices.  Undirected edges are
/// normalized to src <= tgt.  Canonical instances have their edge
/// list minimized over relabellings of the unlabelled block.
struct Graph {
    int n_labelled = 1;
    int n_unlabelled = 0;
    std::vector<GraphEdge> edges;

    int e() const { return static_cast<int>(edges.size()); }
    int v() const { return n_unlabelled; }
    int d() const;  // number of directed edges
    int vertex_count() const { return n_labelled + n_unlabelled; }
    bool is_labelled(int vtx) const { return vtx < n_labelled; }

    int in_degree(int vtx) const;
    int out_degree(int vtx) const;
    int und_degree(int vtx) const;  // undirected endpoints; a loop counts twice
    int valency(int vtx) const;

    bool has_directed_cycle() const;
    bool has_directed_path(int from, int to) const;
    bool connected() const;  // in the underlying undirected sense

    void normalize_edges();
    /// Human-stable canonical key, e.g. "L2:2>1,2>a,a-b".
    std::string key() const;

    friend auto operator<=>(const Graph&, const Graph&) = default;
};

/// Canonical representative of the isomorphism class (labelled block
/// fixed pointwise, unlabelled block permuted to minimize the edge
/// list).
Graph canonicalize(const Graph& g);

/// Order of the automorphism group: relabellings of the unlabelled
/// block fixing the edge multiset, times permutations of parallel
/// edges, times 2 per undirected loop.
std::uint64_t aut_order(const Graph& g);

/// A graph family: structural predicates plus pruning hooks used by
/// the enumerator.
struct GraphFamily {
    std::string name;
    int n_labelled = 1;
    bool undirected_edges = false;

    /// Fast check that adding this edge can ever lead to a family
    /// member (monotone constraints only).
    std::function<bool(const Graph&, const GraphEdge&)> edge_admissible;
    /// Monotone viability of a partial graph (cycle/path conditions).
    std::function<bool(const Graph&)> viable;
    /// Minimum number of additional edge endpoints this vertex still
    /// needs before the graph can satisfy the family predicate.
    std::function<int(const Graph&, int)> vertex_deficit;
    /// Full membership predicate (assumes viable already holds).
    std::function<bool(const Graph&)> member;
};

/// Families published by the enumerator.  The argument count is baked
/// into the name: "G3(2)" is the two-argument interacting family, etc.
GraphFamily graph_family(const std::string& name);
std::vector<std::string> graph_family_names();

/// All canonical family members with at most max_edges edges and
/// max_unlabelled unlabelled vertices, sorted by key.
std::vector<Graph> enumerate_family(const GraphFamily& family, int max_edges, int max_unlabelled);

/// One attachment of gamma's half-edges at labelled slot `at`
/// (1-based) to the vertices of alpha, i.e. one extension in the
/// partial-composition lemma.  Attachments are grouped by the
/// canonical extended graph.
struct AttachmentSum {
    std::map<Graph, std::uint64_t> multiplicity;  // canonical beta -> attachment count
};

AttachmentSum attachments(const Graph& alpha, const Graph& gamma, int at);

/// Number of images of alpha inside beta whose quotient (collapse of
/// the image to labelled slot `at`) is isomorphic to gamma.
std::uint64_t subgraph_quotient_count(const Graph& beta, const Graph& alpha, const Graph& gamma,
                                      int at);

struct Extension {
    Graph beta;
    std::uint64_t attachment_count = 0;  // equivalence classes of extensions
    std::uint64_t d_beta = 0;
};

std::vector<Extension> extensions(const Graph& alpha, const Graph& gamma, int at);

}  // namespace starforge
