#pragma once

#include "starforge/graph.hpp"
#include "starforge/model.hpp"

namespace starforge {

/// Evaluation dictionary for graph sums: kernels for directed and
/// undirected edges (entries may depend on the field), and the tensor
/// attached to unlabelled vertices as a function of the sorted index
/// tuple of its incident edge endpoints.
struct GraphDictionary {
    int n_points = 0;
    SeriesBounds bounds;
    PolyMatrix directed;
    std::optional<PolyMatrix> undirected;
    std::function<PolyFunctional(const std::vector<int>&)> vertex;
};

/// Dictionary whose unlabelled vertices carry derivatives of V
/// (optionally premultiplied by lambda) and whose edges carry
/// constant kernels.
GraphDictionary kernel_dictionary(const FreeTheory& th, const Interaction& inter,
                                  const GMatrix& directed_kernel, SeriesBounds b,
                                  std::optional<GMatrix> undirected_kernel = std::nullopt,
                                  std::optional<TruncatedSeries> vertex_prefactor = std::nullopt);

/// The operator realized by a graph: contract edge kernels with
/// derivatives of the arguments (one argument per labelled vertex)
/// and the vertex tensors.  A directed edge from b to a contracts the
/// kernel with its first index at a and its second at b.
PolyFunctional eval_graph(const Graph& g, const GraphDictionary& dict,
                          const std::vector<PolyFunctional>& args);

/// Weighted sum of eval_graph over a list of graphs; coefficient is a
/// series scalar depending on the graph.  Deterministic regardless of
/// the number of worker threads.
PolyFunctional graph_sum(const std::vector<Graph>& graphs, const GraphDictionary& dict,
                         const std::vector<PolyFunctional>& args,
                         const std::function<TruncatedSeries(const Graph&)>& coefficient,
                         int jobs = 1);

/// Exponential (star-type) product with kernel K:
///   F . G = sum_n hbar^n / n! < F^{(n)}, K^{tensor n} G^{(n)} >,
/// the first kernel index pairing with F and the second with G.
PolyFunctional exp_product(const SMatrix& K, const PolyFunctional& F, const PolyFunctional& G);

enum class StarKind { Weyl, TimeOrdered, Wick, WickTimeOrdered, StarT };

/// Table of product kernels for the free theory.
SMatrix star_kernel(const FreeTheory& th, StarKind kind, SeriesBounds b);
PolyFunctional star(const FreeTheory& th, StarKind kind, const PolyFunctional& F,
                    const PolyFunctional& G);

/// Gauge map alpha_Y = exp((hbar/2) D_Y) with D_Y the symmetric
/// second-derivative contraction against Y.
PolyFunctional gauge_map(const SMatrix& Y, const PolyFunctional& F);

/// Time-ordering maps: T = alpha_{i Delta^D}, T_H = alpha_{Delta^F};
/// invert = true applies the inverse map.
PolyFunctional time_ordering(const FreeTheory& th, const PolyFunctional& F, bool invert = false);
PolyFunctional time_ordering_H(const FreeTheory& th, const PolyFunctional& F, bool invert = false);

/// Peierls bracket <Delta(phi), F^{(1)} x G^{(1)}> with the free or
/// interacting causal propagator.
PolyFunctional peierls_bracket_free(const FreeTheory& th, const PolyFunctional& F,
                                    const PolyFunctional& G);
PolyFunctional peierls_bracket(const FreeTheory& th, const Interaction& inter,
                               const LambdaMode& mode, const PolyFunctional& F,
                               const PolyFunctional& G);

}  // namespace starforge
