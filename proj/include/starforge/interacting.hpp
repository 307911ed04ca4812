#pragma once

#include "starforge/moller.hpp"

namespace starforge {

/// Interacting time-ordered star product, three independent routes.
/// via_moller: transport through the quantum Moller operator,
///   A . B = R^{-1}(R(A) *_T R(B)), formal mode only.
PolyFunctional star_tint_via_moller(const MollerConfig& cfg, const PolyFunctional& F,
                                    const PolyFunctional& G);
/// via_G3: two-argument acyclic family with free advanced edges and
/// interaction vertices, coefficients (-i hbar)^{e-v} (-lambda)^v / |Aut|.
PolyFunctional star_tint_via_G3(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G);
/// via_G5: resummed family (vertex valency >= 3) with interacting
/// advanced edges, coefficients (-1)^v (-i hbar)^{e-v} / |Aut|; valid
/// in both lambda regimes.
PolyFunctional star_tint_via_G5(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G);

/// Interacting Hadamard-ordered product.
/// via_transport: conjugate the time-ordered interacting product by T_H.
PolyFunctional star_hint_via_transport(const MollerConfig& cfg, const PolyFunctional& F,
                                       const PolyFunctional& G);
/// via_G7: mixed-edge family without loops at the arguments.
PolyFunctional star_hint_via_G7(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G);
/// via_G8: loop-free variant, valid for diagonal interactions when
/// the undirected kernel vanishes on the diagonal.
PolyFunctional star_hint_via_G8(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G);

/// Product transported by the classical map only:
///   A . B = r^{-1}-pullback of ((r-pullback A) *_T (r-pullback B)).
PolyFunctional star_t_classical(const MollerConfig& cfg, const PolyFunctional& F,
                                const PolyFunctional& G);

/// One row of the bidifferential-operator table B_m: the resummed
/// family at hbar order m with its rational coefficients.
struct LowOrderTerm {
    Graph graph;
    int hbar_power = 0;
    int lambda_power = 0;  // number of interaction vertices
    GaussianRational coefficient;
};
std::vector<LowOrderTerm> low_order_table(int order);

/// Kontsevich-style K-graphs: unlabelled vertices carry the
/// interacting advanced kernel and have exactly one left and one
/// right outgoing edge; remaining edges differentiate their target.
/// The left outgoing edge contracts the kernel's first index, the
/// right one its second.
struct KVertex {
    int left = 0;   // target vertex of the left outgoing edge
    int right = 0;  // target vertex of the right outgoing edge
};

struct KGraph {
    // two labelled argument slots (0 and 1) plus the K-vertices,
    // indexed 2, 3, ...
    std::vector<KVertex> vertices;

    int vertex_count() const { return 2 + static_cast<int>(vertices.size()); }
    void validate() const;
};

/// Direct evaluation: kernels differentiated term by term.
PolyFunctional eval_kgraph(const MollerConfig& cfg, const KGraph& kg, const PolyFunctional& F,
                           const PolyFunctional& G);
/// Rule-based evaluation: kernel derivatives expanded through the
/// chain identity K' = -K S''' K before contracting.
PolyFunctional eval_kgraph_translated(const MollerConfig& cfg, const KGraph& kg,
                                      const PolyFunctional& F, const PolyFunctional& G);

/// The four order-2 K-graphs whose sum with coefficients -1/2
/// reproduces the hbar^2 bidifferential operator.
std::vector<KGraph> kgraph_b2_terms();

/// Identities that hold when the interaction is quadratic:
/// delta = i Delta^R V'' Delta^A and the Moller maps collapse to
/// gauge maps around the classical map.
struct QuadraticChecks {
    bool moller_is_gauge_times_classical = false;  // R = alpha_{lambda delta} o r
    bool weyl_moller_route = false;                // T alpha r T^{-1} = r alpha'
    bool star_tint_is_exponential = false;         // G5 route = exp product with -i Delta^A_S
};
QuadraticChecks perturbative_agreement(const MollerConfig& cfg, const PolyFunctional& F,
                                       const PolyFunctional& G);

}  // namespace starforge
