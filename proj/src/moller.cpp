#include "starforge/moller.hpp"

#include <sstream>

namespace starforge {

namespace {

void require_formal(const MollerConfig& cfg, const char* what) {
    if (!cfg.mode.formal) {
        throw std::domain_error(std::string(what) + " requires formal lambda mode");
    }
}

Rational aut_inverse(const Graph& g) { return Rational(1, static_cast<unsigned long>(aut_order(g))); }

}  // namespace

FieldMap identity_field_map(const FreeTheory& th, SeriesBounds b) {
    FieldMap m;
    for (int i = 0; i < th.n(); ++i) m.push_back(PolyFunctional::coordinate(th.n(), b, i));
    return m;
}

FieldMap classical_moller_inverse_map(const MollerConfig& cfg) {
    const FreeTheory& th = cfg.theory;
    SeriesBounds b = cfg.bounds;
    TruncatedSeries lam = cfg.mode.power(b, 1);
    FieldMap m = identity_field_map(th, b);
    PolyFunctional V = cfg.inter.V.restricted(b);
    for (int i = 0; i < th.n(); ++i) {
        for (int j = 0; j < th.n(); ++j) {
            if (th.delta_R[i][j].is_zero()) continue;
            m[i] += V.partial(j).scaled(lam.scaled(th.delta_R[i][j]));
        }
    }
    return m;
}

FieldMap classical_moller_map(const MollerConfig& cfg) {
    const FreeTheory& th = cfg.theory;
    SeriesBounds b = cfg.bounds;
    if (!cfg.mode.formal && !(th.strict && cfg.inter.diagonal_hessian)) {
        throw std::domain_error("numeric classical map requires the nilpotent regime");
    }
    TruncatedSeries lam = cfg.mode.power(b, 1);
    PolyFunctional V = cfg.inter.V.restricted(b);
    FieldMap x = identity_field_map(th, b);
    int iterations = cfg.mode.formal ? b.lambda_max : th.n() + 1;
    for (int k = 0; k < iterations; ++k) {
        FieldMap nx = identity_field_map(th, b);
        for (int i = 0; i < th.n(); ++i) {
            for (int j = 0; j < th.n(); ++j) {
                if (th.delta_R[i][j].is_zero()) continue;
                nx[i] -= V.partial(j).substituted(x).scaled(lam.scaled(th.delta_R[i][j]));
            }
        }
        x = std::move(nx);
    }
    if (!cfg.mode.formal) {
        // nilpotency must have produced a true fixed point
        FieldMap check = identity_field_map(th, b);
        for (int i = 0; i < th.n(); ++i) {
            for (int j = 0; j < th.n(); ++j) {
                if (th.delta_R[i][j].is_zero()) continue;
                check[i] -= V.partial(j).substituted(x).scaled(lam.scaled(th.delta_R[i][j]));
            }
        }
        for (int i = 0; i < th.n(); ++i) {
            if (!(check[i] == x[i])) {
                throw std::domain_error("classical map fixed point did not stabilize");
            }
        }
    }
    return x;
}

PolyFunctional pullback(const PolyFunctional& F, const FieldMap& map) {
    return F.substituted(map);
}

FieldMap compose_maps(const FieldMap& outer, const FieldMap& inner) {
    FieldMap r;
    r.reserve(outer.size());
    for (const auto& f : outer) r.push_back(f.substituted(inner));
    return r;
}

PolyFunctional quantum_moller_inverse(const MollerConfig& cfg, const PolyFunctional& F) {
    require_formal(cfg, "quantum Moller sum");
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    auto graphs = enumerate_family(graph_family("G2(1)"), b.lambda_max + b.hbar_max, b.lambda_max);
    GraphDictionary dict =
        kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b);
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        return TruncatedSeries::monomial(
            b, k, g.v(), GaussianRational::i_pow(-k) * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

PolyFunctional quantum_moller(const MollerConfig& cfg, const PolyFunctional& F) {
    require_formal(cfg, "quantum Moller sum");
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    auto graphs = enumerate_family(graph_family("G10(1)"), b.lambda_max + b.hbar_max, b.lambda_max);
    GraphDictionary dict =
        kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b);
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        GaussianRational c = GaussianRational::i_pow(-k);
        if (g.v() % 2 == 1) c = -c;
        return TruncatedSeries::monomial(b, k, g.v(), c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

BogoliubovResult smatrix_bogoliubov(const MollerConfig& cfg, const PolyFunctional& F) {
    require_formal(cfg, "Bogoliubov formula");
    SeriesBounds b = cfg.bounds;
    if (b.laurent()) throw std::invalid_argument("Bogoliubov route expects power-series bounds");
    // Work in a widened Laurent window so that all monomials able to
    // influence the requested window survive the intermediate steps.
    SeriesBounds lb{-b.lambda_max, b.hbar_max + b.lambda_max, b.lambda_max};
    PolyFunctional Fl = F.restricted(lb);
    PolyFunctional V = cfg.inter.V.restricted(lb);
    // i lambda V / hbar and its negative
    PolyFunctional arg = V.shifted(-1, 1, GaussianRational(0, 1));
    PolyFunctional eV = arg.exp();
    PolyFunctional eVm = (-arg).exp();
    SMatrix kernel = star_kernel(cfg.theory, StarKind::StarT, lb);
    PolyFunctional inner = exp_product(kernel, eV, Fl);
    PolyFunctional full = eVm * inner;

    BogoliubovResult res{PolyFunctional::zero(F.n_points(), b), true, ""};
    std::ostringstream diag;
    for (const auto& [key, series] : full.terms()) {
        auto bad = series.negative_hbar_terms();
        if (!bad.empty()) {
            res.negative_free = false;
            for (const auto& [hl, c] : bad) {
                diag << "monomial";
                for (int i : key) diag << " phi_" << i;
                diag << ": hbar^" << hl.first << " lambda^" << hl.second << " -> " << c.str()
                     << "; ";
            }
        }
    }
    res.diagnostic = diag.str();
    res.value = full.restricted(b);
    return res;
}

PolyFunctional upsilon(const MollerConfig& cfg, const PolyFunctional& F) {
    return quantum_moller_inverse(cfg, pullback(F, classical_moller_map(cfg)));
}

PolyFunctional moller_hadamard(const MollerConfig& cfg, const PolyFunctional& F) {
    require_formal(cfg, "Hadamard Moller sum");
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    auto graphs = enumerate_family(graph_family("G11(1)"), b.lambda_max + b.hbar_max, b.lambda_max);
    GraphDictionary dict =
        kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b,
                          th.propagator(PropagatorKind::Feynman));
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        GaussianRational c = GaussianRational::i_pow(g.v() - g.d());  // (-i)^(d-v)
        if (g.v() % 2 == 1) c = -c;                                   // (-lambda)^v
        return TruncatedSeries::monomial(b, k, g.v(), c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

PolyFunctional omega(const MollerConfig& cfg, const PolyFunctional& F) {
    require_formal(cfg, "Omega sum");
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    auto graphs = enumerate_family(graph_family("G13(1)"), b.lambda_max + b.hbar_max, b.lambda_max);
    GraphDictionary dict;
    dict.n_points = th.n();
    dict.bounds = b;
    dict.directed = interacting_propagator(th, cfg.inter, PropagatorKind::Advanced, cfg.mode, b);
    dict.undirected = pmatrix_from_gmatrix(th.propagator(PropagatorKind::Feynman), th.n(), b);
    PolyFunctional V = cfg.inter.V.restricted(b);
    TruncatedSeries lam = cfg.mode.power(b, 1);
    dict.vertex = [V, lam](const std::vector<int>& tuple) {
        return V.partial(tuple).scaled(lam);
    };
    auto coeff = [&](const Graph& g) {
        int k = g.e() - g.v();
        GaussianRational c = GaussianRational::i_pow(-(g.v() + g.d()));  // (-i)^(v+d)
        return TruncatedSeries::monomial(b, k, 0, c * GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

PolyFunctional classical_moller_inverse_graphs(const MollerConfig& cfg, const PolyFunctional& F) {
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    int cap = b.lambda_max;
    auto graphs = enumerate_family(graph_family("Corollas(1)"), cap, cap);
    GraphDictionary dict =
        kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b);
    auto coeff = [&](const Graph& g) {
        return cfg.mode.power(b, g.v()).scaled(GaussianRational(aut_inverse(g)));
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

PolyFunctional classical_moller_graphs(const MollerConfig& cfg, const PolyFunctional& F) {
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    int cap = b.lambda_max;
    auto graphs = enumerate_family(graph_family("Trees(1)"), cap, cap);
    GraphDictionary dict =
        kernel_dictionary(th, cfg.inter, th.propagator(PropagatorKind::Advanced), b);
    auto coeff = [&](const Graph& g) {
        TruncatedSeries c = cfg.mode.power(b, g.v()).scaled(GaussianRational(aut_inverse(g)));
        if (g.v() % 2 == 1) c = -c;
        return c;
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

PolyFunctional classical_moller_resummed(const MollerConfig& cfg, const PolyFunctional& F) {
    SeriesBounds b = cfg.bounds;
    const FreeTheory& th = cfg.theory;
    int cap = b.lambda_max;
    auto graphs = enumerate_family(graph_family("G9(1)"), cap, cap);
    GraphDictionary dict;
    dict.n_points = th.n();
    dict.bounds = b;
    dict.directed = interacting_propagator(th, cfg.inter, PropagatorKind::Advanced, cfg.mode, b);
    PolyFunctional V = cfg.inter.V.restricted(b);
    TruncatedSeries lam = cfg.mode.power(b, 1);
    dict.vertex = [V, lam](const std::vector<int>& tuple) {
        return V.partial(tuple).scaled(lam);
    };
    auto coeff = [&](const Graph& g) {
        GaussianRational c(aut_inverse(g));
        if (g.v() % 2 == 1) c = -c;
        return TruncatedSeries::monomial(b, 0, 0, c);
    };
    return graph_sum(graphs, dict, {F}, coeff, cfg.jobs);
}

}  // namespace starforge
