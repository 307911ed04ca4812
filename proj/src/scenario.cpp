#include "starforge/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace starforge {

using nlohmann::json;

MollerConfig Scenario::config(int jobs) const {
    MollerConfig cfg;
    cfg.theory = theory;
    cfg.inter = inter;
    cfg.mode = lambda_value ? LambdaMode::numeric(*lambda_value) : LambdaMode::formal_mode();
    cfg.bounds = bounds;
    cfg.jobs = jobs;
    return cfg;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

Rational json_rational(const json& j, const std::string& what) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::exception& e) {
        fail(what + ": " + e.what());
    }
    fail(what + ": expected a rational as a string or integer");
}

GaussianRational json_coeff(const json& j, const std::string& what) {
    if (j.is_object()) {
        GaussianRational c;
        if (j.contains("re")) c.re = json_rational(j.at("re"), what + ".re");
        if (j.contains("im")) c.im = json_rational(j.at("im"), what + ".im");
        return c;
    }
    return GaussianRational(json_rational(j, what));
}

GMatrix json_matrix(const json& j, int n, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        fail(what + ": expected an " + std::to_string(n) + "-row matrix");
    }
    GMatrix m = gmatrix_zero(n);
    for (int r = 0; r < n; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            fail(what + ": row " + std::to_string(r) + " must have " + std::to_string(n) +
                 " entries");
        }
        for (int c = 0; c < n; ++c) {
            m[r][c] = json_coeff(row.at(c), what + "[" + std::to_string(r) + "][" +
                                                std::to_string(c) + "]");
        }
    }
    return m;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("scenario must be a JSON object");
    for (const char* req : {"model", "interaction", "bounds"}) {
        if (!j.contains(req)) fail(std::string("missing required field \"") + req + "\"");
    }

    Scenario sc;

    // model
    const json& jm = j.at("model");
    if (!jm.is_object() || !jm.contains("n") || !jm.contains("delta_R")) {
        fail("model requires \"n\" and \"delta_R\"");
    }
    int n = jm.at("n").get<int>();
    if (n < 1 || n > 8) fail("model.n out of range (1..8)");
    if (jm.contains("order") && jm.at("order").is_array()) {
        std::vector<std::pair<int, int>> covers;
        for (const auto& p : jm.at("order")) {
            if (!p.is_array() || p.size() != 2) fail("model.order entries must be pairs");
            covers.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
        try {
            sc.theory.order = CausalOrder::from_relations(n, covers);
        } catch (const std::exception& e) {
            fail(std::string("model.order: ") + e.what());
        }
    } else {
        sc.theory.order = CausalOrder::total(n);
    }
    sc.theory.delta_R = json_matrix(jm.at("delta_R"), n, "model.delta_R");
    sc.theory.H = jm.contains("H") ? json_matrix(jm.at("H"), n, "model.H") : gmatrix_zero(n);
    sc.theory.strict = jm.value("strict", true);
    try {
        sc.theory.validate();
    } catch (const std::exception& e) {
        fail(std::string("model: ") + e.what());
    }

    // bounds
    const json& jb = j.at("bounds");
    sc.bounds.hbar_min = jb.value("hbar_min", 0);
    sc.bounds.hbar_max = jb.value("hbar_max", 0);
    sc.bounds.lambda_max = jb.value("lambda_max", 0);
    if (sc.bounds.hbar_max < 0 || sc.bounds.lambda_max < 0 ||
        sc.bounds.hbar_min > sc.bounds.hbar_max) {
        fail("bounds: hbar_min <= hbar_max and nonnegative hbar_max/lambda_max required");
    }

    // interaction
    const json& ji = j.at("interaction");
    if (!ji.is_object() || !ji.contains("monomials")) fail("interaction requires \"monomials\"");
    PolyFunctional V(n, sc.bounds);
    bool diagonal = true;
    for (const auto& mono : ji.at("monomials")) {
        if (!mono.is_object() || !mono.contains("indices") || !mono.contains("coeff")) {
            fail("interaction monomials need \"indices\" and \"coeff\"");
        }
        std::vector<int> idx = mono.at("indices").get<std::vector<int>>();
        for (int i : idx) {
            if (i < 0 || i >= n) fail("interaction monomial index out of range");
        }
        std::sort(idx.begin(), idx.end());
        for (int i : idx) {
            if (i != idx.front()) diagonal = false;
        }
        GaussianRational c = json_coeff(mono.at("coeff"), "interaction coeff");
        V += PolyFunctional::monomial(n, idx, TruncatedSeries::monomial(sc.bounds, 0, 0, c));
    }
    sc.inter.V = V;
    sc.inter.diagonal_hessian = ji.value("diagonal_hessian", diagonal);
    try {
        sc.inter.validate();
    } catch (const std::exception& e) {
        fail(std::string("interaction: ") + e.what());
    }

    // coupling value: admissible only in the nilpotent regime
    if (j.contains("lambda_value") && !j.at("lambda_value").is_null()) {
        if (!sc.theory.strict || !sc.inter.diagonal_hessian) {
            fail("lambda_value: nilpotent regime required (strict model, diagonal hessian)");
        }
        sc.lambda_value = json_rational(j.at("lambda_value"), "lambda_value");
    }

    sc.suites = j.contains("suites") ? j.at("suites").get<std::vector<std::string>>()
                                     : all_suites();
    for (const auto& s : sc.suites) {
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
            fail("unknown suite \"" + s + "\"");
        }
    }
    sc.seed = j.value("seed", 1u);
    return sc;
}

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names = {
        "enumeration-census", "exponential-products", "moller", "interacting",
        "ppa",                "kgraphs",              "low-order-tables"};
    return names;
}

namespace {

int term_count(const PolyFunctional& f) {
    int n = 0;
    for (const auto& [key, series] : f.terms()) {
        (void)key;
        n += static_cast<int>(series.coefficients().size());
    }
    return n;
}

std::string key_str(const std::vector<int>& key) {
    std::string s = "phi[";
    for (size_t i = 0; i < key.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(key[i]);
    }
    return s + "]";
}

/// The hbar^0 part of a functional (its classical content).
PolyFunctional hbar_zero_part(const PolyFunctional& f) {
    PolyFunctional out(f.n_points(), f.bounds());
    for (const auto& [key, series] : f.terms()) {
        TruncatedSeries t(f.bounds());
        for (const auto& [l, c] : series.hbar_slice(0)) t.set(0, l, c);
        if (!t.is_zero()) out.accumulate(key, t);
    }
    return out;
}

}  // namespace

CheckResult compare_functionals(const std::string& name, const PolyFunctional& lhs,
                                const PolyFunctional& rhs) {
    CheckResult r;
    r.name = name;
    r.lhs_terms = term_count(lhs);
    r.rhs_terms = term_count(rhs);
    PolyFunctional diff = lhs - rhs;
    r.pass = diff.is_zero();
    if (!r.pass) {
        const auto& [key, series] = *diff.terms().begin();
        const auto& [kp, c] = *series.coefficients().begin();
        std::ostringstream os;
        os << key_str(key) << " hbar^" << kp.first << " lambda^" << kp.second
           << ": lhs=" << lhs.coefficient(key).coefficient(kp.first, kp.second).str()
           << ", rhs=" << rhs.coefficient(key).coefficient(kp.first, kp.second).str();
        r.first_discrepancy = os.str();
    }
    return r;
}

CheckResult compare_integers(const std::string& name, long lhs, long rhs) {
    CheckResult r;
    r.name = name;
    r.lhs_terms = static_cast<int>(lhs);
    r.rhs_terms = static_cast<int>(rhs);
    r.pass = (lhs == rhs);
    if (!r.pass) {
        r.first_discrepancy = "lhs=" + std::to_string(lhs) + ", rhs=" + std::to_string(rhs);
    }
    return r;
}

namespace {

Graph parallel_edges(int k) {
    Graph g;
    g.n_labelled = 2;
    for (int i = 0; i < k; ++i) g.edges.push_back({EdgeKind::Directed, 1, 0});
    g.normalize_edges();
    return g;
}

std::vector<CheckResult> suite_enumeration(const Scenario&, int) {
    std::vector<CheckResult> out;

    auto g1 = enumerate_family(graph_family("G1(2)"), 3, 0);
    out.push_back(compare_integers("parallel-family-count-up-to-3-edges",
                                   static_cast<long>(g1.size()), 4));

    out.push_back(compare_integers("aut-three-parallel-edges",
                                   static_cast<long>(aut_order(canonicalize(parallel_edges(3)))),
                                   6));
    out.push_back(compare_integers("aut-four-parallel-edges",
                                   static_cast<long>(aut_order(canonicalize(parallel_edges(4)))),
                                   24));

    // one argument with a triple edge to one branch and double edges
    // to two interchangeable branches: order 3! * (2 * 2!*2!) = 48
    Graph star;
    star.n_labelled = 1;
    star.n_unlabelled = 3;
    for (int i = 0; i < 3; ++i) star.edges.push_back({EdgeKind::Directed, 0, 1});
    for (int i = 0; i < 2; ++i) star.edges.push_back({EdgeKind::Directed, 0, 2});
    for (int i = 0; i < 2; ++i) star.edges.push_back({EdgeKind::Directed, 0, 3});
    star.normalize_edges();
    out.push_back(compare_integers("aut-mixed-star",
                                   static_cast<long>(aut_order(canonicalize(star))), 48));

    // k identical n-valent stars: k! (n!)^k
    Graph bouquet;
    bouquet.n_labelled = 1;
    bouquet.n_unlabelled = 2;
    for (int u = 1; u <= 2; ++u)
        for (int i = 0; i < 3; ++i) bouquet.edges.push_back({EdgeKind::Directed, 0, u});
    bouquet.normalize_edges();
    out.push_back(compare_integers("aut-two-identical-stars",
                                   static_cast<long>(aut_order(canonicalize(bouquet))),
                                   2 * 6 * 6));

    auto corollas = enumerate_family(graph_family("Corollas(1)"), 3, 3);
    long v3 = 0;
    long v3aut = 0;
    for (const auto& g : corollas) {
        if (g.v() == 3) {
            ++v3;
            v3aut = static_cast<long>(aut_order(g));
        }
    }
    out.push_back(compare_integers("corolla-three-branches-count", v3, 1));
    out.push_back(compare_integers("corolla-three-branches-aut", v3aut, 6));

    auto g5 = enumerate_family(graph_family("G5(2)"), 6, 4);
    long order1 = 0, order2 = 0;
    for (const auto& g : g5) {
        if (g.e() - g.v() == 1) ++order1;
        if (g.e() - g.v() == 2) ++order2;
    }
    out.push_back(compare_integers("resummed-family-order1-census", order1, 1));
    out.push_back(compare_integers("resummed-family-order2-census", order2, 4));

    // size bound for the mixed Moller family: at hbar order m every
    // member has at most 4m vertices and 5m edges
    auto g13 = enumerate_family(graph_family("G13(1)"), 6, 5);
    long violations = 0;
    for (const auto& g : g13) {
        if (g.e() - g.v() == 1 && (g.v() > 4 || g.e() > 5)) ++violations;
    }
    out.push_back(compare_integers("moller-family-order1-size-bound", violations, 0));

    return out;
}

std::vector<CheckResult> suite_exponential(const Scenario& sc, int jobs) {
    (void)jobs;
    std::vector<CheckResult> out;
    const FreeTheory& th = sc.theory;
    SeriesBounds b = sc.bounds;
    FunctionalRng rng(sc.seed);
    PolyFunctional F = rng.functional(th.n(), b, 2);
    PolyFunctional G = rng.functional(th.n(), b, 2);
    PolyFunctional H = rng.functional(th.n(), b, 2);

    struct Named {
        const char* name;
        StarKind kind;
    };
    for (Named k : {Named{"weyl", StarKind::Weyl}, Named{"time-ordered", StarKind::TimeOrdered},
                    Named{"wick", StarKind::Wick},
                    Named{"wick-time-ordered", StarKind::WickTimeOrdered},
                    Named{"advanced", StarKind::StarT}}) {
        out.push_back(compare_functionals(
            std::string("associativity-") + k.name,
            star(th, k.kind, star(th, k.kind, F, G), H),
            star(th, k.kind, F, star(th, k.kind, G, H))));
    }

    out.push_back(compare_functionals("time-ordering-homomorphism",
                                      time_ordering(th, F * G),
                                      star(th, StarKind::TimeOrdered, time_ordering(th, F),
                                           time_ordering(th, G))));
    out.push_back(compare_functionals("hadamard-ordering-homomorphism",
                                      time_ordering_H(th, F * G),
                                      star(th, StarKind::WickTimeOrdered, time_ordering_H(th, F),
                                           time_ordering_H(th, G))));

    // on strict models the product and time-ordered product coincide
    // when the second factor's support strictly precedes the first's
    if (th.strict) {
        long mismatches = 0;
        long pairs = 0;
        for (int a = 0; a < th.n(); ++a) {
            for (int c = 0; c < th.n(); ++c) {
                PolyFunctional fa =
                    PolyFunctional::monomial(th.n(), {a, a, a}, TruncatedSeries::one(b));
                PolyFunctional gc =
                    PolyFunctional::monomial(th.n(), {c, c, c}, TruncatedSeries::one(b));
                if (causally_separated(th, fa.support(), gc.support()) != Separation::BBeforeA) {
                    continue;
                }
                ++pairs;
                if (!(star(th, StarKind::Weyl, fa, gc) ==
                      star(th, StarKind::TimeOrdered, fa, gc))) {
                    ++mismatches;
                }
            }
        }
        out.push_back(compare_integers("ordering-reduces-to-time-ordered", mismatches, 0));
        out.push_back(compare_integers("ordering-pairs-exercised", pairs > 0 ? 1 : 0, 1));
    }
    return out;
}

std::vector<CheckResult> suite_moller(const Scenario& sc, int jobs) {
    std::vector<CheckResult> out;
    MollerConfig cfg = sc.config(jobs);
    MollerConfig cfgf = cfg;
    cfgf.mode = LambdaMode::formal_mode();
    SeriesBounds b = sc.bounds;
    int n = sc.theory.n();
    FunctionalRng rng(sc.seed + 1);
    PolyFunctional F = rng.functional(n, b, 2);

    FieldMap r = classical_moller_map(cfgf);
    FieldMap rinv = classical_moller_inverse_map(cfgf);
    {
        PolyFunctional lhs = pullback(F, compose_maps(rinv, r));
        out.push_back(compare_functionals("classical-map-roundtrip", lhs, F));
    }
    out.push_back(compare_functionals("corolla-sum-is-inverse-map",
                                      classical_moller_inverse_graphs(cfgf, F),
                                      pullback(F, rinv)));
    out.push_back(compare_functionals("tree-sum-is-map", classical_moller_graphs(cfgf, F),
                                      pullback(F, r)));
    if (sc.lambda_value) {
        out.push_back(compare_functionals(
            "resummed-tree-sum-at-coupling", classical_moller_resummed(cfg, F),
            classical_moller_graphs(cfgf, F).lambda_evaluated(*sc.lambda_value)));
    }

    PolyFunctional rinvF = quantum_moller_inverse(cfgf, F);
    {
        BogoliubovResult bog = smatrix_bogoliubov(cfgf, F);
        CheckResult neg;
        neg.name = "bogoliubov-negative-powers-cancel";
        neg.pass = bog.negative_free;
        neg.first_discrepancy = bog.diagnostic;
        out.push_back(neg);
        out.push_back(compare_functionals("bogoliubov-equals-graph-sum", bog.value, rinvF));
    }
    out.push_back(compare_functionals("inverse-classical-limit", hbar_zero_part(rinvF),
                                      hbar_zero_part(pullback(F, rinv))));
    {
        PolyFunctional ups = upsilon(cfgf, pullback(F, rinv));
        out.push_back(compare_functionals("quantum-factorization", rinvF, ups));
        PolyFunctional ups_direct = upsilon(cfgf, F);
        out.push_back(compare_functionals("quantum-factor-is-identity-at-hbar0",
                                          hbar_zero_part(ups_direct), hbar_zero_part(F)));
    }
    out.push_back(compare_functionals("roundtrip-quantum",
                                      quantum_moller(cfgf, quantum_moller_inverse(cfgf, F)), F));

    // Hadamard-ordered operator factorizes through the classical map
    {
        SeriesBounds bh = b;
        bh.hbar_max = std::min(b.hbar_max, 2);
        MollerConfig cfgh = cfgf;
        cfgh.bounds = bh;
        PolyFunctional Fh = F.restricted(bh);
        FieldMap rh = classical_moller_map(cfgh);
        out.push_back(compare_functionals("hadamard-moller-factorization",
                                          moller_hadamard(cfgh, Fh),
                                          pullback(omega(cfgh, Fh), rh)));
    }
    return out;
}

std::vector<CheckResult> suite_interacting(const Scenario& sc, int jobs) {
    std::vector<CheckResult> out;
    MollerConfig cfg = sc.config(jobs);
    MollerConfig cfgf = cfg;
    cfgf.mode = LambdaMode::formal_mode();
    SeriesBounds b = sc.bounds;
    int n = sc.theory.n();
    FunctionalRng rng(sc.seed + 2);
    PolyFunctional F = rng.functional(n, b, 2);
    PolyFunctional G = rng.functional(n, b, 2);

    PolyFunctional g3 = star_tint_via_G3(cfgf, F, G);
    out.push_back(
        compare_functionals("interacting-product-moller-route", star_tint_via_moller(cfgf, F, G),
                            g3));
    out.push_back(compare_functionals("interacting-product-resummed-route",
                                      star_tint_via_G5(cfgf, F, G), g3));
    if (sc.lambda_value) {
        out.push_back(compare_functionals("interacting-product-at-coupling",
                                          star_tint_via_G5(cfg, F, G),
                                          g3.lambda_evaluated(*sc.lambda_value)));
    }

    PolyFunctional h7 = star_hint_via_G7(cfgf, F, G);
    out.push_back(compare_functionals("hadamard-product-transport-route",
                                      star_hint_via_transport(cfgf, F, G), h7));
    // the loop-free family agrees whenever the undirected kernel has
    // no diagonal entries
    GMatrix feyn = sc.theory.propagator(PropagatorKind::Feynman);
    bool diag_free = true;
    for (int i = 0; i < n; ++i) {
        if (!feyn[i][i].is_zero()) diag_free = false;
    }
    if (diag_free && sc.inter.diagonal_hessian) {
        out.push_back(compare_functionals("hadamard-product-loop-free-route",
                                          star_hint_via_G8(cfgf, F, G), h7));
    }

    // the classical map intertwines the free and interacting brackets
    {
        FieldMap r = classical_moller_map(cfgf);
        PolyFunctional lhs = peierls_bracket_free(sc.theory, pullback(F, r), pullback(G, r));
        PolyFunctional rhs = pullback(
            peierls_bracket(sc.theory, sc.inter, cfgf.mode, F, G), r);
        out.push_back(compare_functionals("peierls-intertwining", lhs, rhs));
    }
    return out;
}

std::vector<CheckResult> suite_ppa(const Scenario& sc, int jobs) {
    std::vector<CheckResult> out;
    MollerConfig cfg = sc.config(jobs);
    if (cfg.inter.V.degree() > 2) {
        // build a quadratic stand-in on the same model
        int n = sc.theory.n();
        int p = n > 1 ? 1 : 0;
        PolyFunctional Vq = PolyFunctional::monomial(
            n, {p, p}, TruncatedSeries::monomial(sc.bounds, 0, 0, GaussianRational(Rational(1, 2))));
        cfg.inter.V = Vq;
        cfg.inter.diagonal_hessian = true;
    }
    if (cfg.mode.formal && sc.theory.strict && cfg.inter.diagonal_hessian) {
        cfg.mode = LambdaMode::numeric(Rational(1));
    }
    FunctionalRng rng(sc.seed + 3);
    PolyFunctional F = rng.functional(sc.theory.n(), sc.bounds, 2);
    PolyFunctional G = rng.functional(sc.theory.n(), sc.bounds, 2);
    QuadraticChecks q = perturbative_agreement(cfg, F, G);
    CheckResult a;
    a.name = "quadratic-moller-is-gauge-times-classical";
    a.pass = q.moller_is_gauge_times_classical;
    out.push_back(a);
    CheckResult w;
    w.name = "quadratic-weyl-moller-route";
    w.pass = q.weyl_moller_route;
    out.push_back(w);
    CheckResult s;
    s.name = "quadratic-product-is-exponential";
    s.pass = q.star_tint_is_exponential;
    out.push_back(s);
    return out;
}

std::vector<CheckResult> suite_kgraphs(const Scenario& sc, int jobs) {
    std::vector<CheckResult> out;
    MollerConfig cfg = sc.config(jobs);
    MollerConfig cfgf = cfg;
    cfgf.mode = LambdaMode::formal_mode();
    SeriesBounds b = sc.bounds;
    int n = sc.theory.n();
    FunctionalRng rng(sc.seed + 4);
    PolyFunctional F = rng.functional(n, b, 3);
    PolyFunctional G = rng.functional(n, b, 3);

    auto kgs = kgraph_b2_terms();
    PolyFunctional ksum = PolyFunctional::zero(n, b);
    const char* names[] = {"kgraph-a-translation", "kgraph-b-translation", "kgraph-c-translation",
                           "kgraph-d-translation"};
    for (size_t i = 0; i < kgs.size(); ++i) {
        PolyFunctional direct = eval_kgraph(cfgf, kgs[i], F, G);
        out.push_back(compare_functionals(names[i], direct,
                                          eval_kgraph_translated(cfgf, kgs[i], F, G)));
        ksum += direct;
    }
    ksum = ksum.scaled(GaussianRational(Rational(-1, 2)));

    // the second-order bidifferential operator from the resummed table
    PolyMatrix AS =
        interacting_propagator(sc.theory, sc.inter, PropagatorKind::Advanced, cfgf.mode, b);
    GraphDictionary dict;
    dict.n_points = n;
    dict.bounds = b;
    dict.directed = AS;
    PolyFunctional V = sc.inter.V.restricted(b);
    TruncatedSeries lam = cfgf.mode.power(b, 1);
    dict.vertex = [V, lam](const std::vector<int>& tuple) { return V.partial(tuple).scaled(lam); };
    PolyFunctional table = PolyFunctional::zero(n, b);
    for (const auto& t : low_order_table(2)) {
        table += eval_graph(t.graph, dict, {F, G}).scaled(t.coefficient);
    }
    out.push_back(compare_functionals("kgraph-b2-identity", ksum, table));
    return out;
}

std::vector<CheckResult> suite_low_order(const Scenario&, int) {
    std::vector<CheckResult> out;
    auto t1 = low_order_table(1);
    out.push_back(compare_integers("order1-term-count", static_cast<long>(t1.size()), 1));
    bool c1 = t1.size() == 1 && t1[0].coefficient == GaussianRational(0, -1);
    CheckResult r1;
    r1.name = "order1-coefficient";
    r1.pass = c1;
    if (!c1 && !t1.empty()) r1.first_discrepancy = "lhs=" + t1[0].coefficient.str() + ", rhs=-i";
    out.push_back(r1);

    auto t2 = low_order_table(2);
    out.push_back(compare_integers("order2-term-count", static_cast<long>(t2.size()), 4));
    std::multiset<Rational> coeffs;
    bool real = true;
    for (const auto& t : t2) {
        if (t.coefficient.im != 0) real = false;
        coeffs.insert(t.coefficient.re);
    }
    std::multiset<Rational> want{Rational(-1, 2), Rational(-1, 2), Rational(1, 2), Rational(1, 2)};
    CheckResult r2;
    r2.name = "order2-coefficients";
    r2.pass = real && coeffs == want;
    if (!r2.pass) {
        r2.first_discrepancy = "unexpected coefficient multiset";
    }
    out.push_back(r2);

    auto t3 = low_order_table(3);
    out.push_back(compare_integers("order3-term-count", static_cast<long>(t3.size()), 28));
    return out;
}

}  // namespace

SuiteReport run_suite(const Scenario& sc, const std::string& name, int jobs) {
    SuiteReport rep;
    rep.suite = name;
    if (name == "enumeration-census") {
        rep.checks = suite_enumeration(sc, jobs);
    } else if (name == "exponential-products") {
        rep.checks = suite_exponential(sc, jobs);
    } else if (name == "moller") {
        rep.checks = suite_moller(sc, jobs);
    } else if (name == "interacting") {
        rep.checks = suite_interacting(sc, jobs);
    } else if (name == "ppa") {
        rep.checks = suite_ppa(sc, jobs);
    } else if (name == "kgraphs") {
        rep.checks = suite_kgraphs(sc, jobs);
    } else if (name == "low-order-tables") {
        rep.checks = suite_low_order(sc, jobs);
    } else {
        fail("unknown suite \"" + name + "\"");
    }
    return rep;
}

std::vector<SuiteReport> run_suites(const Scenario& sc, int jobs) {
    std::vector<SuiteReport> out;
    for (const auto& name : sc.suites) out.push_back(run_suite(sc, name, jobs));
    return out;
}

bool SuiteReport::pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

bool all_pass(const std::vector<SuiteReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass()) return false;
    }
    return true;
}

std::string report_json(const Scenario& sc, const std::vector<SuiteReport>& reports) {
    json out;
    out["bounds"] = {{"hbar_min", sc.bounds.hbar_min},
                     {"hbar_max", sc.bounds.hbar_max},
                     {"lambda_max", sc.bounds.lambda_max}};
    out["lambda_value"] =
        sc.lambda_value ? json(rational_to_string(*sc.lambda_value)) : json(nullptr);
    out["seed"] = sc.seed;
    json suites = json::array();
    for (const auto& rep : reports) {
        json checks = json::array();
        for (const auto& c : rep.checks) {
            checks.push_back({{"name", c.name},
                              {"status", c.pass ? "pass" : "fail"},
                              {"bounds", sc.bounds.str()},
                              {"lhs_terms", c.lhs_terms},
                              {"rhs_terms", c.rhs_terms},
                              {"first_discrepancy",
                               c.pass ? json(nullptr) : json(c.first_discrepancy)}});
        }
        suites.push_back({{"suite", rep.suite}, {"pass", rep.pass()}, {"checks", checks}});
    }
    out["suites"] = suites;
    out["pass"] = all_pass(reports);
    return out.dump(2) + "\n";
}

namespace {

const char* kCsvHeader =
    "graph_key,family,e,v,d,aut_order,hbar_power,lambda_power,coeff_re,coeff_im\n";

}  // namespace

std::string family_csv(const std::string& family, int max_edges, int max_unlabelled) {
    auto fam = graph_family(family);  // throws on unknown family
    auto graphs = enumerate_family(fam, max_edges, max_unlabelled);
    std::ostringstream os;
    os << kCsvHeader;
    for (const auto& g : graphs) {
        os << "\"" << g.key() << "\"," << family << "," << g.e() << "," << g.v() << "," << g.d() << ","
           << aut_order(g) << "," << (g.e() - g.v()) << "," << g.v() << ",,\n";
    }
    return os.str();
}

std::string low_order_csv(int max_order) {
    std::ostringstream os;
    os << kCsvHeader;
    for (int m = 1; m <= max_order; ++m) {
        for (const auto& t : low_order_table(m)) {
            const Graph& g = t.graph;
            os << "\"" << g.key() << "\",G5(2)," << g.e() << "," << g.v() << "," << g.d() << ","
               << aut_order(g) << "," << t.hbar_power << "," << t.lambda_power << ","
               << rational_to_string(t.coefficient.re) << ","
               << rational_to_string(t.coefficient.im) << "\n";
        }
    }
    return os.str();
}

std::string low_order_latex(int max_order) {
    std::ostringstream os;
    for (int m = 1; m <= max_order; ++m) {
        os << "B_" << m << " = ";
        bool first = true;
        for (const auto& t : low_order_table(m)) {
            if (!first) os << " + ";
            first = false;
            os << "(" << t.coefficient.str() << ")\\,\\lambda^{" << t.lambda_power << "}\\,["
               << t.graph.key() << "]";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace starforge
