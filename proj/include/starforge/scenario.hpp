#pragma once

#include "starforge/interacting.hpp"

namespace starforge {

/// Scenario configuration: a model, an interaction, series bounds,
/// an optional exact coupling value, a suite selection and a seed for
/// the random functionals the property checks draw.
struct Scenario {
    FreeTheory theory;
    Interaction inter;
    SeriesBounds bounds;
    std::optional<Rational> lambda_value;
    std::vector<std::string> suites;
    unsigned seed = 1;

    MollerConfig config(int jobs) const;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse and validate a scenario from JSON text.  Throws
/// ScenarioError on any schema violation (the CLI maps that to exit
/// code 2).
Scenario parse_scenario(const std::string& json_text);

const std::vector<std::string>& all_suites();

struct CheckResult {
    std::string name;
    bool pass = true;
    int lhs_terms = 0;
    int rhs_terms = 0;
    std::string first_discrepancy;  // empty when the check passes
};

CheckResult compare_functionals(const std::string& name, const PolyFunctional& lhs,
                                const PolyFunctional& rhs);
CheckResult compare_integers(const std::string& name, long lhs, long rhs);

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
};

/// Run one named suite; unknown names throw ScenarioError.
SuiteReport run_suite(const Scenario& sc, const std::string& name, int jobs);
std::vector<SuiteReport> run_suites(const Scenario& sc, int jobs);

bool all_pass(const std::vector<SuiteReport>& reports);

/// Report JSON with one entry per check:
/// {name, status, bounds, lhs_terms, rhs_terms, first_discrepancy}.
std::string report_json(const Scenario& sc, const std::vector<SuiteReport>& reports);

/// CSV term tables, columns fixed:
/// graph_key,family,e,v,d,aut_order,hbar_power,lambda_power,coeff_re,coeff_im
std::string family_csv(const std::string& family, int max_edges, int max_unlabelled);
std::string low_order_csv(int max_order);
/// Human-readable rendering of the same tables.
std::string low_order_latex(int max_order);

}  // namespace starforge
