#include "starforge/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int default_jobs(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("STARFORGE_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorial verification of star products and Moller operators"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run scenario suites and write reports");
    std::string scenario_path;
    std::string out_dir = ".";
    std::string suites_arg;
    int jobs_flag = 0;
    bool emit_latex = false;
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory for reports");
    run->add_option("--suites", suites_arg, "comma-separated suite override");
    run->add_option("--jobs", jobs_flag, "worker threads (env STARFORGE_JOBS as fallback)");
    run->add_flag("--emit-latex", emit_latex, "also emit human-readable B-tables");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "emit a graph-family census as CSV");
    std::string family;
    int max_edges = 4;
    int max_unlabelled = 3;
    enumerate->add_option("family", family, "family name, e.g. G5(2)")->required();
    enumerate->add_option("--max-edges", max_edges, "edge bound");
    enumerate->add_option("--max-unlabelled", max_unlabelled, "unlabelled vertex bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream in(scenario_path);
            if (!in) {
                std::cerr << "error: cannot read scenario file " << scenario_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            starforge::Scenario sc = starforge::parse_scenario(buf.str());
            if (!suites_arg.empty()) {
                sc.suites = split_list(suites_arg);
                for (const auto& s : sc.suites) {
                    const auto& known = starforge::all_suites();
                    if (std::find(known.begin(), known.end(), s) == known.end()) {
                        std::cerr << "error: unknown suite \"" << s << "\"\n";
                        return 2;
                    }
                }
            }
            int jobs = default_jobs(jobs_flag);
            auto reports = starforge::run_suites(sc, jobs);

            std::filesystem::create_directories(out_dir);
            std::filesystem::path out(out_dir);
            {
                std::ofstream f(out / "report.json");
                f << starforge::report_json(sc, reports);
            }
            bool want_tables = std::find(sc.suites.begin(), sc.suites.end(),
                                         "low-order-tables") != sc.suites.end();
            if (want_tables) {
                std::ofstream f(out / "low-order-terms.csv");
                f << starforge::low_order_csv(3);
            }
            if (emit_latex) {
                std::ofstream f(out / "b-tables.tex");
                f << starforge::low_order_latex(3);
            }

            for (const auto& rep : reports) {
                for (const auto& c : rep.checks) {
                    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << rep.suite << "/" << c.name;
                    if (!c.pass) std::cout << " -- " << c.first_discrepancy;
                    std::cout << "\n";
                }
            }
            if (!starforge::all_pass(reports)) return 1;
            return 0;
        }

        if (enumerate->parsed()) {
            std::cout << starforge::family_csv(family, max_edges, max_unlabelled);
            return 0;
        }
    } catch (const starforge::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
