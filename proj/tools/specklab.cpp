// Command-line front end. Exit status: 0 success, 1 a check failed,
// 2 usage or input error.

#include "specklab/errors.hpp"
#include "specklab/json_io.hpp"
#include "specklab/optimizers.hpp"
#include "specklab/polytope.hpp"
#include "specklab/realization.hpp"
#include "specklab/repro.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>

using namespace specklab;
using io::Json;

namespace {

struct Globals {
    std::string json_out;
    std::uint64_t seed = 7;
    double tol_sdp = 1e-7;
    std::size_t max_iters = 200'000;
    unsigned long long limit_vertices = 1ULL << 16;
};


void emit(const Globals& g, const Json& j, bool print)
{
    if (!g.json_out.empty())
        io::write_json_file(g.json_out, j);
    if (print)
        std::cout << io::dump(j);
}

sdp::SdpOptions sdp_options(const Globals& g)
{
    sdp::SdpOptions o;
    o.tolerance = g.tol_sdp;
    o.max_iterations = g.max_iters;
    return o;
}

std::string format_double(double x)
{
    std::ostringstream out;
    out << std::setprecision(9) << x;
    return out.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Contextuality scenarios: exact polytopes, consistent exclusivity and the almost-quantum relaxation"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--json-out", g.json_out, "Write the JSON artifact to this path");
    app.add_option("--seed", g.seed, "Seed for random functionals");
    app.add_option("--tol-sdp", g.tol_sdp, "SDP residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", g.max_iters, "SDP iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--limit-vertices", g.limit_vertices, "Deterministic model guard")->check(CLI::PositiveNumber);

    int n = 0, k = 0, outcomes = 2;
    std::string scenario_path, model_path, functional_path, report_path, input_path, set = "general";
    unsigned long long limit = 1'000'000;
    bool verify = false, facets = false, tamper = false, no_q1 = false;
    std::size_t q1_checks = 0;
    int trials = 25;

    auto* gen = app.add_subcommand("generate-scenario", "Print a symmetric scenario");
    gen->add_option("--n", n, "Number of measurements")->required();
    gen->add_option("--k", k, "Context size (default n - 1)");
    gen->add_option("--outcomes", outcomes, "Outcomes per measurement");

    auto* events = app.add_subcommand("events", "List the events of a scenario");
    events->add_option("--scenario", scenario_path)->required();

    auto* cliques = app.add_subcommand("cliques", "Maximal cliques of the exclusivity graph");
    cliques->add_option("--scenario", scenario_path)->required();
    cliques->add_option("--limit", limit, "Clique count guard");

    auto* protocols = app.add_subcommand("protocol-edges", "Hyperedges generated by measurement protocols");
    protocols->add_option("--scenario", scenario_path)->required();
    protocols->add_option("--limit", limit, "Protocol count guard");

    auto* check_cmd = app.add_subcommand("check-model", "Check normalization, no-disturbance and nonnegativity");
    check_cmd->add_option("--model", model_path)->required();

    auto* membership = app.add_subcommand("classical-membership", "Decide membership in the classical polytope");
    membership->add_option("--model", model_path)->required();

    auto* maximize = app.add_subcommand("maximize", "Maximize a functional over G, C, CE or Q1");
    maximize->add_option("--set", set)->check(CLI::IsMember({"general", "classical", "ce", "q1"}))->required();
    maximize->add_option("--functional", functional_path)->required();
    maximize->add_option("--report", report_path, "Write the solver report (q1) or certificate here");

    auto* family = app.add_subcommand("family", "Generate the I_n family");
    family->add_option("--n", n)->required();
    family->add_flag("--verify", verify, "Certify every member as a CE inequality");

    auto* polytope = app.add_subcommand("polytope", "Classical polytope analysis");
    polytope->add_option("--scenario", scenario_path)->required();
    polytope->add_flag("--facets", facets, "Enumerate and classify facets");

    auto* theorem = app.add_subcommand("theorem3", "Check C = CE on the binary n-Specker scenario");
    theorem->add_option("--n", n)->required();
    theorem->add_option("--q1-checks", q1_checks, "Number of facets spot-checked with the SDP");

    auto* collapse = app.add_subcommand("collapse-sample", "Compare C, CE and Q1 on random functionals");
    collapse->add_option("--n", n)->required();
    collapse->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
    collapse->add_flag("--no-q1", no_q1, "Skip the SDP");

    auto* quantum = app.add_subcommand("quantum-check", "Check a quantum, almost-quantum or POVM simulation");
    quantum->add_option("--input", input_path)->required();

    auto* reproduce = app.add_subcommand("reproduce", "Recompute every headline number");
    reproduce->add_flag("--tamper-pentagonal", tamper, "Negative control: flip one pentagonal coefficient");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            auto s = make_symmetric_scenario(n, k ? k : n - 1, outcomes);
            emit(g, io::to_json(s), true);
        } else if (*events) {
            auto s = io::scenario_from_json(io::read_json_file(scenario_path));
            Json list = Json::array();
            for (const auto& e : enumerate_events(s))
                list.push_back(io::to_json(e));
            emit(g, list, true);
        } else if (*cliques) {
            auto s = io::scenario_from_json(io::read_json_file(scenario_path));
            auto graph = build_exclusivity_graph(s);
            Json list = Json::array();
            for (const auto& c : enumerate_maximal_cliques(graph, limit)) {
                Json clique = Json::array();
                for (auto v : c)
                    clique.push_back(io::to_json(graph.vertices[v]));
                list.push_back(clique);
            }
            emit(g, list, true);
        } else if (*protocols) {
            auto s = io::scenario_from_json(io::read_json_file(scenario_path));
            auto all = enumerate_events(s);
            Json list = Json::array();
            for (const auto& h : enumerate_protocol_hyperedges(s, limit)) {
                Json edge = Json::array();
                for (auto v : h.events)
                    edge.push_back(io::to_json(all[v]));
                list.push_back(edge);
            }
            emit(g, list, true);
        } else if (*check_cmd) {
            auto p = io::model_from_json(io::read_json_file(model_path));
            auto issues = specklab::check_model(p);
            emit(g, Json{{"valid", issues.empty()}, {"issues", issues}}, true);
            if (!issues.empty())
                return 1;
        } else if (*membership) {
            auto p = io::model_from_json(io::read_json_file(model_path));
            auto cert = classical_membership(p, g.limit_vertices);
            emit(g, io::to_json(cert), true);
        } else if (*maximize) {
            auto f = io::functional_from_json(io::read_json_file(functional_path));
            Json artifact;
            if (set == "general" || set == "ce") {
                Rational value;
                lp::Status status;
                ProbabilisticModel optimizer;
                if (set == "general") {
                    auto r = maximize_over_general(f);
                    std::tie(status, value, optimizer) = std::tie(r.status, r.value, r.optimizer);
                } else {
                    auto r = maximize_over_ce(f);
                    std::tie(status, value, optimizer) = std::tie(r.status, r.value, r.optimizer);
                }
                if (status != lp::Status::optimal) {
                    std::cout << lp::to_string(status) << "\n";
                    return 1;
                }
                std::cout << to_string(value) << "\n";
                artifact = Json{{"set", set}, {"value", io::to_json(value)}, {"optimizer", io::to_json(optimizer)}};
            } else if (set == "classical") {
                auto r = maximize_over_classical(f, g.limit_vertices);
                std::cout << to_string(r.value) << "\n";
                artifact = Json{{"set", set}, {"value", io::to_json(r.value)}, {"argmax", io::to_json(r.argmax)}};
            } else {
                auto r = maximize_over_q1(f, sdp_options(g));
                std::cout << format_double(r.value) << "\n";
                artifact = Json{{"set", set},
                                {"value", r.value},
                                {"report", io::to_json(r.report)},
                                {"certificate_check", io::to_json(validate_moment_matrix(r.certificate))}};
                if (!report_path.empty())
                    io::write_json_file(report_path, artifact);
                if (!r.converged) {
                    std::cerr << "SDP did not converge: " << sdp::to_string(r.report.status) << "\n";
                    emit(g, artifact, false);
                    return 1;
                }
            }
            if (!report_path.empty() && set != "q1")
                io::write_json_file(report_path, artifact);
            emit(g, artifact, false);
        } else if (*family) {
            auto specs = generate_family(n);
            Json list = Json::array();
            bool ok = true;
            if (verify) {
                auto report = verify_family_is_ce(n);
                for (const auto& c : report.certificates)
                    list.push_back(io::to_json(c, expand_inequality(c.spec)));
                ok = report.all_passed();
                std::cout << report.passed() << "/" << report.certificates.size() << " certified\n";
            } else {
                for (const auto& spec : specs)
                    list.push_back(Json{{"spec", io::to_json(spec)}, {"functional", io::to_json(expand_inequality(spec))}});
                std::cout << specs.size() << " inequalities\n";
            }
            emit(g, list, false);
            if (!ok)
                return 1;
        } else if (*polytope) {
            auto s = io::scenario_from_json(io::read_json_file(scenario_path));
            auto vertices = enumerate_deterministic_models(s, g.limit_vertices);
            std::vector<RationalVector> points;
            for (const auto& v : vertices)
                points.push_back(v.values);
            Json out{{"scenario", io::to_json(s)},
                     {"vertices", vertices.size()},
                     {"dimension", affine_dimension(points)}};
            std::cout << "vertices " << vertices.size() << ", dimension " << affine_dimension(points) << "\n";
            if (facets) {
                PolytopeOptions opts;
                opts.vertex_limit = g.limit_vertices;
                auto reports = enumerate_classical_facets(s, opts);
                Json list = Json::array();
                std::map<std::string, int> counts;
                for (const auto& r : reports) {
                    list.push_back(io::to_json(r));
                    ++counts[to_string(r.classification)];
                }
                out["facets"] = list;
                std::cout << "facets " << reports.size();
                for (const auto& [name, count] : counts)
                    std::cout << ", " << name << " " << count;
                std::cout << "\n";
            }
            emit(g, out, false);
        } else if (*theorem) {
            ExactCollapseOptions opts;
            opts.q1_checks = q1_checks;
            opts.sdp = sdp_options(g);
            opts.polytope.vertex_limit = g.limit_vertices;
            auto r = check_theorem_collapse(n, opts);
            std::cout << "CE vertices " << r.ce_vertices << (r.vertices_deterministic ? " (all deterministic)" : "")
                      << ", facets " << r.facets << " of expected " << r.expected_facets
                      << (r.facets_match_family ? " (match the family)" : " (mismatch)") << "\n";
            emit(g, io::to_json(r), false);
            if (!r.passed())
                return 1;
        } else if (*collapse) {
            CollapseOptions opts;
            opts.run_q1 = !no_q1;
            opts.sdp = sdp_options(g);
            auto r = random_functional_collapse_check(n, trials, g.seed, opts);
            std::cout << r.scenario_label << ": " << r.trials.size() - r.gaps() << "/" << r.trials.size()
                      << " collapsed\n";
            emit(g, io::to_json(r), false);
            if (!r.all_collapsed())
                return 1;
        } else if (*quantum) {
            auto j = io::read_json_file(input_path);
            Json out;
            bool valid = false;
            if (j.contains("sigma_x") || j.contains("parent")) {
                std::vector<sdp::HermMatrix> parent;
                std::vector<std::vector<sdp::HermMatrix>> children;
                if (j.contains("sigma_x")) {
                    auto x = io::herm_from_json(j.at("sigma_x"), "sigma_x");
                    auto z = io::herm_from_json(j.at("sigma_z"), "sigma_z");
                    parent = unsharp_qubit_parent(x, z);
                    children = unsharp_qubit_children(x, z);
                } else {
                    for (std::size_t i = 0; i < j.at("parent").size(); ++i)
                        parent.push_back(io::herm_from_json(j.at("parent")[i], "parent[" + std::to_string(i) + "]"));
                    for (std::size_t i = 0; i < j.at("children").size(); ++i) {
                        children.emplace_back();
                        for (std::size_t a = 0; a < j.at("children")[i].size(); ++a)
                            children.back().push_back(io::herm_from_json(
                                j.at("children")[i][a], "children[" + std::to_string(i) + "][" + std::to_string(a) + "]"));
                    }
                }
                auto r = check_joint_measurability_simulation(parent, children);
                out = io::to_json(r);
                valid = r.valid;
            } else {
                auto s = io::scenario_from_json(j.at("scenario"));
                QuantumRealization r{io::herm_from_json(j.at("state"), "state"), {}};
                for (std::size_t i = 0; i < j.at("projectors").size(); ++i)
                    r.projectors.push_back(io::herm_from_json(j.at("projectors")[i], "projectors[" + std::to_string(i) + "]"));
                const bool almost = j.value("mode", std::string("quantum")) == "almost-quantum";
                auto rep = almost ? check_almost_quantum_realization(r, s) : check_quantum_realization(r, s);
                out = io::to_json(rep);
                valid = rep.valid;
            }
            emit(g, out, true);
            if (!valid)
                return 1;
        } else if (*reproduce) {
            ReproOptions opts;
            opts.seed = g.seed;
            opts.sdp_tolerance = g.tol_sdp;
            opts.sdp_max_iterations = g.max_iters;
            opts.tamper_pentagonal = tamper;
            opts.data_dir = default_data_dir();
            auto r = reproduce_paper(opts);
            Json list = Json::array();
            for (const auto& rec : r.records) {
                std::printf("%-4s %-62s expected %-24s got %s (%.2fs)\n", rec.passed() ? "PASS" : "FAIL",
                            rec.name.c_str(), rec.expected.c_str(), rec.computed.c_str(), rec.runtime_seconds);
                list.push_back(Json{{"name", rec.name},
                                    {"expected", rec.expected},
                                    {"computed", rec.computed},
                                    {"tolerance", rec.tolerance},
                                    {"status", rec.status},
                                    {"runtime", rec.runtime_seconds}});
            }
            emit(g, list, false);
            if (!r.all_passed())
                return 1;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const ConstraintViolation& e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        return 2;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
