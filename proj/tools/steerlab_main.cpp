// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// steerlab command-line front end.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "steerlab/assemblage.hpp"
#include "steerlab/errors.hpp"
#include "steerlab/filtering.hpp"
#include "steerlab/io.hpp"
#include "steerlab/lhs.hpp"
#include "steerlab/metrics.hpp"
#include "steerlab/tomosim.hpp"
#include "svg_plot.hpp"

namespace {

using steerlab::Assemblage;
using steerlab::Json;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

const char* error_kind(const std::exception& e) {
    using namespace steerlab;
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const ShapeMismatch*>(&e)) return "ShapeMismatch";
    if (dynamic_cast<const NotPSD*>(&e)) return "NotPSD";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const ZeroProbabilityBranch*>(&e)) return "ZeroProbabilityBranch";
    if (dynamic_cast<const InsufficientCounts*>(&e)) return "InsufficientCounts";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const SolverFailure*>(&e)) return "SolverFailure";
    return "Error";
}

void report_error(const char* kind, const std::string& message) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

// Writes to `path` atomically, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    steerlab::write_text_file_atomic(path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Assemblage load_assemblage(const std::string& path) {
    return steerlab::assemblage_from_json(steerlab::read_json_file(path));
}

Json violations_to_json(const std::vector<steerlab::Violation>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) {
        out.push_back({{"kind", steerlab::to_string(v.kind)},
                       {"a", v.a},
                       {"x", v.x},
                       {"magnitude", v.magnitude},
                       {"message", v.message}});
    }
    return out;
}

Json model_to_json(const steerlab::LhsModel& m) {
    Json weights = Json::array();
    for (const auto& w : m.weights) weights.push_back(steerlab::matrix_to_json(w.matrix()));
    return {{"n_inputs", m.n_inputs}, {"n_outputs", m.n_outputs}, {"weights", std::move(weights)}};
}

// Accepts "0.6,0.7,0.8" (alpha^2 values) or "default".
std::vector<double> parse_grid(const std::string& text) {
    if (text.empty() || text == "default") return steerlab::default_alpha2_grid();
    std::vector<double> grid;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw steerlab::ParseError("--grid: cannot parse \"" + item + "\" as a number");
        }
    }
    for (double a : grid) steerlab::check_alpha2(a, "--grid");
    return grid;
}

// Recovers alpha^2 from an input file that must equal alpha_assemblage(alpha^2).
double alpha2_of(const Assemblage& asm_) {
    if (asm_.n_inputs() != 2 || asm_.n_outputs() != 2 || asm_.dim() != 2) {
        throw steerlab::ShapeMismatch("distill: input must be a 2-input, 2-output qubit assemblage");
    }
    const double alpha2 = asm_.probability(0, 0);
    steerlab::check_alpha2(alpha2, "distill");
    if (steerlab::max_abs_diff(asm_, steerlab::alpha_assemblage(alpha2)) > 1e-9) {
        throw steerlab::ValidationError("distill: input is not of the form alpha_assemblage(alpha2)");
    }
    return alpha2;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("STEERLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw steerlab::ParseError(std::string("STEERLAB_SEED is not an unsigned integer: ") + env);
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum steering assemblages: filtering, distillation, fidelity and robustness."};
    app.require_subcommand(1);
    app.footer(
        "Examples:\n"
        "  steerlab make alpha --alpha2 0.8 --out alpha.json\n"
        "  steerlab distill --alpha2 0.8 --copies 2 --mode exact --report report.json\n"
        "  steerlab metrics --singlet-fraction alpha.json\n"
        "  steerlab robustness alpha.json --flavor lhs\n"
        "  steerlab fig3 --shots 100000 --seeds 10 --out sweep --svg sweep.svg\n"
        "Exit codes: 0 success, 2 configuration or validation error, 3 solver failure.\n"
        "STEERLAB_SEED sets the default --seed.");

    std::uint64_t seed = 0;
    bool seed_given = false;
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>(
               "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; },
               "RNG seed (default: $STEERLAB_SEED or 1)");
    };

    // make
    auto* make = app.add_subcommand("make", "Build an assemblage file.");
    make->footer("Examples:\n  steerlab make singlet --out s.json\n  steerlab make alpha --alpha2 0.8\n"
                 "  steerlab make from-state --state rho.json --measurements zx.json");
    std::string make_kind, make_out, state_file, meas_file;
    double make_alpha2 = 0.0;
    make->add_option("kind", make_kind, "singlet | alpha | from-state")
        ->required()
        ->check(CLI::IsMember({"singlet", "alpha", "from-state"}));
    make->add_option("--alpha2", make_alpha2, "alpha^2 in (1/2, 1) for kind alpha");
    make->add_option("--state", state_file, "state/v1 file for kind from-state");
    make->add_option("--measurements", meas_file, "measurements/v1 file for kind from-state");
    make->add_option("-o,--out", make_out, "output file (default stdout)");

    // validate
    auto* validate = app.add_subcommand("validate", "Check the assemblage invariants of a file.");
    validate->footer("Example:\n  steerlab validate s.json");
    std::string validate_file;
    double validate_tol = steerlab::kValidationTolerance;
    validate->add_option("file", validate_file, "assemblage/v1 file")->required();
    validate->add_option("--tol", validate_tol, "tolerance");

    // filter
    auto* filter = app.add_subcommand("filter", "Apply one outcome of a local filter on Bob's side.");
    filter->footer("Examples:\n  steerlab filter alpha.json --alpha2 0.8 --outcome 0 --out singlet.json\n"
                   "  steerlab filter in.json --kraus k.json --outcome 1");
    std::string filter_file, kraus_file, filter_out, filter_report;
    double filter_alpha2 = 0.0;
    int filter_outcome = 0;
    filter->add_option("file", filter_file, "assemblage/v1 file")->required();
    auto* filter_a2 = filter->add_option("--alpha2", filter_alpha2, "use the distillation filter for this alpha^2");
    auto* filter_k = filter->add_option("--kraus", kraus_file, "kraus/v1 file");
    filter_a2->excludes(filter_k);
    filter->add_option("--outcome", filter_outcome, "filter outcome")->check(CLI::NonNegativeNumber);
    filter->add_option("-o,--out", filter_out, "post-filter assemblage file (default stdout)");
    filter->add_option("--report", filter_report, "outcome report file when --out is given (default stdout)");

    // distill
    auto* distill = app.add_subcommand("distill", "Run the N-copy distillation protocol.");
    distill->footer("Examples:\n  steerlab distill --alpha2 0.8 --copies 2 --mode exact\n"
                    "  steerlab distill --alpha2 0.8 --copies 3 --mode sampled --trials 100000 --seed 7");
    std::string distill_input, distill_mode = "exact", distill_report, distill_out;
    double distill_alpha2 = 0.0;
    int copies = 2;
    std::uint64_t trials = 100000;
    auto* d_in = distill->add_option("--input", distill_input, "assemblage/v1 file of the form alpha_assemblage");
    auto* d_a2 = distill->add_option("--alpha2", distill_alpha2, "alpha^2 in (1/2, 1)");
    d_in->excludes(d_a2);
    distill->add_option("--copies", copies, "number of copies N >= 2");
    distill->add_option("--mode", distill_mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    distill->add_option("--trials", trials, "Monte-Carlo trials for mode sampled");
    add_seed(distill);
    distill->add_option("--report", distill_report, "protocol report file (default stdout)");
    distill->add_option("-o,--out", distill_out, "averaged output assemblage file");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Assemblage fidelity or singlet-assemblage fraction.");
    metrics->footer("Examples:\n  steerlab metrics a.json b.json\n  steerlab metrics --singlet-fraction a.json");
    std::vector<std::string> metric_files;
    std::string fraction_file, metrics_out;
    metrics->add_option("files", metric_files, "two assemblage/v1 files")->expected(0, 2);
    metrics->add_option("--singlet-fraction", fraction_file, "assemblage/v1 file");
    metrics->add_option("-o,--out", metrics_out, "output file (default stdout)");

    // robustness
    auto* robustness = app.add_subcommand("robustness", "Steering robustness by semidefinite programming.");
    robustness->footer("Examples:\n  steerlab robustness s.json\n  steerlab robustness s.json --flavor generalized\n"
                       "  steerlab robustness s.json --method ap");
    std::string robust_file, flavor = "lhs", method = "ipm", robust_out;
    steerlab::LhsOptions lhs_opts;
    robustness->add_option("file", robust_file, "assemblage/v1 file")->required();
    robustness->add_option("--flavor", flavor, "lhs | generalized")->check(CLI::IsMember({"lhs", "generalized"}));
    robustness->add_option("--method", method, "ipm | ap (alternating projections, lhs flavor only)")
        ->check(CLI::IsMember({"ipm", "ap"}));
    robustness->add_option("--tolerance", lhs_opts.solver_tolerance, "interior-point tolerance");
    robustness->add_option("--max-iterations", lhs_opts.max_iterations, "interior-point iteration cap");
    robustness->add_option("-o,--out", robust_out, "output file (default stdout)");

    // fig3
    auto* fig3 = app.add_subcommand("fig3", "Sweep original, post-selected and averaged assemblages.");
    fig3->footer("Examples:\n  steerlab fig3 --out sweep\n  steerlab fig3 --grid 0.6,0.8 --shots 10000 --seeds 5 --svg s.svg");
    std::string grid_text = "default", fig3_out = "fig3", svg_out;
    std::uint64_t shots = 100000;
    int replicas = 10;
    fig3->add_option("--grid", grid_text, "comma-separated alpha^2 values or \"default\"");
    fig3->add_option("--shots", shots, "shots per tomography setting");
    fig3->add_option("--seeds", replicas, "tomography replicas per point (0: exact columns only)")
        ->check(CLI::NonNegativeNumber);
    add_seed(fig3);
    fig3->add_option("--flavor", flavor, "lhs | generalized")->check(CLI::IsMember({"lhs", "generalized"}));
    fig3->add_option("--out", fig3_out, "output prefix; writes PREFIX.csv and PREFIX.json");
    fig3->add_option("--svg", svg_out, "also write a standalone SVG plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("UsageError", e.what());
        return kExitConfig;
    }

    try {
        if (!seed_given) seed = default_seed();
        const auto robust_flavor =
            flavor == "generalized" ? steerlab::RobustnessFlavor::kGeneralizedNoise : steerlab::RobustnessFlavor::kLhsNoise;

        if (*make) {
            Assemblage out;
            if (make_kind == "singlet") {
                out = steerlab::singlet_assemblage();
            } else if (make_kind == "alpha") {
                out = steerlab::alpha_assemblage(make_alpha2);
            } else {
                if (state_file.empty() || meas_file.empty()) {
                    throw steerlab::DomainError("make from-state requires --state and --measurements");
                }
                int dim_a = 0;
                const auto state = steerlab::state_from_json(steerlab::read_json_file(state_file), &dim_a);
                out = steerlab::from_state(state, steerlab::measurements_from_json(steerlab::read_json_file(meas_file)));
            }
            steerlab::require_valid(out, "make");
            emit(make_out, dump(steerlab::to_json(out)));
            return 0;
        }

        if (*validate) {
            const auto vs = steerlab::validate(load_assemblage(validate_file), validate_tol);
            emit("", dump({{"valid", vs.empty()}, {"violations", violations_to_json(vs)}}));
            if (!vs.empty()) {
                report_error("ValidationError", validate_file + ": " + std::to_string(vs.size()) + " violation(s)");
                return kExitConfig;
            }
            return 0;
        }

        if (*filter) {
            const Assemblage in = load_assemblage(filter_file);
            steerlab::require_valid(in, "filter");
            std::optional<steerlab::KrausFilter> f;
            if (!kraus_file.empty()) {
                f.emplace(steerlab::kraus_from_json(steerlab::read_json_file(kraus_file)));
            } else if (filter_a2->count() > 0) {
                f.emplace(steerlab::paper_filter(filter_alpha2));
            } else {
                throw steerlab::DomainError("filter requires --alpha2 or --kraus");
            }
            const auto res = steerlab::apply_filter(in, *f, filter_outcome);
            if (filter_out.empty()) {
                emit("", dump({{"outcome", filter_outcome},
                               {"probability", res.probability},
                               {"assemblage", steerlab::to_json(res.output)}}));
            } else {
                emit(filter_out, dump(steerlab::to_json(res.output)));
                emit(filter_report, dump({{"outcome", filter_outcome}, {"probability", res.probability}}));
            }
            return 0;
        }

        if (*distill) {
            double alpha2 = distill_alpha2;
            if (!distill_input.empty()) {
                alpha2 = alpha2_of(load_assemblage(distill_input));
            } else if (d_a2->count() == 0) {
                throw steerlab::DomainError("distill requires --alpha2 or --input");
            }
            steerlab::check_alpha2(alpha2, "distill");
            const steerlab::RateReport rate = steerlab::rate_report(alpha2, copies);
            const Assemblage original = steerlab::alpha_assemblage(alpha2);
            Json report{{"alpha2", alpha2}, {"copies", copies}, {"mode", distill_mode}};
            report["rate"] = {{"p_success", rate.p_success},
                              {"p_fail", rate.p_fail},
                              {"rate", rate.rate},
                              {"asymptotic_rate", rate.asymptotic_rate}};
            Assemblage averaged;
            if (distill_mode == "exact") {
                const auto branches = steerlab::run_protocol_exact(alpha2, copies);
                Json table = Json::array();
                double p_success = 0.0;
                for (const auto& b : branches) {
                    table.push_back({{"outcomes", b.outcomes},
                                     {"probability", b.probability},
                                     {"kept_copies", b.kept_indices},
                                     {"succeeded", b.succeeded()}});
                    if (b.succeeded()) p_success += b.probability;
                }
                report["branches"] = std::move(table);
                report["p_success"] = p_success;
                averaged = steerlab::averaged_output(alpha2, copies);
            } else {
                const auto rep = steerlab::run_protocol_sampled(alpha2, copies, trials, seed);
                report["trials"] = trials;
                report["seed"] = seed;
                report["branch_counts"] = rep.branch_counts;
                report["success_count"] = rep.success_count;
                report["p_success"] = rep.success_frequency;
                averaged = rep.averaged;
            }
            report["fraction_before"] = steerlab::singlet_fraction(original);
            report["fraction_after"] = steerlab::singlet_fraction(averaged);
            if (!distill_out.empty()) emit(distill_out, dump(steerlab::to_json(averaged)));
            emit(distill_report, dump(report));
            return 0;
        }

        if (*metrics) {
            Json out;
            if (!fraction_file.empty()) {
                if (!metric_files.empty()) throw steerlab::DomainError("metrics: give two files or --singlet-fraction");
                out = {{"fraction", steerlab::singlet_fraction(load_assemblage(fraction_file))}};
            } else {
                if (metric_files.size() != 2) throw steerlab::DomainError("metrics: expected two assemblage files");
                out = {{"fidelity", steerlab::assemblage_fidelity(load_assemblage(metric_files[0]),
                                                                  load_assemblage(metric_files[1]))}};
            }
            emit(metrics_out, dump(out));
            return 0;
        }

        if (*robustness) {
            const Assemblage in = load_assemblage(robust_file);
            Json out;
            if (method == "ap") {
                if (robust_flavor != steerlab::RobustnessFlavor::kLhsNoise) {
                    throw steerlab::DomainError("robustness: --method ap supports --flavor lhs only");
                }
                steerlab::require_valid(in, "robustness");
                const auto r = steerlab::lhs_robustness_alternating(in);
                out = {{"method", "ap"},
                       {"flavor", "lhs"},
                       {"t_star", r.t_star},
                       {"feasibility_tests", r.feasibility_tests},
                       {"iterations", r.total_iterations}};
            } else {
                const auto r = steerlab::lhs_robustness(in, robust_flavor, lhs_opts);
                out = {{"method", "ipm"},
                       {"flavor", steerlab::to_string(r.flavor)},
                       {"t_star", r.t_star},
                       {"dual_bound", r.dual_bound},
                       {"solver_iters", r.solver_iters},
                       {"residual", r.residual},
                       {"certificate", model_to_json(r.certificate)},
                       {"noise", steerlab::to_json(r.noise)},
                       {"mixed", steerlab::to_json(r.mixed)}};
            }
            emit(robust_out, dump(out));
            return 0;
        }

        if (*fig3) {
            steerlab::SweepConfig cfg;
            cfg.alpha2_grid = parse_grid(grid_text);
            cfg.shots = shots;
            cfg.seed = seed;
            cfg.replicas = replicas;
            cfg.flavor = robust_flavor;
            const auto rows = steerlab::figure3_sweep(cfg);
            steerlab::write_text_file_atomic(fig3_out + ".csv", steerlab::sweep_to_csv(rows));
            steerlab::write_text_file_atomic(fig3_out + ".json", dump(steerlab::sweep_to_json(rows, cfg)));
            if (!svg_out.empty()) steerlab::write_text_file_atomic(svg_out, steerlab::tools::sweep_to_svg(rows));
            return 0;
        }
    } catch (const steerlab::SolverFailure& e) {
        report_error(error_kind(e), e.what());
        return kExitSolver;
    } catch (const steerlab::Error& e) {
        report_error(error_kind(e), e.what());
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        report_error("ParseError", e.what());
        return kExitConfig;
    }
    return 0;
}
