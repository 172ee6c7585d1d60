#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bell/core.hpp"
#include "bell/known_bounds.hpp"
#include "bell/polytopes.hpp"
#include "bell/symmetry.hpp"
#include "bell/tsirelson.hpp"
#include "bell/version.hpp"
#include "bell/volume.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitBudget = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::array<double, 8> parse_eight(const std::string& csv) {
    std::array<double, 8> out{};
    std::stringstream ss(csv);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 8) throw InputError("expected exactly 8 comma-separated values");
        try {
            out[i++] = std::stod(tok);
        } catch (const std::exception&) {
            throw InputError("could not parse '" + tok + "' as a number");
        }
    }
    if (i != 8) throw InputError("expected exactly 8 comma-separated values");
    return out;
}

std::array<double, 8> load_eight_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_array() || j.size() != 8)
        throw InputError(path + ": expected a flat JSON array of 8 numbers");
    std::array<double, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) {
        if (!j[i].is_number()) throw InputError(path + ": entry is not a number");
        out[i] = j[i].get<double>();
    }
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BELL_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 20260823ULL;
}

json tool_metadata() {
    return {{"tool", bell::kToolName}, {"version", bell::kToolVersion}};
}

const bell::SymmetryGroup& group() {
    static const bell::SymmetryGroup g = bell::SymmetryGroup::generate();
    return g;
}

std::optional<bell::QBName> qb_from_string(const std::string& s) {
    if (s == "qb1") return bell::QBName::QB1;
    if (s == "qb2") return bell::QBName::QB2;
    if (s == "qb3") return bell::QBName::QB3;
    return std::nullopt;
}

// --- bound ---------------------------------------------------------------

struct BoundArgs {
    std::string coeffs;
    std::string input_path;
    std::string out_path;
    bell::SolverOptions solver;
};

int run_bound(const BoundArgs& args) {
    bell::CoefficientVector c;
    if (!args.coeffs.empty())
        c.c = parse_eight(args.coeffs);
    else if (!args.input_path.empty())
        c.c = load_eight_json(args.input_path);
    else
        throw InputError("bound: provide --c or --input");

    const double lhvm = bell::lhvm_max(c);
    const double nosig = bell::nosig_max(c);
    bell::QuantumBoundResult qb;
    try {
        qb = bell::quantum_bound(c, args.solver);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    }

    json j = tool_metadata();
    j["config"] = {{"c", c.c}, {"grid", args.solver.grid},
                   {"multistart", args.solver.multistart},
                   {"tol", args.solver.angle_tol}};
    j["lhvm_max"] = lhvm;
    j["quantum_bound"] = qb.bound;
    j["argmax_angles"] = qb.argmax;
    j["certificate_margin"] = qb.certificate_margin;
    j["iterations"] = qb.iterations;
    j["nosig_max"] = nosig;
    write_output(args.out_path, j.dump(2) + "\n");
    return kExitOk;
}

// --- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::string qb;
    std::string template_path;
    std::string out_path;
    double xmin = -4.0, xmax = 4.0;
    int steps = 81;
    bell::SolverOptions solver;
};

int run_sweep(const SweepArgs& args) {
    std::optional<bell::QBName> name;
    bell::CoefficientVector base, dir;
    if (!args.qb.empty()) {
        name = qb_from_string(args.qb);
        if (!name) throw InputError("sweep: --qb must be qb1, qb2, or qb3");
        bell::qb_template_parts(*name, base, dir);
    } else if (!args.template_path.empty()) {
        std::ifstream in(args.template_path);
        if (!in) throw InputError("cannot open " + args.template_path);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw InputError(std::string("bad template JSON: ") + e.what());
        }
        if (!j.contains("base") || !j.contains("direction"))
            throw InputError("template file needs 'base' and 'direction' arrays of 8");
        for (std::size_t i = 0; i < 8; ++i) {
            base[i] = j["base"].at(i).get<double>();
            dir[i] = j["direction"].at(i).get<double>();
        }
    } else {
        throw InputError("sweep: provide --qb or --template");
    }
    if (args.steps < 1) throw InputError("sweep: --steps must be >= 1");

    std::ostringstream csv;
    csv << "# " << bell::kToolName << " " << bell::kToolVersion << " sweep";
    if (name) csv << " qb=" << bell::qb_name_string(*name);
    csv << " xmin=" << args.xmin << " xmax=" << args.xmax << " steps=" << args.steps << "\n";
    csv << "x,lhvm,qm_formula,qm_numeric,nosig\n";
    for (int i = 0; i < args.steps; ++i) {
        const double x = args.steps == 1
                             ? args.xmin
                             : args.xmin + (args.xmax - args.xmin) * double(i) /
                                               double(args.steps - 1);
        bell::CoefficientVector c;
        for (std::size_t k = 0; k < 8; ++k) c[k] = base[k] + x * dir[k];
        bell::QuantumBoundResult qb;
        try {
            qb = bell::quantum_bound(c, args.solver);
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitConvergence;
        }
        csv << x << "," << bell::lhvm_max(c) << ",";
        if (name) csv << bell::qb_bound(*name, x);
        csv << "," << qb.bound << "," << bell::nosig_max(c) << "\n";
    }
    write_output(args.out_path, csv.str());
    return kExitOk;
}

// --- survey --------------------------------------------------------------

int run_survey(const std::string& out_path) {
    const auto classes = bell::enumerate_classes(group());
    const bell::SurveyResult res = bell::gap_survey(classes);

    std::ostringstream csv;
    csv << "# " << bell::kToolName << " " << bell::kToolVersion << " survey\n";
    csv << "# classes=" << res.class_count
        << " classes_excluding_zero=" << res.class_count_excluding_zero
        << " gap_classes=" << res.gap_rows.size() << "\n";
    csv << "c1,c2,c3,c4,c5,c6,c7,c8,orbit_size,lhvm,nosig,gap,quantum\n";
    for (const auto& row : res.rows) {
        for (int v : row.cls.representative) csv << v << ",";
        csv << row.cls.orbit_size << "," << row.lhvm << "," << row.nosig << ","
            << (row.gap ? 1 : 0) << ",";
        if (row.quantum) csv << *row.quantum;
        csv << "\n";
    }
    write_output(out_path, csv.str());
    return kExitOk;
}

// --- check ---------------------------------------------------------------

struct CheckArgs {
    std::string criterion;
    std::string behavior_path;
    std::string out_path;
    double tol = 1e-9;
    double scale = 0.70710678118654752440;
};

int run_check(const CheckArgs& args) {
    bell::Behavior b;
    b.v = load_eight_json(args.behavior_path);

    json j = tool_metadata();
    j["config"] = {{"criterion", args.criterion}, {"behavior", b.v},
                   {"tol", args.tol}};
    bool ok = false;
    if (args.criterion == "nosig") {
        ok = bell::is_nosig(b, args.tol);
    } else if (args.criterion == "lhvm") {
        const auto m = bell::polytope_member(bell::lhvm_polytope(), b, args.tol);
        if (m == bell::Membership::SolverFailure) {
            std::cerr << "error: LP solver failure\n";
            return kExitConvergence;
        }
        ok = m == bell::Membership::Member;
    } else if (args.criterion == "pseudoq") {
        const auto m =
            bell::polytope_member(bell::pseudo_quantum_polytope(args.scale), b, args.tol);
        if (m == bell::Membership::SolverFailure) {
            std::cerr << "error: LP solver failure\n";
            return kExitConvergence;
        }
        ok = m == bell::Membership::Member;
        j["config"]["scale"] = args.scale;
    } else if (args.criterion == "tlm") {
        ok = bell::tlm_satisfied(b, args.tol);
    } else if (args.criterion == "npa") {
        ok = bell::npa_satisfied(b, args.tol);
    } else if (auto name = qb_from_string(args.criterion)) {
        const auto fb = bell::FunctionValuedBound::make(*name, group());
        ok = !bell::fv_violated(b, fb, args.tol);
    } else {
        throw InputError("check: unknown criterion '" + args.criterion + "'");
    }
    j["satisfied"] = ok;
    write_output(args.out_path, j.dump(2) + "\n");
    return kExitOk;
}

// --- volume --------------------------------------------------------------

struct VolumeArgs {
    int space = 8;
    std::string criteria = "nosig,lhvm,npa,qb2,qb3,composite,exceptional";
    std::string conditioning = "nosig";
    std::string out_path;
    bell::SamplerConfig cfg;
    double target_stderr = 0.0;
};

int run_volume(const VolumeArgs& args) {
    std::vector<std::string> names;
    std::stringstream ss(args.criteria);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) names.push_back(tok);
    }
    if (names.empty()) throw InputError("volume: empty criteria list");

    bell::SamplerConfig cfg = args.cfg;
    cfg.conditioning = args.conditioning == "none" ? bell::Conditioning::None
                                                   : bell::Conditioning::Nosig;

    bell::VolumeReport rep;
    if (args.space == 4) {
        rep = bell::volume4(names, cfg);
    } else if (args.space == 8) {
        rep = bell::volume8(names, cfg);
    } else {
        throw InputError("volume: --space must be 4 or 8");
    }

    json j = tool_metadata();
    j["config"] = {{"space", args.space},
                   {"criteria", names},
                   {"samples", cfg.samples},
                   {"seed", cfg.seed},
                   {"threads", cfg.threads},
                   {"chunk_size", cfg.chunk_size},
                   {"conditioning", args.conditioning},
                   {"pseudoq_scale", cfg.pseudoq_scale},
                   {"tol", cfg.tol}};
    j["prng"] = rep.prng;
    j["n_raw"] = rep.n_raw;
    j["n_conditioned"] = rep.n_conditioned;
    j["lp_failures"] = rep.lp_failures;
    j["npa_domain_errors"] = rep.npa_domain_errors;
    j["wall_seconds"] = rep.wall_seconds;
    json crit = json::object();
    double worst_stderr = 0.0;
    for (const auto& [name, est] : rep.criteria) {
        crit[name] = {{"count", est.count},
                      {"n_samples", est.n_samples},
                      {"mean", est.mean},
                      {"stderr", est.stderr_value},
                      {"units", est.units}};
        worst_stderr = std::max(worst_stderr, est.stderr_value);
    }
    j["criteria"] = crit;
    write_output(args.out_path, j.dump(2) + "\n");
    if (args.target_stderr > 0.0 && worst_stderr > args.target_stderr) {
        std::cerr << "error: achieved stderr " << worst_stderr
                  << " exceeds target " << args.target_stderr << "\n";
        return kExitBudget;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-functional bound solver and volume analysis"};
    app.set_version_flag("--version", std::string(bell::kToolVersion));
    app.require_subcommand(1);

    BoundArgs bound_args;
    auto* bound = app.add_subcommand(
        "bound", "LHVM, quantum, and no-signaling maxima of a functional");
    bound->add_option("--c", bound_args.coeffs,
                      "coefficients c1,...,c8 in the order "
                      "A0,A1,B0,B1,A0B0,A1B0,A0B1,A1B1");
    bound->add_option("--input", bound_args.input_path, "JSON array of 8 coefficients");
    bound->add_option("--out", bound_args.out_path, "output path (default stdout)");
    bound->add_option("--grid", bound_args.solver.grid, "coarse scan density");
    bound->add_option("--multistart", bound_args.solver.multistart, "refinement starts");
    bound->add_option("--tol", bound_args.solver.angle_tol, "angle convergence tolerance");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "per-x bound columns for a linear template");
    sweep->add_option("--qb", sweep_args.qb, "built-in template: qb1, qb2, or qb3");
    sweep->add_option("--template", sweep_args.template_path,
                      "JSON file with 'base' and 'direction' arrays");
    sweep->add_option("--xmin", sweep_args.xmin, "sweep start");
    sweep->add_option("--xmax", sweep_args.xmax, "sweep end");
    sweep->add_option("--steps", sweep_args.steps, "number of x values");
    sweep->add_option("--out", sweep_args.out_path, "output CSV path (default stdout)");
    sweep->add_option("--grid", sweep_args.solver.grid, "coarse scan density");

    std::string survey_out;
    auto* survey = app.add_subcommand("survey", "equivalence classes of {-1,0,1}^8");
    survey->add_option("--out", survey_out, "output CSV path (default stdout)");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "criterion membership for a behavior");
    check->add_option("--criterion", check_args.criterion,
                      "lhvm|nosig|pseudoq|tlm|npa|qb1|qb2|qb3")
        ->required();
    check->add_option("--behavior", check_args.behavior_path, "JSON array of 8 numbers")
        ->required();
    check->add_option("--tol", check_args.tol, "membership tolerance");
    check->add_option("--scale", check_args.scale, "pseudo-quantum vertex scale");
    check->add_option("--out", check_args.out_path, "output path (default stdout)");

    VolumeArgs vol_args;
    vol_args.cfg.seed = default_seed();
    auto* volume = app.add_subcommand("volume", "Monte Carlo criterion volumes");
    volume->add_option("--space", vol_args.space, "4 or 8");
    volume->add_option("--criteria", vol_args.criteria, "comma-separated criterion list");
    volume->add_option("--samples", vol_args.cfg.samples, "raw uniform draws");
    volume->add_option("--seed", vol_args.cfg.seed, "PRNG seed (default $BELL_SEED)");
    volume->add_option("--threads", vol_args.cfg.threads, "worker count (results invariant)");
    volume->add_option("--chunk", vol_args.cfg.chunk_size, "samples per PRNG chunk");
    volume->add_option("--conditioning", vol_args.conditioning, "none|nosig (8-space)");
    volume->add_option("--scale", vol_args.cfg.pseudoq_scale, "pseudo-quantum vertex scale");
    volume->add_option("--target-stderr", vol_args.target_stderr,
                       "exit 4 if any criterion stderr exceeds this");
    volume->add_option("--out", vol_args.out_path, "output JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) return run_bound(bound_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (survey->parsed()) return run_survey(survey_out);
        if (check->parsed()) return run_check(check_args);
        if (volume->parsed()) return run_volume(vol_args);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    }
    return kExitOk;
}
