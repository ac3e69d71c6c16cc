// Command-line front end: geometry condition checks, convergence
// simulations, limit-law approximations, ECDF comparisons, and
// multi-major-axis bound checks, all with reproducible seeded output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diamlimit/diamlimit.hpp"

namespace {

using nlohmann::json;
using namespace diamlimit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;
constexpr int kExitIndeterminate = 3;

std::vector<double> parse_csv_doubles(const std::string& text, const char* field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) {
                throw std::invalid_argument(tok);
            }
        } catch (const std::exception&) {
            throw InvalidSpecError(std::string(field) + ": cannot parse '" + tok +
                                   "' as a number");
        }
    }
    if (out.empty()) {
        throw InvalidSpecError(std::string(field) + ": empty value list");
    }
    return out;
}

Eigen::MatrixXd parse_matrix(const std::string& text, const char* field) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        rows.push_back(parse_csv_doubles(row, field));
    }
    if (rows.empty()) {
        throw InvalidSpecError(std::string(field) + ": empty matrix");
    }
    const std::size_t m = rows.size();
    Eigen::MatrixXd mat(m, rows[0].size());
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != rows[0].size()) {
            throw InvalidSpecError(std::string(field) + ": ragged matrix rows");
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return mat;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// CSV with one column per t-index and 17 significant digits, LF endings.
void write_csv(const std::string& path, const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidSpecError("cannot open output file '" + path + "'");
    }
    if (columns.size() == 1) {
        out << "value\n";
    } else {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << (i == 0 ? "" : ",") << "value_" << (i + 1);
        }
        out << "\n";
    }
    const std::size_t rows = columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << format_value(columns[i][r]);
        }
        out << '\n';
    }
}

void write_sidecar(const std::string& csv_path, const json& doc) {
    std::ofstream out(csv_path + ".json", std::ios::binary);
    out << doc.dump(2) << '\n';
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json witness_to_json(const Eigen::VectorXd& z) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        arr.push_back(z[i]);
    }
    return arr;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckArgs {
    std::string body = "ellipsoid";
    std::string axes;
    double a = 1.0;
    std::string hl;
    std::string hr;
    double tol = 1e-8;
};

int run_check(const CheckArgs& args) {
    PoleCapGeometry left;
    PoleCapGeometry right;
    json config{{"body", args.body}, {"tol", args.tol}};
    if (args.body == "ellipsoid") {
        if (args.axes.empty()) {
            throw InvalidSpecError("--axes: required for ellipsoid bodies");
        }
        const auto axes = parse_csv_doubles(args.axes, "--axes");
        config["axes"] = axes;
        Eigen::MatrixXd h;
        try {
            h = ellipsoid_hessian(axes);
        } catch (const NonUniqueAxisError& e) {
            throw NonUniqueAxisError(std::string("--axes: ") + e.what());
        }
        left = eigendecompose_polecap(axes[0], h, Lemma1Policy::Report);
        right = left;
    } else if (args.body == "polecaps") {
        if (args.hl.empty() || args.hr.empty()) {
            throw InvalidSpecError("--hl/--hr: required for pole-cap bodies");
        }
        config["a"] = args.a;
        config["hl"] = args.hl;
        config["hr"] = args.hr;
        left = eigendecompose_polecap(args.a, parse_matrix(args.hl, "--hl"),
                                      Lemma1Policy::Report);
        right = eigendecompose_polecap(args.a, parse_matrix(args.hr, "--hr"),
                                       Lemma1Policy::Report);
    } else {
        throw InvalidSpecError("--body: must be 'ellipsoid' or 'polecaps'");
    }

    const ConditionReport report = check_condition3(left, right, args.tol);
    json doc{
        {"command", "check"},
        {"config", config},
        {"verdict", to_string(report.verdict)},
        {"lemma1_ok", {{"left", report.lemma1_left}, {"right", report.lemma1_right}}},
        {"sufficient_ok", report.sufficient_ok},
        {"lambda_min_a1", report.lambda_min_a1},
    };
    doc["eta_star"] = report.eta_star ? json(*report.eta_star) : json(nullptr);
    doc["witness"] = report.witness ? witness_to_json(*report.witness) : json(nullptr);
    std::cout << doc.dump(2) << '\n';
    switch (report.verdict) {
        case Verdict::Pass: return kExitOk;
        case Verdict::Fail: return kExitFail;
        case Verdict::Indeterminate: return kExitIndeterminate;
    }
    return kExitUsage;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string body = "auto";
    std::string axes;
    std::string dist = "uniform";
    double n = 1000.0;
    std::size_t reps = 1000;
    std::string mode = "poissonized";
    double norm_p = 0.0;   // 0: default for the distribution
    std::size_t k = 1;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

struct ParsedDist {
    DistributionSpec dist;
    bool psuper = false;
    double p = 2.0;
    double beta = 0.0;
};

ParsedDist parse_dist(const std::string& text) {
    ParsedDist out;
    if (text == "uniform") {
        out.dist = UniformEllipsoidDist{};
        return out;
    }
    if (text.rfind("pearson:", 0) == 0) {
        const auto vals = parse_csv_doubles(text.substr(8), "--dist");
        if (vals.size() != 1 || !(vals[0] > -1.0)) {
            throw InvalidSpecError("--dist: pearson needs a single beta > -1");
        }
        out.beta = vals[0];
        out.dist = PearsonIIDist{vals[0]};
        return out;
    }
    if (text.rfind("uniform-p:", 0) == 0) {
        const auto vals = parse_csv_doubles(text.substr(10), "--dist");
        if (vals.size() != 1 || !(vals[0] >= 1.0)) {
            throw InvalidSpecError("--dist: uniform-p needs a single p >= 1");
        }
        out.psuper = true;
        out.p = vals[0];
        out.dist = UniformPSuperDist{vals[0]};
        return out;
    }
    throw InvalidSpecError("--dist: expected uniform, pearson:<beta>, or uniform-p:<p>");
}

int run_simulate(const SimulateArgs& args) {
    if (args.axes.empty()) {
        throw InvalidSpecError("--axes: required");
    }
    if (args.out.empty()) {
        throw InvalidSpecError("--out: required");
    }
    const auto axes = parse_csv_doubles(args.axes, "--axes");
    try {
        validate_axes(axes, /*require_unique_major=*/true);
    } catch (const Error& e) {
        throw InvalidSpecError(std::string("--axes: ") + e.what());
    }
    const ParsedDist parsed = parse_dist(args.dist);
    if (args.body != "auto") {
        const bool wants_psuper = args.body == "psuper";
        if (args.body != "ellipsoid" && !wants_psuper) {
            throw InvalidSpecError("--body: must be ellipsoid or psuper");
        }
        if (wants_psuper != parsed.psuper) {
            throw InvalidSpecError("--body: inconsistent with --dist");
        }
    }
    if (args.mode != "poissonized" && args.mode != "fixed") {
        throw InvalidSpecError("--mode: must be poissonized or fixed");
    }
    if (!(args.n >= 1.0)) {
        throw InvalidSpecError("--n: must be at least 1");
    }

    ConvergenceConfig cfg;
    const int d = static_cast<int>(axes.size());
    const double two_a = 2.0 * axes[0];
    if (parsed.psuper) {
        cfg.body = PSuperellipsoid{parsed.p, axes};
        cfg.rate = RateSpec::pnorm(d, parsed.p, two_a);
        cfg.norm_p = args.norm_p > 0.0 ? args.norm_p : parsed.p;
    } else {
        cfg.body = Ellipsoid{axes};
        cfg.rate = std::holds_alternative<PearsonIIDist>(parsed.dist)
                       ? RateSpec::pearson(d, parsed.beta, two_a)
                       : RateSpec::main(d, two_a);
        cfg.norm_p = args.norm_p > 0.0 ? args.norm_p : 2.0;
    }
    cfg.dist = parsed.dist;
    cfg.n = args.n;
    cfg.reps = args.reps;
    cfg.mode = args.mode == "poissonized" ? CountMode::Poissonized : CountMode::Fixed;
    cfg.k = args.k;
    cfg.seed = args.seed;
    cfg.threads = args.threads;

    const ConvergenceResult result = run_convergence(cfg);
    write_csv(args.out, result.raw);

    json config{
        {"body", parsed.psuper ? "psuper" : "ellipsoid"},
        {"axes", axes},
        {"dist", args.dist},
        {"n", args.n},
        {"reps", args.reps},
        {"mode", args.mode},
        {"norm_p", cfg.norm_p},
        {"k", args.k},
        {"seed", args.seed},
    };
    json doc{
        {"command", "simulate"},
        {"config", config},
        {"seed", args.seed},
        {"csv", args.out},
        {"rate_factor", rate_factor(cfg.rate, cfg.n)},
        {"realized_counts",
         {{"mean", result.counts.mean},
          {"min", result.counts.min},
          {"max", result.counts.max}}},
        {"runtime_seconds", result.runtime_seconds},
    };
    write_sidecar(args.out, doc);
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

struct LimitArgs {
    std::string body = "ellipsoid";
    std::string axes;
    double p = 2.0;
    double a = 1.0;
    std::string hl;
    std::string hr;
    std::string intensity = "uniform";
    double b = 10.0;
    std::size_t reps = 1000;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

int run_limit_cmd(const LimitArgs& args) {
    if (args.out.empty()) {
        throw InvalidSpecError("--out: required");
    }
    PolePairConfig pair;
    std::vector<double> axes;
    json config{{"body", args.body}, {"b", args.b},       {"k", args.k},
                {"reps", args.reps}, {"seed", args.seed}, {"intensity", args.intensity}};

    if (args.body == "ellipsoid" || args.body == "psuper") {
        if (args.axes.empty()) {
            throw InvalidSpecError("--axes: required");
        }
        axes = parse_csv_doubles(args.axes, "--axes");
        try {
            validate_axes(axes, /*require_unique_major=*/true);
        } catch (const Error& e) {
            throw InvalidSpecError(std::string("--axes: ") + e.what());
        }
        config["axes"] = axes;
        if (args.body == "psuper") {
            config["p"] = args.p;
            pair.left = TruncatedParaboloid{PNormParaboloid{args.p, axes}, args.b};
            pair.functional = PairFunctional::pnorm(axes[0], args.p);
        } else {
            pair.left = TruncatedParaboloid{ellipsoid_polecap(axes), args.b};
            pair.functional = PairFunctional::euclid(axes[0]);
        }
        pair.right = pair.left;
    } else if (args.body == "polecaps") {
        if (args.hl.empty() || args.hr.empty()) {
            throw InvalidSpecError("--hl/--hr: required for pole-cap bodies");
        }
        config["a"] = args.a;
        config["hl"] = args.hl;
        config["hr"] = args.hr;
        pair.left = TruncatedParaboloid{
            eigendecompose_polecap(args.a, parse_matrix(args.hl, "--hl")), args.b};
        pair.right = TruncatedParaboloid{
            eigendecompose_polecap(args.a, parse_matrix(args.hr, "--hr")), args.b};
        pair.functional = PairFunctional::euclid(args.a);
    } else {
        throw InvalidSpecError("--body: must be ellipsoid, psuper, or polecaps");
    }

    // Intensity: explicit values, or the body's natural constants
    // (1/volume for the uniform case, the Pearson constant for lambda).
    const auto default_uniform = [&]() -> double {
        if (args.body == "psuper") {
            return 1.0 / psuperellipsoid_volume(args.p, axes);
        }
        if (args.body == "ellipsoid") {
            return 1.0 / ellipsoid_volume(axes);
        }
        throw InvalidSpecError("--intensity: pole-cap bodies need explicit constants");
    };
    if (args.intensity == "uniform") {
        const double p_const = default_uniform();
        pair.left_intensity = UniformDensity{p_const};
        pair.right_intensity = UniformDensity{p_const};
    } else if (args.intensity.rfind("uniform:", 0) == 0) {
        const auto vals = parse_csv_doubles(args.intensity.substr(8), "--intensity");
        if (vals.size() != 2 || !(vals[0] > 0.0) || !(vals[1] > 0.0)) {
            throw InvalidSpecError("--intensity: uniform needs two positive constants");
        }
        pair.left_intensity = UniformDensity{vals[0]};
        pair.right_intensity = UniformDensity{vals[1]};
    } else if (args.intensity.rfind("lambda:", 0) == 0) {
        if (args.body != "ellipsoid") {
            throw InvalidSpecError("--intensity: lambda requires an ellipsoid body");
        }
        const auto vals = parse_csv_doubles(args.intensity.substr(7), "--intensity");
        double alpha_l;
        double alpha_r;
        double beta;
        if (vals.size() == 1) {
            beta = vals[0];
            alpha_l = alpha_r = pearson2_constant(beta, axes);
        } else if (vals.size() == 3) {
            alpha_l = vals[0];
            alpha_r = vals[1];
            beta = vals[2];
        } else {
            throw InvalidSpecError(
                "--intensity: lambda:<beta> or lambda:<al>,<ar>,<beta>");
        }
        if (!(beta > -1.0)) {
            throw InvalidSpecError("--intensity: beta must satisfy beta > -1");
        }
        if (!(alpha_l > 0.0) || !(alpha_r > 0.0)) {
            throw InvalidSpecError("--intensity: alphas must be positive");
        }
        pair.left_intensity = LambdaBeta{alpha_l, beta, axes};
        pair.right_intensity = LambdaBeta{alpha_r, beta, axes};
    } else {
        throw InvalidSpecError("--intensity: expected uniform[:pl,pr] or lambda:...");
    }

    LimitRunConfig cfg;
    cfg.pair = pair;
    cfg.reps = args.reps;
    cfg.k = args.k;
    cfg.seed = args.seed;
    cfg.threads = args.threads;
    const LimitRunResult result = run_limit(cfg);
    write_csv(args.out, result.raw);

    json doc{
        {"command", "limit"},
        {"config", config},
        {"seed", args.seed},
        {"csv", args.out},
        {"masses", {{"left", result.left_mass}, {"right", result.right_mass}}},
        {"empty_retries", result.empty_retries},
        {"runtime_seconds", result.runtime_seconds},
    };
    write_sidecar(args.out, doc);
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

std::vector<double> read_csv_first_column(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidSpecError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidSpecError("'" + path + "' is empty");
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        values.push_back(std::stod(line.substr(0, comma)));
    }
    if (values.empty()) {
        throw InvalidSpecError("'" + path + "' has a header but no rows");
    }
    return values;
}

json config_hash_of(const std::string& csv_path) {
    std::ifstream in(csv_path + ".json", std::ios::binary);
    if (!in) {
        return nullptr;
    }
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.contains("config")) {
        return nullptr;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(doc["config"].dump())));
    return std::string(buf);
}

int run_compare(const std::string& path_a, const std::string& path_b) {
    const Ecdf a = Ecdf::from_samples(read_csv_first_column(path_a));
    const Ecdf b = Ecdf::from_samples(read_csv_first_column(path_b));
    json doc{
        {"command", "compare"},
        {"ks", ks_distance(a, b)},
        {"counts", {{"a", a.count()}, {"b", b.count()}}},
        {"config_hashes", {{"a", config_hash_of(path_a)}, {"b", config_hash_of(path_b)}}},
    };
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsArgs {
    int d = 3;
    int e = 2;
    double beta = 0.0;
    std::string axes;
    double n = 10000.0;
    std::size_t reps = 2000;
    std::string t_grid;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

int run_bounds_cmd(const BoundsArgs& args) {
    if (args.e < 2 || args.e > args.d - 1) {
        throw InvalidSpecError("--e: must satisfy 2 <= e <= d-1");
    }
    if (args.axes.empty()) {
        throw InvalidSpecError("--axes: required");
    }
    BoundsCheckConfig cfg;
    cfg.d = args.d;
    cfg.e = args.e;
    cfg.beta = args.beta;
    cfg.half_axes = parse_csv_doubles(args.axes, "--axes");
    cfg.n = args.n;
    cfg.reps = args.reps;
    if (!args.t_grid.empty()) {
        cfg.t_grid = parse_csv_doubles(args.t_grid, "--t-grid");
    }
    cfg.seed = args.seed;
    cfg.threads = args.threads;

    const BoundsCheckReport report = run_bounds_check(cfg);
    json entries = json::array();
    for (const auto& entry : report.entries) {
        entries.push_back(json{{"t", entry.t},
                               {"lower", entry.lower},
                               {"upper", entry.upper},
                               {"band", entry.band},
                               {"empirical", entry.empirical},
                               {"ok", entry.ok}});
    }
    json doc{
        {"command", "bounds"},
        {"config",
         {{"d", args.d},
          {"e", args.e},
          {"beta", args.beta},
          {"axes", cfg.half_axes},
          {"n", args.n},
          {"reps", args.reps},
          {"seed", args.seed}}},
        {"seed", args.seed},
        {"constants",
         {{"a", report.constants.a},
          {"alpha", report.constants.alpha},
          {"sigma", report.constants.sigma},
          {"bn_prefactor", report.constants.bn_prefactor},
          {"bn_exponent", report.constants.bn_exponent},
          {"g_exponent", report.constants.g_exponent}}},
        {"entries", entries},
        {"all_ok", report.all_ok},
        {"runtime_seconds", report.runtime_seconds},
    };
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::binary);
        out << doc.dump(2) << '\n';
    }
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diameter limit laws for random points in smooth bodies"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Decide the unique-diameter conditions");
    check->add_option("--body", check_args.body, "ellipsoid | polecaps");
    check->add_option("--axes", check_args.axes, "half-axes, e.g. 1,0.5");
    check->add_option("--a", check_args.a, "half-diameter for pole-cap bodies");
    check->add_option("--hl", check_args.hl, "left pole Hessian, rows ';'-separated");
    check->add_option("--hr", check_args.hr, "right pole Hessian");
    check->add_option("--tol", check_args.tol, "PSD tolerance");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Scaled diameter statistics of clouds");
    sim->add_option("--body", sim_args.body, "auto | ellipsoid | psuper");
    sim->add_option("--axes", sim_args.axes, "half-axes")->required();
    sim->add_option("--dist", sim_args.dist, "uniform | pearson:<beta> | uniform-p:<p>");
    sim->add_option("--n", sim_args.n, "intensity / sample size");
    sim->add_option("--reps", sim_args.reps, "replications");
    sim->add_option("--mode", sim_args.mode, "poissonized | fixed");
    sim->add_option("--norm-p", sim_args.norm_p, "distance norm exponent");
    sim->add_option("--k", sim_args.k, "number of largest distances");
    sim->add_option("--seed", sim_args.seed, "master seed");
    sim->add_option("--threads", sim_args.threads, "worker cap (0: env/hardware)");
    sim->add_option("--out", sim_args.out, "CSV output path")->required();

    LimitArgs limit_args;
    auto* lim = app.add_subcommand("limit", "Approximate the limit distribution");
    lim->add_option("--body", limit_args.body, "ellipsoid | psuper | polecaps");
    lim->add_option("--axes", limit_args.axes, "half-axes");
    lim->add_option("--p", limit_args.p, "p-superellipsoid exponent");
    lim->add_option("--a", limit_args.a, "half-diameter for pole-cap bodies");
    lim->add_option("--hl", limit_args.hl, "left pole Hessian");
    lim->add_option("--hr", limit_args.hr, "right pole Hessian");
    lim->add_option("--intensity", limit_args.intensity,
                    "uniform[:pl,pr] | lambda:<beta> | lambda:<al>,<ar>,<beta>");
    lim->add_option("--b", limit_args.b, "truncation height");
    lim->add_option("--reps", limit_args.reps, "replications");
    lim->add_option("--k", limit_args.k, "number of smallest t-values");
    lim->add_option("--seed", limit_args.seed, "master seed");
    lim->add_option("--threads", limit_args.threads, "worker cap");
    lim->add_option("--out", limit_args.out, "CSV output path")->required();

    std::vector<std::string> compare_paths;
    auto* cmp = app.add_subcommand("compare", "Two-sample KS distance of two CSVs");
    cmp->add_option("files", compare_paths, "two CSV paths")->expected(2);

    BoundsArgs bounds_args;
    auto* bnd = app.add_subcommand("bounds", "Multi-major-axis bound checks");
    bnd->add_option("--d", bounds_args.d, "dimension");
    bnd->add_option("--e", bounds_args.e, "number of major half-axes");
    bnd->add_option("--beta", bounds_args.beta, "Pearson parameter");
    bnd->add_option("--axes", bounds_args.axes, "half-axes")->required();
    bnd->add_option("--n", bounds_args.n, "sample size per replication");
    bnd->add_option("--reps", bounds_args.reps, "replications");
    bnd->add_option("--t-grid", bounds_args.t_grid, "comma-separated t values");
    bnd->add_option("--seed", bounds_args.seed, "master seed");
    bnd->add_option("--threads", bounds_args.threads, "worker cap");
    bnd->add_option("--out", bounds_args.out, "JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (check->parsed()) {
            return run_check(check_args);
        }
        if (sim->parsed()) {
            return run_simulate(sim_args);
        }
        if (lim->parsed()) {
            return run_limit_cmd(limit_args);
        }
        if (cmp->parsed()) {
            return run_compare(compare_paths[0], compare_paths[1]);
        }
        if (bnd->parsed()) {
            return run_bounds_cmd(bounds_args);
        }
    } catch (const Error& e) {
        json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump(2) << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        json err{{"error", "Unexpected"}, {"message", e.what()}};
        std::cerr << err.dump(2) << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
