#include "opspace/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "opspace/classify.hpp"
#include "opspace/level_norms.hpp"
#include "opspace/serialization.hpp"
#include "opspace/spaces.hpp"
#include "opspace/tolerances.hpp"
#include "opspace/verify_suites.hpp"

namespace opspace {

namespace {

struct CommonOpts {
    ToleranceConfig cfg;
    std::string output; // empty = stdout
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--structural-tol", opts.cfg.structural_tol,
                    "tolerance for structural identities")
        ->capture_default_str();
    cmd->add_option("--iterative-tol", opts.cfg.iterative_tol,
                    "convergence tolerance for iterative routines")
        ->capture_default_str();
    cmd->add_option("--max-iterations", opts.cfg.max_iterations,
                    "iteration cap for iterative routines")
        ->capture_default_str();
    cmd->add_option("--seed", opts.cfg.seed, "seed for all sampled checks")
        ->envname("OPSPACE_SEED")
        ->capture_default_str();
    cmd->add_option("--output", opts.output, "write the result here instead of stdout");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void emit_json(const json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"finite-dimensional Hilbertian operator spaces: construction, "
                 "projections, distances and verification"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "emit a basis (or a single word unit) as JSON");
    CommonOpts build_opts;
    std::string space;
    int build_n = 0, build_k = 0;
    std::vector<int> set_i, set_j;
    build->add_option("--space", space, "column | row | hnk | phi | ones")
        ->required()
        ->check(CLI::IsMember({"column", "row", "hnk", "phi", "ones"}));
    build->add_option("--n", build_n, "number of generators")->required();
    build->add_option("--k", build_k, "grid parameter (hnk and ones)");
    build->add_option("--I", set_i, "column index set for ones (k-1 indices, 1-based)")
        ->delimiter(',');
    build->add_option("--J", set_j, "row index set for ones (n-k indices, 1-based)")
        ->delimiter(',');
    add_common(build, build_opts);

    // verify
    auto* verify = app.add_subcommand("verify", "run a named check suite and report pass/fail");
    CommonOpts verify_opts;
    std::string suite;
    int verify_n = 0, verify_k = 0;
    verify->add_option("--suite", suite, "car | fock | grid | projection | classify | all")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", verify_n, "number of generators")->required();
    verify->add_option("--k", verify_k, "restrict grid-parameterized checks to one k");
    add_common(verify, verify_opts);

    // distance
    auto* distance = app.add_subcommand(
        "distance", "lower bounds (and closed forms where known) for the distance of a pair");
    CommonOpts distance_opts;
    std::string pair, format = "json";
    int dist_n = 0, dist_k = 0, dist_m = 0, levels = -1, samples = -1;
    bool table = false;
    distance->add_option("--pair", pair,
                         "A:B with tokens C, R, H, Phi (or Cn, Rn, Hnk, Phin); "
                         "--k sizes the first H, --m the second");
    distance->add_option("--n", dist_n, "number of generators")->required();
    distance->add_option("--k", dist_k, "grid parameter for the first H token");
    distance->add_option("--m", dist_m, "grid parameter for the second H token");
    distance->add_flag("--table", table, "all pairs over C, R, every H, Phi");
    distance->add_option("--levels", levels, "amplification levels (default 4, table 3)");
    distance->add_option("--samples", samples, "witnesses per level (default 12, table 6)");
    distance->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_common(distance, distance_opts);

    // classify
    auto* classify_cmd =
        app.add_subcommand("classify", "recognize the span of a family of partial isometries");
    CommonOpts classify_opts;
    std::string input;
    classify_cmd->add_option("--input", input, "JSON file with a basis object or element array")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(classify_cmd, classify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) {
            if (build_n < 1 || build_n > 8) return usage_error("build supports 1 <= n <= 8");
            if (space == "hnk" || space == "ones") {
                if (build_k < 1 || build_k > build_n)
                    return usage_error("--k must satisfy 1 <= k <= n for " + space);
            }
            build_opts.cfg.validate();
            if (space == "ones") {
                if (static_cast<int>(set_i.size()) != build_k - 1)
                    return usage_error("--I needs exactly k-1 indices");
                if (static_cast<int>(set_j.size()) != build_n - build_k)
                    return usage_error("--J needs exactly n-k indices");
                SignedUnit unit = build_uij(build_n, build_k, set_i, set_j);
                json out{{"schema", schema_tag},
                         {"type", "signed_unit"},
                         {"n", build_n},
                         {"k", build_k},
                         {"I", unit.I},
                         {"J", unit.J},
                         {"sign", unit.sign},
                         {"row", unit.row_rank},
                         {"col", unit.col_rank},
                         {"matrix", matrix_to_json(unit.matrix)}};
                emit_json(out, build_opts.output);
                return 0;
            }
            OperatorBasis basis;
            if (space == "column") basis = build_column(build_n);
            else if (space == "row") basis = build_row(build_n);
            else if (space == "phi") basis = build_phi(build_n);
            else basis = build_hnk(build_n, build_k);
            emit_json(basis_to_json(basis), build_opts.output);
            return 0;
        }

        if (verify->parsed()) {
            int cap = suite == "car" || suite == "all" ? 12 : suite == "grid" ? 6 : 8;
            if (verify_n < 1 || verify_n > cap)
                return usage_error("suite " + suite + " supports 1 <= n <= " + std::to_string(cap));
            if (verify_k < 0 || verify_k > verify_n)
                return usage_error("--k must satisfy 0 <= k <= n");
            verify_opts.cfg.validate();
            SuiteReport report = run_suite(suite, verify_n, verify_k, verify_opts.cfg);
            emit_json(suite_report_to_json(report), verify_opts.output);
            return report.pass ? 0 : 1;
        }

        if (distance->parsed()) {
            if (dist_n < 1 || dist_n > 8) return usage_error("distance supports 1 <= n <= 8");
            distance_opts.cfg.validate();
            if (table == !pair.empty())
                return usage_error("give exactly one of --pair or --table");
            if (table) {
                DistanceTable t = distance_table(dist_n, distance_opts.cfg,
                                                 levels < 0 ? 3 : levels,
                                                 samples < 0 ? 6 : samples);
                if (format == "csv") emit(distance_table_to_csv(t), distance_opts.output);
                else emit_json(distance_table_to_json(t), distance_opts.output);
                return 0;
            }
            auto colon = pair.find(':');
            if (colon == std::string::npos)
                return usage_error("--pair must look like A:B, e.g. C:R or H:Phi");
            std::string tok_a = pair.substr(0, colon), tok_b = pair.substr(colon + 1);
            bool first_h = true;
            auto make_space = [&](const std::string& tok) -> std::optional<OperatorBasis> {
                // "Cn", "Rn", "Hnk", "Phin" are accepted as spelled-out
                // forms of the bare tokens; n and k stay command flags
                if (tok == "C" || tok == "Cn") return build_column(dist_n);
                if (tok == "R" || tok == "Rn") return build_row(dist_n);
                if (tok == "Phi" || tok == "Phin") return build_phi(dist_n);
                if (tok != "H" && tok != "Hnk") return std::nullopt;
                int kk = first_h ? dist_k : dist_m;
                first_h = false;
                if (kk < 1 || kk > dist_n)
                    throw std::invalid_argument("H token needs --k (and --m for a second H) in 1..n");
                return build_hnk(dist_n, kk);
            };
            std::optional<OperatorBasis> a = make_space(tok_a);
            std::optional<OperatorBasis> b = make_space(tok_b);
            if (!a || !b)
                return usage_error("pair tokens must be C, R, H or Phi (Cn, Rn, Hnk, Phin)");
            CbEstimate est = basis_map_bounds(*a, *b, distance_opts.cfg,
                                              levels < 0 ? 4 : levels,
                                              samples < 0 ? 12 : samples);
            std::string pair_name = a->name + ":" + b->name;
            if (format == "csv") {
                emit(estimate_to_csv(pair_name, dist_n, est), distance_opts.output);
            } else {
                json out{{"schema", schema_tag},
                         {"type", "distance"},
                         {"pair", pair_name},
                         {"n", dist_n}};
                out.update(estimate_to_json(est));
                emit_json(out, distance_opts.output);
            }
            return 0;
        }

        // classify
        classify_opts.cfg.validate();
        std::ifstream in(input);
        if (!in) return usage_error("cannot read input file: " + input);
        json parsed = json::parse(in);
        std::vector<Element> family = family_from_json(parsed);
        ClassificationReport report = classify(family, classify_opts.cfg);
        json out = classification_to_json(report);
        out["ternary"] = tro_report_to_json(tro_dichotomy(family, classify_opts.cfg));
        emit_json(out, classify_opts.output);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace opspace
