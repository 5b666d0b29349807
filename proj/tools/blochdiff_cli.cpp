// Command-line front end: analyze a symbol pair, run the verification checks,
// or sweep a single trace axis to CSV.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "blochdiff/config.hpp"
#include "blochdiff/report.hpp"

namespace {

using namespace blochdiff;

RunConfig resolve_config(const std::string& config_path, const std::string& preset,
                         bool have_seed, uint64_t seed) {
    RunConfig cfg;
    if (!config_path.empty())
        cfg = load_config(config_path);
    else if (!preset.empty())
        cfg = preset_config(preset);
    else
        throw ConfigError("either --config or --preset is required");
    if (have_seed) cfg.seed = seed;
    cfg.validate();
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << text;
}

std::string stem_of(const std::string& path) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

int run_analyze(const RunConfig& cfg, const std::string& out, const std::string& format) {
    DiskGrid grid = cfg.make_grid();
    DiskGrid a_grid = cfg.make_a_grid();
    PairContext ctx(cfg.pair(), cfg.space(), grid);
    CriterionReport rep = full_report(ctx, a_grid, cfg.report_options());
    ojson j = report_to_json(rep, cfg);
    write_text(out, j.dump(2) + "\n");
    if (format == "csv") {
        if (out.empty()) throw ConfigError("--format csv needs --out to derive trace paths");
        std::string stem = stem_of(out);
        for (auto [suffix, writer] :
             {std::pair<const char*, void (*)(const CriterionReport&, std::ostream&)>{".n.csv", n_trace_csv},
              {".a.csv", a_trace_csv},
              {".r.csv", r_trace_csv}}) {
            std::ofstream os(stem + suffix, std::ios::binary);
            if (!os) throw ConfigError(std::string("cannot open trace file: ") + stem + suffix);
            writer(rep, os);
        }
    }
    return 0;
}

int run_check(const RunConfig& cfg, const std::string& checks, const std::string& out) {
    std::vector<std::string> names;
    std::stringstream ss(checks);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) names.push_back(item);
    }
    VerifyConfig vc = cfg.verify_config();
    RegressionResult res = run_regression(vc, names);
    outcome_table(res.outcomes, std::cout);
    if (!out.empty()) write_text(out, outcomes_to_json(res.outcomes).dump(2) + "\n");
    return res.all_pass ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, const std::string& axis, const std::string& out) {
    DiskGrid grid = cfg.make_grid();
    DiskGrid a_grid = cfg.make_a_grid();
    PairContext ctx(cfg.pair(), cfg.space(), grid);
    CriterionReport rep;
    std::ostringstream os;
    if (axis == "n") {
        rep.n_trace = pow_curve(ctx, cfg.make_schedule(), cfg.grid.refine);
        n_trace_csv(rep, os);
    } else if (axis == "a") {
        rep.a_trace = test_curve(ctx, a_grid, cfg.grid.refine);
        a_trace_csv(rep, os);
    } else if (axis == "r") {
        rep.e_t = quantity_T_essential(ctx);
        r_trace_csv(rep, os);
    } else {
        throw ConfigError("unknown sweep axis '" + axis + "' (expected n, a or r)");
    }
    write_text(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"criteria for differences of weighted differentiation composition operators"};
    app.require_subcommand(1);

    std::string config_path, preset, out, format = "json", checks = "all", axis;
    uint64_t seed = 0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--preset", preset, "built-in configuration: case1..case4");
        sub->add_option("--out", out, "output path (stdout when omitted)");
        sub->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
            have_seed = true;
        });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "compute the criterion report for one pair");
    add_common(analyze);
    analyze->add_option("--format", format, "json | csv (csv adds trace files next to --out)")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* check = app.add_subcommand("check", "run verification checks over the regression family");
    add_common(check);
    check->add_option("--checks", checks, "comma-separated check names or 'all'");

    CLI::App* sweep = app.add_subcommand("sweep", "emit one trace as CSV");
    add_common(sweep);
    sweep->add_option("--axis", axis, "n | a | r")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = resolve_config(config_path, preset, have_seed, seed);
        if (app.got_subcommand(analyze)) return run_analyze(cfg, out, format);
        if (app.got_subcommand(check)) return run_check(cfg, checks, out);
        if (app.got_subcommand(sweep)) return run_sweep(cfg, axis, out);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SelfMapViolation& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const WeightError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
