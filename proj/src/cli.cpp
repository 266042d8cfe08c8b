#include "edf/cli.hpp"

#include "edf/report.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

namespace edf::cli {

void cmd_list(std::ostream& out) {
    for (const auto& s : scenarios()) out << s.name << " - " << s.anchor << '\n';
}

int cmd_describe(const std::string& name, std::ostream& out, std::ostream& err) {
    const ScenarioInfo* info = find_scenario(name);
    if (!info) {
        err << "unknown scenario: " << name << " (see `edf list`)\n";
        return unknown_scenario;
    }
    out << info->name << ": " << info->anchor << '\n' << info->describe();
    return ok;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ScenarioInfo* info = find_scenario(cfg.scenario);
    if (!info) {
        err << "unknown scenario: " << cfg.scenario << " (see `edf list`)\n";
        return unknown_scenario;
    }
    return run_scenario(*info, cfg, out, err);
}

int run_scenario(const ScenarioInfo& info, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.options.replicates && *cfg.options.replicates < 2) {
        err << "--replicates must be >= 2\n";
        return failure;
    }

    ScenarioResult result;
    try {
        result = info.run(cfg.options);
    } catch (const EstimatorError& e) {
        err << "estimator error: " << e.what() << '\n';
        return estimator_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }

    const std::string text = cfg.format == Format::csv ? to_csv(result) : to_json(result);
    if (cfg.out_path == "-") {
        out << text;
        out.flush();
        return out ? ok : io_failure;
    }
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "cannot open " << cfg.out_path << " for writing\n";
        return io_failure;
    }
    file << text;
    file.close();
    if (!file) {
        err << "write to " << cfg.out_path << " failed\n";
        return io_failure;
    }
    return ok;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"effective degrees of freedom and optimism for regularized regression"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list scenarios");

    std::string describe_name;
    auto* describe = app.add_subcommand("describe", "print a scenario's constants");
    describe->add_option("scenario", describe_name)->required();

    RunConfig cfg;
    long replicates = 0;
    std::vector<double> grid;
    std::string format = "csv";
    auto* run = app.add_subcommand("run", "run a scenario and write its rows");
    run->add_option("scenario", cfg.scenario)->required();
    run->add_option("--seed", cfg.options.seed, "master seed")->capture_default_str();
    auto* rep_opt = run->add_option("--replicates", replicates, "Monte Carlo replicates per estimate");
    run->add_option("--out", cfg.out_path, "output path, - for stdout")->capture_default_str();
    run->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    auto* grid_opt = run->add_option("--grid", grid, "comma-separated parameter grid")->delimiter(',');
    run->add_flag("--noise-as-sd", cfg.options.noise_as_sd, "lasso: read the 0.02 noise level as a sd");
    run->add_flag("--noise-as-variance", cfg.options.noise_as_variance,
                  "ridge profile: read diag(0.1, 3) as variances");
    run->add_option("--threads", cfg.options.threads)->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? ok : failure;
    }

    if (*list) {
        cmd_list(out);
        return ok;
    }
    if (*describe) return cmd_describe(describe_name, out, err);

    if (*rep_opt) cfg.options.replicates = replicates;
    if (*grid_opt) cfg.options.grid = grid;
    cfg.format = format == "json" ? Format::json : Format::csv;
    return cmd_run(cfg, out, err);
}

}  // namespace edf::cli
