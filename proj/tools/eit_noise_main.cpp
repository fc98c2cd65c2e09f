#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eit/config.hpp"
#include "eit/errors.hpp"
#include "eit/validate.hpp"
#include "eit/version.hpp"

namespace {

int thread_cap() {
    if (const char* env = std::getenv("EIT_NOISE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pump-probe quantum noise spectra for cavity EIT"};
    app.set_version_flag("--version", eit::kVersion);
    app.require_subcommand(1);

    auto* scan_cmd = app.add_subcommand("scan", "run a probe-detuning scan");
    std::string config_name;
    std::string out_override;
    std::string format_override;
    std::vector<std::string> sets;
    scan_cmd->add_option("--config", config_name, "config file path or builtin name (fig1a, fig1b, empty_cavity)")
        ->required();
    scan_cmd->add_option("--out", out_override, "output file path (overrides config)");
    scan_cmd->add_option("--format", format_override, "csv or json (overrides config)");
    scan_cmd->add_option("--set", sets, "key=value override, repeatable");

    auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");
    std::string level = "quick";
    validate_cmd->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan_cmd->parsed()) {
            eit::RunConfig cfg = eit::load_config(config_name, sets);
            if (!out_override.empty()) cfg.out = out_override;
            if (!format_override.empty()) cfg.format = format_override;
            cfg.validate();
            eit::run_scan(cfg, thread_cap());
            std::cout << "wrote " << cfg.out << " (" << cfg.scan_points << " points)\n";
            return 0;
        }
        if (validate_cmd->parsed()) {
            const auto lvl =
                level == "full" ? eit::ValidationLevel::full : eit::ValidationLevel::quick;
            const auto results = eit::run_validation(lvl);
            const int failures = eit::print_report(results, std::cout);
            return failures == 0 ? 0 : 3;
        }
    } catch (const eit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
