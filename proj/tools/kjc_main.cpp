// kjc: command-line front end for the kicked Jaynes-Cummings simulator.
//
//   kjc <spectrum|evolve|sweep|strobe|resonances> [--config PATH] [--out PATH]
//       [--seed U64] [--threads N] [--beta X] [--delta X] [--betaT X]
//       [--kappa-tau X] [--L N] [--n-kicks N] [--substeps N] [--kick-sign +-1]
//       [--classical-kick rotation|unitary] [--set key=value ...]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.

#include "kjc/app/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalAbort = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kicked coupled Jaynes-Cummings cavities: Floquet and semi-classical analysis"};
    app.set_version_flag("--version", std::string(kjc::app::version()));

    std::string command;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> extra;
    app.add_option("command", command, "spectrum | evolve | sweep | strobe | resonances")->required();
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_path, "CSV output path (default stdout)");
    app.add_option("--set", extra, "override any config key, key=value (repeatable)");

    // Flag name -> config key.
    const std::vector<std::pair<std::string, std::string>> overrides = {
        {"--seed", "seed"},         {"--threads", "threads"},       {"--beta", "beta"},
        {"--delta", "delta"},       {"--betaT", "betaT"},           {"--kappa-tau", "kappa_tau"},
        {"--L", "L"},               {"--n-kicks", "n_kicks"},       {"--substeps", "substeps"},
        {"--kick-sign", "kick_sign"}, {"--classical-kick", "classical_kick"},
    };
    std::vector<std::optional<std::string>> override_values(overrides.size());
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        app.add_option_function<std::string>(
            overrides[i].first, [&, i](const std::string& v) { override_values[i] = v; },
            "overrides config key " + overrides[i].second);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        const auto cmd = kjc::app::parse_command(command);
        auto kv = config_path.empty() ? kjc::app::KeyValueConfig{} : kjc::app::KeyValueConfig::load(config_path);
        for (const auto& item : extra) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw kjc::app::ConfigError("--set expects key=value, got '" + item + "'");
            kv.set(item.substr(0, eq), item.substr(eq + 1));
        }
        for (std::size_t i = 0; i < overrides.size(); ++i) {
            if (override_values[i]) kv.set(overrides[i].second, *override_values[i]);
        }
        const auto cfg = kjc::app::resolve(cmd, kv);

        std::ostringstream csv;
        kjc::app::run_command(cfg, csv);
        if (out_path.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw kjc::app::ConfigError("cannot open output file '" + out_path + "'");
            f << csv.str();
        }
    } catch (const kjc::app::ConfigError& e) {
        std::cerr << "kjc: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const kjc::InvalidInput& e) {
        std::cerr << "kjc: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const kjc::NumericalAbort& e) {
        std::cerr << "kjc: numerical abort: " << e.what() << '\n';
        return kNumericalAbort;
    }
    return 0;
}
