#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowqed/cli.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
    nlohmann::json err;
    err["error"] = message;
    err["kind"] = kind;
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crowqed - polariton spectra, transport and susceptibility for "
                 "atom-doped coupled-cavity arrays"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format;
    int workers = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--set", sets, "override: key=value (repeatable)");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format, "csv | json | svg");
        sub->add_option("--workers", workers, "worker threads for sweeps");
    };

    for (const char* name : {"bands", "gf", "transport", "chi", "threshold",
                             "oracle-check", "sweep"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    crowqed::io::RunConfig config;
    try {
        config.command = crowqed::io::parse_command(app.get_subcommands().front()->get_name());
        if (!config_path.empty()) crowqed::io::load_config_file(config, config_path);
        for (const std::string& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw crowqed::io::ValidationError("--set wants key=value, got: " + s);
            crowqed::io::apply_key_value(config, s.substr(0, eq), s.substr(eq + 1));
        }
        // command-line flags take precedence over config-file values
        if (!out_path.empty()) config.out_path = out_path;
        if (!format.empty()) config.format = crowqed::io::parse_format(format);
        if (workers > 0) config.workers = workers;

        return crowqed::cli::run(config);
    } catch (const crowqed::io::ValidationError& e) {
        return fail("validation", e.what(), 2);
    } catch (const crowqed::io::IoError& e) {
        return fail("io", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("validation", e.what(), 2);
    }
}
