#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crowqed/model.hpp"

namespace crowqed::io {

/// Configuration or CLI usage error; maps to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure (missing config, unwritable output); exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { bands, gf, transport, chi, threshold, oracle_check, sweep };

enum class OutputFormat { csv, json, svg };

/// Population profile as given in a config: either inline per-site values
/// or one of the shorthands "uniform:<v>" / "defect:<site>:<v>".
struct ProfileSpec {
    enum class Kind { uniform, defect, explicit_list } kind = Kind::uniform;
    double value = -1.0;
    int site = 0;
    std::vector<double> values;

    PopulationProfile materialize(const ModelParams& params) const;
};

struct KSelection {
    enum class Kind { all, single, index } kind = Kind::all;
    double value = 0.0;
    int index = 0;

    /// Resolves to concrete wavenumbers against the model's grid.
    std::vector<double> resolve(const ModelParams& params) const;
};

struct RunConfig {
    Command command = Command::bands;
    ModelParams params;
    ProfileSpec profile;
    KSelection k_sel;

    double eps = 1e-3;  // Green-function broadening

    // frequency window (gf)
    std::optional<double> omega_min, omega_max;
    int omega_points = 2001;

    // detuning window (chi)
    double delta_min = -5.0, delta_max = 5.0;
    int delta_points = 201;

    // time window (gf --set time=1)
    bool time_domain = false;
    double t_max = 20.0;
    int t_points = 2001;

    // coupling axis (bands in g-sweep mode)
    std::optional<double> g_min, g_max;
    int g_points = 101;
    int k_points = 256;  // dense k resolution for bands in k mode

    // sweep axis
    std::string sweep_param;
    double sweep_min = 0.0, sweep_max = 0.0;
    int sweep_points = 0;

    // oracle-check
    int oracle_n = 8;

    std::string out_path;  // empty -> stdout
    OutputFormat format = OutputFormat::csv;
    int workers = 0;  // 0 -> hardware concurrency

    void validate() const;  // throws ValidationError
};

Command parse_command(const std::string& name);
std::string command_name(Command c);
OutputFormat parse_format(const std::string& name);
std::string format_name(OutputFormat f);

/// Accepts a plain float or the tokens "pi", "pi/<d>", "<f>pi", "<f>pi/<d>".
double parse_k_token(const std::string& token);

/// Applies one "key = value" assignment; throws ValidationError on unknown
/// keys or malformed values.
void apply_key_value(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a key-value config file ('#' comments, blank lines ignored).
void load_config_file(RunConfig& config, const std::string& path);

}  // namespace crowqed::io
