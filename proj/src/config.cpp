#include "crowqed/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace crowqed::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("invalid number for '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("invalid integer for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ValidationError("invalid boolean for '" + key + "': " + value);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

PopulationProfile ProfileSpec::materialize(const ModelParams& params) const {
    switch (kind) {
        case Kind::uniform:
            return PopulationProfile::uniform(params.n_sites, value, params.n_atoms);
        case Kind::defect:
            return PopulationProfile::with_defect(params.n_sites, site, value, params.n_atoms);
        case Kind::explicit_list:
            if (static_cast<int>(values.size()) != params.n_sites)
                throw ValidationError("profile length does not match n_sites");
            return PopulationProfile(values, params.n_atoms);
    }
    throw ValidationError("unreachable profile kind");
}

std::vector<double> KSelection::resolve(const ModelParams& params) const {
    switch (kind) {
        case Kind::all:
            return build_k_grid(params).values;
        case Kind::single:
            return {value};
        case Kind::index: {
            const KGrid grid = build_k_grid(params);
            if (index < 0 || index >= static_cast<int>(grid.size()))
                throw ValidationError("k index out of range");
            return {grid.values[static_cast<std::size_t>(index)]};
        }
    }
    throw ValidationError("unreachable k selection kind");
}

Command parse_command(const std::string& name) {
    if (name == "bands") return Command::bands;
    if (name == "gf") return Command::gf;
    if (name == "transport") return Command::transport;
    if (name == "chi") return Command::chi;
    if (name == "threshold") return Command::threshold;
    if (name == "oracle-check") return Command::oracle_check;
    if (name == "sweep") return Command::sweep;
    throw ValidationError("unknown command: " + name);
}

std::string command_name(Command c) {
    switch (c) {
        case Command::bands: return "bands";
        case Command::gf: return "gf";
        case Command::transport: return "transport";
        case Command::chi: return "chi";
        case Command::threshold: return "threshold";
        case Command::oracle_check: return "oracle-check";
        case Command::sweep: return "sweep";
    }
    return "?";
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "svg") return OutputFormat::svg;
    throw ValidationError("unknown format: " + name);
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::svg: return "svg";
    }
    return "?";
}

double parse_k_token(const std::string& token) {
    const std::string t = trim(token);
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string::npos) return parse_double("k", t);
    double factor = 1.0;
    if (pi_pos > 0) factor = parse_double("k", t.substr(0, pi_pos));
    double divisor = 1.0;
    std::string rest = t.substr(pi_pos + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') throw ValidationError("malformed k token: " + token);
        divisor = parse_double("k", rest.substr(1));
        if (divisor == 0.0) throw ValidationError("k token divides by zero: " + token);
    }
    return factor * std::numbers::pi / divisor;
}

void apply_key_value(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key.empty()) throw ValidationError("empty config key");

    if (key == "omega_c") c.params.omega_c = parse_double(key, value);
    else if (key == "omega_a") c.params.omega_a = parse_double(key, value);
    else if (key == "delta") c.params.omega_a = c.params.omega_c - parse_double(key, value);
    else if (key == "j_hop") c.params.j_hop = parse_double(key, value);
    else if (key == "g") c.params.g = parse_double(key, value);
    else if (key == "ell") c.params.ell = parse_double(key, value);
    else if (key == "n_sites") c.params.n_sites = parse_int(key, value);
    else if (key == "n_atoms") c.params.n_atoms = parse_int(key, value);
    else if (key == "kappa") c.params.kappa = parse_double(key, value);
    else if (key == "gamma") c.params.gamma = parse_double(key, value);
    else if (key == "s_z") {
        c.profile.kind = ProfileSpec::Kind::uniform;
        c.profile.value = parse_double(key, value);
    } else if (key == "profile") {
        if (value.rfind("uniform:", 0) == 0) {
            c.profile.kind = ProfileSpec::Kind::uniform;
            c.profile.value = parse_double(key, value.substr(8));
        } else if (value.rfind("defect:", 0) == 0) {
            const auto parts = split(value.substr(7), ':');
            if (parts.size() != 2) throw ValidationError("profile defect wants defect:<site>:<value>");
            c.profile.kind = ProfileSpec::Kind::defect;
            c.profile.site = parse_int(key, parts[0]);
            c.profile.value = parse_double(key, parts[1]);
        } else if (!value.empty() && value.front() == '[' && value.back() == ']') {
            c.profile.kind = ProfileSpec::Kind::explicit_list;
            c.profile.values.clear();
            for (const std::string& item : split(value.substr(1, value.size() - 2), ','))
                if (!trim(item).empty()) c.profile.values.push_back(parse_double(key, trim(item)));
            if (c.profile.values.empty()) throw ValidationError("empty profile list");
        } else {
            throw ValidationError("malformed profile: " + value);
        }
    } else if (key == "k") {
        if (value == "all") {
            c.k_sel.kind = KSelection::Kind::all;
        } else if (value.rfind("index:", 0) == 0) {
            c.k_sel.kind = KSelection::Kind::index;
            c.k_sel.index = parse_int(key, value.substr(6));
        } else {
            c.k_sel.kind = KSelection::Kind::single;
            c.k_sel.value = parse_k_token(value);
        }
    }
    else if (key == "eps") c.eps = parse_double(key, value);
    else if (key == "omega_min") c.omega_min = parse_double(key, value);
    else if (key == "omega_max") c.omega_max = parse_double(key, value);
    else if (key == "omega_points") c.omega_points = parse_int(key, value);
    else if (key == "delta_min") c.delta_min = parse_double(key, value);
    else if (key == "delta_max") c.delta_max = parse_double(key, value);
    else if (key == "delta_points") c.delta_points = parse_int(key, value);
    else if (key == "time") c.time_domain = parse_bool(key, value);
    else if (key == "t_max") c.t_max = parse_double(key, value);
    else if (key == "t_points") c.t_points = parse_int(key, value);
    else if (key == "g_min") c.g_min = parse_double(key, value);
    else if (key == "g_max") c.g_max = parse_double(key, value);
    else if (key == "g_points") c.g_points = parse_int(key, value);
    else if (key == "k_points") c.k_points = parse_int(key, value);
    else if (key == "sweep_param") c.sweep_param = value;
    else if (key == "sweep_min") c.sweep_min = parse_double(key, value);
    else if (key == "sweep_max") c.sweep_max = parse_double(key, value);
    else if (key == "sweep_points") c.sweep_points = parse_int(key, value);
    else if (key == "oracle_n") c.oracle_n = parse_int(key, value);
    else if (key == "out") c.out_path = value;
    else if (key == "format") c.format = parse_format(value);
    else if (key == "workers") c.workers = parse_int(key, value);
    else throw ValidationError("unknown config key: " + key);
}

void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(line_no) + ": expected key = value");
        apply_key_value(config, t.substr(0, eq), t.substr(eq + 1));
    }
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
    if (omega_points < 2) throw ValidationError("omega_points must be >= 2");
    if (delta_points < 2) throw ValidationError("delta_points must be >= 2");
    if (t_points < 2) throw ValidationError("t_points must be >= 2");
    if (g_points < 2) throw ValidationError("g_points must be >= 2");
    if (k_points < 2) throw ValidationError("k_points must be >= 2");
    if (workers < 0) throw ValidationError("workers must be >= 0");
    if (omega_min && omega_max && !(*omega_max > *omega_min))
        throw ValidationError("omega_max must exceed omega_min");
    if (!(delta_max > delta_min)) throw ValidationError("delta_max must exceed delta_min");

    switch (command) {
        case Command::sweep: {
            static const char* axes[] = {"omega_c", "omega_a", "delta", "j_hop", "g",
                                         "ell", "kappa", "gamma", "s_z"};
            if (sweep_param.empty()) throw ValidationError("sweep requires sweep_param");
            if (std::find_if(std::begin(axes), std::end(axes), [&](const char* a) {
                    return sweep_param == a;
                }) == std::end(axes))
                throw ValidationError("unknown sweep_param: " + sweep_param);
            if (sweep_points < 1) throw ValidationError("sweep range is empty");
            break;
        }
        case Command::oracle_check:
            if (oracle_n < 1 || oracle_n > 12)
                throw ValidationError("oracle_n must be in [1, 12]");
            break;
        default:
            break;
    }

    if (format == OutputFormat::svg) {
        const bool curve_valued = command == Command::bands || command == Command::gf ||
                                  command == Command::chi;
        if (!curve_valued)
            throw ValidationError("svg output is only available for curve-valued commands");
    }
}

}  // namespace crowqed::io
