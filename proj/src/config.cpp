#include "floq/config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace floq {

DriveAssignment RunConfig::drive() const {
    if (!multipliers.empty()) {
        DriveAssignment d{omega_base, multipliers};
        d.validate(lattice.sites);
        return d;
    }
    const auto p = parse_preset(preset);
    if (!p) throw ConfigError("unknown drive preset '" + preset + "'");
    return make_drive(*p, lattice.sites, omega_base);
}

DriveTemplate RunConfig::drive_template() const { return DriveTemplate{drive().multipliers}; }

void RunConfig::validate() const {
    lattice.validate();
    drive(); // preset/multiplier consistency
    propagator.validate();
    scan.validate();
    if (periods < 0) throw ConfigError("periods must be non-negative");
}

void RunConfig::warn(std::ostream& os) const {
    if (!lattice.high_field_regime()) {
        os << "warning: g/J0 = " << lattice.field / lattice.exchange
           << " < 5; the pair-resonance picture degrades outside the high-field regime\n";
    }
    if (drive().beyond_standard_multipliers()) {
        os << "warning: bond multipliers outside {1,2} leave validated territory\n";
    }
}

std::vector<int> parse_multipliers(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(token, &pos);
            if (pos != token.find_last_not_of(" \t") + 1 && pos < token.size())
                throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad multiplier token '" + token + "'");
        }
    }
    if (out.empty()) throw ConfigError("multiplier list must not be empty");
    return out;
}

namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "off" || value == "no") return false;
    throw ConfigError("key '" + key + "' expects a boolean, got '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

void apply_config_value(RunConfig& cfg, const std::string& section, const std::string& key,
                        const std::string& value) {
    const std::string qual = section + "." + key;
    if (section == "lattice") {
        if (key == "L") cfg.lattice.sites = to_int(qual, value);
        else if (key == "g") cfg.lattice.field = to_double(qual, value);
        else if (key == "J0") cfg.lattice.exchange = to_double(qual, value);
        else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "drive") {
        if (key == "preset") {
            if (!parse_preset(value)) throw ConfigError("unknown drive preset '" + value + "'");
            cfg.preset = value;
        } else if (key == "omega") {
            cfg.omega_base = to_double(qual, value);
        } else if (key == "multipliers") {
            cfg.multipliers = parse_multipliers(value);
        } else {
            throw ConfigError("unknown key '" + qual + "'");
        }
    } else if (section == "propagator") {
        if (key == "dt") cfg.propagator.dt = to_double(qual, value);
        else if (key == "order") cfg.propagator.series_order = to_int(qual, value);
        else if (key == "method") {
            const auto m = parse_method(value);
            if (!m) throw ConfigError("unknown method '" + value + "'");
            cfg.propagator.method = *m;
        } else if (key == "threads") {
            cfg.propagator.threads = static_cast<std::size_t>(to_int(qual, value));
        } else {
            throw ConfigError("unknown key '" + qual + "'");
        }
    } else if (section == "scan") {
        if (key == "omega_min") cfg.scan.omega_min = to_double(qual, value);
        else if (key == "omega_max") cfg.scan.omega_max = to_double(qual, value);
        else if (key == "omega_step") cfg.scan.omega_step = to_double(qual, value);
        else if (key == "t_max") cfg.scan.t_max = to_double(qual, value);
        else if (key == "t_step") cfg.scan.t_step = to_double(qual, value);
        else if (key == "delta_omega") cfg.scan.delta_omega = to_double(qual, value);
        else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "protocol") {
        if (key == "sequence") cfg.sequence = value;
        else if (key == "m") cfg.block_periods = to_int(qual, value);
        else if (key == "strict_m") cfg.strict_m = to_bool(qual, value);
        else if (key == "periods") cfg.periods = to_int(qual, value);
        else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "output") {
        if (key == "dir") cfg.out_dir = value;
        else if (key == "svg") cfg.svg = to_bool(qual, value);
        else if (key == "cache_dir") cfg.cache_dir = value;
        else if (key == "deterministic") cfg.deterministic = to_bool(qual, value);
        else throw ConfigError("unknown key '" + qual + "'");
    } else {
        throw ConfigError("unknown config section '" + section + "'");
    }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        if (section.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        try {
            apply_config_value(base, section, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

} // namespace floq
