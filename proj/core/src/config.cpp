#include "magmech/config.hpp"

#include "magmech/csv.hpp"
#include "magmech/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace magmech {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (!quoted && line[i] == '#') return std::string(line.substr(0, i));
    }
    return std::string(line);
}

// Keys recognised at the top level and in each section.
const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "mode", "omega_a_hz", "omega_L_hz", "omega_b1_hz", "omega_b2_hz", "omega_b3_hz",
        "delta_a_hz", "delta_m1_hz", "delta_m2_hz", "kappa_a_hz", "kappa_m1_hz", "kappa_m2_hz",
        "gamma_1_hz", "gamma_2_hz", "gamma_3_hz", "g_1_hz", "g_2_hz", "G_1_hz", "G_2_hz",
        "G_a_hz", "G_01_hz", "G_02_hz", "g_a_hz", "B_tesla", "P_watt", "diameter_m",
        "delta_B_over_wb", "omega_b_norm_hz", "static_shifts", "kerr_K_hz", "kerr_threshold",
        "constants.gyromagnetic_ratio_hz_per_tesla", "constants.spin_density",
        "constants.spin_per_ion", "steady_state.tol", "steady_state.max_iter", "sweep.points",
        "sweep.delta_min_over_wb", "sweep.delta_max_over_wb", "sweep.method",
        "sweep.prominence", "sweep.fd_step_over_wb",
    };
    return keys;
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string_view text) {
    ConfigDocument doc;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string stripped = strip_comment(raw);
        const std::string_view line = trim(stripped);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where, "unterminated section header");
            }
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!valid_identifier(name)) {
                throw ConfigError(where, "invalid section name");
            }
            section = std::string(name);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where, "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (!valid_identifier(key)) {
            throw ConfigError(where, "invalid key '" + std::string(key) + "'");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (doc.values_.count(full)) {
            throw ConfigError(full, "duplicate key");
        }
        doc.values_.emplace(full, std::string(value));
    }
    return doc;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string ConfigDocument::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError(key, "missing key");
    }
    return it->second;
}

double ConfigDocument::get_double(const std::string& key) const {
    const std::string text = get_string(key);
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "not a number: '" + text + "'");
    }
    return value;
}

bool ConfigDocument::get_bool(const std::string& key) const {
    const std::string text = get_string(key);
    if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "off" || text == "no") return false;
    throw ConfigError(key, "not a boolean: '" + text + "'");
}

long ConfigDocument::get_int(const std::string& key) const {
    const std::string text = get_string(key);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "not an integer: '" + text + "'");
    }
    return value;
}

RawParams params_from_document(const ConfigDocument& doc) {
    for (const auto& [key, value] : doc.values()) {
        if (!known_keys().count(key)) {
            throw ConfigError(key, "unknown key");
        }
    }

    RawParams p;
    if (doc.contains("mode")) {
        const std::string mode = doc.get_string("mode");
        if (mode == "effective" || mode == "EffectiveParams") {
            p.mode = ParamMode::EffectiveParams;
        } else if (mode == "first_principles" || mode == "FirstPrinciples") {
            p.mode = ParamMode::FirstPrinciples;
        } else {
            throw ConfigError("mode", "expected 'effective' or 'first_principles', got '" + mode + "'");
        }
    }

    const auto hz = [&](const char* key) { return two_pi * doc.get_double(key); };
    const auto opt_hz = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        return hz(key);
    };
    const auto opt = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        return doc.get_double(key);
    };

    if (doc.contains("constants.gyromagnetic_ratio_hz_per_tesla")) {
        p.constants.gyromagnetic_ratio = hz("constants.gyromagnetic_ratio_hz_per_tesla");
    }
    if (doc.contains("constants.spin_density")) {
        p.constants.spin_density = doc.get_double("constants.spin_density");
    }
    if (doc.contains("constants.spin_per_ion")) {
        p.constants.spin_per_ion = doc.get_double("constants.spin_per_ion");
    }

    p.omega_a = hz("omega_a_hz");
    p.omega_L = hz("omega_L_hz");
    p.omega_b1 = hz("omega_b1_hz");
    p.omega_b2 = hz("omega_b2_hz");
    p.omega_b3 = hz("omega_b3_hz");
    p.Delta_a = hz("delta_a_hz");
    p.Delta_m1 = hz("delta_m1_hz");
    p.Delta_m2 = hz("delta_m2_hz");
    p.kappa_a = hz("kappa_a_hz");
    p.kappa_m1 = hz("kappa_m1_hz");
    p.kappa_m2 = hz("kappa_m2_hz");
    p.gamma_1 = hz("gamma_1_hz");
    p.gamma_2 = hz("gamma_2_hz");
    p.gamma_3 = hz("gamma_3_hz");
    p.g_1 = hz("g_1_hz");
    p.g_2 = hz("g_2_hz");

    p.G_1 = opt_hz("G_1_hz");
    p.G_2 = opt_hz("G_2_hz");
    p.G_a = opt_hz("G_a_hz");
    p.G_01 = opt_hz("G_01_hz");
    p.G_02 = opt_hz("G_02_hz");
    p.g_a_bare = opt_hz("g_a_hz");
    p.B_drive = opt("B_tesla");
    p.P_drive = opt("P_watt");
    p.sphere_diameter = opt("diameter_m");
    p.omega_b_norm = opt_hz("omega_b_norm_hz");

    if (doc.contains("static_shifts")) p.static_shifts = doc.get_bool("static_shifts");
    if (doc.contains("kerr_K_hz")) p.kerr_coefficient = hz("kerr_K_hz");
    if (doc.contains("kerr_threshold")) p.kerr_threshold = doc.get_double("kerr_threshold");

    p.Delta_B = doc.get_double("delta_B_over_wb") * p.omega_b();

    validate(p);
    return p;
}

RawParams load_validate_config(const std::filesystem::path& path) {
    return params_from_document(ConfigDocument::load(path));
}

std::string write_config(const RawParams& p) {
    std::ostringstream out;
    const auto hz = [](double w) { return format_number(w / two_pi); };
    const auto line = [&](const char* key, const std::string& value) {
        out << key << " = " << value << '\n';
    };

    line("mode", std::string(to_string(p.mode)));
    line("omega_a_hz", hz(p.omega_a));
    line("omega_L_hz", hz(p.omega_L));
    line("omega_b1_hz", hz(p.omega_b1));
    line("omega_b2_hz", hz(p.omega_b2));
    line("omega_b3_hz", hz(p.omega_b3));
    line("delta_a_hz", hz(p.Delta_a));
    line("delta_m1_hz", hz(p.Delta_m1));
    line("delta_m2_hz", hz(p.Delta_m2));
    line("kappa_a_hz", hz(p.kappa_a));
    line("kappa_m1_hz", hz(p.kappa_m1));
    line("kappa_m2_hz", hz(p.kappa_m2));
    line("gamma_1_hz", hz(p.gamma_1));
    line("gamma_2_hz", hz(p.gamma_2));
    line("gamma_3_hz", hz(p.gamma_3));
    line("g_1_hz", hz(p.g_1));
    line("g_2_hz", hz(p.g_2));
    if (p.G_1) line("G_1_hz", hz(*p.G_1));
    if (p.G_2) line("G_2_hz", hz(*p.G_2));
    if (p.G_a) line("G_a_hz", hz(*p.G_a));
    if (p.G_01) line("G_01_hz", hz(*p.G_01));
    if (p.G_02) line("G_02_hz", hz(*p.G_02));
    if (p.g_a_bare) line("g_a_hz", hz(*p.g_a_bare));
    if (p.B_drive) line("B_tesla", format_number(*p.B_drive));
    if (p.P_drive) line("P_watt", format_number(*p.P_drive));
    if (p.sphere_diameter) line("diameter_m", format_number(*p.sphere_diameter));
    line("delta_B_over_wb", format_number(p.Delta_B / p.omega_b()));
    if (p.omega_b_norm) line("omega_b_norm_hz", hz(*p.omega_b_norm));
    if (p.static_shifts) line("static_shifts", *p.static_shifts ? "true" : "false");
    line("kerr_K_hz", hz(p.kerr_coefficient));
    line("kerr_threshold", format_number(p.kerr_threshold));
    out << "\n[constants]\n";
    line("gyromagnetic_ratio_hz_per_tesla", hz(p.constants.gyromagnetic_ratio));
    line("spin_density", format_number(p.constants.spin_density));
    line("spin_per_ion", format_number(p.constants.spin_per_ion));
    return out.str();
}

}  // namespace magmech
