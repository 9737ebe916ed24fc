#include "piezstab/config_io.hpp"

#include <fstream>
#include <sstream>

namespace piezstab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

Rational need_rational(const std::string& value, int line, const std::string& key) {
    auto r = parse_rational(value);
    if (!r) fail_at(line, "cannot parse value for '" + key + "': " + value);
    return *r;
}

std::vector<std::pair<Rational, Rational>> parse_samples(const std::string& value, int line) {
    // "x0:v0; x1:v1; ..."
    std::vector<std::pair<Rational, Rational>> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) fail_at(line, "damp.samples entries are 'x:value'");
        auto x = parse_rational(trim(item.substr(0, colon)));
        auto v = parse_rational(trim(item.substr(colon + 1)));
        if (!x || !v) fail_at(line, "cannot parse damp.samples entry: " + item);
        out.emplace_back(*x, *v);
    }
    return out;
}

}  // namespace

ConfigData parse_config(const std::string& text) {
    ConfigData d;
    bool saw_variant = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) fail_at(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail_at(line, "empty key");

        if (key == "variant") {
            if (value == "EPE")
                d.variant = Variant::EPE;
            else if (value == "PE")
                d.variant = Variant::PE;
            else
                fail_at(line, "variant must be EPE or PE");
            saw_variant = true;
        } else if (key == "rho") {
            d.rho = need_rational(value, line, key);
        } else if (key == "alpha") {
            d.alpha = need_rational(value, line, key);
        } else if (key == "beta") {
            d.beta = need_rational(value, line, key);
        } else if (key == "gamma") {
            d.gamma = need_rational(value, line, key);
        } else if (key == "mu") {
            d.mu = need_rational(value, line, key);
        } else if (key == "c1") {
            d.c1 = need_rational(value, line, key);
        } else if (key == "c2") {
            d.c2 = need_rational(value, line, key);
        } else if (key == "l1") {
            d.l1 = need_rational(value, line, key);
        } else if (key == "l2") {
            d.l2 = need_rational(value, line, key);
            d.has_l2 = true;
        } else if (key == "L") {
            d.L = need_rational(value, line, key);
        } else if (key == "damp.a") {
            d.damp_a = need_rational(value, line, key);
        } else if (key == "damp.b") {
            d.damp_b = need_rational(value, line, key);
        } else if (key == "damp.d0") {
            d.damp_d0 = need_rational(value, line, key);
        } else if (key == "damp.shape") {
            if (value == "indicator")
                d.damp_shape = DampingShape::Indicator;
            else if (value == "sampled")
                d.damp_shape = DampingShape::Sampled;
            else
                fail_at(line, "damp.shape must be indicator or sampled");
        } else if (key == "damp.samples") {
            d.damp_samples = parse_samples(value, line);
        } else {
            fail_at(line, "unknown key '" + key + "'");
        }
    }
    if (!saw_variant) throw ConfigError("config is missing 'variant'");
    if (d.variant == Variant::EPE && !d.has_l2) throw ConfigError("EPE config is missing 'l2'");
    return d;
}

ConfigData parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigData& d) {
    std::ostringstream out;
    out << "variant = " << variant_name(d.variant) << "\n";
    out << "rho = " << format_rational(d.rho) << "\n";
    out << "alpha = " << format_rational(d.alpha) << "\n";
    out << "beta = " << format_rational(d.beta) << "\n";
    out << "gamma = " << format_rational(d.gamma) << "\n";
    out << "mu = " << format_rational(d.mu) << "\n";
    if (d.variant == Variant::EPE) out << "c1 = " << format_rational(d.c1) << "\n";
    out << "c2 = " << format_rational(d.c2) << "\n";
    out << "l1 = " << format_rational(d.l1) << "\n";
    if (d.variant == Variant::EPE) out << "l2 = " << format_rational(d.l2) << "\n";
    out << "L = " << format_rational(d.L) << "\n";
    out << "damp.a = " << format_rational(d.damp_a) << "\n";
    out << "damp.b = " << format_rational(d.damp_b) << "\n";
    out << "damp.d0 = " << format_rational(d.damp_d0) << "\n";
    out << "damp.shape = " << (d.damp_shape == DampingShape::Indicator ? "indicator" : "sampled")
        << "\n";
    if (d.damp_shape == DampingShape::Sampled) {
        out << "damp.samples = ";
        for (std::size_t i = 0; i < d.damp_samples.size(); ++i) {
            if (i) out << "; ";
            out << format_rational(d.damp_samples[i].first) << ":"
                << format_rational(d.damp_samples[i].second);
        }
        out << "\n";
    }
    return out.str();
}

std::string serialize_config(const SystemConfig& config) { return serialize_config(config.data()); }

void write_config_file(const std::string& path, const ConfigData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << serialize_config(data);
}

}  // namespace piezstab
