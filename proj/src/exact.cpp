#include "piezstab/exact.hpp"

#include <cctype>

namespace piezstab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) return std::nullopt;

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(s.begin());
    }
    if (s.empty()) return std::nullopt;

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) return std::nullopt;
        Integer qi(q);
        if (qi == 0) return std::nullopt;
        value = Rational(Integer(p), qi);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        if (!all_digits(ip) || !all_digits(fp)) return std::nullopt;
        Integer scale = ipow(Integer(10), static_cast<unsigned>(fp.size()));
        value = Rational(Integer(ip) * scale + Integer(fp), scale);
    } else {
        if (!all_digits(s)) return std::nullopt;
        value = Rational(Integer(s));
    }
    if (negative) value = -value;
    return value;
}

std::string format_rational(const Rational& r) {
    std::string out = num(r).str();
    if (den(r) != 1) out += "/" + den(r).str();
    return out;
}

}  // namespace piezstab
