#include "piezstab/measures.hpp"

#include "piezstab/csvio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace piezstab {

const std::vector<MeasureBound>& irrationality_bounds() {
    static const std::vector<MeasureBound> table = {
        {"pi", 7.10320, "Zeilberger-Zudilin 2020"},
        {"pi^2", 5.09541, "Zudilin 2013"},
        {"ln2", 3.57455391, "MR2539543"},
        {"ln3", 5.116201, "MR3873184"},
        {"zeta3", 5.513891, "MR1826005"},
        {"Lnq2", 2.9384, "MR2196997"},
        {"hq1", 2.4650, "MR2138454"},
        {"thue-morse", 4.0, "MR2557148"},
    };
    return table;
}

namespace {

std::string canonical_name(const std::string& name) {
    if (name == "ln(2)") return "ln2";
    if (name == "ln(3)") return "ln3";
    if (name == "zeta(3)") return "zeta3";
    if (name == "pi2" || name == "pi^2/6") return "pi^2";
    return name;
}

}  // namespace

MeasureBound measure_lookup(const std::string& name) {
    std::string key = canonical_name(name);
    for (const auto& row : irrationality_bounds())
        if (row.name == key) return row;
    throw UnknownConstant("no irrationality bound tabulated for '" + name + "'");
}

std::string measure_table_csv() {
    std::string out = "# irrationality_bounds v1\nname,bound,source\n";
    for (const auto& row : irrationality_bounds())
        out += row.name + "," + format_double(row.bound) + "," + row.source + "\n";
    return out;
}

std::vector<MeasureBound> load_measure_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open measure table: " + path);
    std::vector<MeasureBound> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // "name,bound,source"
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        MeasureBound row{};
        std::string bound;
        if (!std::getline(ss, row.name, ',') || !std::getline(ss, bound, ',') ||
            !std::getline(ss, row.source))
            throw std::runtime_error("malformed measure table row: " + line);
        row.bound = std::stod(bound);
        rows.push_back(std::move(row));
    }
    return rows;
}

MeasureReport verify_measure_inequality(const Surd& x, double nu,
                                        const std::vector<std::pair<Integer, Integer>>& samples) {
    if (x.is_rational()) throw std::invalid_argument("verify_measure_inequality requires x irrational");
    MeasureReport report;
    report.samples.reserve(samples.size());
    for (const auto& [p, q] : samples) {
        if (q <= 0) throw std::invalid_argument("convergent denominators must be positive");
        Surd diff = (x * Surd(Rational(q)) - Surd(Rational(p))).abs();  // |q x - p|
        double value = diff.to_double() * std::pow(to_double(q), nu - 1.0);
        report.samples.push_back({p, q, value});
    }
    report.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        if (report.samples[i].value < report.min_value) {
            report.min_value = report.samples[i].value;
            report.min_index = i;
        }
    }
    return report;
}

Surd convergent_error_q2(const Surd& x, const Integer& p, const Integer& q) {
    return (x * Surd(Rational(q)) - Surd(Rational(p))).abs() * Surd(Rational(q));
}

std::string measure_report_csv(const MeasureReport& report) {
    CsvWriter csv;
    csv.header({"n", "p", "q", "value"});
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const auto& s = report.samples[i];
        csv.raw_row({std::to_string(i), s.p.str(), s.q.str(), format_double(s.value)});
    }
    return csv.str();
}

}  // namespace piezstab
