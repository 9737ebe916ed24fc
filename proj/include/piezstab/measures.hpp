#pragma once

#include "piezstab/surd.hpp"
#include "piezstab/errors.hpp"

#include <string>
#include <vector>

namespace piezstab {

/// Published upper bound on the irrationality exponent of a named constant.
struct MeasureBound {
    std::string name;
    double bound;
    std::string source;
};

/// Built-in table (the same rows ship in data/irrationality_bounds.csv).
const std::vector<MeasureBound>& irrationality_bounds();

/// Throws UnknownConstant for names outside the table.
MeasureBound measure_lookup(const std::string& name);

/// Parses a "name,bound,source" CSV with a leading version comment.
std::vector<MeasureBound> load_measure_table(const std::string& path);

/// Canonical CSV content of the built-in table.
std::string measure_table_csv();

struct MeasureSample {
    Integer p, q;
    double value;  // |x - p/q| * q^nu
};

struct MeasureReport {
    std::vector<MeasureSample> samples;
    double min_value = 0.0;
    std::size_t min_index = 0;
};

/// Evaluates |x - p/q| q^nu over the supplied convergents. The absolute
/// differences are formed exactly in the quadratic field before conversion,
/// so near-cancellation at good approximations costs no accuracy.
MeasureReport verify_measure_inequality(const Surd& x, double nu,
                                        const std::vector<std::pair<Integer, Integer>>& samples);

/// Exact q^2 |x - p/q| for integer-exponent floor checks.
Surd convergent_error_q2(const Surd& x, const Integer& p, const Integer& q);

/// CSV report: columns n, p, q, value (value = |x - p/q| q^nu).
std::string measure_report_csv(const MeasureReport& report);

}  // namespace piezstab
