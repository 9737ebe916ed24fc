#pragma once

#include "piezstab/params.hpp"

#include <string>

namespace piezstab {

/// Parses the flat key = value config format. Keys: variant, rho, alpha,
/// beta, gamma, mu, c1, c2, l1, l2, L, damp.a, damp.b, damp.d0, damp.shape,
/// damp.samples. Rationals are written "p/q". Lines starting with '#' and
/// blank lines are ignored. Errors carry line numbers.
ConfigData parse_config(const std::string& text);
ConfigData parse_config_file(const std::string& path);

/// Canonical serialization: fixed key order, rationals as "p/q".
std::string serialize_config(const ConfigData& data);
std::string serialize_config(const SystemConfig& config);

void write_config_file(const std::string& path, const ConfigData& data);

}  // namespace piezstab
