#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace piezstab {

/// Formats with 17 significant digits so emitted values round-trip bit-exactly.
std::string format_double(double x);

/// Minimal deterministic CSV builder: fixed column order, '\n' line ends.
class CsvWriter {
  public:
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

  private:
    std::string out_;
};

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Key = value run manifest; re-running a manifest must reproduce outputs
/// byte for byte, so everything that influenced the run is recorded.
class RunManifest {
  public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    std::string str() const;
    void write(const std::string& path) const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace piezstab
