#pragma once

// Serialization layer: weight files (JSON / CSV), verification reports
// (JSON), and CSV summaries across report sweeps.
//
// Guarantees:
//   * floats are written in shortest round-trip decimal form, so
//     read(write(x)) reproduces x bit-exactly;
//   * NaN / infinity are rejected at write time — a computation that
//     produced them must fail upstream instead of leaking into files;
//   * output is deterministic: map keys are emitted in sorted order and
//     the timestamp defaults to the empty string so identical inputs
//     yield byte-identical bytes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyw/dyadic.hpp"

namespace dyw {

// One named result bundle: scalar measurements, boolean outcomes, an
// optional node where a supremum was attained, and reproducibility
// metadata.
struct Report {
  std::string name;
  std::map<std::string, double> scalars;
  std::map<std::string, bool> flags;
  std::optional<NodeRef> argmax;
  std::uint64_t seed = 0;
  int depth = 0;
  std::string timestamp;  // empty unless the caller opts in
};

// Shortest decimal string that round-trips to the same double.  Throws
// std::invalid_argument on NaN or infinity.
std::string format_double(double v);

// JSON text for a report / weight (no trailing newline).
std::string report_to_json_string(const Report& report);
std::string weight_to_json_string(const DyadicWeight& w);

// Inverse parsers; throw std::invalid_argument on schema violations.
Report report_from_json_string(const std::string& text);
DyadicWeight weight_from_json_string(const std::string& text);

// File IO.  Weight files dispatch on extension: ".json" uses the JSON
// schema {"depth", "root_length", "leaves"}, ".csv" holds one leaf value
// per line (root length fixed at 1).  Throws std::runtime_error on IO
// failure and std::invalid_argument on malformed content.
void write_report(const Report& report, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);
void write_weight(const DyadicWeight& w, const std::filesystem::path& path);
DyadicWeight read_weight(const std::filesystem::path& path);

// RFC-4180 style CSV: header row "name,<sorted union of scalar keys>",
// one row per report, missing scalars left empty, CRLF line endings.
std::string summarize(const std::vector<Report>& reports);

}  // namespace dyw
