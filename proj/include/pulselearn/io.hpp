#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pulselearn/qsp.hpp"

namespace pulselearn {

// One CSV cell: either a number (emitted with 17 significant digits) or a
// verbatim string.
struct CsvCell {
  enum class Kind { Number, Text } kind = Kind::Number;
  double number = 0.0;
  std::string text;

  CsvCell(double v) : kind(Kind::Number), number(v) {}          // NOLINT
  CsvCell(int v) : kind(Kind::Number), number(v) {}             // NOLINT
  CsvCell(const char* s) : kind(Kind::Text), text(s) {}         // NOLINT
  CsvCell(std::string s) : kind(Kind::Text), text(std::move(s)) {}  // NOLINT
};

std::string format_number(double v);  // %.17g

// Writes header + rows; overwrites the file (byte-identical for identical
// inputs: no timestamps or locale dependence).  A nonempty comment is
// emitted first as "# <comment>" (used for provenance stamps).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows,
               const std::string& comment = "");

// FNV-1a 64-bit over the canonical config text, as a fixed-width hex string.
std::string fnv1a_hex(const std::string& text);

// SampleSet round trip for experiment replay: columns theta and re/im of the
// four matrix entries; L and noise_sigma on a leading comment line.
void write_sample_set_csv(const std::string& path, const SampleSet& samples);
SampleSet read_sample_set_csv(const std::string& path);

}  // namespace pulselearn
