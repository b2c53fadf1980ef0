#include "pulselearn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pulselearn {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

namespace {

std::string cell_text(const CsvCell& cell) {
  return cell.kind == CsvCell::Kind::Number ? format_number(cell.number)
                                            : cell.text;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows,
               const std::string& comment) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (!comment.empty()) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << cell_text(row[i]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_sample_set_csv(const std::string& path, const SampleSet& samples) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# L=" << samples.L
      << " noise_sigma=" << format_number(samples.noise_sigma) << '\n';
  out << "theta,re00,im00,re01,im01,re10,im10,re11,im11\n";
  for (std::size_t i = 0; i < samples.thetas.size(); ++i) {
    const Mat2c& u = samples.unitaries[i];
    out << format_number(samples.thetas[i]);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out << ',' << format_number(u(r, c).real()) << ','
            << format_number(u(r, c).imag());
      }
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SampleSet read_sample_set_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  SampleSet samples;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# L=", 0) != 0) {
    throw std::runtime_error("missing sample-set metadata line: " + path);
  }
  {
    std::istringstream meta(line.substr(2));
    std::string tok;
    while (meta >> tok) {
      if (tok.rfind("L=", 0) == 0) {
        samples.L = std::stoi(tok.substr(2));
      } else if (tok.rfind("noise_sigma=", 0) == 0) {
        samples.noise_sigma = std::stod(tok.substr(12));
      }
    }
  }
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double vals[9];
    std::string tok;
    for (int i = 0; i < 9; ++i) {
      if (!std::getline(row, tok, ',')) {
        throw std::runtime_error("malformed sample row: " + line);
      }
      vals[i] = std::stod(tok);
    }
    samples.thetas.push_back(vals[0]);
    Mat2c u;
    u << Complex(vals[1], vals[2]), Complex(vals[3], vals[4]),
        Complex(vals[5], vals[6]), Complex(vals[7], vals[8]);
    samples.unitaries.push_back(u);
  }
  return samples;
}

}  // namespace pulselearn
