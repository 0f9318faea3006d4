// Copyright 2026 The ghzw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// State files (JSON) and parameter-sweep tables (CSV).
//
// State file:
//   {"nqubits": 3, "label": "optional text",
//    "matrix": [[[re, im], ...], ...]}      // 2^N rows of 2^N [re, im] pairs
//
// Sweep table header: p,fast,raw,full,linear,oracle (oracle may be empty).

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/numerics.hpp"
#include "ghzw/states.hpp"
#include "json.hpp"

namespace ghzw {

// Unreadable, unwritable or malformed files.
class FormatError : public Error {
 public:
  using Error::Error;
};

struct StateFile {
  int nqubits = 0;
  ComplexMatrix matrix;
  std::string label;
};

// 17 significant digits: enough for every double to read back bit-identical.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline StateFile parse_state_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("nqubits") || !j.contains("matrix"))
    throw FormatError("state file needs 'nqubits' and 'matrix'");
  if (!j["nqubits"].is_number_integer()) throw FormatError("'nqubits' must be an integer");
  StateFile f;
  f.nqubits = j["nqubits"].get<int>();
  if (f.nqubits != 2 && f.nqubits != 3) throw FormatError("'nqubits' must be 2 or 3");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw FormatError("'label' must be a string");
    f.label = j["label"].get<std::string>();
  }
  const std::size_t d = std::size_t{1} << f.nqubits;
  const auto& rows = j["matrix"];
  if (!rows.is_array() || rows.size() != d)
    throw FormatError("'matrix' must have " + std::to_string(d) + " rows");
  f.matrix = ComplexMatrix(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != d)
      throw FormatError("matrix row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
    for (std::size_t c = 0; c < d; ++c) {
      const auto& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw FormatError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") must be a [re, im] pair");
      f.matrix(r, c) = cplx{z[0].get<double>(), z[1].get<double>()};
    }
  }
  return f;
}

inline std::string to_state_json(const StateFile& f) {
  std::ostringstream os;
  os << "{\n  \"nqubits\": " << f.nqubits << ",\n";
  if (!f.label.empty()) os << "  \"label\": " << nlohmann::json(f.label).dump() << ",\n";
  os << "  \"matrix\": [\n";
  for (std::size_t r = 0; r < f.matrix.rows(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < f.matrix.cols(); ++c) {
      const cplx z = f.matrix(r, c);
      os << (c ? ", " : "") << '[' << format_double(z.real()) << ", " << format_double(z.imag()) << ']';
    }
    os << (r + 1 < f.matrix.rows() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

inline StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state_json(ss.str());
}

inline void write_state_file(const std::string& path, const StateFile& f) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << to_state_json(f);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

inline StateFile to_state_file(const DensityMatrix& rho, std::string label = {}) {
  return StateFile{rho.nqubits(), rho.matrix(), std::move(label)};
}

// Reads and validates a normalized state.
inline DensityMatrix load_state(const std::string& path) {
  return validate(read_state_file(path).matrix, true);
}

struct ScanRow {
  double p = 0.0;
  double fast = 0.0;
  double raw = 0.0;
  double full = 0.0;
  double linear = 0.0;
  std::optional<double> oracle;
};

inline constexpr const char* kScanHeader = "p,fast,raw,full,linear,oracle";

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << kScanHeader << '\n';
  for (const ScanRow& r : rows) {
    os << format_double(r.p) << ',' << format_double(r.fast) << ',' << format_double(r.raw) << ','
       << format_double(r.full) << ',' << format_double(r.linear) << ','
       << (r.oracle ? format_double(*r.oracle) : std::string{}) << '\n';
  }
}

}  // namespace ghzw
