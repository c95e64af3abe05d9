// Copyright 2026 The annealab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "annealab/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "annealab/common.hpp"

namespace annealab {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, const std::string& where) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || p != cell.data() + cell.size()) {
    throw ValidationError(where + ": '" + cell + "' is not a number");
  }
  return v;
}

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

AnnealSchedule::AnnealSchedule(std::vector<double> s, std::vector<double> A, std::vector<double> B,
                               std::map<VertexId, std::vector<double>> per_qubit_A)
    : s_(std::move(s)), A_(std::move(A)), B_(std::move(B)), per_qubit_(std::move(per_qubit_A)) {
  const std::size_t n = s_.size();
  if (n < 2) throw ValidationError("schedule: need at least 2 rows");
  if (A_.size() != n || B_.size() != n) throw ValidationError("schedule: column length mismatch");
  for (auto& [q, col] : per_qubit_) {
    if (col.size() != n) {
      throw ValidationError("schedule: column A_" + std::to_string(q) + " length mismatch");
    }
  }
  auto row_name = [](std::size_t r) { return "schedule row " + std::to_string(r + 1); };
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::isfinite(s_[r]) || !std::isfinite(A_[r]) || !std::isfinite(B_[r])) {
      throw ValidationError(row_name(r) + ": non-finite value");
    }
    if (A_[r] < 0 || B_[r] < 0) throw ValidationError(row_name(r) + ": negative A or B");
    for (auto& [q, col] : per_qubit_) {
      if (!std::isfinite(col[r]) || col[r] < 0) {
        throw ValidationError(row_name(r) + ": invalid A_" + std::to_string(q));
      }
    }
    if (r > 0 && !(s_[r] > s_[r - 1])) {
      throw ValidationError(row_name(r) + ": s must be strictly increasing");
    }
  }
  if (s_.front() != 0.0) throw ValidationError("schedule: first row must have s = 0");
  if (s_.back() != 1.0) throw ValidationError("schedule: last row must have s = 1");

  for (std::size_t r = 1; r < n; ++r) {
    if (A_[r] > A_[r - 1]) warnings_.push_back(row_name(r) + ": A increases");
    if (B_[r] < B_[r - 1]) warnings_.push_back(row_name(r) + ": B decreases");
  }
}

double AnnealSchedule::interpolate(const std::vector<double>& column, double s) const {
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  if (it == s_.end()) return column.back();
  const std::size_t hi = static_cast<std::size_t>(it - s_.begin());
  const std::size_t lo = hi - 1;
  if (s == s_[lo]) return column[lo];
  const double t = (s - s_[lo]) / (s_[hi] - s_[lo]);
  return column[lo] + t * (column[hi] - column[lo]);
}

ScheduleValue AnnealSchedule::evaluate(double s) const {
  if (s_.empty()) throw ValidationError("schedule: empty");
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("schedule: s outside [0, 1]");
  return {interpolate(A_, s), interpolate(B_, s)};
}

ScheduleValue AnnealSchedule::evaluate(double s, VertexId qubit) const {
  ScheduleValue v = evaluate(s);
  auto it = per_qubit_.find(qubit);
  if (it != per_qubit_.end()) v.A = interpolate(it->second, s);
  return v;
}

AnnealSchedule parse_schedule(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    header = split_csv(line);
    break;
  }
  if (header.size() < 3 || header[0] != "s" || header[1] != "A" || header[2] != "B") {
    throw ValidationError(source + ": header must start with s,A,B");
  }
  std::vector<VertexId> qubits;
  for (std::size_t c = 3; c < header.size(); ++c) {
    const auto& h = header[c];
    VertexId q = 0;
    if (h.size() < 3 || h.compare(0, 2, "A_") != 0 ||
        std::from_chars(h.data() + 2, h.data() + h.size(), q).ptr != h.data() + h.size()) {
      throw ValidationError(source + ": bad column name '" + h + "', expected A_<vertex>");
    }
    qubits.push_back(q);
  }

  std::vector<double> s, A, B;
  std::map<VertexId, std::vector<double>> per;
  for (VertexId q : qubits) {
    if (per.count(q)) throw ValidationError(source + ": duplicate column A_" + std::to_string(q));
    per[q];
  }
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto cells = split_csv(line);
    const std::string where = source + ":" + std::to_string(lineno);
    if (cells.size() != header.size()) {
      throw ValidationError(where + ": expected " + std::to_string(header.size()) + " columns");
    }
    s.push_back(parse_number(cells[0], where));
    A.push_back(parse_number(cells[1], where));
    B.push_back(parse_number(cells[2], where));
    for (std::size_t c = 3; c < cells.size(); ++c) per[qubits[c - 3]].push_back(parse_number(cells[c], where));
    if (s.size() >= 2 && !(s.back() > s[s.size() - 2])) {
      throw ValidationError(where + ": s must be strictly increasing");
    }
    if (A.back() < 0 || B.back() < 0) throw ValidationError(where + ": negative A or B");
  }
  return AnnealSchedule(std::move(s), std::move(A), std::move(B), std::move(per));
}

AnnealSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("schedule: cannot open '" + path + "'");
  return parse_schedule(in, path);
}

void write_schedule(std::ostream& out, const AnnealSchedule& schedule) {
  out << "s,A,B";
  for (const auto& [q, col] : schedule.per_qubit_columns()) out << ",A_" << q;
  out << '\n';
  for (std::size_t r = 0; r < schedule.rows(); ++r) {
    out << fmt12(schedule.s_nodes()[r]) << ',' << fmt12(schedule.a_nodes()[r]) << ','
        << fmt12(schedule.b_nodes()[r]);
    for (const auto& [q, col] : schedule.per_qubit_columns()) out << ',' << fmt12(col[r]);
    out << '\n';
  }
}

AnnealSchedule default_schedule() {
  constexpr int kRows = 101;
  constexpr double kA0 = 6.0, kRate = 5.0, kB0 = 0.05, kB1 = 7.45;
  std::vector<double> s(kRows), A(kRows), B(kRows);
  const double tail = std::exp(-kRate);
  for (int r = 0; r < kRows; ++r) {
    const double x = (r == kRows - 1) ? 1.0 : r / double(kRows - 1);
    s[r] = x;
    A[r] = kA0 * (std::exp(-kRate * x) - tail) / (1.0 - tail);
    B[r] = kB0 + kB1 * x * x;
  }
  A.back() = 0.0;
  return AnnealSchedule(std::move(s), std::move(A), std::move(B));
}

double sweep_fraction(std::uint64_t sweep, std::uint64_t total) {
  if (total <= 1) return 1.0;
  return std::min(1.0, static_cast<double>(sweep) / static_cast<double>(total - 1));
}

double temperature_to_energy(double temperature_mK) {
  if (!(temperature_mK > 0.0) || !std::isfinite(temperature_mK)) {
    throw ValidationError("temperature must be > 0 mK");
  }
  return temperature_mK * kGHzPerMilliKelvin;
}

double inverse_temperature(double temperature_mK) {
  return 1.0 / temperature_to_energy(temperature_mK);
}

}  // namespace annealab
