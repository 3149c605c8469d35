/*
 * Copyright 2026 The entangle-kit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "entangle_kit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/parallel.hpp"

namespace ekit {

using nlohmann::json;

namespace {

cplx entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ArgumentError("complex entry must be a number or [re, im]");
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENTANGLE_KIT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

CMat complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ArgumentError("matrix must be a non-empty nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ArgumentError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw ArgumentError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry(j[r][c]);
  }
  return m;
}

std::variant<PureState, DensityMatrix> state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n")) throw ArgumentError("state file needs an \"n\" field");
  if (!j.at("n").is_number_integer()) throw ArgumentError("\"n\" must be an integer");
  const int n = j.at("n").get<int>();
  if (n <= 0) throw ArgumentError("\"n\" must be positive");
  if (j.contains("amplitudes")) {
    const json& a = j.at("amplitudes");
    if (!a.is_array()) throw ArgumentError("amplitudes must be an array");
    if (n > kMaxQubits) throw CapacityError("qubit count out of range");
    if (a.size() != (std::size_t(1) << n)) throw ArgumentError("amplitude count does not match 2^n");
    CVec v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) v[static_cast<Eigen::Index>(k)] = entry(a[k]);
    return PureState(n, v);
  }
  if (j.contains("density_matrix")) {
    CMat m = complex_matrix_from_json(j.at("density_matrix"));
    if (n > kMaxQubits) throw CapacityError("qubit count out of range");
    if (m.rows() != (Eigen::Index(1) << n) || m.cols() != m.rows()) {
      throw ArgumentError("density matrix must be 2^n x 2^n");
    }
    return DensityMatrix(n, m);
  }
  throw ArgumentError("state file needs \"amplitudes\" or \"density_matrix\"");
}

static json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError("invalid JSON in " + path + ": " + e.what());
  }
}

std::variant<PureState, DensityMatrix> load_state_file(const std::string& path) {
  return state_from_json(read_json_file(path));
}

json state_to_json(const PureState& psi) {
  json amps = json::array();
  for (Eigen::Index k = 0; k < psi.dim(); ++k) amps.push_back({psi[k].real(), psi[k].imag()});
  return {{"n", psi.n_qubits()}, {"amplitudes", amps}};
}

CMat load_two_fermion_amplitude(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object()) {
    if (!j.contains("omega")) throw ArgumentError("fermion file needs an \"omega\" field");
    j = j.at("omega");
  }
  CMat w = complex_matrix_from_json(j);
  if (w.rows() != w.cols()) throw ArgumentError("omega must be square");
  if (w.size() == 0) throw ArgumentError("omega is empty");
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w + w.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw ArgumentError("omega must be antisymmetric");
  return w;
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  try {
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  } catch (const std::exception&) {
    throw ArgumentError("invalid range '" + spec + "'");
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ArgumentError("range must be start:stop:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0) || b < a) throw ArgumentError("range needs step > 0 and stop >= start");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 10000000) throw ArgumentError("range too long");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(a + double(k) * step);
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ArgumentError("invalid integer list '" + spec + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty integer list");
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& notes)
    : out_(path), width_(columns.size()) {
  if (!out_) throw ArgumentError("cannot write " + path);
  out_ << "# entangle-kit " << kVersion << '\n';
  for (const auto& n : notes) out_ << "# " << n << '\n';
  row_text(columns);
}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> text;
  text.reserve(values.size());
  for (double v : values) text.push_back(format_double(v));
  return row_text(text);
}

CsvWriter& CsvWriter::row_text(const std::vector<std::string>& values) {
  if (values.size() != width_) throw ArgumentError("CSV row width mismatch");
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << values[k];
  out_ << '\n';
  return *this;
}

}  // namespace ekit
