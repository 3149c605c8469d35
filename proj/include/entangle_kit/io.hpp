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

#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "entangle_kit/state.hpp"

namespace ekit {

inline constexpr const char* kVersion = "0.1.0";

// {"n": int, "amplitudes": [[re, im], ...]} or {"n": int, "density_matrix": [[[re, im], ...], ...]}.
// Plain numbers are accepted where a real entry is meant.
std::variant<PureState, DensityMatrix> state_from_json(const nlohmann::json& j);
std::variant<PureState, DensityMatrix> load_state_file(const std::string& path);
nlohmann::json state_to_json(const PureState& psi);

CMat complex_matrix_from_json(const nlohmann::json& j);
// Two-fermion amplitude matrix; rejects non-square or non-antisymmetric input.
CMat load_two_fermion_amplitude(const std::string& path);

// "a:b:step" inclusive of b up to rounding; a single number gives a one-point grid.
std::vector<double> parse_range(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

std::string format_double(double x);

// CSV file whose first line is a version stamp comment.
class CsvWriter {
 public:
  // Extra comment lines (units, parameters) follow the version stamp.
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::vector<std::string>& notes = {});
  CsvWriter& row(const std::vector<double>& values);
  CsvWriter& row_text(const std::vector<std::string>& values);

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace ekit
