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

#include "entangle_kit/fock.hpp"

#include <bit>

#include "entangle_kit/errors.hpp"

namespace ekit {

int jordan_wigner_sign(std::uint64_t b, int modes, int mode) {
  // Modes 0 .. mode-1 occupy the bits above bit (modes - 1 - mode).
  const std::uint64_t higher = b >> (modes - mode);
  return (std::popcount(higher) & 1) ? -1 : 1;
}

CVec apply_creation(const CVec& v, int modes, int mode) {
  if (mode < 0 || mode >= modes) throw ArgumentError("mode index out of range");
  const std::uint64_t bit = std::uint64_t(1) << (modes - 1 - mode);
  CVec out = CVec::Zero(v.size());
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    if ((ub & bit) || v[b] == 0.0) continue;
    out[static_cast<Eigen::Index>(ub | bit)] += double(jordan_wigner_sign(ub, modes, mode)) * v[b];
  }
  return out;
}

CVec apply_annihilation(const CVec& v, int modes, int mode) {
  if (mode < 0 || mode >= modes) throw ArgumentError("mode index out of range");
  const std::uint64_t bit = std::uint64_t(1) << (modes - 1 - mode);
  CVec out = CVec::Zero(v.size());
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    if (!(ub & bit) || v[b] == 0.0) continue;
    out[static_cast<Eigen::Index>(ub ^ bit)] += double(jordan_wigner_sign(ub, modes, mode)) * v[b];
  }
  return out;
}

}  // namespace ekit
