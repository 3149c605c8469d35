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

#include <cstdint>

#include "entangle_kit/state.hpp"

namespace ekit {

// Fermionic operators on a Fock space of `modes` modes; mode k is bit (modes - 1 - k) and
// creation strings are ordered by increasing mode index.
CVec apply_creation(const CVec& v, int modes, int mode);
CVec apply_annihilation(const CVec& v, int modes, int mode);
// Sign (-1)^(number of occupied modes before `mode`) for basis label b.
int jordan_wigner_sign(std::uint64_t b, int modes, int mode);
inline bool occupied(std::uint64_t b, int modes, int mode) { return (b >> (modes - 1 - mode)) & 1u; }

}  // namespace ekit
