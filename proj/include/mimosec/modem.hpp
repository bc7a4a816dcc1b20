/*
   Copyright 2026 The mimosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <vector>

#include "mimosec/linalg.hpp"

namespace mimosec {

using BitBlock = std::vector<std::uint8_t>;

/// Gray-mapped QPSK: bit pair (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
ComplexVector modulate_qpsk(const BitBlock& bits);

/// Hard decisions per component; b = 1 iff the component is negative, so an
/// exact zero decides 0.
BitBlock demodulate_qpsk(const ComplexVector& estimates);

/// 2 * symbols uniform random bits.
BitBlock random_bits(SeededRng& rng, Eigen::Index symbols);

/// Number of positions where the two blocks differ; sizes must match.
std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& decided);

} // namespace mimosec
