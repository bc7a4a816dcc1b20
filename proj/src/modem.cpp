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

#include "mimosec/modem.hpp"

#include <cmath>
#include <numbers>

#include "mimosec/errors.hpp"

namespace mimosec {

ComplexVector modulate_qpsk(const BitBlock& bits) {
    if (bits.size() % 2 != 0) throw InvalidInput("modulate_qpsk: odd bit count");
    const double a = 1.0 / std::numbers::sqrt2;
    ComplexVector s(static_cast<Eigen::Index>(bits.size() / 2));
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        const auto b0 = bits[2 * static_cast<std::size_t>(k)];
        const auto b1 = bits[2 * static_cast<std::size_t>(k) + 1];
        if (b0 > 1 || b1 > 1) throw InvalidInput("modulate_qpsk: bits must be 0 or 1");
        s(k) = Complex(b0 ? -a : a, b1 ? -a : a);
    }
    return s;
}

BitBlock demodulate_qpsk(const ComplexVector& estimates) {
    BitBlock bits(2 * static_cast<std::size_t>(estimates.size()));
    for (Eigen::Index k = 0; k < estimates.size(); ++k) {
        bits[2 * static_cast<std::size_t>(k)] = estimates(k).real() < 0.0 ? 1 : 0;
        bits[2 * static_cast<std::size_t>(k) + 1] = estimates(k).imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

BitBlock random_bits(SeededRng& rng, Eigen::Index symbols) {
    BitBlock bits(2 * static_cast<std::size_t>(symbols));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
    return bits;
}

std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& decided) {
    if (sent.size() != decided.size()) throw InvalidInput("count_bit_errors: size mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) n += sent[i] != decided[i];
    return n;
}

} // namespace mimosec
