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

#include <complex>
#include <cstdint>
#include <random>
#include <Eigen/Dense>

namespace mimosec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Singular values at or below this fraction of the largest are treated as zero.
inline constexpr double kDefaultRankTol = 1e-12;

bool all_finite(const ComplexMatrix& a);

/// Throws InvalidInput naming `what` if `a` has a NaN or Inf entry.
void require_finite(const ComplexMatrix& a, const char* what);

/**
 * Full singular value decomposition a = left * diag(singular_values) * right^H.
 *
 * left is rows x rows, right is cols x cols, and singular_values holds the
 * min(rows, cols) values in descending order. Column phases are canonical:
 * the largest-magnitude entry of every left singular vector is real and
 * positive, and the paired right vector carries the same rotation. Columns
 * with no partner (the null-space block of the larger factor) are normalized
 * the same way on their own entries so the result is a pure function of the
 * input.
 */
struct SvdTriple {
    ComplexMatrix left;
    RealVector singular_values;
    ComplexMatrix right;
};

SvdTriple svd(const ComplexMatrix& a);

/// Moore-Penrose pseudo-inverse; singular values below rank_tol * sigma_max are dropped.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rank_tol = kDefaultRankTol);

/**
 * Reproducible random stream identified by (master_seed, stream_id).
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard; real-valued conversions are done here rather than through
 * <random> distributions so a given pair yields the same samples on every
 * platform. Instances are cheap values: derive() makes an independent child
 * stream without touching the parent's state.
 */
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream keyed by `key`; same parent ids and key give the same child.
    SeededRng derive(std::uint64_t key) const;

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double standard_normal();

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// splitmix64 finalizer, used for stream-id derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// i.i.d. CN(0, variance) entries, filled in row-major order.
ComplexMatrix sample_complex_gaussian(SeededRng& rng, Eigen::Index rows, Eigen::Index cols,
                                      double variance);

} // namespace mimosec
