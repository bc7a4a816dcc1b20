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

#include <cstddef>
#include <vector>

#include "mimosec/linalg.hpp"

namespace mimosec {

inline constexpr double kEvmFloorDb = -150.0;
inline constexpr double kSinrCap = 1e15;

/**
 * Running sums over a batch of trials for one receiver. Only the sums are
 * kept (per-stream error power, reference power, bit counts), which is all
 * the metrics below need, and merge() is exact and associative.
 */
class MetricBatch {
public:
    explicit MetricBatch(Eigen::Index streams = 0, double signal_power = 1.0);

    /// error = estimate - reference, both of length streams().
    void add(const ComplexVector& error, const ComplexVector& reference, std::size_t bit_errors,
             std::size_t bit_total);
    void merge(const MetricBatch& other);

    Eigen::Index streams() const noexcept { return error_power_.size(); }
    std::size_t trials() const noexcept { return trials_; }
    std::size_t bit_errors() const noexcept { return bit_errors_; }
    std::size_t bit_total() const noexcept { return bit_total_; }
    double signal_power() const noexcept { return signal_power_; }
    const RealVector& error_power() const noexcept { return error_power_; }
    double reference_power() const noexcept { return reference_power_; }

private:
    RealVector error_power_;
    double reference_power_ = 0.0;
    double signal_power_ = 1.0;
    std::size_t trials_ = 0;
    std::size_t bit_errors_ = 0;
    std::size_t bit_total_ = 0;
};

/// 10 log10(sum ||e||^2 / sum ||s||^2), clamped below at kEvmFloorDb.
double evm_db(const MetricBatch& batch);

double ber(const MetricBatch& batch);

/// signal_power / mean |e_k|^2 per stream, capped at kSinrCap.
std::vector<double> stream_sinr(const MetricBatch& batch);

/// sum_k log2(1 + sinr_k) in bits per channel use.
double capacity(const std::vector<double>& sinr);

/// max(0, capacity(bob) - capacity(eve)).
double secrecy_capacity(const std::vector<double>& sinr_bob, const std::vector<double>& sinr_eve);

} // namespace mimosec
