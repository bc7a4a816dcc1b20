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

#include "mimosec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mimosec/errors.hpp"

namespace mimosec {

MetricBatch::MetricBatch(Eigen::Index streams, double signal_power)
    : error_power_(RealVector::Zero(streams)), signal_power_(signal_power) {
    if (streams < 0) throw InvalidInput("MetricBatch: negative stream count");
    if (!(signal_power > 0.0)) throw InvalidInput("MetricBatch: signal power must be positive");
}

void MetricBatch::add(const ComplexVector& error, const ComplexVector& reference,
                      std::size_t bit_errors, std::size_t bit_total) {
    if (error.size() != streams() || reference.size() != streams())
        throw InvalidInput("MetricBatch::add: vector length != stream count");
    if (bit_errors > bit_total) throw InvalidInput("MetricBatch::add: bit_errors > bit_total");
    error_power_ += error.cwiseAbs2();
    reference_power_ += reference.squaredNorm();
    bit_errors_ += bit_errors;
    bit_total_ += bit_total;
    ++trials_;
}

void MetricBatch::merge(const MetricBatch& other) {
    if (other.streams() != streams()) throw InvalidInput("MetricBatch::merge: stream count differs");
    error_power_ += other.error_power_;
    reference_power_ += other.reference_power_;
    bit_errors_ += other.bit_errors_;
    bit_total_ += other.bit_total_;
    trials_ += other.trials_;
}

double evm_db(const MetricBatch& batch) {
    if (batch.trials() == 0) throw InvalidInput("evm_db: empty batch");
    if (!(batch.reference_power() > 0.0)) throw InvalidInput("evm_db: zero reference power");
    const double ratio = batch.error_power().sum() / batch.reference_power();
    if (!(ratio > 0.0)) return kEvmFloorDb;
    return std::max(kEvmFloorDb, 10.0 * std::log10(ratio));
}

double ber(const MetricBatch& batch) {
    if (batch.bit_total() == 0) throw InvalidInput("ber: no bits counted");
    return static_cast<double>(batch.bit_errors()) / static_cast<double>(batch.bit_total());
}

std::vector<double> stream_sinr(const MetricBatch& batch) {
    if (batch.trials() == 0) throw InvalidInput("stream_sinr: empty batch");
    std::vector<double> out(static_cast<std::size_t>(batch.streams()));
    const double n = static_cast<double>(batch.trials());
    for (Eigen::Index k = 0; k < batch.streams(); ++k) {
        const double mean = batch.error_power()(k) / n;
        const double sinr = mean > 0.0 ? batch.signal_power() / mean : kSinrCap;
        out[static_cast<std::size_t>(k)] = std::min(sinr, kSinrCap);
    }
    return out;
}

double capacity(const std::vector<double>& sinr) {
    double c = 0.0;
    for (double v : sinr) {
        if (!(v >= 0.0)) throw InvalidInput("capacity: negative or NaN SINR");
        c += std::log2(1.0 + v);
    }
    return c;
}

double secrecy_capacity(const std::vector<double>& sinr_bob, const std::vector<double>& sinr_eve) {
    if (sinr_bob.size() != sinr_eve.size())
        throw InvalidInput("secrecy_capacity: SINR vectors differ in length");
    return std::max(0.0, capacity(sinr_bob) - capacity(sinr_eve));
}

} // namespace mimosec
