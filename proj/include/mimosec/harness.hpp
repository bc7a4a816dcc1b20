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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimosec/config.hpp"
#include "mimosec/link.hpp"

namespace mimosec {

enum class Receiver { Bob, Eve };

std::string_view to_string(Receiver r) noexcept;

/// One aggregated grid point for one scheme at one receiver. capacity_bob,
/// capacity_eve and secrecy are shared by the bob and eve rows of a pair.
struct SweepRow {
    Scheme scheme = Scheme::Ideal;
    Receiver receiver = Receiver::Bob;
    int N = 0;
    double phi = 0.0;
    double snr_db = kNoiseFree;
    std::size_t trials = 0;
    double evm_db = 0.0;
    double ber = 0.0;
    double capacity_bob = 0.0;
    double capacity_eve = 0.0;
    double secrecy = 0.0;
    double mean_radiated_power = 0.0;
    double mean_solver_iterations = 0.0;
};

struct SweepResult {
    /// Sorted by (scheme, receiver, N, phi, snr_db).
    std::vector<SweepRow> rows;

    /// Row lookup; snr_db is ignored for noise-free results.
    const SweepRow* find(Scheme scheme, Receiver receiver, int N, double phi,
                         double snr_db = kNoiseFree) const;
    const SweepRow& at(Scheme scheme, Receiver receiver, int N, double phi,
                       double snr_db = kNoiseFree) const;
};

/// Root stream of one trial; the StreamRole children give H, W, H_breve, bits and noise.
SeededRng trial_stream(std::uint64_t master_seed, int N, std::size_t trial);

/**
 * Runs every requested scheme on the same per-trial draws for every point
 * of the (N, phi, SNR) grid and aggregates Bob's and Eve's metrics. Trials
 * are processed in fixed-size chunks and merged in chunk order, so the
 * result does not depend on the thread count.
 */
SweepResult run_sweep(const ExperimentConfig& config);

/// Expected row count: |schemes| * |receivers| * |N_list| * |phi_grid| * |snr points|.
std::size_t expected_row_count(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "scheme,receiver,N,phi,snr_db,trials,evm_db,ber,capacity_bob,capacity_eve,secrecy,"
    "mean_radiated_power,mean_solver_iterations";

void write_csv(const SweepResult& result, std::ostream& out);
/// Writes the CSV to `path`; failures throw IoError.
void emit_csv(const SweepResult& result, const std::string& path);

/// Parses CSV produced by write_csv back into rows.
SweepResult read_csv(std::istream& in);

} // namespace mimosec
