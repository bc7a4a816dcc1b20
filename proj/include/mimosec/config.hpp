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
#include <string>
#include <string_view>
#include <vector>

#include "mimosec/link.hpp"

namespace mimosec {

/**
 * Monte Carlo sweep configuration. Defaults follow the reference experiment:
 * 4 streams, 8 or 16 transmit antennas, a 32-antenna eavesdropper, QPSK, and
 * SNR from 0 to 10 dB.
 */
struct ExperimentConfig {
    int M = 4;
    std::vector<int> N_list{8, 16};
    int L = 32;
    std::vector<double> phi_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
    std::vector<double> snr_grid_db{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int trials = 2000;
    std::uint64_t master_seed = 1;
    std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    bool noise_free = false;
    bool eve_enabled = true;
    double eve_snr_offset_db = 0.0;
    double solver_tol = kDefaultSolverTol;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    int threads = 0;

    /// Throws InvalidInput on the first violated constraint.
    void validate() const;
};

/**
 * Applies `key = value` lines onto `cfg`. Arrays are bracketed and comma
 * separated, `#` starts a comment, booleans are true/false. Unknown keys and
 * malformed values throw InvalidInput naming the line.
 */
void apply_config_text(ExperimentConfig& cfg, std::string_view text);

/// Defaults overlaid with `text`, then validated.
ExperimentConfig parse_config(std::string_view text);
/// Reads and parses a file; I/O problems throw IoError.
ExperimentConfig load_config(const std::string& path);

/// Renders cfg in the same format parse_config reads.
std::string format_config(const ExperimentConfig& cfg);

std::vector<Scheme> parse_scheme_list(std::string_view list);
std::vector<double> parse_real_list(std::string_view list);

} // namespace mimosec
