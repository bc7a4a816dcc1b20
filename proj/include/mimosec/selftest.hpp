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
#include <vector>

namespace mimosec {

struct SelfTestOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

/**
 * Runs the module invariants on seeded random instances: SVD unitarity and
 * reconstruction, Penrose conditions, the mismatch identity, codebook
 * unitarity, modem round trip and Gray labelling, solver feasibility/KKT,
 * AS <= PAS residual dominance, noise-free chain identities, metric
 * properties and CSV determinism. One outcome per property.
 */
std::vector<SelfTestOutcome> run_selftest(std::uint64_t seed = 20260101);

} // namespace mimosec
