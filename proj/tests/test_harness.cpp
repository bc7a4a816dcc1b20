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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mimosec/errors.hpp"
#include "mimosec/harness.hpp"
#include "mimosec/metrics.hpp"
#include "mimosec/modem.hpp"

using namespace mimosec;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.N_list = {8};
    c.phi_grid = {0.3, 0.8};
    c.snr_grid_db = {0.0, 6.0};
    c.trials = 60;
    c.threads = 1;
    return c;
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream out;
    write_csv(r, out);
    return out.str();
}

} // namespace

TEST_CASE("config text round trips") {
    ExperimentConfig c = small_config();
    c.master_seed = 18446744073709551615ull;
    c.schemes = {Scheme::Pas, Scheme::As};
    c.eve_snr_offset_db = -3.5;
    c.noise_free = true;
    const ExperimentConfig back = parse_config(format_config(c));
    CHECK(format_config(back) == format_config(c));
    CHECK(back.master_seed == c.master_seed);
    CHECK(back.schemes == c.schemes);
    CHECK(back.phi_grid == c.phi_grid);
    CHECK(back.noise_free);
}

TEST_CASE("config parsing accepts comments and reports bad lines") {
    const ExperimentConfig c = parse_config("# sweep\nM = 2\nN_list = [4, 6]\nL = 8 # eve antennas\n"
                                            "schemes = [pas, as]\n");
    CHECK(c.M == 2);
    CHECK(c.N_list == std::vector<int>{4, 6});
    CHECK(c.L == 8);
    CHECK(c.schemes.size() == 2);
    CHECK_THROWS_AS(parse_config("M 4\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("bogus = 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("trials = lots\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("L = 12\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("phi_grid = [0.5, 0.5]\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("phi_grid = [1.5]\n"), InvalidInput);
    try {
        parse_config("M = 4\n\ntrials = x\n");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("missing config file is an IoError") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), IoError);
}

TEST_CASE("phi = 1 noise-free puts Bob at the floor for every scheme") {
    ExperimentConfig c;
    c.trials = 1;
    c.phi_grid = {1.0};
    c.noise_free = true;
    const SweepResult r = run_sweep(c);
    CHECK(r.rows.size() == expected_row_count(c));
    for (int N : c.N_list)
        for (Scheme s : kAllSchemes) {
            const SweepRow& row = r.at(s, Receiver::Bob, N, 1.0);
            CHECK(row.evm_db == kEvmFloorDb);
            CHECK(row.ber == 0.0);
            CHECK(std::isinf(row.snr_db));
        }
}

TEST_CASE("AS beats CONVENTIONAL at Bob under mismatch") {
    ExperimentConfig c;
    c.N_list = {8};
    c.phi_grid = {0.3};
    c.snr_grid_db = {3.0};
    c.trials = 500;
    const SweepResult r = run_sweep(c);
    CHECK(r.at(Scheme::As, Receiver::Bob, 8, 0.3, 3.0).ber <
          r.at(Scheme::Conventional, Receiver::Bob, 8, 0.3, 3.0).ber);
}

TEST_CASE("sweeps are deterministic and thread-count invariant") {
    ExperimentConfig c = small_config();
    const std::string one = csv_of(run_sweep(c));
    CHECK(one == csv_of(run_sweep(c)));
    c.threads = 4;
    CHECK(one == csv_of(run_sweep(c)));
    c.master_seed = 2;
    CHECK(one != csv_of(run_sweep(c)));
}

TEST_CASE("rows are sorted and counted") {
    ExperimentConfig c = small_config();
    c.N_list = {16, 8};
    c.L = 20;
    c.phi_grid = {0.8, 0.3};
    c.trials = 3;
    const SweepResult r = run_sweep(c);
    REQUIRE(r.rows.size() == expected_row_count(c));
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        const auto& a = r.rows[i - 1];
        const auto& b = r.rows[i];
        CHECK(std::tie(a.scheme, a.receiver, a.N, a.phi, a.snr_db) <
              std::tie(b.scheme, b.receiver, b.N, b.phi, b.snr_db));
    }
}

TEST_CASE("full default grid row count") {
    ExperimentConfig c;
    c.trials = 1;
    CHECK(run_sweep(c).rows.size() == 4 * 2 * 2 * 11 * 11);
    c.noise_free = true;
    CHECK(run_sweep(c).rows.size() == 4 * 2 * 2 * 11);
    c.eve_enabled = false;
    const SweepResult r = run_sweep(c);
    CHECK(r.rows.size() == 4 * 2 * 11);
    CHECK(std::isnan(r.rows.front().secrecy));
}

TEST_CASE("CSV layout and round trip") {
    CHECK(csv_of(SweepResult{}) == std::string(kCsvHeader) + "\n");

    ExperimentConfig c;
    c.N_list = {8};
    c.phi_grid = {0.5};
    c.schemes = {Scheme::As};
    c.eve_enabled = false;
    c.noise_free = true;
    c.trials = 5;
    const SweepResult r = run_sweep(c);
    const std::string text = csv_of(r);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find(",inf,") != std::string::npos);
    std::istringstream in(text);
    const SweepResult back = read_csv(in);
    REQUIRE(back.rows.size() == 1);
    CHECK(back.rows[0].scheme == Scheme::As);
    CHECK(std::isinf(back.rows[0].snr_db));
    CHECK(back.rows[0].evm_db == doctest::Approx(r.rows[0].evm_db).epsilon(1e-8));
    CHECK(csv_of(back) == text);
}

TEST_CASE("unwritable CSV path is an IoError") {
    CHECK_THROWS_AS(emit_csv(SweepResult{}, "/nonexistent/dir/out.csv"), IoError);
}

TEST_CASE("a single trial can be reproduced from its streams") {
    ExperimentConfig c;
    c.N_list = {8};
    c.phi_grid = {0.4};
    c.snr_grid_db = {2.0};
    c.trials = 1;
    c.master_seed = 77;
    const SweepResult r = run_sweep(c);

    const SeededRng trial = trial_stream(77, 8, 0);
    const TrueChannel truth = draw_true_channel(trial, 4, 8);
    const ChannelRealization real = make_realization(truth, draw_mismatch(trial, 4, 8), 0.4);
    const EveChannel eve = make_eve(trial, 32, 8);
    SeededRng bit_rng = role_stream(trial, StreamRole::Bits);
    const BitBlock bits = random_bits(bit_rng, 4);
    const ComplexVector s = modulate_qpsk(bits);
    for (Scheme sc : kAllSchemes) {
        const NoiseStreams n{role_stream(trial, StreamRole::BobNoise), role_stream(trial, StreamRole::EveNoise)};
        const TrialRecord rec = run_trial(sc, real, &eve, s, n, 2.0);
        const double bob_evm = 10.0 * std::log10((rec.s_hat_bob - s).squaredNorm() / s.squaredNorm());
        const double eve_evm = 10.0 * std::log10((rec.s_breve_eve - s).squaredNorm() / s.squaredNorm());
        CHECK(r.at(sc, Receiver::Bob, 8, 0.4, 2.0).evm_db == doctest::Approx(bob_evm).epsilon(1e-10));
        CHECK(r.at(sc, Receiver::Eve, 8, 0.4, 2.0).evm_db == doctest::Approx(eve_evm).epsilon(1e-10));
        CHECK(r.at(sc, Receiver::Bob, 8, 0.4, 2.0).mean_radiated_power ==
              doctest::Approx(rec.radiated_power).epsilon(1e-10));
    }
}

TEST_CASE("invalid sweep configs are rejected") {
    ExperimentConfig c;
    c.trials = 0;
    CHECK_THROWS_AS(run_sweep(c), InvalidInput);
    c = ExperimentConfig{};
    c.L = 16;
    CHECK_THROWS_AS(run_sweep(c), InvalidInput);
}
