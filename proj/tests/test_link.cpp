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

#include "mimosec/errors.hpp"
#include "mimosec/link.hpp"
#include "mimosec/modem.hpp"

using namespace mimosec;

namespace {

ComplexVector qpsk(SeededRng& rng, Eigen::Index m) { return modulate_qpsk(random_bits(rng, m)); }

NoiseStreams quiet() { return {SeededRng(0, 1), SeededRng(0, 2)}; }

} // namespace

TEST_CASE("scheme names round trip") {
    for (Scheme s : kAllSchemes) CHECK(parse_scheme(to_string(s)) == s);
    CHECK(parse_scheme("pas") == Scheme::Pas);
    CHECK(parse_scheme("Conventional") == Scheme::Conventional);
    CHECK_THROWS_AS(parse_scheme("zf"), InvalidInput);
}

TEST_CASE("dB conversion") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(3.0) == doctest::Approx(1.99526231));
    CHECK(std::isinf(db_to_linear(kNoiseFree)));
}

TEST_CASE("IDEAL and CONVENTIONAL radiate exactly M") {
    SeededRng rng(200, 0);
    for (int i = 0; i < 20; ++i) {
        const ChannelRealization real = make_realization(rng.derive(i), 4, 8, rng.uniform());
        const ComplexVector s = qpsk(rng, 4);
        CHECK(transmit(Scheme::Ideal, real, s).norm() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(transmit(Scheme::Conventional, real, s).norm() == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("artificial signal never exceeds the power budget") {
    SeededRng rng(201, 0);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Index N = i % 2 ? 8 : 16;
        const ChannelRealization real = make_realization(rng.derive(i), 4, N, 0.3);
        const ComplexVector s = qpsk(rng, 4);
        const double budget = std::sqrt(static_cast<double>(N)) * (1.0 + 1e-9);
        CHECK(transmit(Scheme::Pas, real, s).norm() <= budget);
        CHECK(transmit(Scheme::As, real, s).norm() <= budget);
        CHECK(transmit(Scheme::Pas, real, s).size() == N);
    }
}

TEST_CASE("AS at phi = 1 coincides with IDEAL") {
    SeededRng rng(202, 0);
    const ChannelRealization real = make_realization(rng, 4, 16, 1.0);
    const ComplexVector s = qpsk(rng, 4);
    CHECK((transmit(Scheme::As, real, s) - transmit(Scheme::Ideal, real, s)).norm() < 1e-10);
}

TEST_CASE("noise-free propagation is the bare channel product") {
    SeededRng rng(203, 0);
    const ComplexVector tx = sample_complex_gaussian(rng, 3, 1, 1.0).col(0);
    SeededRng untouched(5, 5);
    const ComplexVector y = propagate(ComplexMatrix::Identity(3, 3), tx, untouched, kNoiseFree);
    CHECK(y == tx);
    SeededRng fresh(5, 5);
    CHECK(untouched.next_u64() == fresh.next_u64());
}

TEST_CASE("noise variance is 1 / gamma") {
    const Eigen::Index n = 100000;
    SeededRng rng(204, 0);
    const ComplexVector y = propagate(ComplexMatrix::Zero(n, 1), ComplexVector::Zero(1), rng, 2.0);
    CHECK(y.squaredNorm() / static_cast<double>(n) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("same noise stream yields the same noise") {
    const ComplexMatrix h = ComplexMatrix::Identity(4, 4);
    const ComplexVector tx = ComplexVector::Zero(4);
    SeededRng a(9, 4), b(9, 4);
    CHECK(propagate(h, tx, a, 3.0) == propagate(h, tx, b, 3.0));
}

TEST_CASE("propagation validation") {
    SeededRng rng(1, 1);
    CHECK_THROWS_AS(propagate(ComplexMatrix::Identity(2, 3), ComplexVector::Zero(2), rng, 1.0),
                    InvalidInput);
    CHECK_THROWS_AS(propagate(ComplexMatrix::Identity(2, 2), ComplexVector::Zero(2), rng, 0.0),
                    InvalidInput);
}

TEST_CASE("Bob recovers IDEAL exactly and CONVENTIONAL exactly at phi = 1") {
    SeededRng rng(205, 0);
    for (int i = 0; i < 20; ++i) {
        const ChannelRealization mis = make_realization(rng.derive(2 * i), 4, 8, 0.4);
        const ChannelRealization hit = make_realization(rng.derive(2 * i + 1), 4, 8, 1.0);
        const ComplexVector s = qpsk(rng, 4);
        const TrialRecord ideal = run_trial(Scheme::Ideal, mis, nullptr, s, quiet(), kNoiseFree);
        CHECK((ideal.s_hat_bob - s).norm() < 1e-10);
        CHECK(ideal.s_breve_eve.size() == 0);
        const TrialRecord conv = run_trial(Scheme::Conventional, hit, nullptr, s, quiet(), kNoiseFree);
        CHECK((conv.s_hat_bob - s).norm() < 1e-10);
    }
}

TEST_CASE("Bob's noise-free error norm equals the solver residual") {
    SeededRng rng(206, 0);
    for (int i = 0; i < 30; ++i) {
        const ChannelRealization real = make_realization(rng.derive(i), 4, 8, 0.5);
        const ComplexVector s = qpsk(rng, 4);
        for (Scheme sc : {Scheme::Pas, Scheme::As}) {
            const Transmission t = transmit_detailed(sc, real, s);
            const TrialRecord rec = observe(sc, t, real, nullptr, s, quiet(), kNoiseFree);
            CHECK((rec.s_hat_bob - s).norm() == doctest::Approx(t.solver_residual).epsilon(1e-8));
            CHECK(rec.radiated_power == doctest::Approx(t.tx.squaredNorm()));
        }
    }
}

TEST_CASE("Eve's estimate is the precoder projection of what was sent") {
    SeededRng rng(207, 0);
    for (int i = 0; i < 20; ++i) {
        const ChannelRealization real = make_realization(rng.derive(i), 4, 8, 0.3);
        const EveChannel eve = make_eve(rng.derive(1000 + i), 32, 8);
        const ComplexVector s = qpsk(rng, 4);
        const TrialRecord conv = run_trial(Scheme::Conventional, real, &eve, s, quiet(), kNoiseFree);
        CHECK((conv.s_breve_eve - s).norm() < 1e-10);
        const TrialRecord as = run_trial(Scheme::As, real, &eve, s, quiet(), kNoiseFree);
        CHECK((as.s_breve_eve - real.V_tilde.adjoint() * as.tx).norm() < 1e-10);
        const TrialRecord ideal = run_trial(Scheme::Ideal, real, &eve, s, quiet(), kNoiseFree);
        CHECK((ideal.s_breve_eve - real.V_tilde.adjoint() * real.V * s).norm() < 1e-10);
    }
}

TEST_CASE("Eve SNR offset only affects Eve") {
    SeededRng rng(208, 0);
    const ChannelRealization real = make_realization(rng, 4, 8, 0.6);
    const EveChannel eve = make_eve(rng.derive(1), 32, 8);
    const ComplexVector s = qpsk(rng, 4);
    const NoiseStreams n{SeededRng(3, 1), SeededRng(3, 2)};
    const TrialRecord a = run_trial(Scheme::Conventional, real, &eve, s, n, 5.0);
    const TrialRecord b = run_trial(Scheme::Conventional, real, &eve, s, n, 5.0, 10.0);
    CHECK(a.s_hat_bob == b.s_hat_bob);
    // same unit draw, scaled by 10^(-10/20)
    CHECK((b.s_breve_eve - s).norm() == doctest::Approx((a.s_breve_eve - s).norm() / std::sqrt(10.0)));
}

TEST_CASE("dimension errors at the receivers") {
    SeededRng rng(209, 0);
    const ChannelRealization real = make_realization(rng, 4, 8, 0.6);
    const EveChannel eve16 = make_eve(rng.derive(1), 32, 16);
    CHECK_THROWS_AS(receive_bob(ComplexVector::Zero(3), real), InvalidInput);
    CHECK_THROWS_AS(receive_eve(ComplexVector::Zero(32), eve16, real), InvalidInput);
    CHECK_THROWS_AS(receive_eve(ComplexVector::Zero(31), eve16, real), InvalidInput);
    CHECK_THROWS_AS(transmit(Scheme::As, real, ComplexVector::Zero(3)), InvalidInput);
}
