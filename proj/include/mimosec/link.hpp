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

#include <array>
#include <limits>
#include <string_view>

#include "mimosec/artsig.hpp"
#include "mimosec/channel.hpp"

namespace mimosec {

enum class Scheme { Ideal, Conventional, Pas, As };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::Ideal, Scheme::Conventional,
                                                      Scheme::Pas, Scheme::As};

std::string_view to_string(Scheme s) noexcept;
/// Accepts the canonical upper-case names, case-insensitively.
Scheme parse_scheme(std::string_view name);

inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

/// 10^(db / 10); +inf maps to +inf.
double db_to_linear(double db);

struct Transmission {
    ComplexVector tx;
    int solver_iterations = 0;
    double solver_residual = 0.0;
    bool constraint_active = false;
};

/// Length-N radiated vector: V s, V_tilde s, V_tilde x_tilde or x.
ComplexVector transmit(Scheme scheme, const ChannelRealization& real, const ComplexVector& s);
Transmission transmit_detailed(Scheme scheme, const ChannelRealization& real,
                               const ComplexVector& s, double tol = kDefaultSolverTol);

/// Hx tx + n with n ~ CN(0, 1/gamma); gamma = +inf adds nothing and leaves rng untouched.
ComplexVector propagate(const ComplexMatrix& Hx, const ComplexVector& tx, SeededRng& rng,
                        double gamma);

/// D^{-1} U_tilde^H y.
ComplexVector receive_bob(const ComplexVector& y, const ChannelRealization& real);
/// As above, except IDEAL combines with the true U.
ComplexVector receive_bob(const ComplexVector& y, const ChannelRealization& real, Scheme scheme);

/// V_tilde^H H_breve^+ y_eve.
ComplexVector receive_eve(const ComplexVector& y_eve, const EveChannel& eve,
                          const ChannelRealization& real);

struct TrialRecord {
    Scheme scheme = Scheme::Ideal;
    ComplexVector s;
    ComplexVector tx;
    double radiated_power = 0.0;
    ComplexVector s_hat_bob;
    ComplexVector s_breve_eve;
    double snr_db = kNoiseFree;
    double phi = 1.0;
    int solver_iterations = 0;
};

struct NoiseStreams {
    SeededRng bob;
    SeededRng eve;
};

/**
 * Receives an already built transmission at Bob and, when `eve` is given, at
 * Eve (s_breve_eve stays empty otherwise). The noise streams are taken by
 * value so every SNR point of a trial sees the same unit draw, scaled by
 * 1/sqrt(gamma). Eve's SNR is Bob's plus eve_snr_offset_db.
 */
TrialRecord observe(Scheme scheme, const Transmission& t, const ChannelRealization& real,
                    const EveChannel* eve, const ComplexVector& s, NoiseStreams noise,
                    double snr_db, double eve_snr_offset_db = 0.0);

TrialRecord run_trial(Scheme scheme, const ChannelRealization& real, const EveChannel* eve,
                      const ComplexVector& s, NoiseStreams noise, double snr_db,
                      double eve_snr_offset_db = 0.0);

} // namespace mimosec
