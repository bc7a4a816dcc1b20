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

#include "mimosec/linalg.hpp"

namespace mimosec {

/// Keys for the per-trial child streams; every random quantity has its own.
enum class StreamRole : std::uint64_t {
    BobChannel = 1,
    Mismatch = 2,
    EveChannel = 3,
    BobNoise = 4,
    EveNoise = 5,
    Bits = 6,
};

inline SeededRng role_stream(const SeededRng& trial, StreamRole role) {
    return trial.derive(static_cast<std::uint64_t>(role));
}

/// Draws whose smallest kept singular value falls below this fraction of
/// the largest are considered degenerate and resampled.
inline constexpr double kDegenerateTol = 1e-10;
inline constexpr int kMaxRealizationRetries = 16;

/// True channel H with the first `streams` singular triplets of its canonical SVD.
struct TrueChannel {
    ComplexMatrix H;
    ComplexMatrix U;  // M x M
    RealVector D;     // length M, strictly positive
    ComplexMatrix V;  // N x M
};

struct Codebook {
    ComplexMatrix U_tilde;  // M x M
    ComplexMatrix V_tilde;  // N x M
};

/**
 * One draw of Bob's link: the true channel, the mismatch term, the induced
 * channel sqrt(phi) H + (1 - sqrt(phi)) W and the public codebook pair taken
 * from the induced channel's SVD. Immutable once built.
 */
struct ChannelRealization {
    ComplexMatrix H;
    ComplexMatrix W;
    double phi = 1.0;
    ComplexMatrix H_tilde;
    ComplexMatrix U;
    RealVector D;
    ComplexMatrix V;
    ComplexMatrix U_tilde;
    ComplexMatrix V_tilde;

    Eigen::Index rx() const { return H.rows(); }
    Eigen::Index tx() const { return H.cols(); }
};

struct EveChannel {
    ComplexMatrix H_breve;       // L x N
    ComplexMatrix H_breve_pinv;  // N x L
};

/// rx x tx matrix of i.i.d. CN(0, 1) coefficients.
ComplexMatrix generate_channel(SeededRng& rng, Eigen::Index rx, Eigen::Index tx);

ComplexMatrix induce_mismatch(const ComplexMatrix& H, const ComplexMatrix& W, double phi);

/// Combiner and the first `streams` precoder columns from the canonical SVD of H_tilde.
Codebook derive_codebook(const ComplexMatrix& H_tilde, Eigen::Index streams);

/// SVD of the true channel with streams = H.rows(); throws RejectedRealization
/// when H is rank deficient.
TrueChannel decompose_channel(const ComplexMatrix& H);

/// Assembles a realization from an already decomposed channel and a mismatch draw.
ChannelRealization make_realization(const TrueChannel& truth, const ComplexMatrix& W, double phi);

/**
 * Draws H and W from the BobChannel and Mismatch children of `rng` and
 * assembles the realization. The parent stream is not advanced, so the same
 * rng with a different phi reuses the same H and W.
 */
ChannelRealization make_realization(const SeededRng& rng, Eigen::Index M, Eigen::Index N,
                                    double phi);

/// Draws the true channel alone (BobChannel child, with retries).
TrueChannel draw_true_channel(const SeededRng& rng, Eigen::Index M, Eigen::Index N);

/// Draws a full-rank mismatch term from the Mismatch child; `attempt` selects
/// a resample after a degenerate induced channel.
ComplexMatrix draw_mismatch(const SeededRng& rng, Eigen::Index M, Eigen::Index N, int attempt = 0);

EveChannel make_eve(const SeededRng& rng, Eigen::Index L, Eigen::Index N);

} // namespace mimosec
