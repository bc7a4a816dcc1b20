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

#include "mimosec/channel.hpp"

#include <cmath>
#include <string>

#include "mimosec/errors.hpp"

namespace mimosec {

namespace {

bool well_conditioned(const RealVector& sigma, Eigen::Index keep) {
    if (sigma.size() < keep || keep < 1) return false;
    const double top = sigma(0);
    return top > 0.0 && sigma(keep - 1) > kDegenerateTol * top;
}

bool full_rank(const ComplexMatrix& a) {
    const Eigen::Index r = std::min(a.rows(), a.cols());
    return well_conditioned(svd(a).singular_values, r);
}

// Attempt 0 of a role uses the role stream itself so single draws are easy to
// reproduce by hand; later attempts branch off it.
SeededRng attempt_stream(const SeededRng& rng, StreamRole role, int attempt) {
    const SeededRng base = role_stream(rng, role);
    return attempt == 0 ? base : base.derive(static_cast<std::uint64_t>(attempt));
}

} // namespace

ComplexMatrix generate_channel(SeededRng& rng, Eigen::Index rx, Eigen::Index tx) {
    if (rx < 1 || tx < 1) throw InvalidInput("generate_channel: dimensions must be positive");
    return sample_complex_gaussian(rng, rx, tx, 1.0);
}

ComplexMatrix induce_mismatch(const ComplexMatrix& H, const ComplexMatrix& W, double phi) {
    if (H.rows() != W.rows() || H.cols() != W.cols())
        throw InvalidInput("induce_mismatch: H and W shapes differ");
    if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidInput("induce_mismatch: phi outside [0, 1]");
    require_finite(H, "induce_mismatch H");
    require_finite(W, "induce_mismatch W");
    const double a = std::sqrt(phi);
    // Written out so the phi = 1 and phi = 0 endpoints reproduce H and W bit for bit.
    ComplexMatrix out(H.rows(), H.cols());
    for (Eigen::Index j = 0; j < H.cols(); ++j)
        for (Eigen::Index i = 0; i < H.rows(); ++i) {
            if (a == 1.0)
                out(i, j) = H(i, j);
            else if (a == 0.0)
                out(i, j) = W(i, j);
            else
                out(i, j) = a * H(i, j) + (1.0 - a) * W(i, j);
        }
    return out;
}

Codebook derive_codebook(const ComplexMatrix& H_tilde, Eigen::Index streams) {
    if (streams < 1 || streams > std::min(H_tilde.rows(), H_tilde.cols()))
        throw InvalidInput("derive_codebook: streams must be in [1, min(rows, cols)]");
    if (streams != H_tilde.rows())
        throw InvalidInput("derive_codebook: streams must equal the receive dimension");
    const SvdTriple f = svd(H_tilde);
    if (!well_conditioned(f.singular_values, streams))
        throw InvalidInput("derive_codebook: induced channel rank below stream count");
    return Codebook{f.left, f.right.leftCols(streams)};
}

TrueChannel decompose_channel(const ComplexMatrix& H) {
    const Eigen::Index M = H.rows();
    if (M > H.cols()) throw InvalidInput("decompose_channel: need rx <= tx");
    SvdTriple f = svd(H);
    if (!well_conditioned(f.singular_values, M))
        throw RejectedRealization("decompose_channel: channel is rank deficient");
    return TrueChannel{H, std::move(f.left), f.singular_values.head(M), f.right.leftCols(M)};
}

ChannelRealization make_realization(const TrueChannel& truth, const ComplexMatrix& W, double phi) {
    ChannelRealization r;
    r.H = truth.H;
    r.W = W;
    r.phi = phi;
    r.H_tilde = induce_mismatch(truth.H, W, phi);
    r.U = truth.U;
    r.D = truth.D;
    r.V = truth.V;
    Codebook cb;
    try {
        cb = derive_codebook(r.H_tilde, truth.H.rows());
    } catch (const InvalidInput&) {
        throw RejectedRealization("make_realization: induced channel is rank deficient");
    }
    r.U_tilde = std::move(cb.U_tilde);
    r.V_tilde = std::move(cb.V_tilde);
    return r;
}

TrueChannel draw_true_channel(const SeededRng& rng, Eigen::Index M, Eigen::Index N) {
    if (M < 1 || M > N) throw InvalidInput("draw_true_channel: need 1 <= M <= N");
    for (int attempt = 0; attempt < kMaxRealizationRetries; ++attempt) {
        SeededRng s = attempt_stream(rng, StreamRole::BobChannel, attempt);
        try {
            return decompose_channel(generate_channel(s, M, N));
        } catch (const RejectedRealization&) {
        }
    }
    throw RejectedRealization("draw_true_channel: retries exhausted");
}

ComplexMatrix draw_mismatch(const SeededRng& rng, Eigen::Index M, Eigen::Index N, int attempt) {
    if (M < 1 || M > N) throw InvalidInput("draw_mismatch: need 1 <= M <= N");
    for (; attempt < kMaxRealizationRetries; ++attempt) {
        SeededRng s = attempt_stream(rng, StreamRole::Mismatch, attempt);
        ComplexMatrix W = sample_complex_gaussian(s, M, N, 1.0);
        if (full_rank(W)) return W;
    }
    throw RejectedRealization("draw_mismatch: retries exhausted");
}

ChannelRealization make_realization(const SeededRng& rng, Eigen::Index M, Eigen::Index N,
                                    double phi) {
    if (M < 1 || M > N) throw InvalidInput("make_realization: need 1 <= M <= N");
    if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidInput("make_realization: phi outside [0, 1]");
    const TrueChannel truth = draw_true_channel(rng, M, N);
    for (int attempt = 0; attempt < kMaxRealizationRetries; ++attempt) {
        try {
            return make_realization(truth, draw_mismatch(rng, M, N, attempt), phi);
        } catch (const RejectedRealization&) {
        }
    }
    throw RejectedRealization("make_realization: retries exhausted");
}

EveChannel make_eve(const SeededRng& rng, Eigen::Index L, Eigen::Index N) {
    if (N < 1 || L <= N) throw InvalidInput("make_eve: need L > N >= 1");
    for (int attempt = 0; attempt < kMaxRealizationRetries; ++attempt) {
        SeededRng s = attempt_stream(rng, StreamRole::EveChannel, attempt);
        ComplexMatrix Hb = generate_channel(s, L, N);
        if (!full_rank(Hb)) continue;
        ComplexMatrix pinv = pseudo_inverse(Hb);
        return EveChannel{std::move(Hb), std::move(pinv)};
    }
    throw RejectedRealization("make_eve: retries exhausted");
}

} // namespace mimosec
