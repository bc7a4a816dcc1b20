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

#include "mimosec/selftest.hpp"

#include <cmath>
#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <sstream>

#include "mimosec/artsig.hpp"
#include "mimosec/channel.hpp"
#include "mimosec/harness.hpp"
#include "mimosec/link.hpp"
#include "mimosec/linalg.hpp"
#include "mimosec/metrics.hpp"
#include "mimosec/modem.hpp"

namespace mimosec {

namespace {

using Check = std::function<std::optional<std::string>(SeededRng&)>;

std::string fmt(const char* what, double value) {
    std::ostringstream os;
    os << what << " = " << value;
    return os.str();
}

Eigen::Index pick(SeededRng& rng, Eigen::Index lo, Eigen::Index hi) {
    return lo + static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

double unitarity_error(const ComplexMatrix& q) {
    return (q.adjoint() * q - ComplexMatrix::Identity(q.cols(), q.cols())).norm();
}

std::optional<std::string> check_svd(SeededRng& rng) {
    for (int i = 0; i < 60; ++i) {
        const Eigen::Index m = pick(rng, 1, 8), n = pick(rng, 1, 8);
        const ComplexMatrix a = sample_complex_gaussian(rng, m, n, 1.0);
        const SvdTriple f = svd(a);
        ComplexMatrix sigma = ComplexMatrix::Zero(m, n);
        for (Eigen::Index k = 0; k < f.singular_values.size(); ++k) sigma(k, k) = f.singular_values(k);
        const double rec = (f.left * sigma * f.right.adjoint() - a).norm() / a.norm();
        if (rec >= 1e-10) return fmt("reconstruction error", rec);
        if (unitarity_error(f.left) > 1e-10 || unitarity_error(f.right) > 1e-10) return "factor not unitary";
        for (Eigen::Index k = 0; k < f.singular_values.size(); ++k) {
            if (f.singular_values(k) < 0.0) return "negative singular value";
            if (k > 0 && f.singular_values(k) > f.singular_values(k - 1)) return "singular values not descending";
        }
        for (Eigen::Index k = 0; k < std::min(m, n); ++k) {
            Eigen::Index row = 0;
            f.left.col(k).cwiseAbs().maxCoeff(&row);
            if (std::abs(f.left(row, k).imag()) > 1e-12 || f.left(row, k).real() <= 0.0)
                return "left singular vector not canonical";
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_penrose(SeededRng& rng) {
    for (int i = 0; i < 60; ++i) {
        const Eigen::Index m = pick(rng, 1, 8), n = pick(rng, 1, 8);
        const Eigen::Index r = pick(rng, 1, std::min(m, n));
        const ComplexMatrix a =
            sample_complex_gaussian(rng, m, r, 1.0) * sample_complex_gaussian(rng, r, n, 1.0);
        const ComplexMatrix p = pseudo_inverse(a);
        const double e1 = (a * p * a - a).norm();
        const double e2 = (p * a * p - p).norm();
        const double e3 = ((a * p).adjoint() - a * p).norm();
        const double e4 = ((p * a).adjoint() - p * a).norm();
        const double worst = std::max({e1, e2, e3, e4});
        if (worst > 1e-8) return fmt("Penrose violation", worst);
    }
    return std::nullopt;
}

std::optional<std::string> check_rng(SeededRng& rng) {
    const std::uint64_t seed = rng.next_u64();
    SeededRng a(seed, 3), b(seed, 3), c(seed, 4);
    double sa = 0.0, sc = 0.0, sac = 0.0, saa = 0.0, scc = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = a.standard_normal(), y = b.standard_normal(), z = c.standard_normal();
        if (x != y) return "identical stream ids diverged";
        sa += x;
        sc += z;
        sac += x * z;
        saa += x * x;
        scc += z * z;
    }
    const double cov = sac / n - (sa / n) * (sc / n);
    const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (scc / n - sc * sc / n / n));
    if (std::abs(corr) > 0.05) return fmt("cross-stream correlation", corr);
    return std::nullopt;
}

std::optional<std::string> check_mismatch(SeededRng& rng) {
    const ComplexMatrix H = sample_complex_gaussian(rng, 4, 8, 1.0);
    const ComplexMatrix W = sample_complex_gaussian(rng, 4, 8, 1.0);
    for (int k = 0; k <= 10; ++k) {
        const double phi = k / 10.0;
        const ComplexMatrix Ht = induce_mismatch(H, W, phi);
        const double err = (Ht - (std::sqrt(phi) * H + (1.0 - std::sqrt(phi)) * W)).cwiseAbs().maxCoeff();
        if (err > 1e-12) return fmt("mixture identity error", err);
    }
    if (induce_mismatch(H, W, 1.0) != H || induce_mismatch(H, W, 0.0) != W) return "endpoint not exact";
    return std::nullopt;
}

std::optional<std::string> check_codebook(SeededRng& rng) {
    for (int i = 0; i < 30; ++i) {
        const SeededRng trial = rng.derive(static_cast<std::uint64_t>(i));
        const Eigen::Index N = i % 2 ? 8 : 16;
        const double phi = 0.1 * (i % 10);
        const ChannelRealization r = make_realization(trial, 4, N, phi);
        const double worst = std::max({unitarity_error(r.U), unitarity_error(r.V), unitarity_error(r.U_tilde),
                                       unitarity_error(r.V_tilde)});
        if (worst > 1e-10) return fmt("codebook unitarity error", worst);
        const ChannelRealization one = make_realization(trial, 4, N, 1.0);
        if (one.H_tilde != one.H || one.U_tilde != one.U || one.V_tilde != one.V)
            return "phi = 1 codebook differs from true SVD";
    }
    return std::nullopt;
}

std::optional<std::string> check_modem(SeededRng& rng) {
    for (int i = 0; i < 200; ++i) {
        const BitBlock bits = random_bits(rng, pick(rng, 1, 16));
        const ComplexVector s = modulate_qpsk(bits);
        if (demodulate_qpsk(s) != bits) return "round trip failed";
        for (Eigen::Index k = 0; k < s.size(); ++k)
            if (std::abs(std::abs(s(k)) - 1.0) > 1e-15) return "constellation point off the unit circle";
    }
    // Nearest neighbours differ by one component sign and must differ in one bit.
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = 0; b < 4; ++b) {
            const ComplexVector pa = modulate_qpsk({std::uint8_t(a >> 1), std::uint8_t(a & 1)});
            const ComplexVector pb = modulate_qpsk({std::uint8_t(b >> 1), std::uint8_t(b & 1)});
            const double d = std::abs(pa(0) - pb(0));
            const int hamming = std::popcount(a ^ b);
            if (std::abs(d - std::sqrt(2.0)) < 1e-12 && hamming != 1) return "Gray labelling violated";
        }
    return std::nullopt;
}

std::optional<std::string> check_solver(SeededRng& rng) {
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index m = pick(rng, 1, 8), k = pick(rng, 1, 8);
        LsqiProblem p;
        p.A = sample_complex_gaussian(rng, m, k, 1.0);
        p.target = sample_complex_gaussian(rng, m, 1, 1.0 + 4.0 * rng.uniform()).col(0);
        p.radius = std::sqrt(static_cast<double>(k)) * (0.1 + rng.uniform());
        const SolverResult r = solve_norm_constrained_ls(p);
        if (r.xi.norm() > p.radius * (1.0 + 1e-9)) return fmt("infeasible iterate, norm", r.xi.norm());
        if (r.constraint_active) {
            if (std::abs(r.xi.norm() - p.radius) > p.tol * p.radius) return "active constraint not tight";
            if (!(r.lambda > 0.0)) return "active constraint with zero multiplier";
        } else if (r.lambda != 0.0) {
            return "inactive constraint with nonzero multiplier";
        }
        const ComplexVector aht = p.A.adjoint() * p.target;
        const ComplexMatrix gram = p.A.adjoint() * p.A;
        const double stat =
            ((gram + r.lambda * ComplexMatrix::Identity(k, k)) * r.xi - aht).norm();
        if (stat > 1e-8 * aht.norm()) return fmt("stationarity residual", stat);

        const SecularPath path(p.A, p.target);
        const double l1 = rng.uniform() * 10.0, l2 = l1 + 1e-3 + rng.uniform();
        if (aht.norm() > 0 && !(path.norm_squared(l2) < path.norm_squared(l1))) return "secular map not decreasing";
    }
    return std::nullopt;
}

std::optional<std::string> check_dominance(SeededRng& rng) {
    for (int i = 0; i < 100; ++i) {
        const SeededRng trial = rng.derive(1000 + static_cast<std::uint64_t>(i));
        const Eigen::Index N = i % 2 ? 8 : 16;
        const double phi = rng.uniform();
        const ChannelRealization r = make_realization(trial, 4, N, phi);
        SeededRng bit_rng = role_stream(trial, StreamRole::Bits);
        const ComplexVector s = modulate_qpsk(random_bits(bit_rng, 4));
        const SolverResult pas = build_pas(r, s), as = build_as(r, s);
        if (as.residual > pas.residual + 1e-9) return fmt("AS residual exceeds PAS by", as.residual - pas.residual);
        const ChannelRealization one = make_realization(trial, 4, N, 1.0);
        if (build_pas(one, s).residual >= 1e-9 || build_as(one, s).residual >= 1e-9)
            return "phi = 1 artificial signal not exact";
    }
    return std::nullopt;
}

std::optional<std::string> check_link(SeededRng& rng) {
    for (int i = 0; i < 60; ++i) {
        const SeededRng trial = rng.derive(5000 + static_cast<std::uint64_t>(i));
        const Eigen::Index N = i % 2 ? 8 : 16;
        const ChannelRealization r = make_realization(trial, 4, N, rng.uniform());
        const EveChannel eve = make_eve(trial, 32, N);
        SeededRng bit_rng = role_stream(trial, StreamRole::Bits);
        const ComplexVector s = modulate_qpsk(random_bits(bit_rng, 4));
        const NoiseStreams noise{role_stream(trial, StreamRole::BobNoise), role_stream(trial, StreamRole::EveNoise)};
        for (Scheme scheme : kAllSchemes) {
            const Transmission t = transmit_detailed(scheme, r, s);
            const TrialRecord rec = observe(scheme, t, r, &eve, s, noise, kNoiseFree);
            const double bob_err = (rec.s_hat_bob - s).norm();
            const double eve_err = (rec.s_breve_eve - s).norm();
            switch (scheme) {
            case Scheme::Ideal:
                if (bob_err > 1e-9) return fmt("IDEAL noise-free error", bob_err);
                if (std::abs(rec.radiated_power - 4.0) > 1e-9) return "IDEAL radiated power != M";
                break;
            case Scheme::Conventional:
                if (eve_err > 1e-9) return fmt("Eve CONVENTIONAL noise-free error", eve_err);
                if (std::abs(rec.radiated_power - 4.0) > 1e-9) return "CONVENTIONAL radiated power != M";
                break;
            case Scheme::Pas:
            case Scheme::As:
                if (std::abs(bob_err - t.solver_residual) > 1e-9) return fmt("Bob error vs residual", bob_err - t.solver_residual);
                if (rec.radiated_power > static_cast<double>(N) * (1 + 1e-9)) return "artificial signal over power budget";
                break;
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_metrics(SeededRng& rng) {
    MetricBatch base(4), bigger(4), scaled(4);
    for (int i = 0; i < 50; ++i) {
        const ComplexVector s = sample_complex_gaussian(rng, 4, 1, 1.0).col(0);
        const ComplexVector e = sample_complex_gaussian(rng, 4, 1, 0.1).col(0);
        base.add(e, s, 1, 8);
        bigger.add(1.5 * e, s, 1, 8);
        scaled.add(3.0 * e, s, 1, 8);
    }
    if (!(evm_db(bigger) > evm_db(base))) return "EVM not increasing with error magnitude";
    const auto a = stream_sinr(base), c = stream_sinr(scaled);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] / c[k] - 9.0) > 1e-9) return "SINR scale property violated";
    if (secrecy_capacity(a, a) != 0.0) return "secrecy for equal inputs nonzero";
    if (secrecy_capacity(c, a) < 0.0) return "negative secrecy";
    const double b = ber(base);
    if (b < 0.0 || b > 1.0) return "BER outside [0, 1]";
    return std::nullopt;
}

std::optional<std::string> check_csv_determinism(SeededRng& rng) {
    ExperimentConfig cfg;
    cfg.N_list = {8};
    cfg.phi_grid = {0.5, 1.0};
    cfg.snr_grid_db = {3.0};
    cfg.trials = 60;
    cfg.master_seed = rng.next_u64();
    cfg.threads = 1;
    std::ostringstream first, second, threaded;
    write_csv(run_sweep(cfg), first);
    write_csv(run_sweep(cfg), second);
    cfg.threads = 3;
    write_csv(run_sweep(cfg), threaded);
    if (first.str() != second.str()) return "CSV differs between identical runs";
    if (first.str() != threaded.str()) return "CSV depends on thread count";
    return std::nullopt;
}

} // namespace

std::vector<SelfTestOutcome> run_selftest(std::uint64_t seed) {
    const std::vector<std::pair<std::string, Check>> checks = {
        {"svd_unitarity_reconstruction_ordering", check_svd},
        {"pseudo_inverse_penrose_conditions", check_penrose},
        {"rng_reproducibility_and_independence", check_rng},
        {"mismatch_mixture_identity", check_mismatch},
        {"codebook_unitarity_and_phi1_equality", check_codebook},
        {"modem_round_trip_modulus_gray", check_modem},
        {"solver_feasibility_kkt_secular_monotone", check_solver},
        {"residual_dominance_and_exact_recovery", check_dominance},
        {"link_noise_free_identities_and_power", check_link},
        {"metric_properties", check_metrics},
        {"csv_determinism", check_csv_determinism},
    };
    std::vector<SelfTestOutcome> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        SeededRng rng(seed, 0x5e1f0000ULL + i);
        SelfTestOutcome o;
        o.name = checks[i].first;
        try {
            const auto failure = checks[i].second(rng);
            o.passed = !failure;
            if (failure) o.detail = *failure;
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("threw: ") + e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace mimosec
