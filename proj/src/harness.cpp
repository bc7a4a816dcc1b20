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

#include "mimosec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "mimosec/errors.hpp"
#include "mimosec/metrics.hpp"
#include "mimosec/modem.hpp"

namespace mimosec {

namespace {

constexpr std::size_t kChunkTrials = 50;

struct Cell {
    MetricBatch bob;
    MetricBatch eve;
    double power_sum = 0.0;
    double iteration_sum = 0.0;

    explicit Cell(Eigen::Index streams) : bob(streams), eve(streams) {}

    void merge(const Cell& other) {
        bob.merge(other.bob);
        eve.merge(other.eve);
        power_sum += other.power_sum;
        iteration_sum += other.iteration_sum;
    }
};

struct Grid {
    std::vector<Scheme> schemes;
    std::vector<double> phis;
    std::vector<double> snrs;

    std::size_t index(std::size_t scheme, std::size_t phi, std::size_t snr) const {
        return (scheme * phis.size() + phi) * snrs.size() + snr;
    }
    std::size_t size() const { return schemes.size() * phis.size() * snrs.size(); }
};

Grid make_grid(const ExperimentConfig& cfg) {
    Grid g;
    g.schemes = cfg.schemes;
    std::sort(g.schemes.begin(), g.schemes.end());
    g.phis = cfg.phi_grid;
    std::sort(g.phis.begin(), g.phis.end());
    if (cfg.noise_free)
        g.snrs = {kNoiseFree};
    else {
        g.snrs = cfg.snr_grid_db;
        std::sort(g.snrs.begin(), g.snrs.end());
    }
    return g;
}

std::vector<ChannelRealization> realizations_for_trial(const SeededRng& trial, const TrueChannel& truth,
                                                       const ExperimentConfig& cfg,
                                                       const std::vector<double>& phis, int N) {
    for (int attempt = 0; attempt < kMaxRealizationRetries; ++attempt) {
        const ComplexMatrix W = draw_mismatch(trial, cfg.M, N, attempt);
        try {
            std::vector<ChannelRealization> out;
            out.reserve(phis.size());
            for (double phi : phis) out.push_back(make_realization(truth, W, phi));
            return out;
        } catch (const RejectedRealization&) {
        }
    }
    throw RejectedRealization("induced channel degenerate on every mismatch retry");
}

void run_trial_into(const ExperimentConfig& cfg, const Grid& grid, int N, std::size_t trial_index,
                    std::vector<Cell>& cells) {
    const SeededRng trial = trial_stream(cfg.master_seed, N, trial_index);
    const TrueChannel truth = draw_true_channel(trial, cfg.M, N);
    const auto reals = realizations_for_trial(trial, truth, cfg, grid.phis, N);
    std::optional<EveChannel> eve;
    if (cfg.eve_enabled) eve = make_eve(trial, cfg.L, N);

    SeededRng bit_rng = role_stream(trial, StreamRole::Bits);
    const BitBlock bits = random_bits(bit_rng, cfg.M);
    const ComplexVector s = modulate_qpsk(bits);
    const NoiseStreams noise{role_stream(trial, StreamRole::BobNoise), role_stream(trial, StreamRole::EveNoise)};

    for (std::size_t pi = 0; pi < grid.phis.size(); ++pi) {
        const ChannelRealization& real = reals[pi];
        for (std::size_t si = 0; si < grid.schemes.size(); ++si) {
            const Scheme scheme = grid.schemes[si];
            const Transmission t = transmit_detailed(scheme, real, s, cfg.solver_tol);
            for (std::size_t ki = 0; ki < grid.snrs.size(); ++ki) {
                const TrialRecord rec = observe(scheme, t, real, eve ? &*eve : nullptr, s, noise,
                                                grid.snrs[ki], cfg.eve_snr_offset_db);
                Cell& cell = cells[grid.index(si, pi, ki)];
                cell.bob.add(rec.s_hat_bob - s, s, count_bit_errors(bits, demodulate_qpsk(rec.s_hat_bob)),
                             bits.size());
                if (eve)
                    cell.eve.add(rec.s_breve_eve - s, s,
                                 count_bit_errors(bits, demodulate_qpsk(rec.s_breve_eve)), bits.size());
                cell.power_sum += rec.radiated_power;
                cell.iteration_sum += rec.solver_iterations;
            }
        }
    }
}

std::vector<Cell> run_chunk(const ExperimentConfig& cfg, const Grid& grid, int N, std::size_t begin,
                            std::size_t end) {
    std::vector<Cell> cells(grid.size(), Cell(cfg.M));
    for (std::size_t t = begin; t < end; ++t) {
        try {
            run_trial_into(cfg, grid, N, t, cells);
        } catch (const RejectedRealization& e) {
            throw NumericalFailure("run_sweep: N=" + std::to_string(N) + " trial " + std::to_string(t) +
                                   ": realization rejected after " +
                                   std::to_string(kMaxRealizationRetries) + " retries (" + e.what() + ")");
        }
    }
    return cells;
}

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::string_view to_string(Receiver r) noexcept { return r == Receiver::Bob ? "bob" : "eve"; }

const SweepRow* SweepResult::find(Scheme scheme, Receiver receiver, int N, double phi,
                                  double snr_db) const {
    for (const auto& row : rows) {
        if (row.scheme != scheme || row.receiver != receiver || row.N != N) continue;
        if (std::abs(row.phi - phi) > 1e-12) continue;
        if (!std::isinf(row.snr_db) && std::abs(row.snr_db - snr_db) > 1e-12) continue;
        return &row;
    }
    return nullptr;
}

const SweepRow& SweepResult::at(Scheme scheme, Receiver receiver, int N, double phi, double snr_db) const {
    const SweepRow* r = find(scheme, receiver, N, phi, snr_db);
    if (!r)
        throw InvalidInput("SweepResult: no row for " + std::string(to_string(scheme)) + "/" +
                           std::string(to_string(receiver)) + " N=" + std::to_string(N) +
                           " phi=" + format_g9(phi) + " snr=" + format_g9(snr_db));
    return *r;
}

SeededRng trial_stream(std::uint64_t master_seed, int N, std::size_t trial) {
    return SeededRng(master_seed, mix64(static_cast<std::uint64_t>(N))).derive(trial);
}

std::size_t expected_row_count(const ExperimentConfig& config) {
    const std::size_t receivers = config.eve_enabled ? 2 : 1;
    const std::size_t snrs = config.noise_free ? 1 : config.snr_grid_db.size();
    return config.schemes.size() * receivers * config.N_list.size() * config.phi_grid.size() * snrs;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const Grid grid = make_grid(config);
    std::vector<int> Ns = config.N_list;
    std::sort(Ns.begin(), Ns.end());

    const auto trials = static_cast<std::size_t>(config.trials);
    const std::size_t chunks_per_n = (trials + kChunkTrials - 1) / kChunkTrials;
    const std::size_t total_chunks = chunks_per_n * Ns.size();
    std::vector<std::vector<Cell>> partials(total_chunks);

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total_chunks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t c = next++; c < total_chunks; c = next++) {
            const int N = Ns[c / chunks_per_n];
            const std::size_t begin = (c % chunks_per_n) * kChunkTrials;
            const std::size_t end = std::min(trials, begin + kChunkTrials);
            try {
                partials[c] = run_chunk(config, grid, N, begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total_chunks;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    for (std::size_t ni = 0; ni < Ns.size(); ++ni) {
        std::vector<Cell> cells(grid.size(), Cell(config.M));
        for (std::size_t c = 0; c < chunks_per_n; ++c) {
            const auto& part = partials[ni * chunks_per_n + c];
            for (std::size_t i = 0; i < cells.size(); ++i) cells[i].merge(part[i]);
        }
        for (std::size_t si = 0; si < grid.schemes.size(); ++si)
            for (std::size_t pi = 0; pi < grid.phis.size(); ++pi)
                for (std::size_t ki = 0; ki < grid.snrs.size(); ++ki) {
                    const Cell& cell = cells[grid.index(si, pi, ki)];
                    SweepRow row;
                    row.scheme = grid.schemes[si];
                    row.N = Ns[ni];
                    row.phi = grid.phis[pi];
                    row.snr_db = grid.snrs[ki];
                    row.trials = cell.bob.trials();
                    row.mean_radiated_power = cell.power_sum / static_cast<double>(row.trials);
                    row.mean_solver_iterations = cell.iteration_sum / static_cast<double>(row.trials);
                    const auto sinr_bob = stream_sinr(cell.bob);
                    row.capacity_bob = capacity(sinr_bob);
                    if (config.eve_enabled) {
                        const auto sinr_eve = stream_sinr(cell.eve);
                        row.capacity_eve = capacity(sinr_eve);
                        row.secrecy = secrecy_capacity(sinr_bob, sinr_eve);
                    } else {
                        row.capacity_eve = std::nan("");
                        row.secrecy = std::nan("");
                    }
                    SweepRow bob = row;
                    bob.receiver = Receiver::Bob;
                    bob.evm_db = evm_db(cell.bob);
                    bob.ber = ber(cell.bob);
                    result.rows.push_back(bob);
                    if (config.eve_enabled) {
                        SweepRow eve = row;
                        eve.receiver = Receiver::Eve;
                        eve.evm_db = evm_db(cell.eve);
                        eve.ber = ber(cell.eve);
                        result.rows.push_back(eve);
                    }
                }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.scheme, a.receiver, a.N, a.phi, a.snr_db) <
               std::tie(b.scheme, b.receiver, b.N, b.phi, b.snr_db);
    });
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : result.rows) {
        out << to_string(r.scheme) << ',' << to_string(r.receiver) << ',' << r.N << ','
            << format_g9(r.phi) << ',' << format_g9(r.snr_db) << ',' << r.trials << ','
            << format_g9(r.evm_db) << ',' << format_g9(r.ber) << ',' << format_g9(r.capacity_bob) << ','
            << format_g9(r.capacity_eve) << ',' << format_g9(r.secrecy) << ','
            << format_g9(r.mean_radiated_power) << ',' << format_g9(r.mean_solver_iterations) << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    write_csv(result, out);
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

SweepResult read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw InvalidInput("read_csv: missing or wrong header");
    SweepResult result;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 13) throw InvalidInput("read_csv: line " + std::to_string(line_no) + " has wrong field count");
        auto real = [&](const std::string& s) {
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw InvalidInput("read_csv: line " + std::to_string(line_no) + ": bad number '" + s + "'");
            return v;
        };
        SweepRow r;
        r.scheme = parse_scheme(f[0]);
        if (f[1] == "bob") r.receiver = Receiver::Bob;
        else if (f[1] == "eve") r.receiver = Receiver::Eve;
        else throw InvalidInput("read_csv: bad receiver '" + f[1] + "'");
        r.N = static_cast<int>(real(f[2]));
        r.phi = real(f[3]);
        r.snr_db = real(f[4]);
        r.trials = static_cast<std::size_t>(real(f[5]));
        r.evm_db = real(f[6]);
        r.ber = real(f[7]);
        r.capacity_bob = real(f[8]);
        r.capacity_eve = real(f[9]);
        r.secrecy = real(f[10]);
        r.mean_radiated_power = real(f[11]);
        r.mean_solver_iterations = real(f[12]);
        result.rows.push_back(r);
    }
    return result;
}

} // namespace mimosec
