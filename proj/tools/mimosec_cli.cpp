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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mimosec/artsig.hpp"
#include "mimosec/config.hpp"
#include "mimosec/errors.hpp"
#include "mimosec/harness.hpp"
#include "mimosec/selftest.hpp"

namespace {

using namespace mimosec;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> threads;
    std::string out_path;
    std::string schemes;
    bool no_eve = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "Config file (key = value lines)");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--trials", f.trials, "Trials per grid point");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", f.out_path, "CSV output path (default: stdout)");
    cmd->add_option("--schemes", f.schemes, "Comma separated subset of IDEAL,CONVENTIONAL,PAS,AS");
    cmd->add_flag("--no-eve", f.no_eve, "Skip the eavesdropper");
}

ExperimentConfig base_config(const CommonFlags& f) {
    ExperimentConfig cfg = f.config_path.empty() ? ExperimentConfig{} : load_config(f.config_path);
    if (f.seed) cfg.master_seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.threads) cfg.threads = *f.threads;
    if (!f.schemes.empty()) cfg.schemes = parse_scheme_list(f.schemes);
    if (f.no_eve) cfg.eve_enabled = false;
    return cfg;
}

void run_and_emit(const ExperimentConfig& cfg, const CommonFlags& f) {
    const SweepResult result = run_sweep(cfg);
    if (f.out_path.empty())
        write_csv(result, std::cout);
    else
        emit_csv(result, f.out_path);
}

ComplexMatrix json_matrix(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
        throw InvalidInput("solve: \"A\" must be a nonempty array of rows");
    ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != rows[0].size()) throw InvalidInput("solve: ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            const auto& z = rows[i][j];
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                z.is_array() ? Complex(z.at(0).get<double>(), z.at(1).get<double>()) : Complex(z.get<double>(), 0.0);
        }
    }
    return a;
}

SolverResult solve_file(const std::string& path, LsqiProblem& p) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open problem file");
    nlohmann::json doc;
    try {
        in >> doc;
        p.A = json_matrix(doc.at("A"));
        const auto& t = doc.at("target");
        p.target.resize(static_cast<Eigen::Index>(t.size()));
        for (std::size_t i = 0; i < t.size(); ++i)
            p.target(static_cast<Eigen::Index>(i)) =
                t[i].is_array() ? Complex(t[i].at(0).get<double>(), t[i].at(1).get<double>())
                                : Complex(t[i].get<double>(), 0.0);
        p.radius = doc.at("radius").get<double>();
        p.tol = doc.value("tol", kDefaultSolverTol);
        p.max_iterations = doc.value("max_iterations", kDefaultSolverIterations);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("solve: malformed problem file: ") + e.what());
    }
    return solve_norm_constrained_ls(p);
}

std::string complex_text(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g %+.12gj", z.real(), z.imag());
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mimosec: artificial-signal MIMO link simulator"};
    app.require_subcommand(1);

    CommonFlags phi_flags, ber_flags, snr_flags;
    std::string phi_grid;

    auto* sweep_phi = app.add_subcommand("sweep-phi", "Noise-free EVM and secrecy capacity versus phi");
    add_common(sweep_phi, phi_flags);
    sweep_phi->add_option("--phi-grid", phi_grid, "Comma separated phi values");

    double ber_snr = 3.0;
    std::string ber_phi_grid;
    auto* sweep_ber = app.add_subcommand("sweep-phi-ber", "BER versus phi at a fixed SNR");
    add_common(sweep_ber, ber_flags);
    sweep_ber->add_option("--snr-db", ber_snr, "Bob SNR in dB")->capture_default_str();
    sweep_ber->add_option("--phi-grid", ber_phi_grid, "Comma separated phi values");

    std::string snr_phi = "0.3";
    std::string snr_grid;
    auto* sweep_snr = app.add_subcommand("sweep-snr", "BER versus SNR at fixed phi");
    add_common(sweep_snr, snr_flags);
    sweep_snr->add_option("--phi", snr_phi, "phi value(s), comma separated")->capture_default_str();
    sweep_snr->add_option("--snr-grid", snr_grid, "Comma separated SNR values in dB");

    std::string problem_path;
    auto* solve = app.add_subcommand("solve", "Solve one norm-constrained least-squares problem from JSON");
    solve->add_option("problem", problem_path, "Problem file")->required();

    std::uint64_t selftest_seed = 20260101;
    auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
    selftest->add_option("--seed", selftest_seed, "Seed for the random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mimosec: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*sweep_phi) {
            ExperimentConfig cfg = base_config(phi_flags);
            cfg.noise_free = true;
            if (!phi_grid.empty()) cfg.phi_grid = parse_real_list(phi_grid);
            run_and_emit(cfg, phi_flags);
        } else if (*sweep_ber) {
            ExperimentConfig cfg = base_config(ber_flags);
            cfg.noise_free = false;
            cfg.snr_grid_db = {ber_snr};
            if (!ber_phi_grid.empty()) cfg.phi_grid = parse_real_list(ber_phi_grid);
            run_and_emit(cfg, ber_flags);
        } else if (*sweep_snr) {
            ExperimentConfig cfg = base_config(snr_flags);
            cfg.noise_free = false;
            cfg.phi_grid = parse_real_list(snr_phi);
            if (!snr_grid.empty()) cfg.snr_grid_db = parse_real_list(snr_grid);
            run_and_emit(cfg, snr_flags);
        } else if (*solve) {
            LsqiProblem p;
            const SolverResult r = solve_file(problem_path, p);
            std::cout << "xi =\n";
            for (Eigen::Index i = 0; i < r.xi.size(); ++i) std::cout << "  " << complex_text(r.xi(i)) << '\n';
            std::printf("lambda = %.12g\nresidual = %.12g\nnorm = %.12g\niterations = %d\nconstraint_active = %s\n",
                        r.lambda, r.residual, r.xi.norm(), r.iterations, r.constraint_active ? "true" : "false");
        } else if (*selftest) {
            bool ok = true;
            for (const auto& o : run_selftest(selftest_seed)) {
                std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << o.name;
                if (!o.detail.empty()) std::cout << ": " << o.detail;
                std::cout << '\n';
                ok = ok && o.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "mimosec: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
