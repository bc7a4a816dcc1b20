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

#include "mimosec/link.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "mimosec/errors.hpp"

namespace mimosec {

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
    case Scheme::Ideal: return "IDEAL";
    case Scheme::Conventional: return "CONVENTIONAL";
    case Scheme::Pas: return "PAS";
    case Scheme::As: return "AS";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    std::string up(name);
    for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (Scheme s : kAllSchemes)
        if (to_string(s) == up) return s;
    throw InvalidInput("unknown scheme '" + std::string(name) + "'");
}

double db_to_linear(double db) {
    if (std::isinf(db) && db > 0) return db;
    return std::pow(10.0, db / 10.0);
}

Transmission transmit_detailed(Scheme scheme, const ChannelRealization& real,
                               const ComplexVector& s, double tol) {
    if (s.size() != real.rx()) throw InvalidInput("transmit: symbol vector length != M");
    Transmission t;
    switch (scheme) {
    case Scheme::Ideal:
        t.tx = real.V * s;
        break;
    case Scheme::Conventional:
        t.tx = real.V_tilde * s;
        break;
    case Scheme::Pas: {
        const SolverResult r = build_pas(real, s, tol);
        t.tx = real.V_tilde * r.xi;
        t.solver_iterations = r.iterations;
        t.solver_residual = r.residual;
        t.constraint_active = r.constraint_active;
        break;
    }
    case Scheme::As: {
        SolverResult r = build_as(real, s, tol);
        t.tx = std::move(r.xi);
        t.solver_iterations = r.iterations;
        t.solver_residual = r.residual;
        t.constraint_active = r.constraint_active;
        break;
    }
    }
    return t;
}

ComplexVector transmit(Scheme scheme, const ChannelRealization& real, const ComplexVector& s) {
    return transmit_detailed(scheme, real, s).tx;
}

ComplexVector propagate(const ComplexMatrix& Hx, const ComplexVector& tx, SeededRng& rng,
                        double gamma) {
    if (Hx.cols() != tx.size()) throw InvalidInput("propagate: channel columns != tx length");
    if (!(gamma > 0.0)) throw InvalidInput("propagate: gamma must be positive");
    ComplexVector y = Hx * tx;
    if (std::isinf(gamma)) return y;
    y += sample_complex_gaussian(rng, Hx.rows(), 1, 1.0 / gamma).col(0);
    return y;
}

ComplexVector receive_bob(const ComplexVector& y, const ChannelRealization& real) {
    if (y.size() != real.rx()) throw InvalidInput("receive_bob: y length != M");
    return real.D.cwiseInverse().asDiagonal() * (real.U_tilde.adjoint() * y);
}

ComplexVector receive_bob(const ComplexVector& y, const ChannelRealization& real, Scheme scheme) {
    if (scheme != Scheme::Ideal) return receive_bob(y, real);
    if (y.size() != real.rx()) throw InvalidInput("receive_bob: y length != M");
    return real.D.cwiseInverse().asDiagonal() * (real.U.adjoint() * y);
}

ComplexVector receive_eve(const ComplexVector& y_eve, const EveChannel& eve,
                          const ChannelRealization& real) {
    if (y_eve.size() != eve.H_breve.rows()) throw InvalidInput("receive_eve: y length != L");
    if (eve.H_breve_pinv.rows() != real.V_tilde.rows())
        throw InvalidInput("receive_eve: Eve channel and precoder disagree on N");
    return real.V_tilde.adjoint() * (eve.H_breve_pinv * y_eve);
}

TrialRecord observe(Scheme scheme, const Transmission& t, const ChannelRealization& real,
                    const EveChannel* eve, const ComplexVector& s, NoiseStreams noise,
                    double snr_db, double eve_snr_offset_db) {
    TrialRecord rec;
    rec.scheme = scheme;
    rec.s = s;
    rec.tx = t.tx;
    rec.radiated_power = t.tx.squaredNorm();
    rec.snr_db = snr_db;
    rec.phi = real.phi;
    rec.solver_iterations = t.solver_iterations;

    const double gamma = db_to_linear(snr_db);
    const double gamma_eve = db_to_linear(snr_db + eve_snr_offset_db);
    rec.s_hat_bob = receive_bob(propagate(real.H, t.tx, noise.bob, gamma), real, scheme);
    if (eve)
        rec.s_breve_eve =
            receive_eve(propagate(eve->H_breve, t.tx, noise.eve, gamma_eve), *eve, real);
    return rec;
}

TrialRecord run_trial(Scheme scheme, const ChannelRealization& real, const EveChannel* eve,
                      const ComplexVector& s, NoiseStreams noise, double snr_db,
                      double eve_snr_offset_db) {
    return observe(scheme, transmit_detailed(scheme, real, s), real, eve, s, std::move(noise),
                   snr_db, eve_snr_offset_db);
}

} // namespace mimosec
