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

#include "mimosec/channel.hpp"
#include "mimosec/errors.hpp"
#include "mimosec/linalg.hpp"

namespace mimosec {

inline constexpr double kDefaultSolverTol = 1e-10;
inline constexpr int kDefaultSolverIterations = 200;

/// minimize ||A xi - target|| subject to ||xi|| <= radius.
struct LsqiProblem {
    ComplexMatrix A;
    ComplexVector target;
    double radius = 1.0;
    double tol = kDefaultSolverTol;
    int max_iterations = kDefaultSolverIterations;
};

struct SolverResult {
    ComplexVector xi;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool constraint_active = false;
};

/// Thrown when the multiplier search runs out of iterations; carries the best iterate.
class SolverFailure : public NumericalFailure {
public:
    SolverFailure(const std::string& what, SolverResult best)
        : NumericalFailure(what), best_(std::move(best)) {}
    const SolverResult& best() const noexcept { return best_; }

private:
    SolverResult best_;
};

/**
 * The regularized solution path xi(lambda) = (A^H A + lambda I)^+ A^H target,
 * evaluated in the SVD basis of A. Only singular values above
 * kDefaultRankTol * sigma_max take part, so xi(0) is the minimum-norm least
 * squares solution.
 */
class SecularPath {
public:
    SecularPath(const ComplexMatrix& A, const ComplexVector& target);

    /// ||xi(lambda)||^2; strictly decreasing on lambda >= 0 unless A^H target = 0.
    double norm_squared(double lambda) const;
    /// d/dlambda of norm_squared.
    double norm_squared_slope(double lambda) const;
    ComplexVector solution(double lambda) const;

    Eigen::Index rank() const noexcept { return sigma_.size(); }
    double sigma_max() const noexcept { return sigma_max_; }

private:
    RealVector sigma_;
    ComplexVector projected_;  // P_r^H target
    ComplexMatrix right_;      // Q_r
    Eigen::Index cols_ = 0;
    double sigma_max_ = 0.0;
};

/**
 * Least squares over a Euclidean ball.
 *
 * Returns the minimum-norm least squares solution when it is feasible.
 * Otherwise the multiplier lambda > 0 with ||xi(lambda)|| = radius is found
 * by Newton's method on ||xi(lambda)||^2 - radius^2 inside the bracket
 * [0, sigma_max ||target|| / radius], bisecting whenever a Newton step
 * leaves the bracket, until | ||xi|| - radius | <= tol * radius. An iterate
 * that ends a hair outside the ball is pulled radially back onto it.
 */
SolverResult solve_norm_constrained_ls(const LsqiProblem& p);

/// D^{-1} U_tilde^H H V_tilde (M x M), the map seen by a precoded artificial signal.
ComplexMatrix pas_operator(const ChannelRealization& real);
/// D^{-1} U_tilde^H H (M x N), the map seen by an unprecoded artificial signal.
ComplexMatrix as_operator(const ChannelRealization& real);

/// Artificial signal that goes through the public precoder; xi has length M.
SolverResult build_pas(const ChannelRealization& real, const ComplexVector& s,
                       double tol = kDefaultSolverTol);
/// Artificial signal sent in place of the precoded stream; xi has length N.
SolverResult build_as(const ChannelRealization& real, const ComplexVector& s,
                      double tol = kDefaultSolverTol);

} // namespace mimosec
