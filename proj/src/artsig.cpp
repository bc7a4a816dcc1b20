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

#include "mimosec/artsig.hpp"

#include <cmath>
#include <limits>

namespace mimosec {

SecularPath::SecularPath(const ComplexMatrix& A, const ComplexVector& target) : cols_(A.cols()) {
    const SvdTriple f = svd(A);
    sigma_max_ = f.singular_values.size() ? f.singular_values(0) : 0.0;
    Eigen::Index r = 0;
    while (r < f.singular_values.size() && f.singular_values(r) > 0.0 &&
           f.singular_values(r) > kDefaultRankTol * sigma_max_)
        ++r;
    sigma_ = f.singular_values.head(r);
    projected_ = f.left.leftCols(r).adjoint() * target;
    right_ = f.right.leftCols(r);
}

double SecularPath::norm_squared(double lambda) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
        const double s = sigma_(i);
        const double w = s / (s * s + lambda);
        acc += w * w * std::norm(projected_(i));
    }
    return acc;
}

double SecularPath::norm_squared_slope(double lambda) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
        const double s = sigma_(i);
        const double den = s * s + lambda;
        acc += s * s * std::norm(projected_(i)) / (den * den * den);
    }
    return -2.0 * acc;
}

ComplexVector SecularPath::solution(double lambda) const {
    ComplexVector coeff(sigma_.size());
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
        const double s = sigma_(i);
        coeff(i) = projected_(i) * (s / (s * s + lambda));
    }
    if (sigma_.size() == 0) return ComplexVector::Zero(cols_);
    return right_ * coeff;
}

SolverResult solve_norm_constrained_ls(const LsqiProblem& p) {
    if (p.A.rows() < 1 || p.A.cols() < 1) throw InvalidInput("lsqi: empty operator");
    if (p.target.size() != p.A.rows()) throw InvalidInput("lsqi: target length != A rows");
    require_finite(p.A, "lsqi operator");
    require_finite(p.target, "lsqi target");
    if (!(p.radius > 0.0) || !std::isfinite(p.radius)) throw InvalidInput("lsqi: radius must be positive");
    if (!(p.tol > 0.0)) throw InvalidInput("lsqi: tol must be positive");
    if (p.max_iterations < 1) throw InvalidInput("lsqi: max_iterations must be positive");

    const SecularPath path(p.A, p.target);
    auto finish = [&](ComplexVector xi, double lambda, int iterations, bool active) {
        SolverResult out;
        out.residual = (p.A * xi - p.target).norm();
        out.xi = std::move(xi);
        out.lambda = lambda;
        out.iterations = iterations;
        out.constraint_active = active;
        return out;
    };

    ComplexVector xi0 = path.solution(0.0);
    if (xi0.norm() <= p.radius) return finish(std::move(xi0), 0.0, 0, false);

    const double r2 = p.radius * p.radius;
    double lo = 0.0;
    double hi = path.sigma_max() * p.target.norm() / p.radius;
    double lambda = 0.0;
    double best_lambda = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= p.max_iterations; ++it) {
        const double n2 = path.norm_squared(lambda);
        const double g = n2 - r2;
        const double gap = std::abs(std::sqrt(n2) - p.radius);
        if (gap < best_gap && lambda > 0.0) {
            best_gap = gap;
            best_lambda = lambda;
        }
        if (lambda > 0.0 && gap <= p.tol * p.radius) {
            ComplexVector xi = path.solution(lambda);
            const double n = xi.norm();
            if (n > p.radius) xi *= p.radius / n;
            return finish(std::move(xi), lambda, it, true);
        }
        if (g > 0.0)
            lo = lambda;
        else
            hi = lambda;

        const double slope = path.norm_squared_slope(lambda);
        double next = slope < 0.0 ? lambda - g / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        lambda = next;
    }

    const double fallback = best_lambda > 0.0 ? best_lambda : hi;
    ComplexVector xi = path.solution(fallback);
    const double n = xi.norm();
    if (n > p.radius) xi *= p.radius / n;
    throw SolverFailure("lsqi: multiplier search did not converge",
                        finish(std::move(xi), fallback, p.max_iterations, true));
}

namespace {

void require_positive_gains(const ChannelRealization& real) {
    if (real.D.size() != real.rx() || !(real.D.minCoeff() > 0.0))
        throw InvalidInput("artificial signal: true singular values must be strictly positive");
}

ComplexMatrix bob_combiner(const ChannelRealization& real) {
    return real.D.cwiseInverse().asDiagonal() * real.U_tilde.adjoint();
}

} // namespace

ComplexMatrix pas_operator(const ChannelRealization& real) {
    require_positive_gains(real);
    return bob_combiner(real) * real.H * real.V_tilde;
}

ComplexMatrix as_operator(const ChannelRealization& real) {
    require_positive_gains(real);
    return bob_combiner(real) * real.H;
}

SolverResult build_pas(const ChannelRealization& real, const ComplexVector& s, double tol) {
    LsqiProblem p{pas_operator(real), s, std::sqrt(static_cast<double>(real.tx())), tol,
                  kDefaultSolverIterations};
    return solve_norm_constrained_ls(p);
}

SolverResult build_as(const ChannelRealization& real, const ComplexVector& s, double tol) {
    LsqiProblem p{as_operator(real), s, std::sqrt(static_cast<double>(real.tx())), tol,
                  kDefaultSolverIterations};
    return solve_norm_constrained_ls(p);
}

} // namespace mimosec
