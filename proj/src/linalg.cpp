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

#include "mimosec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mimosec/errors.hpp"

namespace mimosec {

namespace {

// Index of the first entry of largest magnitude in column k.
Eigen::Index dominant_row(const ComplexMatrix& m, Eigen::Index k) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double mag = std::abs(m(i, k));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    return best;
}

// Unit-modulus factor that rotates the dominant entry of column k onto the
// positive real axis.
Complex unphase(const ComplexMatrix& m, Eigen::Index k) {
    const Complex pivot = m(dominant_row(m, k), k);
    const double mag = std::abs(pivot);
    if (mag == 0.0) return Complex(1.0, 0.0);
    return std::conj(pivot) / mag;
}

// Rotates column k of `m` (and of `partner`, if given) so the dominant entry
// of m's column is exactly real and positive.
void canonicalize_column(ComplexMatrix& m, ComplexMatrix* partner, Eigen::Index k) {
    const Eigen::Index row = dominant_row(m, k);
    const Complex rot = unphase(m, k);
    const double mag = std::abs(m(row, k));
    m.col(k) *= rot;
    m(row, k) = Complex(mag, 0.0);
    if (partner) partner->col(k) *= rot;
}

} // namespace

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

void require_finite(const ComplexMatrix& a, const char* what) {
    if (!all_finite(a)) throw InvalidInput(std::string(what) + " has non-finite entries");
}

SvdTriple svd(const ComplexMatrix& a) {
    if (a.rows() < 1 || a.cols() < 1) throw InvalidInput("svd: empty matrix");
    require_finite(a, "svd input");

    Eigen::JacobiSVD<ComplexMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) throw NumericalFailure("svd: Jacobi iteration failed");

    SvdTriple out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    const Eigen::Index paired = std::min(a.rows(), a.cols());
    for (Eigen::Index k = 0; k < paired; ++k) canonicalize_column(out.left, &out.right, k);
    for (Eigen::Index k = paired; k < out.left.cols(); ++k) canonicalize_column(out.left, nullptr, k);
    for (Eigen::Index k = paired; k < out.right.cols(); ++k) canonicalize_column(out.right, nullptr, k);

    if (!all_finite(out.left) || !all_finite(out.right) || !out.singular_values.allFinite())
        throw NumericalFailure("svd: non-finite factors");
    return out;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rank_tol) {
    if (a.rows() < 1 || a.cols() < 1) throw InvalidInput("pseudo_inverse: empty matrix");
    require_finite(a, "pseudo_inverse input");
    if (!(rank_tol >= 0.0)) throw InvalidInput("pseudo_inverse: rank_tol must be nonnegative");

    const SvdTriple f = svd(a);
    const double cutoff = rank_tol * (f.singular_values.size() ? f.singular_values(0) : 0.0);
    ComplexMatrix out = ComplexMatrix::Zero(a.cols(), a.rows());
    for (Eigen::Index k = 0; k < f.singular_values.size(); ++k) {
        const double sigma = f.singular_values(k);
        if (sigma <= cutoff || sigma == 0.0) break;
        out += (f.right.col(k) / sigma) * f.left.col(k).adjoint();
    }
    return out;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(mix64(mix64(master_seed) ^ (stream_id * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL))) {}

SeededRng SeededRng::derive(std::uint64_t key) const {
    return SeededRng(master_seed_, mix64(stream_id_ ^ mix64(key + 0x2545f4914f6cdd1dULL)));
}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform() {
    // 53 random mantissa bits, shifted by half an ulp so 0 is never produced.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

ComplexMatrix sample_complex_gaussian(SeededRng& rng, Eigen::Index rows, Eigen::Index cols,
                                      double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw InvalidInput("sample_complex_gaussian: variance must be positive and finite");
    if (rows < 1 || cols < 1) throw InvalidInput("sample_complex_gaussian: empty shape");

    const double scale = std::sqrt(variance / 2.0);
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = rng.standard_normal();
            const double im = rng.standard_normal();
            out(i, j) = Complex(scale * re, scale * im);
        }
    }
    return out;
}

} // namespace mimosec
