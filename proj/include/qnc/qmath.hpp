// Copyright 2026 The QNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef QNC_QMATH_HPP
#define QNC_QMATH_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qnc/letter.hpp"
#include "qnc/rational.hpp"

namespace qnc {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kMatrixTolerance = 1e-12;
inline constexpr double kUnitNormTolerance = 1e-9;
inline constexpr double kRankThreshold = 1e-9;

/// Max-norm of the entrywise difference.
double max_abs_diff(const Mat2 &a, const Mat2 &b);
double max_abs_diff(const Mat4 &a, const Mat4 &b);

Mat4 kron(const Mat2 &a, const Mat2 &b);

/// A 2x2 density matrix: Hermitian, unit trace and positive semidefinite
/// within kMatrixTolerance. Construction throws std::invalid_argument otherwise.
class DensityMatrix2 {
   public:
    explicit DensityMatrix2(const Mat2 &m);
    static DensityMatrix2 pure(const Vec2 &psi);
    static DensityMatrix2 maximally_mixed();

    const Mat2 &matrix() const {
        return m_;
    }
    /// (x, y, z) with rho = (I + x X + y Y + z Z) / 2.
    std::array<double, 3> bloch() const;

   private:
    Mat2 m_;
};

bool is_density_matrix(const Mat2 &m, double tol = kMatrixTolerance);
std::array<double, 3> bloch_vector(const Mat2 &m);
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
Vec2 pure_from_bloch_angles(double theta, double phi);

/// cos^2 of the tetra angle, 1/2 + sqrt(3)/6.
double tetra_cos2();

struct TetraState {
    Letter label;
    Vec2 vector;
    Mat2 matrix;
};

/// |chi(00)> = c|0> + e^{i pi/4} s|1>,  |chi(01)> = c|0> + e^{-3i pi/4} s|1>,
/// |chi(10)> = s|0> + e^{-i pi/4} c|1>, |chi(11)> = s|0> + e^{3i pi/4} c|1>,
/// with c^2 = tetra_cos2(), s^2 = 1 - c^2.
TetraState tetra(Letter label);
const std::array<Mat2, 4> &tetra_matrices();

/// Tr(chi(i) chi(j)) as exact rationals: 1 on the diagonal, 1/3 elsewhere.
/// Tests pin this table against tetra_matrices().
const std::array<std::array<Rational, 4>, 4> &tetra_overlaps();

/// alpha * chi(label) + (1 - alpha) * I/2, alpha in (0, 1].
class ShrunkState {
   public:
    ShrunkState(Letter label, Rational alpha);
    Letter label() const {
        return label_;
    }
    const Rational &alpha() const {
        return alpha_;
    }
    friend bool operator==(const ShrunkState &, const ShrunkState &) = default;

   private:
    Letter label_;
    Rational alpha_;
};

/// Coefficients c_i of sum_i c_i chi(i). The four chi(i) are linearly
/// independent, so this representation of a state is unique.
using TetraMixture = std::array<Rational, 4>;

TetraMixture to_mixture(const ShrunkState &s);
/// The ShrunkState with this mixture, if it has that form.
std::optional<ShrunkState> as_shrunk(const TetraMixture &m);
Mat2 densify(const ShrunkState &s);
Mat2 densify(const TetraMixture &m);
Mat2 densify(const std::array<double, 4> &m);

/// <psi| rho |psi>. Throws std::invalid_argument if |psi| is not 1 within kUnitNormTolerance.
double fidelity(const Vec2 &psi, const DensityMatrix2 &rho);

struct Povm {
    std::vector<Mat2> elements;
    /// Elements PSD and summing to I within tol.
    bool is_valid(double tol = kMatrixTolerance) const;
};

/// { chi(z) / 2 : z in Sigma4 }.
Povm tetra_povm();

/// Outcome probabilities Tr(rho chi(z) / 2), indexed by letter.
std::array<double, 4> ttr_probabilities(const DensityMatrix2 &rho);
/// Exact version: 1/4 + alpha/4 on the label and 1/4 - alpha/12 elsewhere.
std::array<Rational, 4> ttr_probabilities(const ShrunkState &s);
std::array<Rational, 4> ttr_probabilities(const TetraMixture &m);

/// The measure-and-prepare map rho -> sum_z p_z chi(z), which equals
/// rho/3 + (2/3) I/2.
DensityMatrix2 ttr_channel(const DensityMatrix2 &rho);
TetraMixture ttr_channel(const TetraMixture &m);
ShrunkState ttr_channel(const ShrunkState &s);

/// Rank of the vectorized states, singular values above kRankThreshold.
/// A set admitting entanglement-free cloning must have full rank. The
/// general definition allows different shrink factors on the two clones;
/// every protocol here uses the symmetric case.
/// Throws std::invalid_argument unless 1 <= states.size() <= 4.
int linear_independence_rank(std::span<const Mat2> states);

}  // namespace qnc

#endif
