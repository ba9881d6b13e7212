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


#ifndef QNC_EFC_HPP
#define QNC_EFC_HPP

#include <array>
#include <utility>

#include "qnc/letter.hpp"
#include "qnc/qmath.hpp"
#include "qnc/rational.hpp"

namespace qnc {

/// Step-2 probabilities p1..p4 of the four-state cloner for a known shrink
/// alpha, and the resulting clone-pair probabilities q1..q4.
///   p1 = (81 + 6a + a^2)/432    p2 = (9 - a)(15 + a)/1296
///   p3 = (9 - a)(3 + a)/1296    p4 = (9 - 2a + a^2)/432
///   q1 = (1/4 + a/12)^2         q2 = (1/4 - a/36)(1/4 + a/12)
///   q3 = q4 = (1/4 - a/36)^2
struct EfcAlphaParams {
    Rational alpha;
    std::array<Rational, 4> p;
    std::array<Rational, 4> q;
};

/// Throws std::domain_error unless 0 < alpha <= 1 (positivity of the p's
/// is only established there). Throws std::logic_error if the exact
/// identities p1+6p2+6p3+3p4 = 1, q1+6q2+6q3+3q4 = 1 and
/// q1 = a p1 + 3b p4, q2 = (a+b) p2 + 2b p3, q3 = 2b p2 + (a+b) p3,
/// q4 = b p1 + (a+2b) p4 (a = 1/4 + alpha/4, b = 1/4 - alpha/12) fail.
EfcAlphaParams efc_params(const Rational &alpha);

/// Exact distribution over ordered letter pairs, index 4*first + second.
struct PairDistribution {
    std::array<Rational, 16> weights;

    const Rational &at(Letter a, Letter b) const {
        return weights[4 * a.value() + b.value()];
    }
    Rational &at(Letter a, Letter b) {
        return weights[4 * a.value() + b.value()];
    }
    Rational total() const;
    TetraMixture first_marginal() const;
    TetraMixture second_marginal() const;
};

/// Step 2: distribution of (Z1, Z2) given the tetra measurement result X:
/// (X,X) -> p1, (X,Y)/(Y,X) -> p2, (Y,Y') -> p3, (Y,Y) -> p4 for Y != Y' != X.
PairDistribution efc_pair_distribution(const Rational &alpha, Letter measured);

/// Joint mixture over clone labels for input alpha chi(label) + (1-alpha) I/2,
/// obtained by averaging the step-2 table over the tetra measurement outcomes.
PairDistribution efc_joint(const ShrunkState &input);

/// sum_{a,b} w(a,b) chi(a) (x) chi(b).
Mat4 joint_matrix(const PairDistribution &joint);

/// Both clones of alpha chi(z) + (1-alpha) I/2 are (alpha/9) chi(z) + (1-alpha/9) I/2,
/// with no correlation between them. Throws std::logic_error if efc_joint
/// disagrees with that product exactly.
std::pair<ShrunkState, ShrunkState> efc_apply(const ShrunkState &input);

/// Two-state cloner for p|x><x| + (1-p) I/2, x in {0, 1}: measure in the
/// computational basis, then emit (X,X) w.p. 1/2 + p^2/16, (X,~X) and (~X,X)
/// w.p. 1/4 - p^2/16 each, (~X,~X) w.p. p^2/16.
template <typename Scalar>
struct Efco2Result {
    Scalar p;
    std::array<Scalar, 2> outcome;  // P(X = x), P(X = ~x)
    Scalar p1, p2, p3;
    /// Probability of output bits (y1, y2), index 2*y1 + y2 in absolute bits.
    std::array<Scalar, 4> joint;
    /// Each clone is (p/2)|x><x| + (1 - p/2) I/2.
    Scalar output_shrink;
};

/// Throws std::domain_error unless 0 < p <= 1, std::invalid_argument unless
/// x is 0 or 1, and std::logic_error if the joint is not the product of
/// ((1/2 + p/4) on x, (1/2 - p/4) on ~x) (exactly, or within 1e-12).
Efco2Result<Rational> efco2_apply(int x, const Rational &p);
Efco2Result<double> efco2_apply(int x, double p);

/// Two-qubit density matrix of the EFCo2 output.
Mat4 efco2_joint_matrix(const Efco2Result<double> &result);

/// Cloner for shrunk versions of |psi_0> = cos t|0> + sin t|1> and
/// |psi_1> = sin t|0> + cos t|1>, 0 <= t < pi/4. The computational-basis
/// measurement leaves p cos(2t) |x><x| + ..., EFCo2 clones that, and each
/// clone is replaced by |+> with probability q = r sin(2t), where
/// r = p / (2 + p sin(2t)) is the final shrink.
struct Efc2Result {
    double theta;
    int x;
    double step_shrink;  // p cos(2 theta)
    Efco2Result<double> inner;
    double q;
    double r;
    Mat2 clone;   // each output qubit
    Mat2 target;  // r |psi_x><psi_x| + (1 - r) I/2
    /// r cos^2 t + (1 - r)/2 - [(1/2 + p cos(2t)/4)(1 - q) + q/2]
    double residual_diagonal;
    /// r sin t cos t - q/2
    double residual_off_diagonal;
    double matrix_residual;  // max |clone - target|
};

/// Throws std::domain_error for theta outside [0, pi/4) or p outside (0, 1],
/// std::logic_error if the clone misses the target by more than 1e-12.
Efc2Result efc2_apply(double theta, int x, const Rational &p);

Vec2 efc2_basis_state(double theta, int x);

namespace experimental {

/// Marker that the caller accepts an operation with no normative reference.
enum class NonNormative { Acknowledged };

/// Entanglement-free cloning for two arbitrary distinct qubit states.
/// Non-normative construction:
///  1. measure along n = (r1 - r2)/|r1 - r2| and re-prepare so the two
///     inputs become +/-gamma n (equal and opposite Bloch vectors);
///  2. clone with EFCo2_gamma in that basis;
///  3. on each clone, measure along n and re-prepare so the clones become
///     s*rho_j + (1 - s) I/2.
/// Every stage is measure-and-prepare, so the clones stay unentangled.
struct TwoStateEfcResult {
    double gamma;
    double shrink;                // s
    std::array<Mat4, 2> joint;    // output for rho_1, rho_2
    std::array<Mat4, 2> target;   // (s rho_j + (1-s) I/2)^(x)2
    double residual;              // max entrywise miss over both inputs
};

/// Throws std::invalid_argument if the states coincide and std::runtime_error
/// if the construction misses its target by more than 1e-9.
TwoStateEfcResult efc_two_mixed(const DensityMatrix2 &rho1, const DensityMatrix2 &rho2, NonNormative);

}  // namespace experimental

}  // namespace qnc

#endif
