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


#include "qnc/efc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace qnc {

EfcAlphaParams efc_params(const Rational &alpha) {
    if (alpha <= 0 || alpha > 1) {
        throw std::domain_error("EFC shrink must lie in (0, 1], got " + to_string(alpha));
    }
    const Rational &x = alpha;
    EfcAlphaParams params;
    params.alpha = alpha;
    params.p[0] = (81 + 6 * x + x * x) / 432;
    params.p[1] = (9 - x) * (15 + x) / 1296;
    params.p[2] = (9 - x) * (3 + x) / 1296;
    params.p[3] = (9 - 2 * x + x * x) / 432;
    Rational hi = rational(1, 4) + x / 12;
    Rational lo = rational(1, 4) - x / 36;
    params.q = {hi * hi, lo * hi, lo * lo, lo * lo};
    for (auto &v : params.p) {
        v.canonicalize();
    }
    for (auto &v : params.q) {
        v.canonicalize();
    }

    const auto &p = params.p;
    const auto &q = params.q;
    Rational a = rational(1, 4) + x / 4;
    Rational b = rational(1, 4) - x / 12;
    bool ok = p[0] + 6 * p[1] + 6 * p[2] + 3 * p[3] == 1 && q[0] + 6 * q[1] + 6 * q[2] + 3 * q[3] == 1 &&
              q[0] == a * p[0] + 3 * b * p[3] && q[1] == (a + b) * p[1] + 2 * b * p[2] &&
              q[2] == 2 * b * p[1] + (a + b) * p[2] && q[3] == b * p[0] + (a + 2 * b) * p[3];
    for (const auto &v : p) {
        ok = ok && v > 0;
    }
    if (!ok) {
        throw std::logic_error("EFC parameter identities fail at alpha = " + to_string(alpha));
    }
    return params;
}

Rational PairDistribution::total() const {
    Rational sum;
    for (const auto &w : weights) {
        sum += w;
    }
    return sum;
}

TetraMixture PairDistribution::first_marginal() const {
    TetraMixture m;
    for (Letter a : kAllLetters) {
        for (Letter b : kAllLetters) {
            m[a.value()] += at(a, b);
        }
    }
    return m;
}

TetraMixture PairDistribution::second_marginal() const {
    TetraMixture m;
    for (Letter a : kAllLetters) {
        for (Letter b : kAllLetters) {
            m[b.value()] += at(a, b);
        }
    }
    return m;
}

PairDistribution efc_pair_distribution(const Rational &alpha, Letter measured) {
    EfcAlphaParams params = efc_params(alpha);
    PairDistribution dist;
    for (Letter a : kAllLetters) {
        for (Letter b : kAllLetters) {
            bool first = a == measured;
            bool second = b == measured;
            int cls = first && second ? 0 : (first || second) ? 1 : (a != b) ? 2 : 3;
            dist.at(a, b) = params.p[cls];
        }
    }
    return dist;
}

PairDistribution efc_joint(const ShrunkState &input) {
    std::array<Rational, 4> outcome = ttr_probabilities(input);
    PairDistribution joint;
    for (Letter x : kAllLetters) {
        PairDistribution given = efc_pair_distribution(input.alpha(), x);
        for (std::size_t k = 0; k < 16; ++k) {
            joint.weights[k] += outcome[x.value()] * given.weights[k];
        }
    }
    return joint;
}

Mat4 joint_matrix(const PairDistribution &joint) {
    Mat4 out = Mat4::Zero();
    const auto &chi = tetra_matrices();
    for (Letter a : kAllLetters) {
        for (Letter b : kAllLetters) {
            out += to_double(joint.at(a, b)) * kron(chi[a.value()], chi[b.value()]);
        }
    }
    return out;
}

std::pair<ShrunkState, ShrunkState> efc_apply(const ShrunkState &input) {
    ShrunkState clone(input.label(), input.alpha() / 9);
    PairDistribution joint = efc_joint(input);
    TetraMixture m = to_mixture(clone);
    for (Letter a : kAllLetters) {
        for (Letter b : kAllLetters) {
            if (joint.at(a, b) != m[a.value()] * m[b.value()]) {
                throw std::logic_error("EFC joint output is not the product of shrunk clones");
            }
        }
    }
    return {clone, clone};
}

namespace {

template <typename Scalar>
bool same(const Scalar &a, const Scalar &b) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return std::abs(a - b) <= kMatrixTolerance;
    } else {
        return a == b;
    }
}

template <typename Scalar>
Efco2Result<Scalar> efco2_impl(int x, const Scalar &p) {
    if (x != 0 && x != 1) {
        throw std::invalid_argument("EFCo2 input bit must be 0 or 1");
    }
    if (!(p > 0) || p > 1) {
        throw std::domain_error("EFCo2 shrink must lie in (0, 1]");
    }
    Efco2Result<Scalar> r;
    r.p = p;
    Scalar half = Scalar(1) / 2;
    Scalar quarter = Scalar(1) / 4;
    r.outcome = {half + p / 2, half - p / 2};
    r.p1 = half + p * p / 16;
    r.p2 = quarter - p * p / 16;
    r.p3 = p * p / 16;
    r.joint = {Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
    // Enumerate measured bit X and emitted pair (y1, y2) relative to X.
    for (int measured = 0; measured < 2; ++measured) {
        Scalar px = measured == x ? r.outcome[0] : r.outcome[1];
        for (int y1 = 0; y1 < 2; ++y1) {
            for (int y2 = 0; y2 < 2; ++y2) {
                int agree = (y1 == measured) + (y2 == measured);
                Scalar w = agree == 2 ? r.p1 : agree == 1 ? r.p2 : r.p3;
                r.joint[2 * y1 + y2] += px * w;
            }
        }
    }
    r.output_shrink = p / 2;
    std::array<Scalar, 2> marginal;
    marginal[x] = half + p / 4;
    marginal[1 - x] = half - p / 4;
    Scalar norm = r.p1 + 2 * r.p2 + r.p3;
    bool ok = same(norm, Scalar(1));
    for (int y1 = 0; y1 < 2; ++y1) {
        for (int y2 = 0; y2 < 2; ++y2) {
            ok = ok && same(r.joint[2 * y1 + y2], Scalar(marginal[y1] * marginal[y2]));
        }
    }
    if (!ok) {
        throw std::logic_error("EFCo2 joint output is not a product of shrunk clones");
    }
    return r;
}

}  // namespace

Efco2Result<Rational> efco2_apply(int x, const Rational &p) {
    return efco2_impl<Rational>(x, p);
}

Efco2Result<double> efco2_apply(int x, double p) {
    return efco2_impl<double>(x, p);
}

Mat4 efco2_joint_matrix(const Efco2Result<double> &result) {
    Mat4 out = Mat4::Zero();
    for (int k = 0; k < 4; ++k) {
        out(k, k) = result.joint[k];
    }
    return out;
}

Vec2 efc2_basis_state(double theta, int x) {
    return x == 0 ? Vec2(std::cos(theta), std::sin(theta)) : Vec2(std::sin(theta), std::cos(theta));
}

Efc2Result efc2_apply(double theta, int x, const Rational &p) {
    if (!(theta >= 0) || theta >= std::numbers::pi / 4) {
        throw std::domain_error("EFC2 angle must lie in [0, pi/4)");
    }
    if (p <= 0 || p > 1) {
        throw std::domain_error("EFC2 shrink must lie in (0, 1]");
    }
    const double pd = to_double(p);
    const double c2 = std::cos(2 * theta);
    const double s2 = std::sin(2 * theta);

    Efc2Result out;
    out.theta = theta;
    out.x = x;
    out.step_shrink = pd * c2;
    out.inner = efco2_apply(x, out.step_shrink);
    out.r = pd / (2 + pd * s2);
    out.q = out.r * s2;

    // Marginal of the first clone from the EFCo2 joint.
    double on_zero = out.inner.joint[0] + out.inner.joint[1];
    Mat2 clone_before = Mat2::Zero();
    clone_before(0, 0) = on_zero;
    clone_before(1, 1) = 1.0 - on_zero;
    Mat2 plus = Mat2::Constant(Complex(0.5, 0.0));
    out.clone = out.q * plus + (1 - out.q) * clone_before;

    Vec2 psi = efc2_basis_state(theta, x);
    out.target = out.r * (psi * psi.adjoint()) + (1 - out.r) * Mat2::Identity() / 2.0;

    const double c = std::cos(theta), s = std::sin(theta);
    out.residual_diagonal = out.r * c * c + (1 - out.r) / 2 - ((0.5 + out.step_shrink / 4) * (1 - out.q) + out.q / 2);
    out.residual_off_diagonal = out.r * s * c - out.q / 2;
    out.matrix_residual = max_abs_diff(out.clone, out.target);
    if (out.matrix_residual > kMatrixTolerance) {
        throw std::logic_error("EFC2 clone misses its target by " + std::to_string(out.matrix_residual));
    }
    return out;
}

namespace experimental {

namespace {

using Vec3 = Eigen::Vector3d;

Vec3 bloch3(const Mat2 &m) {
    auto b = bloch_vector(m);
    return Vec3(b[0], b[1], b[2]);
}

Mat2 from_bloch(const Vec3 &r) {
    Mat2 x, y, z;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return (Mat2::Identity() + r(0) * x + r(1) * y + r(2) * z) / 2.0;
}

// Measure along n (projectors P+, P-), prepare sigma+ or sigma-.
struct MeasurePrepare {
    std::array<Mat2, 2> projector;
    std::array<Mat2, 2> prepared;

    Mat2 apply(const Mat2 &rho) const {
        Mat2 out = Mat2::Zero();
        for (int a = 0; a < 2; ++a) {
            out += (projector[a] * rho).trace() * prepared[a];
        }
        return out;
    }
    Mat4 apply_both(const Mat4 &joint) const {
        Mat4 out = Mat4::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                out += (kron(projector[a], projector[b]) * joint).trace() * kron(prepared[a], prepared[b]);
            }
        }
        return out;
    }
};

}  // namespace

TwoStateEfcResult efc_two_mixed(const DensityMatrix2 &rho1, const DensityMatrix2 &rho2, NonNormative) {
    Vec3 r1 = bloch3(rho1.matrix());
    Vec3 r2 = bloch3(rho2.matrix());
    Vec3 d = r1 - r2;
    if (d.norm() < kRankThreshold) {
        throw std::invalid_argument("two-state cloning needs distinct states");
    }
    Vec3 n = d.normalized();
    std::array<Mat2, 2> proj = {from_bloch(n), from_bloch(-n)};

    // Stage 1: r -> k (r.n - m) n maps the inputs to +/-gamma n.
    double m = (r1.dot(n) + r2.dot(n)) / 2;
    double k = 1.0 / (1.0 + std::abs(m));
    double c = -k * m;
    MeasurePrepare squeeze{proj, {from_bloch((c + k) * n), from_bloch((c - k) * n)}};

    TwoStateEfcResult result;
    result.gamma = k * d.norm() / 2;

    // Stage 3: +/-g n -> s r_j, with g the EFCo2 output shrink.
    double g = result.gamma / 2;
    Vec3 mid = (r1 + r2) / 2;
    Vec3 half_span = d / (2 * g);
    result.shrink = 1.0 / std::max((mid + half_span).norm(), (mid - half_span).norm());
    MeasurePrepare restore{proj, {from_bloch(result.shrink * (mid + half_span)),
                                  from_bloch(result.shrink * (mid - half_span))}};

    Efco2Result<double> pair_table = efco2_apply(0, result.gamma);
    result.residual = 0;
    const std::array<const DensityMatrix2 *, 2> inputs = {&rho1, &rho2};
    for (int j = 0; j < 2; ++j) {
        Mat2 squeezed = squeeze.apply(inputs[j]->matrix());
        // Stage 2: measure along n, emit a pair of basis states per the EFCo2 table.
        Mat4 cloned = Mat4::Zero();
        for (int measured = 0; measured < 2; ++measured) {
            double px = (proj[measured] * squeezed).trace().real();
            for (int y1 = 0; y1 < 2; ++y1) {
                for (int y2 = 0; y2 < 2; ++y2) {
                    int agree = (y1 == measured) + (y2 == measured);
                    double w = agree == 2 ? pair_table.p1 : agree == 1 ? pair_table.p2 : pair_table.p3;
                    cloned += px * w * kron(proj[y1], proj[y2]);
                }
            }
        }
        result.joint[j] = restore.apply_both(cloned);
        Mat2 shrunk = result.shrink * inputs[j]->matrix() + (1 - result.shrink) * Mat2::Identity() / 2.0;
        result.target[j] = kron(shrunk, shrunk);
        result.residual = std::max(result.residual, max_abs_diff(result.joint[j], result.target[j]));
    }
    if (result.residual > 1e-9) {
        throw std::runtime_error("two-state cloning construction missed its target by " +
                                 std::to_string(result.residual));
    }
    return result;
}

}  // namespace experimental

}  // namespace qnc
