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


#include "qnc/qmath.hpp"

#include <cmath>
#include <numbers>

namespace qnc {

double max_abs_diff(const Mat2 &a, const Mat2 &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Mat4 &a, const Mat4 &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

bool is_density_matrix(const Mat2 &m, double tol) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Mat2> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix2::DensityMatrix2(const Mat2 &m) : m_(m) {
    if (!is_density_matrix(m)) {
        throw std::invalid_argument("not a density matrix (Hermitian, unit trace, PSD within 1e-12)");
    }
}

DensityMatrix2 DensityMatrix2::pure(const Vec2 &psi) {
    if (std::abs(psi.norm() - 1.0) > kUnitNormTolerance) {
        throw std::invalid_argument("state vector is not normalized");
    }
    Vec2 unit = psi.normalized();
    return DensityMatrix2(unit * unit.adjoint());
}

DensityMatrix2 DensityMatrix2::maximally_mixed() {
    return DensityMatrix2(Mat2::Identity() / 2.0);
}

std::array<double, 3> bloch_vector(const Mat2 &m) {
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

std::array<double, 3> DensityMatrix2::bloch() const {
    return bloch_vector(m_);
}

Vec2 pure_from_bloch_angles(double theta, double phi) {
    return Vec2(Complex(std::cos(theta / 2), 0.0), std::polar(1.0, phi) * std::sin(theta / 2));
}

double tetra_cos2() {
    return 0.5 + std::numbers::sqrt3 / 6.0;
}

TetraState tetra(Letter label) {
    const double c = std::sqrt(tetra_cos2());
    const double s = std::sqrt(1.0 - tetra_cos2());
    const double pi = std::numbers::pi;
    Vec2 v;
    switch (label.value()) {
        case 0:
            v << c, std::polar(s, pi / 4);
            break;
        case 1:
            v << c, std::polar(s, -3 * pi / 4);
            break;
        case 2:
            v << s, std::polar(c, -pi / 4);
            break;
        default:
            v << s, std::polar(c, 3 * pi / 4);
            break;
    }
    return TetraState{label, v, v * v.adjoint()};
}

const std::array<Mat2, 4> &tetra_matrices() {
    static const std::array<Mat2, 4> mats = [] {
        std::array<Mat2, 4> out;
        for (Letter z : kAllLetters) {
            out[z.value()] = tetra(z).matrix;
        }
        return out;
    }();
    return mats;
}

const std::array<std::array<Rational, 4>, 4> &tetra_overlaps() {
    static const std::array<std::array<Rational, 4>, 4> table = [] {
        std::array<std::array<Rational, 4>, 4> out;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                out[i][j] = i == j ? rational(1) : rational(1, 3);
            }
        }
        return out;
    }();
    return table;
}

ShrunkState::ShrunkState(Letter label, Rational alpha) : label_(label), alpha_(std::move(alpha)) {
    if (alpha_ <= 0 || alpha_ > 1) {
        throw std::invalid_argument("shrinking factor must lie in (0, 1], got " + to_string(alpha_));
    }
}

TetraMixture to_mixture(const ShrunkState &s) {
    // I/2 = (chi(00) + chi(01) + chi(10) + chi(11)) / 4
    Rational rest = (1 - s.alpha()) / 4;
    TetraMixture m{rest, rest, rest, rest};
    m[s.label().value()] += s.alpha();
    return m;
}

std::optional<ShrunkState> as_shrunk(const TetraMixture &m) {
    if (m[0] + m[1] + m[2] + m[3] != 1) {
        return std::nullopt;
    }
    int top = 0;
    for (int i = 1; i < 4; ++i) {
        if (m[i] > m[top]) {
            top = i;
        }
    }
    Rational other;
    bool have_other = false;
    for (int i = 0; i < 4; ++i) {
        if (i == top) {
            continue;
        }
        if (have_other && m[i] != other) {
            return std::nullopt;
        }
        other = m[i];
        have_other = true;
    }
    Rational alpha = m[top] - other;
    if (alpha <= 0 || alpha > 1) {
        return std::nullopt;
    }
    return ShrunkState(Letter(top), alpha);
}

Mat2 densify(const ShrunkState &s) {
    double a = to_double(s.alpha());
    return a * tetra_matrices()[s.label().value()] + (1.0 - a) * Mat2::Identity() / 2.0;
}

Mat2 densify(const TetraMixture &m) {
    Mat2 out = Mat2::Zero();
    for (int i = 0; i < 4; ++i) {
        out += to_double(m[i]) * tetra_matrices()[i];
    }
    return out;
}

Mat2 densify(const std::array<double, 4> &m) {
    Mat2 out = Mat2::Zero();
    for (int i = 0; i < 4; ++i) {
        out += m[i] * tetra_matrices()[i];
    }
    return out;
}

double fidelity(const Vec2 &psi, const DensityMatrix2 &rho) {
    if (std::abs(psi.norm() - 1.0) > kUnitNormTolerance) {
        throw std::invalid_argument("fidelity target is not a unit vector");
    }
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

bool Povm::is_valid(double tol) const {
    Mat2 sum = Mat2::Zero();
    for (const Mat2 &e : elements) {
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) {
            return false;
        }
        Eigen::SelfAdjointEigenSolver<Mat2> eig(e, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -tol) {
            return false;
        }
        sum += e;
    }
    return max_abs_diff(sum, Mat2::Identity()) <= tol;
}

Povm tetra_povm() {
    Povm povm;
    for (const Mat2 &chi : tetra_matrices()) {
        povm.elements.push_back(chi / 2.0);
    }
    return povm;
}

std::array<double, 4> ttr_probabilities(const DensityMatrix2 &rho) {
    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) {
        p[i] = (rho.matrix() * tetra_matrices()[i]).trace().real() / 2.0;
    }
    return p;
}

std::array<Rational, 4> ttr_probabilities(const TetraMixture &m) {
    const auto &overlap = tetra_overlaps();
    std::array<Rational, 4> p{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            p[i] += m[j] * overlap[j][i] / 2;
        }
    }
    return p;
}

std::array<Rational, 4> ttr_probabilities(const ShrunkState &s) {
    return ttr_probabilities(to_mixture(s));
}

DensityMatrix2 ttr_channel(const DensityMatrix2 &rho) {
    std::array<double, 4> p = ttr_probabilities(rho);
    return DensityMatrix2(densify(p));
}

TetraMixture ttr_channel(const TetraMixture &m) {
    return ttr_probabilities(m);
}

ShrunkState ttr_channel(const ShrunkState &s) {
    std::optional<ShrunkState> out = as_shrunk(ttr_channel(to_mixture(s)));
    if (!out) {
        throw std::logic_error("tetra measurement did not preserve the shrunk form");
    }
    return *out;
}

int linear_independence_rank(std::span<const Mat2> states) {
    if (states.empty() || states.size() > 4) {
        throw std::invalid_argument("rank test takes between 1 and 4 states");
    }
    Eigen::MatrixXcd vecs(4, static_cast<Eigen::Index>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k) {
        vecs.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::Vector4cd>(states[k].data());
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        rank += svd.singularValues()(i) > kRankThreshold;
    }
    return rank;
}

}  // namespace qnc
