// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qobs/hilbert.hpp"

#include <algorithm>
#include <string>

#include "qobs/errors.hpp"
#include "qobs/rational.hpp"

namespace qobs {

namespace {

double max_nonhermitian(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Eigenvalue range of the Hermitian part.
std::pair<double, double> eigen_range(const Matrix& m) {
  Matrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym,
                                               Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

void require_square(const Matrix& m, Errc code) {
  if (m.rows() == 0 || m.rows() != m.cols())
    fail(code, "matrix must be square and non-empty");
}

}  // namespace

EffectOperator EffectOperator::make(Matrix m) {
  require_square(m, Errc::effect_invalid);
  EffectOperator e(std::move(m));
  e.herm_residual_ = max_nonhermitian(e.m_);
  if (e.herm_residual_ > kTolHerm)
    fail(Errc::effect_invalid, "not Hermitian: residual " +
                                   format_real(e.herm_residual_));
  auto [lo, hi] = eigen_range(e.m_);
  e.min_eig_ = lo;
  e.max_eig_ = hi;
  if (lo < -kTolPsd)
    fail(Errc::effect_invalid,
         "not positive: min eigenvalue " + format_real(lo));
  if (hi > 1 + kTolPsd)
    fail(Errc::effect_invalid,
         "exceeds the identity: max eigenvalue " + format_real(hi));
  return e;
}

bool loewner_leq(const EffectOperator& a, const EffectOperator& b) {
  if (a.dim() != b.dim())
    fail(Errc::dimension_mismatch, "operators of different dimension");
  auto [lo, hi] = eigen_range(b.matrix() - a.matrix());
  (void)hi;
  return lo >= -kTolPsd;
}

OperatorSpectralFamily OperatorSpectralFamily::make(
    std::vector<OperatorJump> jumps) {
  if (jumps.empty()) fail(Errc::family_invalid, "family has no jumps");
  const int dim = jumps.front().cumulative.dim();
  for (size_t i = 0; i < jumps.size(); ++i) {
    if (jumps[i].cumulative.dim() != dim)
      fail(Errc::dimension_mismatch, "mixed dimensions in family");
    if (i > 0 && !(jumps[i - 1].point < jumps[i].point))
      fail(Errc::family_invalid, "jump points not strictly increasing at t = " +
                                     format_real(jumps[i].point));
  }
  Matrix prev = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < jumps.size(); ++i) {
    auto [lo, hi] = eigen_range(jumps[i].cumulative.matrix() - prev);
    (void)hi;
    if (lo < -kTolPsd)
      fail(Errc::family_invalid,
           "increment at jump " + std::to_string(i) + " (t = " +
               format_real(jumps[i].point) + ") is not PSD: min eigenvalue " +
               format_real(lo));
    prev = jumps[i].cumulative.matrix();
  }
  double top = (prev - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (top > kTolSum)
    fail(Errc::family_invalid,
         "family tops out away from the identity: residual " +
             format_real(top));
  return OperatorSpectralFamily(std::move(jumps));
}

Povm Povm::make(std::vector<PovmAtom> atoms) {
  if (atoms.empty()) fail(Errc::family_invalid, "POVM has no atoms");
  const int dim = atoms.front().effect.dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].effect.dim() != dim)
      fail(Errc::dimension_mismatch, "mixed dimensions in POVM");
    if (i > 0 && !(atoms[i - 1].point < atoms[i].point))
      fail(Errc::family_invalid, "outcome points not strictly increasing");
    sum += atoms[i].effect.matrix();
  }
  Povm p(std::move(atoms));
  p.sum_residual_ = (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (p.sum_residual_ > kTolSum)
    fail(Errc::family_invalid, "POVM atoms do not sum to the identity: residual " +
                                   format_real(p.sum_residual_));
  return p;
}

Povm reconstruct_povm(const OperatorSpectralFamily& f) {
  const int dim = f.dim();
  Matrix prev = Matrix::Zero(dim, dim);
  std::vector<PovmAtom> atoms;
  for (const auto& jump : f.jumps()) {
    Matrix diff = jump.cumulative.matrix() - prev;
    atoms.push_back(PovmAtom{jump.point, EffectOperator::make(std::move(diff))});
    prev = jump.cumulative.matrix();
  }
  return Povm::make(std::move(atoms));
}

namespace {

void require_unit(const Vector& phi, int dim) {
  if (phi.size() != dim)
    fail(Errc::dimension_mismatch, "vector dimension mismatch");
  double norm = phi.norm();
  if (std::abs(norm - 1.0) > kTolSum)
    fail(Errc::not_unit_vector, "vector norm " + format_real(norm));
}

}  // namespace

double effect_probability(const EffectOperator& a, const Vector& phi) {
  require_unit(phi, a.dim());
  double value = std::real(std::complex<double>(phi.adjoint() * a.matrix() * phi));
  return std::clamp(value, 0.0, 1.0);
}

std::vector<std::pair<double, double>> distribution_function(
    const OperatorSpectralFamily& f, const Vector& phi) {
  require_unit(phi, f.dim());
  std::vector<std::pair<double, double>> table;
  for (const auto& jump : f.jumps()) {
    double value = std::real(
        std::complex<double>(phi.adjoint() * jump.cumulative.matrix() * phi));
    table.push_back({jump.point, std::clamp(value, 0.0, 1.0)});
  }
  return table;
}

DensityState DensityState::make(Matrix rho) {
  require_square(rho, Errc::density_invalid);
  DensityState d(std::move(rho));
  double herm = max_nonhermitian(d.rho_);
  if (herm > kTolHerm)
    fail(Errc::density_invalid, "not Hermitian: residual " + format_real(herm));
  auto [lo, hi] = eigen_range(d.rho_);
  (void)hi;
  d.min_eig_ = lo;
  if (lo < -kTolPsd)
    fail(Errc::density_invalid, "not positive: min eigenvalue " + format_real(lo));
  d.trace_residual_ = std::abs(std::real(d.rho_.trace()) - 1.0) +
                      std::abs(std::imag(d.rho_.trace()));
  if (d.trace_residual_ > kTolSum)
    fail(Errc::density_invalid,
         "trace differs from 1: residual " + format_real(d.trace_residual_));
  return d;
}

PovmStatistics povm_statistics(const Povm& p, const DensityState& rho,
                               int max_moment) {
  if (p.dim() != rho.dim())
    fail(Errc::dimension_mismatch, "POVM and state dimensions differ");
  if (max_moment < 1)
    fail(Errc::precondition_failed, "moment order must be >= 1");
  PovmStatistics stats;
  double total = 0;
  for (const auto& atom : p.atoms()) {
    double prob = std::real((rho.matrix() * atom.effect.matrix()).trace());
    if (prob < -kTolPsd)
      fail(Errc::internal_error, "negative outcome probability");
    stats.probabilities.push_back(prob);
    total += prob;
  }
  stats.probability_residual = std::abs(total - 1.0);
  stats.moments.assign(max_moment, 0.0);
  for (size_t i = 0; i < p.atoms().size(); ++i) {
    double t = p.atoms()[i].point;
    double power = 1;
    for (int m = 0; m < max_moment; ++m) {
      power *= t;
      stats.moments[m] += power * stats.probabilities[i];
    }
  }
  stats.expectation = stats.moments.empty() ? 0 : stats.moments[0];
  return stats;
}

}  // namespace qobs
