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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qobs {

// Numerical contract for all operator checks; every validation records the
// achieved residual.
inline constexpr double kTolHerm = 1e-9;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolSum = 1e-9;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hermitian operator A with 0 <= A <= I (within tolerances).
class EffectOperator {
 public:
  /// Errors: effect_invalid (with the offending residual or eigenvalue).
  static EffectOperator make(Matrix m);

  int dim() const { return int(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double hermiticity_residual() const { return herm_residual_; }
  double min_eigenvalue() const { return min_eig_; }
  double max_eigenvalue() const { return max_eig_; }

 private:
  explicit EffectOperator(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
  double herm_residual_ = 0, min_eig_ = 0, max_eig_ = 0;
};

/// Loewner order: B - A positive semidefinite within kTolPsd.
/// Errors: dimension_mismatch.
bool loewner_leq(const EffectOperator& a, const EffectOperator& b);

struct OperatorJump {
  double point;
  EffectOperator cumulative;
};

/// Step family of effects, Loewner-monotone with PSD increments, topping
/// out at the identity.
class OperatorSpectralFamily {
 public:
  /// Errors: family_invalid naming the first failing jump.
  static OperatorSpectralFamily make(std::vector<OperatorJump> jumps);

  int dim() const { return jumps_.front().cumulative.dim(); }
  const std::vector<OperatorJump>& jumps() const { return jumps_; }

 private:
  explicit OperatorSpectralFamily(std::vector<OperatorJump> jumps)
      : jumps_(std::move(jumps)) {}
  std::vector<OperatorJump> jumps_;
};

struct PovmAtom {
  double point;
  EffectOperator effect;
};

/// Finite positive-operator-valued measure: effects summing to the
/// identity within kTolSum.
class Povm {
 public:
  /// Errors: family_invalid when the atoms miss the identity.
  static Povm make(std::vector<PovmAtom> atoms);

  int dim() const { return atoms_.front().effect.dim(); }
  const std::vector<PovmAtom>& atoms() const { return atoms_; }
  /// max-abs-entry residual of (sum of atoms) - I.
  double sum_residual() const { return sum_residual_; }

 private:
  explicit Povm(std::vector<PovmAtom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<PovmAtom> atoms_;
  double sum_residual_ = 0;
};

/// The unique observable of an operator spectral family: consecutive
/// differences, each re-validated as an effect.
Povm reconstruct_povm(const OperatorSpectralFamily& f);

/// (A phi, phi) for a unit vector, clamped to [0,1].
/// Errors: not_unit_vector, dimension_mismatch.
double effect_probability(const EffectOperator& a, const Vector& phi);

/// The distribution function t -> (x_t phi, phi) as a step table of
/// (jump point, cumulative value); nondecreasing from 0 to 1, with jump
/// sizes equal to the probes of the reconstructed atoms.
std::vector<std::pair<double, double>> distribution_function(
    const OperatorSpectralFamily& f, const Vector& phi);

/// Density operator: PSD, trace 1 (within tolerances).
class DensityState {
 public:
  /// Errors: density_invalid.
  static DensityState make(Matrix rho);

  int dim() const { return int(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double trace_residual() const { return trace_residual_; }
  double min_eigenvalue() const { return min_eig_; }

 private:
  explicit DensityState(Matrix rho) : rho_(std::move(rho)) {}
  Matrix rho_;
  double trace_residual_ = 0, min_eig_ = 0;
};

struct PovmStatistics {
  std::vector<double> probabilities;  // tr(rho X_i) per atom
  double expectation = 0;
  std::vector<double> moments;  // index m-1 holds the m-th moment
  double probability_residual = 0;  // |sum p_i - 1|
};

/// Outcome statistics of a POVM in a density state.
/// Errors: dimension_mismatch.
PovmStatistics povm_statistics(const Povm& p, const DensityState& rho,
                               int max_moment = 2);

}  // namespace qobs
