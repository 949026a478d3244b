#include "qac/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qac/error.hpp"

namespace qac {

const char* to_string(NumericalFailure kind) {
  switch (kind) {
    case NumericalFailure::no_sign_change: return "no_sign_change";
    case NumericalFailure::spinodal: return "spinodal";
    case NumericalFailure::missing_minimum: return "missing_minimum";
    case NumericalFailure::no_branch_point: return "no_branch_point";
    case NumericalFailure::not_converged: return "not_converged";
    case NumericalFailure::dimension_guard: return "dimension_guard";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

int spin(std::size_t state, int bit) { return ((state >> bit) & 1U) ? -1 : 1; }

}  // namespace

void ModelParams::validate() const {
  require(p >= 2, "p must be >= 2");
  require(C >= 1, "C must be >= 1");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and >= 0");
  require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon must be finite and >= 0");
  require(std::isfinite(Gamma) && Gamma >= 0.0, "Gamma must be finite and >= 0");
  require(zero_temperature() || (std::isfinite(beta) && beta > 0.0),
          "beta must be positive (or the zero-temperature sentinel)");
}

double beta_from_temperature(double T) {
  require(std::isfinite(T) && T >= 0.0, "temperature must be finite and >= 0");
  return T == 0.0 ? kZeroTemperature : 1.0 / T;
}

double temperature_from_beta(double beta) { return beta == kZeroTemperature ? 0.0 : 1.0 / beta; }

void check_order_parameter(double m) {
  require(std::isfinite(m) && std::abs(m) <= 1.0, "order parameter must satisfy |m| <= 1");
}

double ipow(double x, int k) {
  double result = 1.0;
  double base = x;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

DenseSymmetricOperator::DenseSymmetricOperator(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols(), "operator must be square");
  require(entries_.rows() > 0 && std::has_single_bit(static_cast<std::size_t>(entries_.rows())),
          "operator dimension must be a power of two");
}

int DenseSymmetricOperator::qubits() const noexcept { return std::countr_zero(dim()); }

Eigen::VectorXd DenseSymmetricOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DenseSymmetricOperator build_effective_hamiltonian(const ModelParams& params, double m) {
  params.validate();
  check_order_parameter(m);
  if (params.C > kMaxEffectiveCopies) {
    throw InvalidParameter("effective Hamiltonian limited to C <= " + std::to_string(kMaxEffectiveCopies));
  }
  const int copies = params.C;
  const std::size_t dim = std::size_t{1} << (copies + 1);
  const double longitudinal = params.p * ipow(m, params.p - 1);
  const double penalty_field = params.penalty_field_scale() * params.epsilon * params.Gamma;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    const int z0 = spin(s, copies);
    double diagonal = 0.0;
    for (int c = 0; c < copies; ++c) {
      const int zc = spin(s, c);
      diagonal += longitudinal * zc + params.gamma * zc * z0;
      const auto col = static_cast<Eigen::Index>(s ^ (std::size_t{1} << c));
      h(row, col) = -params.Gamma;
    }
    h(row, row) = -diagonal;
    h(row, static_cast<Eigen::Index>(s ^ (std::size_t{1} << copies))) = -penalty_field;
  }
  return DenseSymmetricOperator(std::move(h));
}

DenseSymmetricOperator build_full_hamiltonian(const ModelParams& params, int n_logical) {
  params.validate();
  require(n_logical >= 1, "n_logical must be >= 1");
  const int block = params.C + 1;
  if (n_logical > kMaxFullQubits / block) {
    throw InvalidParameter("full Hamiltonian limited to n_logical*(C+1) <= " + std::to_string(kMaxFullQubits));
  }
  const int qubits = n_logical * block;
  const std::size_t dim = std::size_t{1} << qubits;
  const double n = n_logical;
  const double penalty_field = params.penalty_field_scale() * params.epsilon * params.Gamma;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    double diagonal = 0.0;
    for (int c = 0; c < params.C; ++c) {
      int magnetization = 0;
      for (int i = 0; i < n_logical; ++i) magnetization += spin(s, i * block + c);
      diagonal -= n * ipow(magnetization / n, params.p);
    }
    for (int i = 0; i < n_logical; ++i) {
      const int z0 = spin(s, i * block + params.C);
      for (int c = 0; c < params.C; ++c) {
        const int bit = i * block + c;
        diagonal -= params.gamma * spin(s, bit) * z0;
        h(row, static_cast<Eigen::Index>(s ^ (std::size_t{1} << bit))) = -params.Gamma;
      }
      h(row, static_cast<Eigen::Index>(s ^ (std::size_t{1} << (i * block + params.C)))) = -penalty_field;
    }
    h(row, row) = diagonal;
  }
  return DenseSymmetricOperator(std::move(h));
}

}  // namespace qac
