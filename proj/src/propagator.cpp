#include "tadpole/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "tadpole/errors.hpp"
#include "vec_ops.hpp"

namespace tadpole {

namespace {

using Vec = std::vector<cplx>;

constexpr double kMaxNormDrift = 1e-10;

StateVector checked_renormalize(StateVector psi, double reference_norm) {
  const double nrm = psi.norm();
  if (std::abs(nrm - reference_norm) > kMaxNormDrift) {
    throw NumericalError(fmt::format("norm drift {:.3e} during propagation", nrm - reference_norm));
  }
  const double s = reference_norm / nrm;
  for (auto& a : psi.amplitudes()) a *= s;
  return psi;
}

// One Krylov step. Returns nullopt when the error bound is not met within
// krylov_dim vectors.
std::optional<Vec> krylov_step(const Vec& v, const LinearOperator& H, double dt,
                               const PropagatorOptions& opts, PropagationStats& stats) {
  const std::size_t dim = v.size();
  const double v_norm = detail::norm(v);
  if (v_norm == 0.0) return v;
  const int m_max = static_cast<int>(std::min<std::size_t>(opts.krylov_dim, dim));

  std::vector<Vec> basis;
  basis.reserve(m_max);
  basis.push_back(v);
  detail::scale(1.0 / v_norm, basis[0]);

  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(m_max, m_max);
  Vec w(dim);
  for (int j = 0; j < m_max; ++j) {
    H.apply(basis[j], w);
    ++stats.matvecs;
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const cplx h = detail::dot(basis[i], w);
        detail::axpy(-h, basis[i], w);
        T(i, j) += h;
      }
    }
    T(j, j) = T(j, j).real();
    for (int i = 0; i < j; ++i) T(j, i) = std::conj(T(i, j));
    const double beta = detail::norm(w);

    const int size = j + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.topLeftCorner(size, size));
    const Eigen::MatrixXcd& Y = es.eigenvectors();
    Eigen::VectorXcd phase(size);
    for (int k = 0; k < size; ++k) phase(k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * dt));
    // exp(-i T dt) e_0
    const Eigen::VectorXcd c = Y * phase.asDiagonal() * Y.row(0).adjoint();
    const double scale = std::max(1.0, T.topLeftCorner(size, size).cwiseAbs().maxCoeff());
    const bool breakdown = beta <= 1e-14 * scale;
    const double err = breakdown ? 0.0 : beta * std::abs(c(size - 1)) * v_norm;

    if (breakdown || err <= opts.tol) {
      Vec out(dim, cplx{});
      for (int i = 0; i < size; ++i) detail::axpy(c(i) * v_norm, basis[i], out);
      stats.max_krylov_dim = std::max(stats.max_krylov_dim, size);
      stats.error_estimate = std::max(stats.error_estimate, err);
      ++stats.substeps;
      return out;
    }
    if (j + 1 < m_max) {
      detail::scale(1.0 / beta, w);
      basis.push_back(w);
    }
  }
  return std::nullopt;
}

Vec krylov_recursive(const Vec& v, const LinearOperator& H, double dt, const PropagatorOptions& opts,
                     PropagationStats& stats, int level) {
  if (auto out = krylov_step(v, H, dt, opts, stats)) return std::move(*out);
  if (level >= opts.max_halvings) {
    throw ConvergenceError(
        fmt::format("Krylov propagator failed at dimension {} after {} halvings", opts.krylov_dim, level),
        {});
  }
  const Vec half = krylov_recursive(v, H, dt / 2.0, opts, stats, level + 1);
  return krylov_recursive(half, H, dt / 2.0, opts, stats, level + 1);
}

}  // namespace

StateVector dense_propagate(const StateVector& psi, const PauliSum& H, double dt) {
  if (H.n_qubits() != psi.n_qubits()) throw DimensionError("propagate: width mismatch");
  const Eigen::MatrixXcd m = to_dense(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed in propagator");
  const auto& V = es.eigenvectors();
  Eigen::VectorXcd phase(m.rows());
  for (Eigen::Index k = 0; k < m.rows(); ++k) phase(k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * dt));
  const Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes().data(), m.rows());
  const Eigen::VectorXcd out = V * (phase.asDiagonal() * (V.adjoint() * in));
  return StateVector(psi.n_qubits(), std::vector<cplx>(out.data(), out.data() + out.size()));
}

StateVector krylov_propagate(const StateVector& psi, const LinearOperator& H, double dt,
                             const PropagatorOptions& opts, PropagationStats* stats) {
  if (H.dim != psi.dim()) throw DimensionError("propagate: width mismatch");
  PropagationStats local;
  const double n0 = psi.norm();
  Vec v(psi.amplitudes().begin(), psi.amplitudes().end());
  StateVector out(psi.n_qubits(), dt == 0.0 ? v : krylov_recursive(v, H, dt, opts, local, 0));
  if (stats) *stats = local;
  return checked_renormalize(std::move(out), n0);
}

StateVector step_propagate(const StateVector& psi, const PauliSum& H, double dt,
                           const PropagatorOptions& opts, PropagationStats* stats) {
  if (!is_hermitian(H, 1e-12)) throw ValidationError("step_propagate requires a Hermitian operator");
  if (dt == 0.0) return psi;
  if (H.n_qubits() <= opts.dense_max_qubits) {
    return checked_renormalize(dense_propagate(psi, H, dt), psi.norm());
  }
  const CompiledOperator op(H);
  const LinearOperator lin{op.dim(), [&op](std::span<const cplx> in, std::span<cplx> out) {
                             std::fill(out.begin(), out.end(), cplx{});
                             op.apply_add(in, out);
                           }};
  return krylov_propagate(psi, lin, dt, opts, stats);
}

}  // namespace tadpole
