#include "tadpole/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "tadpole/errors.hpp"
#include "vec_ops.hpp"

namespace tadpole {

namespace {

using Vec = std::vector<cplx>;

constexpr double kDegenerateGap = 1e-8;

double true_residual(const LinearOperator& H, const Vec& x, double energy, Vec& work) {
  H.apply(x, work);
  detail::axpy(-energy, x, work);
  return detail::norm(work);
}

Vec random_start(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vec v(dim);
  for (auto& a : v) a = cplx(normal(rng), normal(rng));
  return v;
}

}  // namespace

EigenResult dense_lowest_eigenpair(const PauliSum& H) {
  const Eigen::MatrixXcd m = to_dense(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  EigenResult r;
  r.energy = es.eigenvalues()(0);
  const Eigen::VectorXcd v = es.eigenvectors().col(0);
  r.state = StateVector(H.n_qubits(), std::vector<cplx>(v.data(), v.data() + v.size()));
  r.state = r.state.normalized();
  r.state.fix_global_phase();
  r.gap_estimate = m.rows() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                                : std::numeric_limits<double>::quiet_NaN();
  r.near_degenerate = r.gap_estimate < kDegenerateGap;
  const Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(r.state.amplitudes().data(), v.size());
  r.residual = (m * psi - r.energy * psi).norm();
  return r;
}

EigenResult lowest_eigenpair(const PauliSum& H, const EigenOptions& opts) {
  if (!is_hermitian(H, 1e-12)) throw ValidationError("lowest_eigenpair requires a Hermitian operator");
  if (H.n_qubits() <= opts.dense_max_qubits) return dense_lowest_eigenpair(H);
  const CompiledOperator op(H);
  const LinearOperator lin{op.dim(), [&op](std::span<const cplx> in, std::span<cplx> out) {
                             std::fill(out.begin(), out.end(), cplx{});
                             op.apply_add(in, out);
                           }};
  return lanczos_lowest_eigenpair(lin, H.n_qubits(), opts);
}

EigenResult lanczos_lowest_eigenpair(const LinearOperator& H, int n_qubits, const EigenOptions& opts,
                                     const StateVector* start) {
  const std::size_t dim = H.dim;
  if (dim != (std::size_t{1} << n_qubits)) throw DimensionError("Lanczos: operator/qubit mismatch");
  const int m = std::max<int>(2, std::min<std::size_t>(opts.max_basis, dim));
  const int keep = std::clamp(opts.keep, 1, m - 1);

  std::vector<Vec> basis;
  basis.reserve(m + 1);
  {
    Vec v0 = start ? Vec(start->amplitudes().begin(), start->amplitudes().end())
                   : random_start(dim, opts.seed);
    if (start && start->dim() != dim) throw DimensionError("Lanczos: start vector width mismatch");
    const double nrm = detail::norm(v0);
    if (!(nrm > 0.0)) v0 = random_start(dim, opts.seed);
    detail::scale(1.0 / detail::norm(v0), v0);
    basis.push_back(std::move(v0));
  }

  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(m, m);
  Vec w(dim);
  Vec work(dim);
  int matvecs = 0;
  int jstart = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> history;

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    int size = m;
    double beta = 0.0;
    bool invariant = false;
    for (int j = jstart; j < m; ++j) {
      H.apply(basis[j], w);
      ++matvecs;
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const cplx h = detail::dot(basis[i], w);
          detail::axpy(-h, basis[i], w);
          T(i, j) += h;
        }
      }
      T(j, j) = T(j, j).real();
      for (int i = 0; i < j; ++i) T(j, i) = std::conj(T(i, j));
      beta = detail::norm(w);
      const double scale = std::max(1.0, T.topLeftCorner(j + 1, j + 1).cwiseAbs().maxCoeff());
      if (beta <= 1e-14 * scale) {
        size = j + 1;
        invariant = true;
        break;
      }
      if (j + 1 < m) {
        detail::scale(1.0 / beta, w);
        basis.push_back(w);
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.topLeftCorner(size, size));
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXcd Y = es.eigenvectors();
    const double spectral_scale = std::max({1.0, std::abs(theta(0)), std::abs(theta(size - 1))});
    const double estimate = invariant ? 0.0 : beta * std::abs(Y(size - 1, 0));

    auto ritz_vector = [&](int col) {
      Vec x(dim, cplx{});
      for (int i = 0; i < size; ++i) detail::axpy(Y(i, col), basis[i], x);
      return x;
    };

    if (estimate <= opts.tol * spectral_scale) {
      Vec x = ritz_vector(0);
      detail::scale(1.0 / detail::norm(x), x);
      const double res = true_residual(H, x, theta(0), work);
      ++matvecs;
      best_residual = std::min(best_residual, res);
      if (res <= opts.tol * spectral_scale || invariant) {
        EigenResult r;
        r.energy = theta(0);
        r.state = StateVector(n_qubits, std::move(x));
        r.state.fix_global_phase();
        r.residual = res;
        r.gap_estimate = size > 1 ? theta(1) - theta(0) : std::numeric_limits<double>::quiet_NaN();
        r.near_degenerate = size > 1 && r.gap_estimate < kDegenerateGap;
        r.matvecs = matvecs;
        return r;
      }
    }
    best_residual = std::min(best_residual, estimate);
    history.push_back(estimate);

    // Thick restart: keep the lowest Ritz vectors and continue from the residual direction.
    const int kept = std::min(keep, size - 1);
    std::vector<Vec> next;
    next.reserve(m + 1);
    for (int c = 0; c < kept; ++c) {
      Vec x = ritz_vector(c);
      for (const auto& prev : next) detail::axpy(-detail::dot(prev, x), prev, x);
      detail::scale(1.0 / detail::norm(x), x);
      next.push_back(std::move(x));
    }
    basis.clear();
    basis = std::move(next);
    if (invariant || kept == 0) {
      // Exhausted the reachable subspace without meeting the tolerance: reseed.
      Vec r = random_start(dim, opts.seed + restart + 1);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& prev : basis) detail::axpy(-detail::dot(prev, r), prev, r);
      }
      detail::scale(1.0 / detail::norm(r), r);
      basis.push_back(std::move(r));
    } else {
      detail::scale(1.0 / beta, w);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& prev : basis) detail::axpy(-detail::dot(prev, w), prev, w);
      }
      detail::scale(1.0 / detail::norm(w), w);
      basis.push_back(w);
    }
    T.setZero();
    for (int c = 0; c < kept; ++c) T(c, c) = theta(c);
    jstart = kept;
  }
  throw ConvergenceError(fmt::format("Lanczos did not converge in {} restarts (best residual {:.3e})",
                                     opts.max_restarts, best_residual),
                         std::move(history));
}

}  // namespace tadpole
