#pragma once

// Fast application of PauliSums in the inner loops (Lanczos, Krylov).
//
// Terms sharing an X mask are merged into one group: for every basis state c
// the group contributes D(c) * psi[c] to out[c ^ x], where
// D(c) = sum_z coeff_z (-1)^{popcount(z & c)} depends only on the bits in the
// union of the group's Z masks. D is tabulated over those bits with a
// Walsh-Hadamard transform, so applying a group costs one gather and one
// table lookup per amplitude regardless of how many strings it merged.

#include <functional>
#include <span>
#include <vector>

#include "tadpole/pauli.hpp"
#include "tadpole/state_vector.hpp"

namespace tadpole {

class CompiledOperator {
 public:
  explicit CompiledOperator(const PauliSum& op);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  std::size_t group_count() const { return groups_.size(); }

  /// out[b] += scale * (op in)[b] for b in [lo, hi).
  void accumulate(std::span<const cplx> in, std::span<cplx> out, cplx scale, std::size_t lo,
                  std::size_t hi) const;

  /// out += scale * op in over the full register.
  void apply_add(std::span<const cplx> in, std::span<cplx> out, cplx scale = 1.0) const;

  StateVector apply(const StateVector& psi) const;
  cplx expectation(std::span<const cplx> psi) const;

 private:
  struct Group {
    QubitMask x = 0;
    std::vector<int> bits;  // support of the diagonal table
    int shift = 0;          // valid when the support is one contiguous run
    bool contiguous = false;
    std::vector<cplx> table;

    std::uint64_t gather(std::uint64_t c) const;
  };

  int n_qubits_;
  std::vector<Group> groups_;
};

/// Matrix-free operator handed to the eigensolver and the propagator:
/// apply(in, out) overwrites out with A in.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply;
};

/// sum_k weight_k * part_k with weights that can be changed between
/// applications; used for H({u}) whose plaquette coefficients move every
/// self-consistency pass while the operator structure stays fixed.
class WeightedOperator {
 public:
  WeightedOperator(std::vector<CompiledOperator> parts, std::vector<double> weights);

  std::size_t dim() const { return dim_; }
  std::size_t part_count() const { return parts_.size(); }
  const CompiledOperator& part(std::size_t k) const { return parts_[k]; }

  void set_weight(std::size_t k, double w) { weights_.at(k) = w; }
  double weight(std::size_t k) const { return weights_.at(k); }

  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  LinearOperator as_linear_operator() const;

 private:
  std::vector<CompiledOperator> parts_;
  std::vector<double> weights_;
  std::size_t dim_;
};

}  // namespace tadpole
