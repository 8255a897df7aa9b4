#include "tadpole/compiled_operator.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "parallel.hpp"
#include "tadpole/errors.hpp"

namespace tadpole {

namespace {

void walsh_hadamard(std::vector<cplx>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx u = a[j];
        const cplx v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

}  // namespace

std::uint64_t CompiledOperator::Group::gather(std::uint64_t c) const {
  if (contiguous) return (c >> shift) & ((std::uint64_t{1} << bits.size()) - 1);
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) idx |= ((c >> bits[k]) & 1u) << k;
  return idx;
}

CompiledOperator::CompiledOperator(const PauliSum& op) : n_qubits_(op.n_qubits()) {
  if (n_qubits_ > kMaxStateQubits) {
    throw DimensionError("cannot compile an operator wider than the state-vector limit");
  }
  std::map<QubitMask, std::vector<PauliTerm>> by_x;
  for (const auto& t : op.terms()) by_x[t.string.x].push_back(t);

  for (auto& [x, terms] : by_x) {
    Group g;
    g.x = x;
    QubitMask support = 0;
    for (const auto& t : terms) support |= t.string.z;
    for (int q = 0; q < n_qubits_; ++q) {
      if ((support >> q) & 1u) g.bits.push_back(q);
    }
    if (g.bits.empty()) {
      g.contiguous = true;
    } else {
      g.shift = g.bits.front();
      g.contiguous = g.bits.back() - g.bits.front() + 1 == static_cast<int>(g.bits.size());
    }
    g.table.assign(std::size_t{1} << g.bits.size(), cplx{});
    for (const auto& t : terms) {
      // Z acts on the source state c = b ^ x: X^x Z^z |c> = (-1)^{z.c} |c ^ x>.
      g.table[g.gather(t.string.z)] += t.coeff;
    }
    walsh_hadamard(g.table);
    groups_.push_back(std::move(g));
  }
}

void CompiledOperator::accumulate(std::span<const cplx> in, std::span<cplx> out, cplx scale,
                                  std::size_t lo, std::size_t hi) const {
  for (const auto& g : groups_) {
    for (std::size_t b = lo; b < hi; ++b) {
      const std::uint64_t src = b ^ g.x;
      out[b] += scale * g.table[g.gather(src)] * in[src];
    }
  }
}

void CompiledOperator::apply_add(std::span<const cplx> in, std::span<cplx> out, cplx scale) const {
  if (in.size() != dim() || out.size() != dim()) throw DimensionError("compiled apply: size mismatch");
  detail::chunked_for(dim(), [&](std::size_t lo, std::size_t hi) { accumulate(in, out, scale, lo, hi); });
}

StateVector CompiledOperator::apply(const StateVector& psi) const {
  if (psi.n_qubits() != n_qubits_) throw DimensionError("compiled apply: qubit count mismatch");
  StateVector out(n_qubits_);
  apply_add(psi.amplitudes(), out.amplitudes());
  return out;
}

cplx CompiledOperator::expectation(std::span<const cplx> psi) const {
  if (psi.size() != dim()) throw DimensionError("compiled expectation: size mismatch");
  return detail::chunked_sum<cplx>(dim(), [&](std::size_t lo, std::size_t hi) {
    cplx acc{};
    for (const auto& g : groups_) {
      for (std::size_t b = lo; b < hi; ++b) {
        const std::uint64_t src = b ^ g.x;
        acc += std::conj(psi[b]) * g.table[g.gather(src)] * psi[src];
      }
    }
    return acc;
  });
}

WeightedOperator::WeightedOperator(std::vector<CompiledOperator> parts, std::vector<double> weights)
    : parts_(std::move(parts)), weights_(std::move(weights)) {
  if (parts_.empty()) throw ValidationError("weighted operator needs at least one part");
  if (parts_.size() != weights_.size()) throw ValidationError("one weight per part required");
  dim_ = parts_.front().dim();
  for (const auto& p : parts_) {
    if (p.dim() != dim_) throw DimensionError("weighted operator parts differ in width");
  }
}

void WeightedOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != dim_ || out.size() != dim_) throw DimensionError("weighted apply: size mismatch");
  detail::chunked_for(dim_, [&](std::size_t lo, std::size_t hi) {
    std::fill(out.begin() + lo, out.begin() + hi, cplx{});
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (weights_[k] != 0.0) parts_[k].accumulate(in, out, weights_[k], lo, hi);
    }
  });
}

LinearOperator WeightedOperator::as_linear_operator() const {
  return {dim_, [this](std::span<const cplx> in, std::span<cplx> out) { apply(in, out); }};
}

}  // namespace tadpole
