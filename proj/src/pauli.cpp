#include "tadpole/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "tadpole/errors.hpp"

namespace tadpole {

int product_sign(const PauliString& a, const PauliString& b) {
  // Moving Z^a.z past X^b.x picks up one sign per shared site.
  return (std::popcount(a.z & b.x) & 1) ? -1 : 1;
}

int adjoint_sign(const PauliString& p) {
  return (std::popcount(p.x & p.z) & 1) ? -1 : 1;
}

namespace {

QubitMask width_mask(int n) {
  return n >= 64 ? ~QubitMask{0} : (QubitMask{1} << n) - 1;
}

void check_qubits(int n) {
  if (n < 1 || n > kMaxPauliQubits) {
    throw DimensionError("qubit count " + std::to_string(n) + " outside [1, 64]");
  }
}

}  // namespace

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_qubits(n_qubits); }

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  check_qubits(n_qubits);
  const QubitMask outside = ~width_mask(n_qubits);
  for (const auto& t : terms_) {
    if ((t.string.x | t.string.z) & outside) {
      throw IndexError("Pauli string acts outside " + std::to_string(n_qubits) + " qubits");
    }
  }
  canonicalize();
}

PauliSum PauliSum::identity(int n_qubits, cplx coeff) {
  return PauliSum(n_qubits, {{coeff, PauliString::identity()}});
}

PauliSum PauliSum::single(int n_qubits, PauliString s, cplx coeff) {
  return PauliSum(n_qubits, {{coeff, s}});
}

void PauliSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  terms_ = std::move(merged);
}

void PauliSum::check_width(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw DimensionError("Pauli sums on " + std::to_string(n_qubits_) + " and " +
                         std::to_string(other.n_qubits_) + " qubits");
  }
}

cplx PauliSum::coeff(const PauliString& s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const PauliTerm& t, const PauliString& key) { return t.string < key; });
  return (it != terms_.end() && it->string == s) ? it->coeff : cplx{};
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_width(other);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_width(other);
  for (const auto& t : other.terms_) terms_.push_back({-t.coeff, t.string});
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto& t : terms_) t.coeff *= scale;
  canonicalize();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) { return multiply(a, b); }

bool operator==(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].string != b.terms_[k].string || a.terms_[k].coeff != b.terms_[k].coeff) {
      return false;
    }
  }
  return true;
}

PauliSum projector(int site, int which, int n_qubits) {
  if (site < 0 || site >= n_qubits) {
    throw IndexError("projector site " + std::to_string(site) + " outside " +
                     std::to_string(n_qubits) + " qubits");
  }
  if (which != 0 && which != 1) throw DomainError("projector index must be 0 or 1");
  const double zsign = which == 0 ? 0.5 : -0.5;
  return PauliSum(n_qubits, {{0.5, PauliString::identity()}, {zsign, PauliString::z_on(site)}});
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("multiply: mismatched qubit counts");
  }
  std::map<PauliString, cplx> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const PauliString s{ta.string.x ^ tb.string.x, ta.string.z ^ tb.string.z};
      acc[s] += static_cast<double>(product_sign(ta.string, tb.string)) * ta.coeff * tb.coeff;
    }
  }
  std::vector<PauliTerm> terms;
  terms.reserve(acc.size());
  for (const auto& [s, c] : acc) terms.push_back({c, s});
  return PauliSum(a.n_qubits(), std::move(terms));
}

PauliSum adjoint(const PauliSum& op) {
  std::vector<PauliTerm> terms;
  terms.reserve(op.size());
  for (const auto& t : op.terms()) {
    terms.push_back({static_cast<double>(adjoint_sign(t.string)) * std::conj(t.coeff), t.string});
  }
  return PauliSum(op.n_qubits(), std::move(terms));
}

bool is_hermitian(const PauliSum& op, double tol) {
  for (const auto& t : op.terms()) {
    const cplx adj = static_cast<double>(adjoint_sign(t.string)) * std::conj(t.coeff);
    if (std::abs(adj - t.coeff) > tol) return false;
  }
  return true;
}

double max_coeff_distance(const PauliSum& a, const PauliSum& b) {
  const PauliSum diff = a - b;
  double worst = 0.0;
  for (const auto& t : diff.terms()) worst = std::max(worst, std::abs(t.coeff));
  return worst;
}

double coefficient_l1_norm(const PauliSum& op) {
  double s = 0.0;
  for (const auto& t : op.terms()) s += std::abs(t.coeff);
  return s;
}

Eigen::MatrixXcd to_dense(const PauliSum& op) {
  const int n = op.n_qubits();
  if (n > kMaxDenseQubits) {
    throw DimensionError("to_dense refuses " + std::to_string(n) + " qubits (limit " +
                         std::to_string(kMaxDenseQubits) + ", 4^n memory)");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(t.string.z & b) & 1) ? -1.0 : 1.0;
      m(b ^ t.string.x, b) += sign * t.coeff;
    }
  }
  return m;
}

}  // namespace tadpole
