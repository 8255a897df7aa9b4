#pragma once

// Pauli-string algebra on up to 64 qubits.
//
// Conventions used throughout the library:
//   * qubit k is bit k of a basis index (little-endian), |0> is the +1
//     eigenstate of Z;
//   * a PauliString (x, z) denotes the operator X^x Z^z, i.e. the product
//     over sites of X_k^{x_k} Z_k^{z_k} with X written to the left. A site
//     with both bits set is X Z = -iY; the -i lives in the term coefficient.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tadpole {

using cplx = std::complex<double>;
using QubitMask = std::uint64_t;

inline constexpr int kMaxPauliQubits = 64;
inline constexpr int kMaxDenseQubits = 14;
inline constexpr double kPruneThreshold = 1e-15;

struct PauliString {
  QubitMask x = 0;
  QubitMask z = 0;

  static PauliString identity() { return {}; }
  static PauliString x_on(int q) { return {QubitMask{1} << q, 0}; }
  static PauliString z_on(int q) { return {0, QubitMask{1} << q}; }

  bool is_identity() const { return x == 0 && z == 0; }
  bool is_diagonal() const { return x == 0; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// Sign s such that (X^a.x Z^a.z)(X^b.x Z^b.z) = s X^(a.x^b.x) Z^(a.z^b.z).
int product_sign(const PauliString& a, const PauliString& b);

/// Sign s such that (X^x Z^z)^dagger = s X^x Z^z.
int adjoint_sign(const PauliString& p);

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

/// Weighted sum of Pauli strings, always kept canonical: terms sorted by
/// (x, z), no duplicates, and no coefficients below kPruneThreshold.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  static PauliSum identity(int n_qubits, cplx coeff = 1.0);
  static PauliSum single(int n_qubits, PauliString s, cplx coeff = 1.0);

  int n_qubits() const { return n_qubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of a given string (zero when absent).
  cplx coeff(const PauliString& s) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  friend bool operator==(const PauliSum& a, const PauliSum& b);

 private:
  void canonicalize();
  void check_width(const PauliSum& other) const;

  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Lambda_0 = (I + Z_site)/2 for which == 0, Lambda_1 = (I - Z_site)/2 for which == 1.
PauliSum projector(int site, int which, int n_qubits);

PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum adjoint(const PauliSum& op);

/// Term-by-term Hermiticity: every coefficient equals the adjoint coefficient
/// within tol.
bool is_hermitian(const PauliSum& op, double tol = 1e-14);

/// Largest coefficient-wise distance between two sums of the same width.
double max_coeff_distance(const PauliSum& a, const PauliSum& b);

/// Sum of |coefficient|; an upper bound on the operator norm.
double coefficient_l1_norm(const PauliSum& op);

/// Explicit 2^n x 2^n matrix. Refuses n > kMaxDenseQubits.
Eigen::MatrixXcd to_dense(const PauliSum& op);

}  // namespace tadpole
