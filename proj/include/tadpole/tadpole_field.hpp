#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace tadpole {

enum class ModelKind { chain, honeycomb };

/// Plaquette improvement factors at one instant, stored in the power that
/// enters the magnetic Hamiltonian: u^4 on the chain, u^6 on the honeycomb.
class TadpoleField {
 public:
  /// Throws DomainError unless every entry is finite and positive.
  TadpoleField(ModelKind kind, std::vector<double> powered_values);

  static TadpoleField ones(ModelKind kind, std::size_t plaquettes);

  ModelKind kind() const { return kind_; }
  int exponent() const { return kind_ == ModelKind::chain ? 4 : 6; }
  std::size_t size() const { return values_.size(); }

  /// u^4 (chain) or u^6 (honeycomb) of plaquette p.
  double operator[](std::size_t p) const { return values_[p]; }
  std::span<const double> values() const { return values_; }

  /// The link factor u itself, for reporting.
  double link_factor(std::size_t p) const { return std::pow(values_[p], 1.0 / exponent()); }

  /// max_p |a_p - b_p|.
  friend double max_abs_difference(const TadpoleField& a, const TadpoleField& b);

  /// theta * measured + (1 - theta) * previous.
  friend TadpoleField mix(const TadpoleField& previous, const TadpoleField& measured, double theta);

 private:
  ModelKind kind_;
  std::vector<double> values_;
};

/// Bounds implied by ||plaquette|| <= 1: every measured entry lies in [1/2, 3/2].
inline constexpr double kTadpoleLower = 0.5;
inline constexpr double kTadpoleUpper = 1.5;

}  // namespace tadpole
