#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weilkit/poly.hpp"

namespace weilkit {

/// Reduced Groebner basis of an ideal: auto-reduced, monic, unique for
/// (ideal, order, variable order). Buchberger with the product and chain
/// criteria; exceeding the degree cap raises DegreeBudgetExceeded.
class GroebnerBasis {
 public:
  static GroebnerBasis compute(Ideal ideal, MonomialOrder order = MonomialOrder::grevlex(),
                               std::optional<int> degree_cap = std::nullopt);

  const Ideal& ideal() const { return ideal_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly>& basis() const { return basis_; }

  /// Unique remainder modulo the basis; normal_form(p) == normal_form(q)
  /// iff p - q lies in the ideal.
  Poly normal_form(const Poly& p) const;
  bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
  bool is_unit() const;

  /// Dimension via maximal variable sets independent modulo the leading
  /// ideal; -1 for the unit ideal. Requires a grevlex basis.
  int krull_dimension() const;

 private:
  Ideal ideal_;
  MonomialOrder order_;
  std::vector<Poly> basis_;
  mutable std::optional<int> dim_;
};

bool is_unit_ideal(const Ideal& ideal);

}  // namespace weilkit
