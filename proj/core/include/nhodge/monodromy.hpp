#pragma once

#include "nhodge/exact_linalg.hpp"
#include "nhodge/subspace.hpp"

#include <vector>

namespace nhodge {

/// The monodromy (weight) filtration of a nilpotent operator N: the unique
/// increasing filtration with N M_k ⊆ M_{k-2} and N^k : Gr_k -> Gr_{-k}
/// an isomorphism for k >= 0.
///
/// Built from M_k = sum_{j >= max(0,-k)} ker N^{k+j+1} ∩ im N^j; both
/// defining properties are re-checked after construction.
class MonodromyFiltration {
 public:
  /// Throws std::invalid_argument if N is not square or not nilpotent, and
  /// InternalConsistencyError if the result fails a defining property.
  static MonodromyFiltration compute(const RatMatrix& n);

  std::size_t ambient() const { return ambient_; }
  /// M_k == 0 for k < lowest(); M_k is everything for k >= highest().
  int lowest() const { return lowest_; }
  int highest() const { return highest_; }
  /// Nilpotency order: smallest e with N^e == 0.
  std::size_t order() const { return order_; }

  const Subspace& level(int k) const;
  std::size_t graded_dim(int k) const;

  bool lowers_by_two() const;
  bool has_symmetric_isomorphisms() const;

 private:
  MonodromyFiltration(std::size_t ambient) : zero_(ambient), whole_(Subspace::whole(ambient)) {}

  std::size_t ambient_ = 0;
  std::size_t order_ = 0;
  int lowest_ = 0;
  int highest_ = 0;
  std::vector<RatMatrix> powers_;  // N^0 .. N^order
  std::vector<Subspace> levels_;   // M_lowest .. M_highest
  Subspace zero_;
  Subspace whole_;
};

/// A^e for square A.
RatMatrix matrix_power(const RatMatrix& a, std::size_t e);

}  // namespace nhodge
