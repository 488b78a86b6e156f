#pragma once

#include "nhodge/exact_linalg.hpp"

#include <span>
#include <vector>

namespace nhodge {

/// A linear subspace of Q^n, stored as a reduced row basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : reducer_(ambient) {}

  static Subspace span(std::size_t ambient, std::span<const RatVector> vectors);
  static Subspace whole(std::size_t ambient);
  /// ker(map) inside Q^{map.cols()}.
  static Subspace kernel(const RatMatrix& map);
  /// Column space of `map` inside Q^{map.rows()}.
  static Subspace image(const RatMatrix& map);

  std::size_t ambient() const { return reducer_.ambient(); }
  std::size_t dim() const { return reducer_.rank(); }
  const std::vector<RatVector>& basis() const { return reducer_.rows(); }

  bool contains(const RatVector& v) const { return reducer_.contains(v); }
  bool contains(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Image of this subspace under `map` (map.cols() == ambient()).
  Subspace mapped(const RatMatrix& map) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient() == b.ambient() && a.dim() == b.dim() && a.contains(b);
  }

 private:
  RowReducer reducer_;
};

}  // namespace nhodge
