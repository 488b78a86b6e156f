#include "nhodge/subspace.hpp"

#include <stdexcept>

namespace nhodge {

Subspace Subspace::span(std::size_t ambient, std::span<const RatVector> vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) s.reducer_.insert(v);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    RatVector e(ambient, Rational(0));
    e[i] = 1;
    s.reducer_.insert(std::move(e));
  }
  return s;
}

Subspace Subspace::kernel(const RatMatrix& map) {
  const RankNullspace rn = rank_and_nullspace(map);
  Subspace s(map.cols());
  for (std::size_t j = 0; j < rn.nullspace.cols(); ++j) s.reducer_.insert(rn.nullspace.column(j));
  return s;
}

Subspace Subspace::image(const RatMatrix& map) {
  Subspace s(map.rows());
  for (std::size_t j = 0; j < map.cols(); ++j) s.reducer_.insert(map.column(j));
  return s;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis())
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient() != ambient()) throw std::invalid_argument("subspace sum: ambient mismatch");
  Subspace s = *this;
  for (const auto& v : other.basis()) s.reducer_.insert(v);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient() != ambient()) throw std::invalid_argument("subspace intersection: ambient mismatch");
  const std::size_t n = ambient(), p = dim(), q = other.dim();
  if (p == 0 || q == 0) return Subspace(n);
  // y·A = z·B  <=>  [A^T | -B^T] (y, z) = 0
  RatMatrix m(n, p + q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = basis()[i][k];
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, p + j) = -other.basis()[j][k];
  const RankNullspace rn = rank_and_nullspace(m);
  Subspace s(n);
  for (std::size_t c = 0; c < rn.nullspace.cols(); ++c) {
    RatVector v(n, Rational(0));
    for (std::size_t i = 0; i < p; ++i) {
      const Rational& y = rn.nullspace(i, c);
      if (y == 0) continue;
      for (std::size_t k = 0; k < n; ++k) v[k] += y * basis()[i][k];
    }
    s.reducer_.insert(std::move(v));
  }
  return s;
}

Subspace Subspace::mapped(const RatMatrix& map) const {
  if (map.cols() != ambient()) throw std::invalid_argument("subspace image: dimension mismatch");
  Subspace s(map.rows());
  for (const auto& v : basis()) s.reducer_.insert(map * v);
  return s;
}

}  // namespace nhodge
