#include "nhodge/monodromy.hpp"

#include "nhodge/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace nhodge {

RatMatrix matrix_power(const RatMatrix& a, std::size_t e) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_power: non-square matrix");
  RatMatrix r = RatMatrix::identity(a.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

MonodromyFiltration MonodromyFiltration::compute(const RatMatrix& n) {
  if (n.rows() != n.cols()) throw std::invalid_argument("monodromy filtration of a non-square operator");
  const std::size_t dim = n.rows();
  MonodromyFiltration m(dim);
  m.ambient_ = dim;

  m.powers_.push_back(RatMatrix::identity(dim));
  while (!m.powers_.back().is_zero()) {
    if (m.powers_.size() > dim) throw std::invalid_argument("operator is not nilpotent");
    m.powers_.push_back(m.powers_.back() * n);
  }
  m.order_ = m.powers_.size() - 1;
  const int e = static_cast<int>(m.order_);
  m.lowest_ = -e + 1;
  m.highest_ = std::max(e - 1, 0);
  if (dim == 0) m.lowest_ = m.highest_ = 0;

  std::vector<Subspace> kernels, images;
  for (std::size_t p = 0; p <= m.order_; ++p) {
    kernels.push_back(Subspace::kernel(m.powers_[p]));
    images.push_back(Subspace::image(m.powers_[p]));
  }
  auto ker = [&](int p) -> const Subspace& {
    return p <= 0 ? m.zero_ : kernels[std::min<std::size_t>(p, m.order_)];
  };

  for (int k = m.lowest_; k <= m.highest_; ++k) {
    Subspace level(dim);
    for (int j = std::max(0, -k); j <= e; ++j) level = level + ker(k + j + 1).intersect(images[j]);
    m.levels_.push_back(std::move(level));
  }

  if (!m.lowers_by_two() || !m.has_symmetric_isomorphisms())
    throw InternalConsistencyError("monodromy filtration fails its defining properties");
  return m;
}

const Subspace& MonodromyFiltration::level(int k) const {
  if (k < lowest_) return zero_;
  if (k >= highest_) return levels_.empty() ? whole_ : levels_.back();
  return levels_[k - lowest_];
}

std::size_t MonodromyFiltration::graded_dim(int k) const { return level(k).dim() - level(k - 1).dim(); }

bool MonodromyFiltration::lowers_by_two() const {
  if (powers_.size() < 2) return true;
  const RatMatrix& n = powers_[1];
  for (int k = lowest_; k <= highest_ + 1; ++k)
    if (!level(k - 2).contains(level(k).mapped(n))) return false;
  return true;
}

bool MonodromyFiltration::has_symmetric_isomorphisms() const {
  if (level(highest_).dim() != ambient_) return false;
  for (int k = 1; k <= highest_ + 1; ++k) {
    const RatMatrix& nk = k < static_cast<int>(powers_.size()) ? powers_[k] : powers_.back();
    const Subspace image = level(k).mapped(nk);
    const Subspace& below = level(-k - 1);
    if (!level(-k).contains(image)) return false;
    if (!below.contains(level(k - 1).mapped(nk))) return false;
    // induced map Gr_k -> Gr_{-k} is onto and the two sides have equal size
    const std::size_t induced_rank = (image + below).dim() - below.dim();
    if (graded_dim(k) != graded_dim(-k) || induced_rank != graded_dim(k)) return false;
  }
  return true;
}

}  // namespace nhodge
