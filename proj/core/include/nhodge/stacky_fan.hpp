#pragma once

#include "nhodge/exact_linalg.hpp"
#include "nhodge/polytope.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace nhodge {

/// Cone index sets are sorted ray indices; a cone is referred to by its
/// position in StackyFan::cones().
using RaySet = std::vector<std::size_t>;
using ConeId = std::size_t;

struct StarLink {
  std::vector<ConeId> star;         // cones having sigma as a face
  std::vector<ConeId> closed_star;  // faces of cones in the star
  std::vector<ConeId> link;         // closed-star cones meeting sigma only in 0
};

/// f_j = number of j-dimensional cones of the quotient fan (j = 0..c) and
/// h with h(t) = f(t - 1) in the convention f(t) = sum_j f_j t^(c-j).
struct FHVector {
  std::vector<std::int64_t> f;
  std::vector<std::int64_t> h;
};

struct FanLocation {
  ConeId maximal_cone = 0;
  RatVector barycentric;  // aligned with cones()[maximal_cone]
};

struct QuotientFan;

/// Simplicial fan with a marked integer generator on every ray.
///
/// Besides the markings the fan carries the values of a distinguished
/// conewise linear function at the marked generators ("gauge values"). For
/// the face fan of P these are all 1, i.e. the function is deg_P; quotient
/// fans inherit the induced function.
class StackyFan {
 public:
  /// `cones` may be any generating family; it is closed under faces here.
  StackyFan(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
            RatVector gauge, bool complete);

  static StackyFan from_polytope(const LatticePolytope& p);

  std::size_t rank() const { return rank_; }
  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_.at(i); }
  const RatVector& gauge() const { return gauge_; }
  bool is_complete() const { return complete_; }

  /// Sorted by (dimension, ray indices); cones()[0] is the zero cone.
  const std::vector<RaySet>& cones() const { return cones_; }
  const RaySet& cone(ConeId id) const { return cones_.at(id); }
  std::size_t cone_dim(ConeId id) const { return cones_.at(id).size(); }
  std::size_t cone_codim(ConeId id) const { return rank_ - cones_.at(id).size(); }
  std::optional<ConeId> find_cone(const RaySet& rays) const;
  bool is_cone(const RaySet& rays) const { return find_cone(rays).has_value(); }
  std::vector<ConeId> maximal_cones() const;

  /// n x dim matrix whose columns are the marked generators of the cone.
  IntMatrix generator_matrix(ConeId id) const;

  /// Throws std::invalid_argument for an unknown cone.
  StarLink star_closed_star_link(ConeId sigma) const;
  QuotientFan quotient(ConeId sigma) const;
  Integer multiplicity(ConeId sigma) const;
  FHVector f_and_h_vector(ConeId sigma) const;

  /// Finds a full-dimensional cone containing x (complete fans only).
  FanLocation locate(const RatVector& x) const;

 private:
  std::size_t rank_;
  std::vector<IntVector> rays_;
  RatVector gauge_;
  bool complete_;
  std::vector<RaySet> cones_;
  std::map<RaySet, ConeId> index_;
  std::vector<RatMatrix> maximal_inverse_;  // per cone; empty unless full-dimensional
};

/// The quotient fan Sigma(sigma) in N(sigma)_Q, with bookkeeping back to the
/// parent fan. Torsion of N/N_sigma is dropped; coordinates come from the
/// Smith decomposition of the generator matrix of sigma.
struct QuotientFan {
  ConeId base_cone = 0;
  StackyFan fan;
  std::vector<std::size_t> ray_origin;  // quotient ray -> parent ray
  std::vector<ConeId> cone_origin;      // quotient cone -> parent star cone
  IntMatrix projection;                 // c x n, kernel over Q = span(sigma)

  /// Same quotient, rays re-expressed in another basis: coordinates y -> change * y.
  QuotientFan with_basis_change(const IntMatrix& change) const;
};

/// h-vector coefficients from cone counts by dimension.
std::vector<std::int64_t> h_from_f(const std::vector<std::int64_t>& f);

}  // namespace nhodge
