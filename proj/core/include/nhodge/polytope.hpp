#pragma once

#include "nhodge/exact_linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nhodge {

enum class PolytopeDefect {
  malformed,            // empty input, ragged coordinates, rank 0
  not_full_dimensional,
  origin_not_interior,
  not_simplicial,
  redundant_point,      // repeated vertex or a point that is not a vertex
};

std::string_view to_string(PolytopeDefect d);

class PolytopeError : public std::runtime_error {
 public:
  PolytopeError(PolytopeDefect defect, const std::string& detail)
      : std::runtime_error(std::string(to_string(defect)) + ": " + detail), defect_(defect) {}
  PolytopeDefect defect() const { return defect_; }

 private:
  PolytopeDefect defect_;
};

/// A face of a simplicial polytope, given by sorted vertex indices.
struct Face {
  std::vector<std::size_t> vertices;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  friend auto operator<=>(const Face&, const Face&) = default;
};

/// Facet data: vertex indices plus the supporting functional normal·x = 1.
struct Facet {
  Face face;
  RatVector normal;    // normal·v == 1 for v on the facet, < 1 elsewhere
  RatMatrix inverse;   // inverse of the matrix whose columns are the facet vertices
};

/// Result of locating a point in the face fan of P.
struct ConeLocation {
  std::size_t facet = 0;     // a facet whose cone contains the point
  RatVector barycentric;     // coordinates w.r.t. the facet's vertices (all >= 0)
  Rational degree;           // sum of the barycentric coordinates
};

/// A lattice simplicial polytope containing the origin in its interior.
///
/// Instances only come out of `validate`; the class is immutable afterwards.
class LatticePolytope {
 public:
  static LatticePolytope validate(std::vector<IntVector> vertices,
                                  std::vector<std::string> labels = {});

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const IntVector& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::vector<Facet>& facets() const { return facets_; }
  std::vector<Face> facet_faces() const;
  /// Every proper face including the empty one, sorted by (size, indices).
  std::vector<Face> all_faces() const;

  /// n! * vol(P), summed over the simplices spanned by 0 and each facet.
  Integer normalized_volume() const;

  /// min{lambda >= 0 : x in lambda * P}.
  Rational degree(const RatVector& x) const;
  Rational degree(const IntVector& x) const;
  ConeLocation locate(const RatVector& x) const;

  bool contains(const RatVector& x) const;

 private:
  LatticePolytope() = default;

  std::size_t rank_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<std::string> labels_;
  std::vector<Facet> facets_;
  // integer copies of the facet functionals: normal = int_normal / int_offset
  std::vector<IntVector> int_normals_;
  std::vector<Integer> int_offsets_;
};

}  // namespace nhodge
