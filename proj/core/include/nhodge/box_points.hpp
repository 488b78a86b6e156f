#pragma once

#include "nhodge/stacky_fan.hpp"

#include <map>
#include <optional>
#include <vector>

namespace nhodge {

/// A lattice point u = sum lambda_rho v_rho with 0 <= lambda_rho < 1 over the
/// rays of a cone. `cone` is the minimal cone sigma(u): exactly the rays with
/// lambda_rho > 0.
struct BoxElement {
  IntVector u;
  ConeId cone = 0;
  RatVector lambda;     // aligned with fan.cone(cone)
  Rational degree;      // sum of gauge(rho) * lambda_rho
  IntVector inverse_u;  // sum_{rho in sigma(1)} v_rho - u

  friend bool operator==(const BoxElement& a, const BoxElement& b) {
    return a.u == b.u && a.cone == b.cone;
  }
};

/// w = frac.u + floor, with floor a nonnegative integer combination of the
/// generators of the cone containing w.
struct FracFloorDecomposition {
  IntVector w;
  BoxElement frac;
  IntVector floor;
  ConeId cone = 0;                    // minimal cone of w
  std::vector<Integer> floor_coeffs;  // aligned with fan.cone(cone)
};

/// All of Box(sigma), including elements whose minimal cone is a proper face.
std::vector<BoxElement> box_of_cone(const StackyFan& fan, ConeId sigma);

/// The elements of Box(sigma) with minimal cone exactly sigma.
std::vector<BoxElement> interior_box_of_cone(const StackyFan& fan, ConeId sigma);

/// Box(Sigma) for a complete fan, indexed for lookup.
class BoxCatalog {
 public:
  explicit BoxCatalog(const StackyFan& fan);

  const std::vector<BoxElement>& elements() const { return elements_; }
  const BoxElement& element(std::size_t i) const { return elements_.at(i); }
  std::size_t size() const { return elements_.size(); }
  std::optional<std::size_t> find(const IntVector& u) const;
  /// Indices of elements with minimal cone sigma.
  std::vector<std::size_t> interior_of(ConeId sigma) const;
  std::size_t inverse_index(std::size_t i) const { return inverse_.at(i); }

 private:
  std::vector<BoxElement> elements_;
  std::map<IntVector, std::size_t> index_;
  std::vector<std::size_t> inverse_;
};

/// Builds the box element of a point given by its coordinates in a cone;
/// coordinates must lie in [0, 1).
BoxElement make_box_element(const StackyFan& fan, ConeId cone, const RatVector& lambda);

FracFloorDecomposition frac_floor(const StackyFan& fan, const IntVector& w);

BoxElement inverse_element(const StackyFan& fan, const BoxElement& u);

}  // namespace nhodge
