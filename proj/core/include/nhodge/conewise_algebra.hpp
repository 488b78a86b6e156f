#pragma once

#include "nhodge/exact_linalg.hpp"
#include "nhodge/monodromy.hpp"
#include "nhodge/stacky_fan.hpp"

#include <map>
#include <string>
#include <vector>

namespace nhodge {

/// Exponent vector of a Stanley-Reisner monomial, dense over the fan's rays.
using Exponents = std::vector<int>;

int monomial_degree(const Exponents& e);

/// H(Sigma) = A(Sigma)/mA(Sigma) for a complete simplicial stacky fan.
///
/// Degree d is spanned by the cofacial monomials of degree d modulo the
/// images theta_i * (degree d-1 monomials), theta_i = sum_rho <e_i*, v_rho> x_rho.
/// Classes are coordinate vectors w.r.t. a standard-monomial basis.
class GradedClassSpace {
 public:
  /// Throws InternalConsistencyError when a graded dimension differs from
  /// the fan's h-vector or the evaluation map is inconsistent across cones.
  explicit GradedClassSpace(const StackyFan& fan);

  const StackyFan& fan() const { return fan_; }
  std::size_t top_degree() const { return fan_.rank(); }
  std::size_t dim(std::size_t d) const;
  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;

  /// Spanning cofacial monomials of degree d and the standard basis inside them.
  const std::vector<Exponents>& monomials(std::size_t d) const { return degrees_.at(d).monomials; }
  std::vector<Exponents> basis_monomials(std::size_t d) const;

  /// Class of a monomial; zero when its support is not a cone.
  RatVector class_of(const Exponents& e) const;
  /// Class of a polynomial given by coefficients over monomials(d).
  RatVector reduce(std::size_t d, const RatVector& poly) const;

  RatVector multiply(std::size_t d1, const RatVector& a, std::size_t d2, const RatVector& b) const;
  /// Matrix of multiplication by sum_rho coeffs[rho] x_rho from H^d to H^{d+1}.
  RatMatrix linear_form_matrix(const RatVector& coeffs, std::size_t d) const;
  /// Multiplication by the gauge function (deg_P for the face fan of P).
  RatMatrix lefschetz(std::size_t d) const;
  /// l^power from H^d to H^{d+power}.
  RatMatrix lefschetz_power(std::size_t d, std::size_t power) const;
  /// l on the whole of H, blocks ordered by degree.
  RatMatrix total_lefschetz() const;
  /// Offset of degree d inside the total space.
  std::size_t offset(std::size_t d) const;

  /// Evaluation on H^top, normalised by <x_sigma> = 1 / mult(sigma).
  Rational evaluate(const RatVector& top) const;
  /// Q(a, b) = (-1)^k1 <a * b> when k1 + k2 = top, else 0.
  Rational pairing(std::size_t k1, const RatVector& a, std::size_t k2, const RatVector& b) const;
  /// Gram matrix of Q on H^k x H^{top-k}.
  RatMatrix pairing_matrix(std::size_t k) const;

 private:
  struct Degree {
    std::vector<Exponents> monomials;
    std::map<Exponents, std::size_t> index;
    RowReducer relations{0};
    std::vector<std::size_t> basis;  // free columns of the relation span
  };

  bool cofacial(const Exponents& e) const;
  RatVector lift(std::size_t d, const RatVector& cls) const;

  StackyFan fan_;
  std::vector<Degree> degrees_;
  Rational eval_scale_ = 0;  // <top basis class>
};

struct LefschetzReport {
  bool passed = true;
  std::vector<std::size_t> ranks;     // rank of l^{c-2k} : H^k -> H^{c-k}
  std::vector<std::size_t> expected;  // dim H^k
  std::string detail;
};

struct HodgeRiemannReport {
  bool passed = true;
  std::vector<std::size_t> primitive_dims;
  std::vector<std::vector<Rational>> leading_minors;  // per k
  std::string detail;
};

LefschetzReport hard_lefschetz_check(const GradedClassSpace& h);
HodgeRiemannReport hodge_riemann_check(const GradedClassSpace& h);

}  // namespace nhodge
