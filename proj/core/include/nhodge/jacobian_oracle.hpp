#pragma once

// Independent check of the combinatorial predictions: the Newton-graded
// Jacobian ring Gr^N J_f of f = sum_v a_v t^v is computed by exact linear
// algebra on lattice points and compared block by block against the
// h-vectors of quotient fans.

#include "nhodge/box_points.hpp"
#include "nhodge/conewise_algebra.hpp"
#include "nhodge/hodge_diamond.hpp"
#include "nhodge/polytope.hpp"
#include "nhodge/stacky_fan.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhodge {

/// Nonzero coefficients a_v, one per vertex in input order.
struct CoefficientAssignment {
  enum class Provenance { all_ones, user, seeded_random };

  RatVector values;
  Provenance provenance = Provenance::all_ones;
  std::optional<std::uint64_t> seed;

  static CoefficientAssignment all_ones(std::size_t count);
  /// Throws std::invalid_argument on a zero coefficient.
  static CoefficientAssignment user(RatVector values);
  /// Small nonzero rationals drawn from a seeded mt19937_64.
  static CoefficientAssignment seeded_random(std::size_t count, std::uint64_t seed);

  std::string describe() const;
};

struct LatticePointInfo {
  IntVector w;
  Rational degree;
  std::size_t box_class = 0;  // index into the BoxCatalog
  ConeId cone = 0;            // minimal cone of w
  std::size_t piece = 0;        // degree - deg(u)
  std::size_t slot = 0;         // position inside of_class(box_class, piece)
  std::size_t degree_slot = 0;  // position inside at_degree(degree)
};

/// All lattice points of degree <= max_degree, grouped by degree and box class.
class GradedMonomialBasis {
 public:
  GradedMonomialBasis(const LatticePolytope& p, const StackyFan& fan, const BoxCatalog& boxes,
                      const Rational& max_degree);

  const std::vector<LatticePointInfo>& points() const { return points_; }
  const LatticePointInfo& point(std::size_t i) const { return points_.at(i); }
  std::optional<std::size_t> find(const IntVector& w) const;

  std::vector<Rational> degrees() const;
  /// Point indices of a given degree (empty when none).
  const std::vector<std::size_t>& at_degree(const Rational& beta) const;
  /// Points of class `cls` at degree deg(u) + k.
  const std::vector<std::size_t>& of_class(std::size_t cls, std::size_t k) const;
  std::size_t class_pieces(std::size_t cls) const;

 private:
  std::vector<LatticePointInfo> points_;
  std::map<IntVector, std::size_t> index_;
  std::map<Rational, std::vector<std::size_t>> by_degree_;
  std::vector<std::vector<std::vector<std::size_t>>> by_class_;
  std::vector<std::size_t> empty_;
};

/// Jacobian data of one box class u.
struct ClassBlock {
  std::size_t box_class = 0;
  Rational base_degree;                           // deg(u)
  std::size_t codim = 0;                          // codim sigma(u)
  std::vector<std::size_t> dims;                  // dim of the piece at deg(u) + k
  std::vector<std::size_t> monomial_counts;       // lattice points at deg(u) + k
  std::vector<std::vector<std::size_t>> quotient_basis;  // point indices per piece
  RatMatrix f_operator;                           // [f] on the sum of the pieces
  std::vector<std::size_t> offsets;               // piece k starts at offsets[k]
  std::size_t total() const;
};

struct GradedQuotient {
  std::vector<ClassBlock> blocks;               // one per box element, catalog order
  std::map<Rational, std::size_t> per_degree;   // dim Gr^N_beta J_f
  std::size_t total = 0;
  bool has_operator = false;
};

struct OracleOptions {
  std::optional<std::uint64_t> prime;  // modular rank precheck
  unsigned jobs = 1;
  bool build_operator = true;
};

struct ClassMismatch {
  std::size_t box_class = 0;
  std::vector<std::size_t> observed;
  std::vector<std::int64_t> expected;
};

struct CombinatoricsReport {
  bool passed = true;
  bool total_matches = true;
  bool spectrum_matches = true;
  std::size_t milnor = 0;
  Integer normalized_volume = 0;
  std::vector<ClassMismatch> mismatches;
  Spectrum oracle_spectrum;
  Spectrum predicted_spectrum;
};

struct ClassWeightResult {
  std::size_t box_class = 0;
  bool nilpotent = true;
  bool lefschetz = true;
  bool birkhoff = true;
  bool similarity = true;
  std::vector<std::size_t> graded_weight_dims;  // dim Gr^M_m for m = -c..c
  std::string detail;
};

struct WeightReport {
  bool passed = true;
  bool lefschetz = true;
  bool birkhoff = true;
  bool similarity = true;
  bool diamond_matches = true;
  DiamondPair oracle_diamonds;
  std::vector<ClassWeightResult> classes;
};

class JacobianOracle {
 public:
  explicit JacobianOracle(const LatticePolytope& p);

  const LatticePolytope& polytope() const { return polytope_; }
  const StackyFan& fan() const { return fan_; }
  const BoxCatalog& boxes() const { return boxes_; }
  const GradedMonomialBasis& basis() const { return basis_; }

  /// Multiplication by sum_v coeffs[v] t^v from degree beta to beta + 1,
  /// columns = points at beta, rows = points at beta + 1 (at_degree order).
  RatMatrix multiplication_matrix(const RatVector& coeffs, const Rational& beta) const;
  /// The same restricted to box class `cls`, piece k -> k + 1.
  RatMatrix class_multiplication_matrix(const RatVector& coeffs, std::size_t cls, std::size_t k) const;

  /// Coefficient vector of t_i df/dt_i (i < rank) or of f itself (i == rank).
  RatVector log_derivative_coeffs(const CoefficientAssignment& a, std::size_t i) const;

  GradedQuotient graded_jacobian(const CoefficientAssignment& a, const OracleOptions& opts = {}) const;
  CombinatoricsReport verify_against_combinatorics(const GradedQuotient& q) const;
  /// Needs a quotient built with build_operator.
  WeightReport weight_and_birkhoff_check(const GradedQuotient& q, const CoefficientAssignment& a) const;

 private:
  ClassBlock build_block(std::size_t cls, const CoefficientAssignment& a, const OracleOptions& opts) const;
  ClassWeightResult check_block(const ClassBlock& b, const CoefficientAssignment& a,
                                const QuotientFan& quotient, const GradedClassSpace& h,
                                DiamondPair& diamonds) const;
  /// Product of t^w with the vertex t^v when cofacial.
  std::optional<std::size_t> shift(std::size_t point, std::size_t vertex) const;

  LatticePolytope polytope_;
  StackyFan fan_;
  BoxCatalog boxes_;
  GradedMonomialBasis basis_;
};

}  // namespace nhodge
