#pragma once

#include "nhodge/box_points.hpp"
#include "nhodge/exact_linalg.hpp"
#include "nhodge/stacky_fan.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nhodge {

/// Multiplicities h^{p,q} of a mixed Hodge structure of weight `weight`.
struct HodgeDiamond {
  int weight = 0;
  std::map<std::pair<int, int>, std::int64_t> entries;  // zero entries are never stored

  void add(int p, int q, std::int64_t mult);
  std::int64_t at(int p, int q) const;
  std::int64_t total() const;
  bool is_symmetric() const;
  /// Only (p,p) entries.
  bool is_diagonal() const;
  friend bool operator==(const HodgeDiamond&, const HodgeDiamond&) = default;
};

/// Multiset of spectral numbers: value -> multiplicity.
struct Spectrum {
  std::map<Rational, std::int64_t> values;

  void add(const Rational& v, std::int64_t mult);
  std::int64_t total() const;
  /// mult(beta) == mult(center2/2 * 2 - beta), i.e. symmetric about n/2.
  bool is_symmetric_about(const Rational& center) const;
  bool has_fractional_values() const;
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// (minimal cone, degree) -> number of box elements.
using NCountTable = std::map<std::pair<ConeId, Rational>, std::int64_t>;

/// Counts by minimal cone (each box element counted once).
NCountTable n_counts(const StackyFan& fan, const BoxCatalog& boxes);
/// Counts over Box(sigma) read literally, i.e. including faces of sigma.
NCountTable literal_n_counts(const StackyFan& fan, const BoxCatalog& boxes);

struct DiamondPair {
  HodgeDiamond integral;    // HD_0, weight n
  HodgeDiamond fractional;  // HD_{!=0}, weight n - 1
};

/// Places h_k(Sigma(sigma(u))) at (c-k+floor deg u^{-1}, c-k+floor deg u) for
/// every box element u. Throws InternalConsistencyError if a deposit leaves
/// the band p + q = nu + c - 2k.
DiamondPair assemble_diamonds(const StackyFan& fan, const BoxCatalog& boxes);

/// The matrix h(Sigma(sigma)) * (n(sigma, alpha), n(sigma, alpha+1), ...).
RatMatrix literal_block_matrix(const StackyFan& fan, const NCountTable& counts, ConeId sigma,
                               const Rational& alpha);

/// Rebuilds the diamonds from the literal block matrices; every row of a
/// block must land on one anti-diagonal. Used to cross-check assemble_diamonds.
DiamondPair diamonds_from_blocks(const StackyFan& fan, const BoxCatalog& boxes);

/// {deg(u) + k with multiplicity h_k(Sigma(sigma(u)))}.
Spectrum spectrum(const StackyFan& fan, const BoxCatalog& boxes);

enum class RenderFormat { ascii, json };

RenderFormat parse_render_format(std::string_view name);  // throws std::invalid_argument
std::string render(const HodgeDiamond& d, RenderFormat format);
std::string render(const Spectrum& s, RenderFormat format);

/// "a/b" or "a" for integers.
std::string rational_string(const Rational& q);

}  // namespace nhodge
