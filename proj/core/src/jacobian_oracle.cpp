#include "nhodge/jacobian_oracle.hpp"

#include "nhodge/errors.hpp"
#include "nhodge/monodromy.hpp"
#include "nhodge/subspace.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace nhodge {

namespace {

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Integer ceil_of(const Rational& q) {
  Integer f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Runs body(i) for i < count on up to `jobs` threads; the first exception wins.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::size_t exact_rank(const std::vector<RatVector>& rows, std::size_t cols,
                       const std::optional<std::uint64_t>& prime) {
  if (rows.empty() || cols == 0) return 0;
  const RatMatrix m = RatMatrix::from_rows(cols, rows);
  if (prime) {
    // a full modular rank certifies the rational rank; otherwise fall through
    const std::size_t bound = std::min(rows.size(), cols);
    if (rank_mod_p(m, *prime) == bound) return bound;
  }
  return rank(clear_row_denominators(m));
}

RatMatrix submatrix(const RatMatrix& m, std::size_t r0, std::size_t rows, std::size_t c0, std::size_t cols) {
  RatMatrix s(rows, cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) s(i, j) = m(r0 + i, c0 + j);
  return s;
}

Subspace coordinate_subspace(std::size_t ambient, std::size_t begin, std::size_t end) {
  std::vector<RatVector> vs;
  for (std::size_t i = begin; i < end; ++i) {
    RatVector e(ambient, Rational(0));
    e[i] = 1;
    vs.push_back(std::move(e));
  }
  return Subspace::span(ambient, vs);
}

}  // namespace

CoefficientAssignment CoefficientAssignment::all_ones(std::size_t count) {
  CoefficientAssignment a;
  a.values.assign(count, Rational(1));
  return a;
}

CoefficientAssignment CoefficientAssignment::user(RatVector values) {
  for (const auto& v : values)
    if (v == 0) throw std::invalid_argument("coefficients must be nonzero");
  CoefficientAssignment a;
  a.values = std::move(values);
  a.provenance = Provenance::user;
  return a;
}

CoefficientAssignment CoefficientAssignment::seeded_random(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoefficientAssignment a;
  a.provenance = Provenance::seeded_random;
  a.seed = seed;
  for (std::size_t i = 0; i < count; ++i) {
    // numerator in [-9, 9] \ {0}, denominator in [1, 5]
    long num = static_cast<long>(rng() % 18) - 9;
    if (num >= 0) ++num;
    const long den = static_cast<long>(rng() % 5) + 1;
    Rational q(num, den);
    q.canonicalize();
    a.values.push_back(q);
  }
  return a;
}

std::string CoefficientAssignment::describe() const {
  switch (provenance) {
    case Provenance::all_ones: return "ones";
    case Provenance::user: return "user";
    case Provenance::seeded_random: return "random:" + std::to_string(*seed);
  }
  return "unknown";
}

GradedMonomialBasis::GradedMonomialBasis(const LatticePolytope& p, const StackyFan& fan,
                                         const BoxCatalog& boxes, const Rational& max_degree) {
  const std::size_t n = p.rank();
  Integer reach = 0;
  for (const auto& v : p.vertices())
    for (const auto& x : v) reach = std::max(reach, Integer(abs(x)));
  const long bound = Integer(ceil_of(max_degree * reach)).get_si();

  // scan the box [-bound, bound]^n
  std::vector<LatticePointInfo> found;
  IntVector w(n, Integer(-bound));
  while (true) {
    const Rational d = p.degree(w);
    if (d <= max_degree) {
      const FracFloorDecomposition ff = frac_floor(fan, w);
      const auto cls = boxes.find(ff.frac.u);
      if (!cls) throw InternalConsistencyError("fractional part of a lattice point is not a box element");
      LatticePointInfo info;
      info.w = w;
      info.degree = d;
      info.box_class = *cls;
      info.cone = ff.cone;
      const Rational k = d - boxes.element(*cls).degree;
      if (k.get_den() != 1 || k < 0)
        throw InternalConsistencyError("degree of a lattice point is not deg(u) + integer");
      info.piece = k.get_num().get_ui();
      found.push_back(std::move(info));
    }
    std::size_t i = 0;
    while (i < n && w[i] == bound) w[i++] = -bound;
    if (i == n) break;
    ++w[i];
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.w < b.w;
  });

  by_class_.resize(boxes.size());
  for (std::size_t c = 0; c < boxes.size(); ++c) {
    const Rational room = max_degree - boxes.element(c).degree;
    by_class_[c].resize(room < 0 ? 0 : floor_of(room).get_ui() + 1);
  }
  points_ = std::move(found);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto& info = points_[i];
    index_.emplace(info.w, i);
    auto& deg_list = by_degree_[info.degree];
    info.degree_slot = deg_list.size();
    deg_list.push_back(i);
    auto& piece = by_class_.at(info.box_class).at(info.piece);
    info.slot = piece.size();
    piece.push_back(i);
  }
}

std::optional<std::size_t> GradedMonomialBasis::find(const IntVector& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Rational> GradedMonomialBasis::degrees() const {
  std::vector<Rational> out;
  for (const auto& [d, pts] : by_degree_) out.push_back(d);
  return out;
}

const std::vector<std::size_t>& GradedMonomialBasis::at_degree(const Rational& beta) const {
  auto it = by_degree_.find(beta);
  return it == by_degree_.end() ? empty_ : it->second;
}

const std::vector<std::size_t>& GradedMonomialBasis::of_class(std::size_t cls, std::size_t k) const {
  const auto& pieces = by_class_.at(cls);
  return k < pieces.size() ? pieces[k] : empty_;
}

std::size_t GradedMonomialBasis::class_pieces(std::size_t cls) const { return by_class_.at(cls).size(); }

std::size_t ClassBlock::total() const {
  std::size_t t = 0;
  for (auto d : dims) t += d;
  return t;
}

JacobianOracle::JacobianOracle(const LatticePolytope& p)
    : polytope_(p),
      fan_(StackyFan::from_polytope(p)),
      boxes_(fan_),
      basis_(polytope_, fan_, boxes_, Rational(static_cast<long>(p.rank()))) {}

std::optional<std::size_t> JacobianOracle::shift(std::size_t point, std::size_t vertex) const {
  const LatticePointInfo& info = basis_.point(point);
  RaySet rays = fan_.cone(info.cone);
  if (!std::binary_search(rays.begin(), rays.end(), vertex)) {
    rays.insert(std::upper_bound(rays.begin(), rays.end(), vertex), vertex);
    if (!fan_.is_cone(rays)) return std::nullopt;
  }
  IntVector target = info.w;
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += polytope_.vertex(vertex)[i];
  return basis_.find(target);  // empty beyond the truncation degree
}

RatVector JacobianOracle::log_derivative_coeffs(const CoefficientAssignment& a, std::size_t i) const {
  if (a.values.size() != polytope_.vertex_count())
    throw std::invalid_argument("coefficient count differs from vertex count");
  RatVector c = a.values;
  if (i == polytope_.rank()) return c;
  for (std::size_t v = 0; v < c.size(); ++v) c[v] *= polytope_.vertex(v).at(i);
  return c;
}

RatMatrix JacobianOracle::multiplication_matrix(const RatVector& coeffs, const Rational& beta) const {
  const auto& cols = basis_.at_degree(beta);
  const auto& rows = basis_.at_degree(beta + 1);
  RatMatrix m(rows.size(), cols.size(), Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t v = 0; v < coeffs.size(); ++v) {
      if (coeffs[v] == 0) continue;
      if (auto t = shift(cols[j], v)) m(basis_.point(*t).degree_slot, j) += coeffs[v];
    }
  return m;
}

RatMatrix JacobianOracle::class_multiplication_matrix(const RatVector& coeffs, std::size_t cls,
                                                      std::size_t k) const {
  const auto& cols = basis_.of_class(cls, k);
  const auto& rows = basis_.of_class(cls, k + 1);
  RatMatrix m(rows.size(), cols.size(), Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t v = 0; v < coeffs.size(); ++v) {
      if (coeffs[v] == 0) continue;
      auto t = shift(cols[j], v);
      if (!t) continue;
      const LatticePointInfo& target = basis_.point(*t);
      if (target.box_class != cls || target.piece != k + 1)
        throw InternalConsistencyError("multiplication leaves its box class");
      m(target.slot, j) += coeffs[v];
    }
  return m;
}

ClassBlock JacobianOracle::build_block(std::size_t cls, const CoefficientAssignment& a,
                                       const OracleOptions& opts) const {
  const BoxElement& u = boxes_.element(cls);
  ClassBlock b;
  b.box_class = cls;
  b.base_degree = u.degree;
  b.codim = fan_.cone_codim(u.cone);
  const std::size_t pieces = basis_.class_pieces(cls);
  const std::size_t n = polytope_.rank();

  std::vector<RatVector> coeffs;
  for (std::size_t i = 0; i < n; ++i) coeffs.push_back(log_derivative_coeffs(a, i));

  std::vector<RowReducer> reducers;
  for (std::size_t k = 0; k < pieces; ++k) {
    const std::size_t cols = basis_.of_class(cls, k).size();
    std::vector<RatVector> relations;
    if (k > 0) {
      for (const auto& c : coeffs) {
        const RatMatrix m = class_multiplication_matrix(c, cls, k - 1);
        for (std::size_t j = 0; j < m.cols(); ++j) relations.push_back(m.column(j));
      }
    }
    const std::size_t r = exact_rank(relations, cols, opts.prime);
    b.monomial_counts.push_back(cols);
    b.dims.push_back(cols - r);
    if (opts.build_operator) {
      RowReducer red(cols);
      for (auto& rel : relations) red.insert(std::move(rel));
      if (red.rank() != r) throw InternalConsistencyError("row reduction and Bareiss ranks disagree");
      std::vector<std::size_t> basis_points;
      for (std::size_t slot : red.free_columns()) basis_points.push_back(basis_.of_class(cls, k)[slot]);
      b.quotient_basis.push_back(std::move(basis_points));
      reducers.push_back(std::move(red));
    }
  }

  b.offsets.assign(pieces + 1, 0);
  for (std::size_t k = 0; k < pieces; ++k) b.offsets[k + 1] = b.offsets[k] + b.dims[k];
  if (!opts.build_operator) return b;

  const std::size_t total = b.offsets[pieces];
  b.f_operator = RatMatrix(total, total, Rational(0));
  for (std::size_t k = 0; k + 1 < pieces; ++k) {
    const RatMatrix m = class_multiplication_matrix(a.values, cls, k);
    const std::vector<std::size_t> free_next = reducers[k + 1].free_columns();
    for (std::size_t col = 0; col < b.quotient_basis[k].size(); ++col) {
      const std::size_t slot = basis_.point(b.quotient_basis[k][col]).slot;
      const RatVector image = reducers[k + 1].reduce(m.column(slot));
      for (std::size_t r = 0; r < free_next.size(); ++r)
        b.f_operator(b.offsets[k + 1] + r, b.offsets[k] + col) = image[free_next[r]];
    }
  }
  return b;
}

GradedQuotient JacobianOracle::graded_jacobian(const CoefficientAssignment& a, const OracleOptions& opts) const {
  if (a.values.size() != polytope_.vertex_count())
    throw std::invalid_argument("coefficient count differs from vertex count");
  GradedQuotient q;
  q.has_operator = opts.build_operator;
  q.blocks.resize(boxes_.size());
  parallel_for(boxes_.size(), opts.jobs, [&](std::size_t cls) { q.blocks[cls] = build_block(cls, a, opts); });
  for (const auto& b : q.blocks)
    for (std::size_t k = 0; k < b.dims.size(); ++k) {
      if (b.dims[k] == 0) continue;
      q.per_degree[b.base_degree + static_cast<long>(k)] += b.dims[k];
      q.total += b.dims[k];
    }
  return q;
}

CombinatoricsReport JacobianOracle::verify_against_combinatorics(const GradedQuotient& q) const {
  CombinatoricsReport r;
  r.milnor = q.total;
  r.normalized_volume = polytope_.normalized_volume();
  r.total_matches = Integer(static_cast<unsigned long>(q.total)) == r.normalized_volume;
  for (const auto& b : q.blocks) {
    const std::vector<std::int64_t> h = fan_.f_and_h_vector(boxes_.element(b.box_class).cone).h;
    bool same = true;
    for (std::size_t k = 0; k < std::max(h.size(), b.dims.size()); ++k) {
      const std::int64_t expected = k < h.size() ? h[k] : 0;
      const std::int64_t observed = k < b.dims.size() ? static_cast<std::int64_t>(b.dims[k]) : -1;
      if (expected != observed) same = false;
    }
    if (!same) r.mismatches.push_back({b.box_class, b.dims, h});
    for (std::size_t k = 0; k < b.dims.size(); ++k)
      r.oracle_spectrum.add(b.base_degree + static_cast<long>(k), static_cast<std::int64_t>(b.dims[k]));
  }
  r.predicted_spectrum = spectrum(fan_, boxes_);
  r.spectrum_matches = r.oracle_spectrum == r.predicted_spectrum;
  r.passed = r.total_matches && r.spectrum_matches && r.mismatches.empty();
  return r;
}

ClassWeightResult JacobianOracle::check_block(const ClassBlock& b, const CoefficientAssignment& a,
                                              const QuotientFan& quotient, const GradedClassSpace& h,
                                              DiamondPair& diamonds) const {
  ClassWeightResult r;
  r.box_class = b.box_class;
  const BoxElement& u = boxes_.element(b.box_class);
  const int c = static_cast<int>(b.codim);
  const int n = static_cast<int>(polytope_.rank());
  const std::size_t total = b.f_operator.rows();
  std::ostringstream detail;

  if (total == 0) return r;
  std::optional<MonodromyFiltration> m;
  try {
    m = MonodromyFiltration::compute(b.f_operator);
  } catch (const std::invalid_argument&) {
    r.nilpotent = r.lefschetz = r.birkhoff = r.similarity = false;
    r.detail = "[f] is not nilpotent";
    return r;
  }
  for (int k = -c; k <= c; ++k) r.graded_weight_dims.push_back(m->graded_dim(k));

  auto dim_at = [&](int k) -> std::size_t {
    return k >= 0 && static_cast<std::size_t>(k) < b.dims.size() ? b.dims[k] : 0;
  };
  // hard Lefschetz on the block
  for (int k = 0; 2 * k <= c; ++k) {
    const RatMatrix power = matrix_power(b.f_operator, static_cast<std::size_t>(c - 2 * k));
    const RatMatrix sub = submatrix(power, b.offsets[c - k], dim_at(c - k), b.offsets[k], dim_at(k));
    const std::size_t rk = rank(sub);
    if (rk != dim_at(k) || dim_at(k) != dim_at(c - k)) {
      r.lefschetz = false;
      detail << "lefschetz k=" << k << " rank " << rk << " expected " << dim_at(k) << "; ";
    }
  }

  // opposite filtrations: M_{2k-c} and F^{k + floor(deg u^-1) + 1}, F^p = degrees <= n - p
  const Integer fi = floor_of(Rational(static_cast<long>(fan_.cone_dim(u.cone))) - u.degree);
  for (int k = -1; k <= c + 1; ++k) {
    const Subspace& weight = m->level(2 * k - c);
    const Rational top = Rational(static_cast<long>(n - k - 1)) - Rational(fi);
    std::size_t end = 0;
    while (end < b.dims.size() && u.degree + static_cast<long>(end) <= top) ++end;
    const Subspace hodge = coordinate_subspace(total, 0, b.offsets[end]);
    const std::size_t sum = (weight + hodge).dim(), meet = weight.intersect(hodge).dim();
    if (sum != total || meet != 0) {
      r.birkhoff = false;
      detail << "birkhoff k=" << k << " sum " << sum << "/" << total << " meet " << meet << "; ";
    }
  }

  // similarity witness phi: H(Sigma(sigma(u))) -> block, x^e -> prod a^e t^{u + sum e v}
  if (h.total_dim() != total) {
    r.similarity = false;
    detail << "quotient algebra has dimension " << h.total_dim() << "; ";
  } else {
    RatMatrix phi(total, total, Rational(0));
    std::vector<RowReducer> reducers;
    for (std::size_t d = 0; d <= h.top_degree(); ++d) {
      const auto& slots = basis_.of_class(b.box_class, d);
      RowReducer red(slots.size());
      for (std::size_t i = 0; d > 0 && i < static_cast<std::size_t>(n); ++i) {
        const RatMatrix mm = class_multiplication_matrix(log_derivative_coeffs(a, i), b.box_class, d - 1);
        for (std::size_t j = 0; j < mm.cols(); ++j) red.insert(mm.column(j));
      }
      reducers.push_back(std::move(red));
    }
    std::size_t col = 0;
    for (std::size_t d = 0; d <= h.top_degree() && r.similarity; ++d) {
      const std::vector<std::size_t> free_cols = reducers[d].free_columns();
      for (const Exponents& e : h.basis_monomials(d)) {
        IntVector w = u.u;
        Rational coeff = 1;
        for (std::size_t rho = 0; rho < e.size(); ++rho) {
          if (e[rho] == 0) continue;
          const std::size_t v = quotient.ray_origin[rho];
          for (std::size_t i = 0; i < w.size(); ++i) w[i] += e[rho] * polytope_.vertex(v)[i];
          for (int t = 0; t < e[rho]; ++t) coeff *= a.values[v];
        }
        const auto idx = basis_.find(w);
        if (!idx || basis_.point(*idx).box_class != b.box_class || basis_.point(*idx).piece != d) {
          r.similarity = false;
          detail << "witness monomial leaves the block; ";
          break;
        }
        RatVector unit(basis_.of_class(b.box_class, d).size(), Rational(0));
        unit[basis_.point(*idx).slot] = coeff;
        const RatVector red = reducers[d].reduce(std::move(unit));
        for (std::size_t i = 0; i < free_cols.size(); ++i) phi(b.offsets[d] + i, col) = red[free_cols[i]];
        ++col;
      }
    }
    if (r.similarity) {
      if (rank(phi) != total) {
        r.similarity = false;
        detail << "witness is singular; ";
      } else if (!(b.f_operator * phi == phi * h.total_lefschetz())) {
        r.similarity = false;
        detail << "[f] * phi != phi * deg_P; ";
      }
    }
  }

  // Hodge numbers of (F, W) on the block, W_m = M_{m - nu}
  const bool integral = u.degree.get_den() == 1;
  HodgeDiamond& target = integral ? diamonds.integral : diamonds.fractional;
  const int nu = target.weight;
  auto f_level = [&](int p) {
    const Rational top = Rational(static_cast<long>(n - p));
    std::size_t end = 0;
    while (end < b.dims.size() && u.degree + static_cast<long>(end) <= top) ++end;
    return coordinate_subspace(total, 0, b.offsets[end]);
  };
  auto meet_dim = [&](int p, int weight) { return f_level(p).intersect(m->level(weight - nu)).dim(); };
  for (int p = -2; p <= n + 1; ++p)
    for (int w = nu - c - 1; w <= nu + c + 1; ++w) {
      const long gr = static_cast<long>(meet_dim(p, w)) - static_cast<long>(meet_dim(p, w - 1)) -
                      static_cast<long>(meet_dim(p + 1, w)) + static_cast<long>(meet_dim(p + 1, w - 1));
      if (gr < 0) throw InternalConsistencyError("negative Hodge number");
      target.add(p, w - p, gr);
    }

  r.detail = detail.str();
  return r;
}

WeightReport JacobianOracle::weight_and_birkhoff_check(const GradedQuotient& q, const CoefficientAssignment& a) const {
  if (!q.has_operator) throw std::invalid_argument("graded quotient was built without the [f] operator");
  WeightReport report;
  report.oracle_diamonds.integral.weight = static_cast<int>(polytope_.rank());
  report.oracle_diamonds.fractional.weight = static_cast<int>(polytope_.rank()) - 1;

  std::map<ConeId, std::pair<QuotientFan, GradedClassSpace>> algebras;
  for (const auto& b : q.blocks) {
    const ConeId sigma = boxes_.element(b.box_class).cone;
    if (algebras.count(sigma)) continue;
    QuotientFan qf = fan_.quotient(sigma);
    GradedClassSpace h(qf.fan);
    algebras.emplace(sigma, std::make_pair(std::move(qf), std::move(h)));
  }
  for (const auto& b : q.blocks) {
    const auto& [qf, h] = algebras.at(boxes_.element(b.box_class).cone);
    ClassWeightResult r = check_block(b, a, qf, h, report.oracle_diamonds);
    report.lefschetz = report.lefschetz && r.nilpotent && r.lefschetz;
    report.birkhoff = report.birkhoff && r.nilpotent && r.birkhoff;
    report.similarity = report.similarity && r.similarity;
    report.classes.push_back(std::move(r));
  }
  const DiamondPair predicted = assemble_diamonds(fan_, boxes_);
  report.diamond_matches = predicted.integral == report.oracle_diamonds.integral &&
                           predicted.fractional == report.oracle_diamonds.fractional;
  report.passed = report.lefschetz && report.birkhoff && report.similarity && report.diamond_matches;
  return report;
}

}  // namespace nhodge
