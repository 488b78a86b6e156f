#include "nhodge/stacky_fan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nhodge {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_subset(const RaySet& small, const RaySet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<std::int64_t> h_from_f(const std::vector<std::int64_t>& f) {
  const std::int64_t c = static_cast<std::int64_t>(f.size()) - 1;
  std::vector<std::int64_t> h(f.size(), 0);
  for (std::int64_t k = 0; k <= c; ++k)
    for (std::int64_t j = 0; j <= k; ++j) {
      const std::int64_t term = f[j] * binomial(c - j, k - j);
      h[k] += ((k - j) % 2 == 0) ? term : -term;
    }
  return h;
}

StackyFan::StackyFan(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
                     RatVector gauge, bool complete)
    : rank_(rank), rays_(std::move(rays)), gauge_(std::move(gauge)), complete_(complete) {
  if (gauge_.size() != rays_.size()) throw std::invalid_argument("gauge length differs from ray count");
  for (const auto& r : rays_)
    if (r.size() != rank_) throw std::invalid_argument("ray has wrong rank");

  std::set<RaySet> closed;
  closed.insert(RaySet{});
  for (RaySet c : cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw std::invalid_argument("cone lists a ray twice");
    for (auto r : c)
      if (r >= rays_.size()) throw std::invalid_argument("cone references unknown ray");
    const std::size_t k = c.size();
    if (k > 8 * sizeof(std::size_t) - 1) throw std::invalid_argument("cone too large");
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      RaySet sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t{1} << b)) sub.push_back(c[b]);
      closed.insert(std::move(sub));
    }
  }
  cones_.assign(closed.begin(), closed.end());
  std::stable_sort(cones_.begin(), cones_.end(),
                   [](const RaySet& a, const RaySet& b) { return a.size() < b.size(); });
  for (ConeId i = 0; i < cones_.size(); ++i) index_.emplace(cones_[i], i);

  maximal_inverse_.resize(cones_.size());
  for (ConeId i = 0; i < cones_.size(); ++i) {
    if (cones_[i].size() != rank_) continue;
    const IntMatrix g = generator_matrix(i);
    if (integer_determinant(g) == 0) throw std::invalid_argument("cone generators are linearly dependent");
    maximal_inverse_[i] = inverse(to_rational(g));
  }
  for (ConeId i = 0; i < cones_.size(); ++i)
    if (cones_[i].size() < rank_ && cones_[i].size() > 0 && nhodge::rank(generator_matrix(i)) != cones_[i].size())
      throw std::invalid_argument("cone generators are linearly dependent");
}

StackyFan StackyFan::from_polytope(const LatticePolytope& p) {
  std::vector<RaySet> cones;
  for (const auto& f : p.facets()) cones.push_back(f.face.vertices);
  return StackyFan(p.rank(), p.vertices(), cones, RatVector(p.vertex_count(), Rational(1)), true);
}

std::optional<ConeId> StackyFan::find_cone(const RaySet& rays) const {
  RaySet key = rays;
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ConeId> StackyFan::maximal_cones() const {
  std::vector<ConeId> out;
  for (ConeId i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (ConeId j = 0; j < cones_.size() && maximal; ++j)
      if (cones_[j].size() > cones_[i].size() && is_subset(cones_[i], cones_[j])) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

IntMatrix StackyFan::generator_matrix(ConeId id) const {
  const RaySet& c = cones_.at(id);
  IntMatrix g(rank_, c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < rank_; ++i) g(i, j) = rays_[c[j]][i];
  return g;
}

StarLink StackyFan::star_closed_star_link(ConeId sigma) const {
  if (sigma >= cones_.size()) throw std::invalid_argument("cone is not in the fan");
  const RaySet& s = cones_[sigma];
  StarLink out;
  for (ConeId i = 0; i < cones_.size(); ++i)
    if (is_subset(s, cones_[i])) out.star.push_back(i);
  for (ConeId i = 0; i < cones_.size(); ++i) {
    bool in_closure = false;
    for (ConeId d : out.star)
      if (is_subset(cones_[i], cones_[d])) {
        in_closure = true;
        break;
      }
    if (!in_closure) continue;
    out.closed_star.push_back(i);
    bool disjoint = true;
    for (auto r : cones_[i])
      if (std::binary_search(s.begin(), s.end(), r)) disjoint = false;
    if (disjoint) out.link.push_back(i);
  }
  return out;
}

QuotientFan StackyFan::quotient(ConeId sigma) const {
  if (sigma >= cones_.size()) throw std::invalid_argument("cone is not in the fan");
  const RaySet& s = cones_[sigma];
  const std::size_t d = s.size(), c = rank_ - d;

  IntMatrix projection(c, rank_);
  RatVector linear(rank_, Rational(0));  // agrees with the gauge on sigma
  if (d == 0) {
    projection = IntMatrix::identity(rank_);
  } else {
    const IntMatrix g = generator_matrix(sigma);
    const SmithDecomposition snf = smith_normal_form(g);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < rank_; ++j) projection(i, j) = snf.left(d + i, j);
    RatVector rhs(d);
    for (std::size_t k = 0; k < d; ++k) rhs[k] = gauge_[s[k]];
    auto sol = solve_exact(to_rational(g.transpose()), rhs);
    if (!sol) throw std::logic_error("independent generators admit no interpolating functional");
    linear = *sol;
  }

  const StarLink sl = star_closed_star_link(sigma);
  std::vector<std::size_t> ray_origin;
  std::map<std::size_t, std::size_t> ray_new;
  for (ConeId cid : sl.star)
    for (auto r : cones_[cid])
      if (!std::binary_search(s.begin(), s.end(), r)) ray_new.emplace(r, 0);
  for (auto& [old, nw] : ray_new) {
    nw = ray_origin.size();
    ray_origin.push_back(old);
  }

  std::vector<IntVector> qrays;
  RatVector qgauge;
  for (auto old : ray_origin) {
    qrays.push_back(projection * rays_[old]);
    qgauge.push_back(gauge_[old] - dot(linear, to_rational(rays_[old])));
  }
  std::vector<RaySet> qcones;
  std::vector<RaySet> qcone_from;
  for (ConeId cid : sl.star) {
    RaySet q;
    for (auto r : cones_[cid])
      if (!std::binary_search(s.begin(), s.end(), r)) q.push_back(ray_new.at(r));
    std::sort(q.begin(), q.end());
    qcones.push_back(q);
  }

  StackyFan qfan(c, std::move(qrays), qcones, std::move(qgauge), complete_);
  std::vector<ConeId> cone_origin(qfan.cones().size());
  for (std::size_t k = 0; k < sl.star.size(); ++k) cone_origin[*qfan.find_cone(qcones[k])] = sl.star[k];
  return QuotientFan{sigma, std::move(qfan), std::move(ray_origin), std::move(cone_origin),
                     std::move(projection)};
}

QuotientFan QuotientFan::with_basis_change(const IntMatrix& change) const {
  const std::size_t c = fan.rank();
  if (change.rows() != c || change.cols() != c) throw std::invalid_argument("basis change has wrong shape");
  if (c > 0 && abs(integer_determinant(change)) != 1)
    throw std::invalid_argument("basis change must be unimodular");
  std::vector<IntVector> rays;
  for (const auto& r : fan.rays()) rays.push_back(change * r);
  StackyFan moved(c, std::move(rays), fan.cones(), fan.gauge(), fan.is_complete());
  return QuotientFan{base_cone, std::move(moved), ray_origin, cone_origin, change * projection};
}

Integer StackyFan::multiplicity(ConeId sigma) const {
  if (sigma >= cones_.size()) throw std::invalid_argument("cone is not in the fan");
  if (cones_[sigma].empty()) return 1;
  const SmithDecomposition snf = smith_normal_form(generator_matrix(sigma));
  Integer m = 1;
  for (const auto& d : snf.diagonal()) m *= d;
  return m;
}

FHVector StackyFan::f_and_h_vector(ConeId sigma) const {
  if (sigma >= cones_.size()) throw std::invalid_argument("cone is not in the fan");
  const std::size_t d = cones_[sigma].size(), c = rank_ - d;
  FHVector out;
  out.f.assign(c + 1, 0);
  for (ConeId i = 0; i < cones_.size(); ++i)
    if (is_subset(cones_[sigma], cones_[i])) ++out.f[cones_[i].size() - d];
  out.h = h_from_f(out.f);
  return out;
}

FanLocation StackyFan::locate(const RatVector& x) const {
  if (x.size() != rank_) throw std::invalid_argument("locate: point has wrong rank");
  for (ConeId i = 0; i < cones_.size(); ++i) {
    if (maximal_inverse_[i].rows() == 0 && rank_ > 0) continue;
    if (rank_ == 0) return {i, {}};
    RatVector lambda = maximal_inverse_[i] * x;
    if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; }))
      return {i, std::move(lambda)};
  }
  throw std::domain_error("point lies outside the support of the fan");
}

}  // namespace nhodge
