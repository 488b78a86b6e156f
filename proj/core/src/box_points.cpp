#include "nhodge/box_points.hpp"

#include <algorithm>
#include <stdexcept>

namespace nhodge {

namespace {

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

IntVector to_integer_point(const RatVector& x) {
  IntVector out;
  out.reserve(x.size());
  for (const auto& q : x) {
    if (q.get_den() != 1) throw std::logic_error("expected a lattice point");
    out.push_back(q.get_num());
  }
  return out;
}

}  // namespace

BoxElement make_box_element(const StackyFan& fan, ConeId cone, const RatVector& lambda) {
  const RaySet& rays = fan.cone(cone);
  if (lambda.size() != rays.size()) throw std::invalid_argument("coordinate count differs from cone dimension");
  RaySet support;
  RatVector coords;
  RatVector u(fan.rank(), Rational(0));
  Rational degree = 0;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    if (lambda[k] < 0 || lambda[k] >= 1) throw std::invalid_argument("box coordinates must lie in [0,1)");
    if (lambda[k] == 0) continue;
    support.push_back(rays[k]);
    coords.push_back(lambda[k]);
    degree += fan.gauge()[rays[k]] * lambda[k];
    for (std::size_t i = 0; i < fan.rank(); ++i) u[i] += lambda[k] * fan.ray(rays[k])[i];
  }
  BoxElement b;
  b.u = to_integer_point(u);
  b.cone = *fan.find_cone(support);
  b.lambda = std::move(coords);
  b.degree = degree;
  b.inverse_u.assign(fan.rank(), Integer(0));
  for (auto r : support)
    for (std::size_t i = 0; i < fan.rank(); ++i) b.inverse_u[i] += fan.ray(r)[i];
  for (std::size_t i = 0; i < fan.rank(); ++i) b.inverse_u[i] -= b.u[i];
  return b;
}

std::vector<BoxElement> box_of_cone(const StackyFan& fan, ConeId sigma) {
  const std::size_t d = fan.cone_dim(sigma), n = fan.rank();
  if (d == 0) return {make_box_element(fan, sigma, {})};

  const IntMatrix g = fan.generator_matrix(sigma);
  const RatMatrix gq = to_rational(g);
  const SmithDecomposition snf = smith_normal_form(g);
  const std::vector<Integer> diag = snf.diagonal();

  // coset representatives of Z<v_rho> in its saturation: U * (k_1..k_d, 0..0)
  std::vector<BoxElement> out;
  std::vector<Integer> k(d, Integer(0));
  for (;;) {
    IntVector y(n, Integer(0));
    for (std::size_t i = 0; i < d; ++i) y[i] = k[i];
    const IntVector x = snf.U * y;
    auto lambda = solve_exact(gq, to_rational(x));
    if (!lambda) throw std::logic_error("coset representative escaped the span of the cone");
    for (auto& l : *lambda) l -= floor_of(l);
    out.push_back(make_box_element(fan, sigma, *lambda));

    std::size_t pos = 0;
    while (pos < d) {
      ++k[pos];
      if (k[pos] < diag[pos]) break;
      k[pos] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  std::sort(out.begin(), out.end(), [](const BoxElement& a, const BoxElement& b) { return a.u < b.u; });
  return out;
}

std::vector<BoxElement> interior_box_of_cone(const StackyFan& fan, ConeId sigma) {
  std::vector<BoxElement> all = box_of_cone(fan, sigma);
  std::erase_if(all, [sigma](const BoxElement& b) { return b.cone != sigma; });
  return all;
}

BoxCatalog::BoxCatalog(const StackyFan& fan) {
  if (!fan.is_complete()) throw std::invalid_argument("Box(Sigma) needs a complete fan");
  for (ConeId c = 0; c < fan.cones().size(); ++c)
    for (auto& b : interior_box_of_cone(fan, c)) {
      index_.emplace(b.u, elements_.size());
      elements_.push_back(std::move(b));
    }
  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto it = index_.find(elements_[i].inverse_u);
    if (it == index_.end()) throw std::logic_error("inverse of a box element is missing from Box(Sigma)");
    inverse_[i] = it->second;
  }
}

std::optional<std::size_t> BoxCatalog::find(const IntVector& u) const {
  auto it = index_.find(u);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> BoxCatalog::interior_of(ConeId sigma) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].cone == sigma) out.push_back(i);
  return out;
}

FracFloorDecomposition frac_floor(const StackyFan& fan, const IntVector& w) {
  const FanLocation loc = fan.locate(to_rational(w));
  const RaySet& rays = fan.cone(loc.maximal_cone);
  RatVector frac(rays.size());
  FracFloorDecomposition out;
  out.w = w;
  out.floor.assign(fan.rank(), Integer(0));
  RaySet support;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    const Integer fl = floor_of(loc.barycentric[k]);
    frac[k] = loc.barycentric[k] - fl;
    if (loc.barycentric[k] > 0) {
      support.push_back(rays[k]);
      out.floor_coeffs.push_back(fl);
    }
    for (std::size_t i = 0; i < fan.rank(); ++i) out.floor[i] += fl * fan.ray(rays[k])[i];
  }
  out.frac = make_box_element(fan, loc.maximal_cone, frac);
  out.cone = *fan.find_cone(support);
  return out;
}

BoxElement inverse_element(const StackyFan& fan, const BoxElement& u) {
  RatVector lambda;
  lambda.reserve(u.lambda.size());
  for (const auto& l : u.lambda) lambda.push_back(Rational(1) - l);
  return make_box_element(fan, u.cone, lambda);
}

}  // namespace nhodge
