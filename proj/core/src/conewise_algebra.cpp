#include "nhodge/conewise_algebra.hpp"

#include "nhodge/errors.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace nhodge {

int monomial_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

// all multisets of size d drawn from `rays`, as dense exponent vectors
void multisets(const RaySet& rays, std::size_t d, std::size_t ray_count, std::set<Exponents>& out) {
  Exponents e(ray_count, 0);
  if (rays.empty()) {
    if (d == 0) out.insert(e);
    return;
  }
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == rays.size()) {
      e[rays[pos]] = left;
      out.insert(e);
      e[rays[pos]] = 0;
      return;
    }
    for (int take = 0; take <= left; ++take) {
      e[rays[pos]] = take;
      self(self, pos + 1, left - take);
    }
    e[rays[pos]] = 0;
  };
  rec(rec, 0, static_cast<int>(d));
}

}  // namespace

GradedClassSpace::GradedClassSpace(const StackyFan& fan) : fan_(fan) {
  if (!fan_.is_complete()) throw std::invalid_argument("H(Sigma) is only built for complete fans");
  const std::size_t c = fan_.rank(), rays = fan_.ray_count();
  const std::vector<ConeId> maximal = fan_.maximal_cones();

  degrees_.resize(c + 1);
  for (std::size_t d = 0; d <= c; ++d) {
    Degree& deg = degrees_[d];
    std::set<Exponents> mons;
    for (ConeId m : maximal) multisets(fan_.cone(m), d, rays, mons);
    deg.monomials.assign(mons.begin(), mons.end());
    for (std::size_t i = 0; i < deg.monomials.size(); ++i) deg.index.emplace(deg.monomials[i], i);
    deg.relations = RowReducer(deg.monomials.size());

    if (d > 0) {
      const Degree& prev = degrees_[d - 1];
      for (const auto& m : prev.monomials)
        for (std::size_t i = 0; i < c; ++i) {
          RatVector row(deg.monomials.size(), Rational(0));
          bool nonzero = false;
          for (std::size_t r = 0; r < rays; ++r) {
            if (fan_.ray(r)[i] == 0) continue;
            Exponents prod = m;
            ++prod[r];
            auto it = deg.index.find(prod);
            if (it == deg.index.end()) continue;  // not cofacial
            row[it->second] += fan_.ray(r)[i];
            nonzero = true;
          }
          if (nonzero) deg.relations.insert(std::move(row));
        }
    }
    deg.basis = deg.relations.free_columns();
  }

  const FHVector fh = fan_.f_and_h_vector(0);
  for (std::size_t d = 0; d <= c; ++d)
    if (static_cast<std::int64_t>(dim(d)) != fh.h[d]) {
      std::ostringstream os;
      os << "dim H^" << d << " = " << dim(d) << " but h_" << d << " = " << fh.h[d];
      throw InternalConsistencyError(os.str());
    }

  // <x_sigma> = 1/mult(sigma) must define a single functional on H^top
  for (ConeId m : maximal) {
    Exponents e(rays, 0);
    for (auto r : fan_.cone(m)) e[r] = 1;
    const RatVector cls = class_of(e);
    if (cls.size() != 1 || cls[0] == 0)
      throw InternalConsistencyError("top-degree class of a maximal cone vanishes");
    const Rational scale = Rational(1) / (Rational(fan_.multiplicity(m)) * cls[0]);
    if (eval_scale_ == 0) {
      eval_scale_ = scale;
    } else if (eval_scale_ != scale) {
      throw InternalConsistencyError("evaluation normalisation differs between maximal cones");
    }
  }
}

std::size_t GradedClassSpace::dim(std::size_t d) const {
  return d < degrees_.size() ? degrees_[d].basis.size() : 0;
}

std::vector<std::size_t> GradedClassSpace::dims() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < degrees_.size(); ++d) out.push_back(dim(d));
  return out;
}

std::size_t GradedClassSpace::total_dim() const {
  std::size_t t = 0;
  for (std::size_t d = 0; d < degrees_.size(); ++d) t += dim(d);
  return t;
}

std::size_t GradedClassSpace::offset(std::size_t d) const {
  std::size_t t = 0;
  for (std::size_t k = 0; k < d && k < degrees_.size(); ++k) t += dim(k);
  return t;
}

std::vector<Exponents> GradedClassSpace::basis_monomials(std::size_t d) const {
  std::vector<Exponents> out;
  for (auto j : degrees_.at(d).basis) out.push_back(degrees_[d].monomials[j]);
  return out;
}

bool GradedClassSpace::cofacial(const Exponents& e) const {
  RaySet support;
  for (std::size_t r = 0; r < e.size(); ++r)
    if (e[r] > 0) support.push_back(r);
  return fan_.is_cone(support);
}

RatVector GradedClassSpace::reduce(std::size_t d, const RatVector& poly) const {
  if (d >= degrees_.size()) return {};
  const Degree& deg = degrees_[d];
  const RatVector r = deg.relations.reduce(poly);
  RatVector cls;
  cls.reserve(deg.basis.size());
  for (auto j : deg.basis) cls.push_back(r[j]);
  return cls;
}

RatVector GradedClassSpace::class_of(const Exponents& e) const {
  if (e.size() != fan_.ray_count()) throw std::invalid_argument("exponent vector has wrong length");
  const auto d = static_cast<std::size_t>(monomial_degree(e));
  if (d >= degrees_.size()) return {};
  const Degree& deg = degrees_[d];
  RatVector poly(deg.monomials.size(), Rational(0));
  auto it = deg.index.find(e);
  if (it == deg.index.end()) return RatVector(deg.basis.size(), Rational(0));
  poly[it->second] = 1;
  return reduce(d, poly);
}

RatVector GradedClassSpace::lift(std::size_t d, const RatVector& cls) const {
  const Degree& deg = degrees_.at(d);
  if (cls.size() != deg.basis.size()) throw std::invalid_argument("class has wrong dimension");
  RatVector poly(deg.monomials.size(), Rational(0));
  for (std::size_t j = 0; j < cls.size(); ++j) poly[deg.basis[j]] = cls[j];
  return poly;
}

RatVector GradedClassSpace::multiply(std::size_t d1, const RatVector& a, std::size_t d2,
                                     const RatVector& b) const {
  const std::size_t d = d1 + d2;
  if (d >= degrees_.size()) return {};
  const RatVector pa = lift(d1, a), pb = lift(d2, b);
  const Degree& target = degrees_[d];
  RatVector prod(target.monomials.size(), Rational(0));
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] == 0) continue;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (pb[j] == 0) continue;
      Exponents e = degrees_[d1].monomials[i];
      const Exponents& f = degrees_[d2].monomials[j];
      for (std::size_t r = 0; r < e.size(); ++r) e[r] += f[r];
      auto it = target.index.find(e);
      if (it == target.index.end()) continue;
      prod[it->second] += pa[i] * pb[j];
    }
  }
  return reduce(d, prod);
}

RatMatrix GradedClassSpace::linear_form_matrix(const RatVector& coeffs, std::size_t d) const {
  if (coeffs.size() != fan_.ray_count()) throw std::invalid_argument("linear form has wrong length");
  const std::size_t rows = dim(d + 1), cols = dim(d);
  RatMatrix m(rows, cols, Rational(0));
  if (rows == 0 || cols == 0) return m;
  const Degree& src = degrees_[d];
  const Degree& dst = degrees_[d + 1];
  for (std::size_t j = 0; j < cols; ++j) {
    RatVector poly(dst.monomials.size(), Rational(0));
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      if (coeffs[r] == 0) continue;
      Exponents e = src.monomials[src.basis[j]];
      ++e[r];
      auto it = dst.index.find(e);
      if (it != dst.index.end()) poly[it->second] += coeffs[r];
    }
    const RatVector cls = reduce(d + 1, poly);
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cls[i];
  }
  return m;
}

RatMatrix GradedClassSpace::lefschetz(std::size_t d) const { return linear_form_matrix(fan_.gauge(), d); }

RatMatrix GradedClassSpace::lefschetz_power(std::size_t d, std::size_t power) const {
  RatMatrix m = RatMatrix::identity(dim(d));
  for (std::size_t p = 0; p < power; ++p) m = lefschetz(d + p) * m;
  return m;
}

RatMatrix GradedClassSpace::total_lefschetz() const {
  const std::size_t n = total_dim();
  RatMatrix m(n, n, Rational(0));
  for (std::size_t d = 0; d + 1 < degrees_.size(); ++d) {
    const RatMatrix block = lefschetz(d);
    const std::size_t ro = offset(d + 1), co = offset(d);
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) m(ro + i, co + j) = block(i, j);
  }
  return m;
}

Rational GradedClassSpace::evaluate(const RatVector& top) const {
  if (top.size() != 1) throw std::invalid_argument("evaluation expects a top-degree class");
  return eval_scale_ * top[0];
}

Rational GradedClassSpace::pairing(std::size_t k1, const RatVector& a, std::size_t k2,
                                   const RatVector& b) const {
  if (k1 + k2 != top_degree()) return 0;
  const Rational v = evaluate(multiply(k1, a, k2, b));
  return (k1 % 2 == 0) ? v : Rational(-v);
}

RatMatrix GradedClassSpace::pairing_matrix(std::size_t k) const {
  const std::size_t c = top_degree();
  if (k > c) return RatMatrix();
  const std::size_t p = dim(k), q = dim(c - k);
  RatMatrix g(p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      RatVector a(p, Rational(0)), b(q, Rational(0));
      a[i] = 1;
      b[j] = 1;
      g(i, j) = pairing(k, a, c - k, b);
    }
  return g;
}

LefschetzReport hard_lefschetz_check(const GradedClassSpace& h) {
  LefschetzReport rep;
  const std::size_t c = h.top_degree();
  for (std::size_t k = 0; 2 * k <= c; ++k) {
    const std::size_t r = rank(h.lefschetz_power(k, c - 2 * k));
    rep.ranks.push_back(r);
    rep.expected.push_back(h.dim(k));
    if (r != h.dim(k) || h.dim(k) != h.dim(c - k)) {
      rep.passed = false;
      std::ostringstream os;
      os << "l^" << c - 2 * k << ": H^" << k << " -> H^" << c - k << " has rank " << r << ", expected "
         << h.dim(k) << "; ";
      rep.detail += os.str();
    }
  }
  return rep;
}

HodgeRiemannReport hodge_riemann_check(const GradedClassSpace& h) {
  HodgeRiemannReport rep;
  const std::size_t c = h.top_degree();
  for (std::size_t k = 0; 2 * k <= c; ++k) {
    // primitive part: kernel of l^{c-2k+1} on H^k
    const RatMatrix lp = h.lefschetz_power(k, c - 2 * k + 1);
    std::vector<RatVector> prim;
    if (lp.rows() == 0) {
      for (std::size_t i = 0; i < h.dim(k); ++i) {
        RatVector e(h.dim(k), Rational(0));
        e[i] = 1;
        prim.push_back(std::move(e));
      }
    } else {
      const RankNullspace rn = rank_and_nullspace(lp);
      for (std::size_t j = 0; j < rn.nullspace.cols(); ++j) prim.push_back(rn.nullspace.column(j));
    }
    rep.primitive_dims.push_back(prim.size());

    const RatMatrix lmid = h.lefschetz_power(k, c - 2 * k);
    const std::size_t p = prim.size();
    RatMatrix gram(p, p);
    for (std::size_t i = 0; i < p; ++i) {
      const RatVector li = lmid * prim[i];
      for (std::size_t j = 0; j < p; ++j) {
        Rational v = h.evaluate(h.multiply(c - k, li, k, prim[j]));
        gram(i, j) = (k % 2 == 0) ? v : Rational(-v);
      }
    }
    std::vector<Rational> minors;
    for (std::size_t s = 1; s <= p; ++s) {
      RatMatrix lead(s, s);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) lead(i, j) = gram(i, j);
      minors.push_back(determinant(lead));
      if (minors.back() <= 0) {
        rep.passed = false;
        std::ostringstream os;
        os << "k=" << k << ": leading minor " << s << " = " << minors.back() << "; ";
        rep.detail += os.str();
      }
    }
    rep.leading_minors.push_back(std::move(minors));
  }
  return rep;
}

}  // namespace nhodge
