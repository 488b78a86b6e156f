#include "nhodge/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace nhodge {

std::string_view to_string(PolytopeDefect d) {
  switch (d) {
    case PolytopeDefect::malformed: return "malformed";
    case PolytopeDefect::not_full_dimensional: return "not-full-dimensional";
    case PolytopeDefect::origin_not_interior: return "origin-not-interior";
    case PolytopeDefect::not_simplicial: return "not-simplicial";
    case PolytopeDefect::redundant_point: return "redundant-point";
  }
  return "unknown";
}

namespace {

std::string format_point(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

LatticePolytope LatticePolytope::validate(std::vector<IntVector> vertices,
                                          std::vector<std::string> labels) {
  if (vertices.empty()) throw PolytopeError(PolytopeDefect::malformed, "no vertices given");
  const std::size_t n = vertices.front().size();
  if (n == 0) throw PolytopeError(PolytopeDefect::malformed, "ambient rank must be at least 1");
  for (const auto& v : vertices)
    if (v.size() != n) throw PolytopeError(PolytopeDefect::malformed, "vertices have unequal length");
  if (!labels.empty() && labels.size() != vertices.size())
    throw PolytopeError(PolytopeDefect::malformed, "label count differs from vertex count");

  {
    std::set<IntVector> seen;
    for (const auto& v : vertices)
      if (!seen.insert(v).second)
        throw PolytopeError(PolytopeDefect::redundant_point, "repeated point " + format_point(v));
  }

  const std::size_t m = vertices.size();
  const IntMatrix vmat = IntMatrix::from_rows(n, vertices);
  if (nhodge::rank(vmat) < n)
    throw PolytopeError(PolytopeDefect::not_full_dimensional, "points span a proper linear subspace");
  {
    IntMatrix diffs(m - 1, n);
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) diffs(i - 1, j) = vertices[i][j] - vertices[0][j];
    if (nhodge::rank(diffs) < n)
      throw PolytopeError(PolytopeDefect::origin_not_interior,
                          "affine hull is a hyperplane missing the origin");
  }

  // Supporting hyperplanes a·x = b spanned by n affinely independent points,
  // oriented so that a·v <= b on every point.
  struct Candidate {
    IntVector a;
    Integer b;
  };
  std::map<std::vector<std::size_t>, Candidate> facet_map;
  for_each_subset(m, n, [&](const std::vector<std::size_t>& subset) {
    RatMatrix sys(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) sys(r, j) = vertices[subset[r]][j];
      sys(r, n) = -1;
    }
    const RankNullspace rn = rank_and_nullspace(sys);
    if (rn.nullspace.cols() != 1) return;
    RatMatrix col(1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) col(0, j) = rn.nullspace(j, 0);
    const IntMatrix ic = clear_row_denominators(col);
    IntVector a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = ic(0, j);
    Integer b = ic(0, n);
    if (gcd_of_entries(a) == 0) return;

    bool above = false, below = false;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < m; ++i) {
      const Integer s = dot(a, vertices[i]) - b;
      if (s > 0) above = true;
      if (s < 0) below = true;
      if (s == 0) on.push_back(i);
    }
    if (above && below) return;
    if (above) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    facet_map.emplace(on, Candidate{std::move(a), std::move(b)});
  });

  // every point must be a vertex: it lies on facets whose normals span N_Q
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<IntVector> normals;
    for (const auto& [verts, cand] : facet_map)
      if (std::binary_search(verts.begin(), verts.end(), i)) normals.push_back(cand.a);
    if (normals.empty() || nhodge::rank(IntMatrix::from_rows(n, normals)) < n)
      throw PolytopeError(PolytopeDefect::redundant_point,
                          format_point(vertices[i]) + " is not a vertex of the convex hull");
  }

  for (const auto& [verts, cand] : facet_map)
    if (cand.b <= 0)
      throw PolytopeError(PolytopeDefect::origin_not_interior,
                          "the origin does not lie strictly inside every facet hyperplane");

  for (const auto& [verts, cand] : facet_map)
    if (verts.size() != n) {
      std::ostringstream os;
      os << "facet with " << verts.size() << " vertices";
      throw PolytopeError(PolytopeDefect::not_simplicial, os.str());
    }

  LatticePolytope p;
  p.rank_ = n;
  p.vertices_ = std::move(vertices);
  p.labels_ = std::move(labels);
  for (auto& [verts, cand] : facet_map) {
    Facet f;
    f.face.vertices = verts;
    f.normal.resize(n);
    for (std::size_t j = 0; j < n; ++j) f.normal[j] = ratio(cand.a[j], cand.b);
    RatMatrix cols(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) cols(r, c) = p.vertices_[verts[c]][r];
    f.inverse = inverse(cols);
    p.facets_.push_back(std::move(f));
    p.int_normals_.push_back(cand.a);
    p.int_offsets_.push_back(cand.b);
  }
  return p;
}

std::vector<Face> LatticePolytope::facet_faces() const {
  std::vector<Face> out;
  for (const auto& f : facets_) out.push_back(f.face);
  return out;
}

std::vector<Face> LatticePolytope::all_faces() const {
  std::set<std::vector<std::size_t>> faces;
  faces.insert(std::vector<std::size_t>{});
  for (const auto& f : facets_) {
    const auto& vs = f.face.vertices;
    const std::size_t k = vs.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t{1} << b)) sub.push_back(vs[b]);
      faces.insert(std::move(sub));
    }
  }
  std::vector<Face> out;
  for (const auto& s : faces) out.push_back(Face{s});
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

Integer LatticePolytope::normalized_volume() const {
  Integer total = 0;
  for (const auto& f : facets_) {
    IntMatrix cols(rank_, rank_);
    for (std::size_t c = 0; c < rank_; ++c)
      for (std::size_t r = 0; r < rank_; ++r) cols(r, c) = vertices_[f.face.vertices[c]][r];
    total += abs(integer_determinant(cols));
  }
  return total;
}

Rational LatticePolytope::degree(const IntVector& x) const {
  if (x.size() != rank_) throw std::invalid_argument("degree: point has wrong rank");
  Rational best = 0;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    Rational val(dot(int_normals_[f], x), int_offsets_[f]);
    val.canonicalize();
    if (val > best) best = val;
  }
  return best;
}

Rational LatticePolytope::degree(const RatVector& x) const { return locate(x).degree; }

ConeLocation LatticePolytope::locate(const RatVector& x) const {
  if (x.size() != rank_) throw std::invalid_argument("locate: point has wrong rank");
  std::size_t best = 0;
  Rational best_val = dot(facets_[0].normal, x);
  for (std::size_t f = 1; f < facets_.size(); ++f) {
    Rational val = dot(facets_[f].normal, x);
    if (val > best_val) {
      best_val = val;
      best = f;
    }
  }
  ConeLocation loc;
  loc.facet = best;
  loc.barycentric = facets_[best].inverse * x;
  loc.degree = 0;
  for (const auto& l : loc.barycentric) loc.degree += l;
  return loc;
}

bool LatticePolytope::contains(const RatVector& x) const { return degree(x) <= 1; }

}  // namespace nhodge
