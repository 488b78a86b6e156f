#include "nhodge/exact_linalg.hpp"

#include <algorithm>
#include <utility>

namespace nhodge {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

IntMatrix clear_row_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return out;
}

Integer gcd_of_entries(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SmithWork {
  IntMatrix a, U, V, left, right;

  // a <- E a where E adds k * row j to row i.
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) += k * left(j, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= k * U(r, i);
  }
  // a <- a E where E adds k * column i to column j.
  void add_col(std::size_t j, std::size_t i, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) += k * a(r, i);
    for (std::size_t r = 0; r < right.rows(); ++r) right(r, j) += k * right(r, i);
    for (std::size_t c = 0; c < V.cols(); ++c) V(i, c) -= k * V(j, c);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    U.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    right.swap_cols(i, j);
    V.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }
};

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  SmithWork w{input, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
              IntMatrix::identity(n)};
  IntMatrix& a = w.a;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i)
        if (a(i, t) != 0) {
          w.add_row(i, t, -trunc_div(a(i, t), a(t, t)));
          dirty = dirty || a(i, t) != 0;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(t, j) != 0) {
          w.add_col(j, t, -trunc_div(a(t, j), a(t, t)));
          dirty = dirty || a(t, j) != 0;
        }
      if (dirty) continue;

      // divisibility: fold an offending row into row t and go again
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.add_row(t, bad, Integer(1));
    }
    if (a(t, t) < 0) w.negate_row(t);
  }
  return {std::move(w.U), std::move(w.a), std::move(w.V), std::move(w.left), std::move(w.right)};
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

EchelonForm bareiss_echelon(IntMatrix a) {
  EchelonForm out;
  const std::size_t m = a.rows(), n = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r) {
      a.swap_rows(p, r);
      out.sign = -out.sign;
    }
    const Integer& piv = a(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a(i, j) = piv * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.matrix = std::move(a);
  return out;
}

std::size_t rank(const IntMatrix& a) { return bareiss_echelon(a).rank(); }

std::size_t rank(const RatMatrix& a) { return bareiss_echelon(clear_row_denominators(a)).rank(); }

std::size_t rank_mod_p(const IntMatrix& a, std::uint64_t prime) {
  if (prime < 2) throw std::invalid_argument("rank_mod_p: modulus must be a prime >= 2");
  __extension__ using u128 = unsigned __int128;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::uint64_t> w(m * n);
  Integer tmp;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpz_fdiv_r_ui(tmp.get_mpz_t(), a(i, j).get_mpz_t(), prime);
      w[i * n + j] = tmp.get_ui();
    }
  auto inv = [prime](std::uint64_t x) {
    std::uint64_t result = 1, e = prime - 2;
    while (e) {
      if (e & 1) result = static_cast<std::uint64_t>(u128(result) * x % prime);
      x = static_cast<std::uint64_t>(u128(x) * x % prime);
      e >>= 1;
    }
    return result;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && w[p * n + c] == 0) ++p;
    if (p == m) continue;
    if (p != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(w[p * n + j], w[r * n + j]);
    const std::uint64_t pinv = inv(w[r * n + c]);
    for (std::size_t i = r + 1; i < m; ++i) {
      const std::uint64_t f = static_cast<std::uint64_t>(u128(w[i * n + c]) * pinv % prime);
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>(u128(f) * w[r * n + j] % prime);
        w[i * n + j] = (w[i * n + j] + prime - sub) % prime;
      }
    }
    ++r;
  }
  return r;
}

std::size_t rank_mod_p(const RatMatrix& a, std::uint64_t prime) {
  return rank_mod_p(clear_row_denominators(a), prime);
}

ReducedEchelon reduced_row_echelon(const RatMatrix& a) {
  EchelonForm ech = bareiss_echelon(clear_row_denominators(a));
  const std::size_t r = ech.rank(), n = a.cols();
  RatMatrix red(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& piv = ech.matrix(i, ech.pivot_cols[i]);
    for (std::size_t j = 0; j < n; ++j) red(i, j) = ratio(ech.matrix(i, j), piv);
  }
  // back substitution clears entries above each pivot
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = ech.pivot_cols[i];
    for (std::size_t k = 0; k < i; ++k) {
      const Rational f = red(k, pc);
      if (f == 0) continue;
      for (std::size_t j = pc; j < n; ++j) red(k, j) -= f * red(i, j);
    }
  }
  return {std::move(red), std::move(ech.pivot_cols)};
}

RankNullspace rank_and_nullspace(const RatMatrix& a) {
  const std::size_t n = a.cols();
  ReducedEchelon rre = reduced_row_echelon(a);
  const std::size_t r = rre.pivot_cols.size();
  std::vector<bool> is_pivot(n, false);
  for (auto c : rre.pivot_cols) is_pivot[c] = true;

  RatMatrix basis(n, n - r, Rational(0));
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, col) = 1;
    for (std::size_t i = 0; i < r; ++i) basis(rre.pivot_cols[i], col) = -rre.matrix(i, f);
    ++col;
  }
  return {r, std::move(basis)};
}

std::optional<RatVector> solve_exact(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_exact: rhs length mismatch");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  ReducedEchelon rre = reduced_row_echelon(aug);
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < rre.pivot_cols.size(); ++i) {
    if (rre.pivot_cols[i] == n) return std::nullopt;
    x[rre.pivot_cols[i]] = rre.matrix(i, n);
  }
  return x;
}

Integer integer_determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  EchelonForm ech = bareiss_echelon(a);
  if (ech.rank() < n) return 0;
  return ech.sign * ech.matrix(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Rational scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    scale /= l;
  }
  return scale * integer_determinant(clear_row_denominators(a));
}

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  RatMatrix aug(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  ReducedEchelon rre = reduced_row_echelon(aug);
  if (rre.pivot_cols.size() < n || rre.pivot_cols[n - 1] != n - 1)
    throw std::domain_error("inverse of a singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rre.matrix(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// RowReducer

RatVector RowReducer::reduce(RatVector v) const {
  if (v.size() != ambient_) throw std::invalid_argument("RowReducer: vector length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (f == 0) continue;
    const RatVector& row = rows_[k];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (row[j] != 0) v[j] -= f * row[j];
  }
  return v;
}

bool RowReducer::contains(const RatVector& v) const {
  const RatVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

bool RowReducer::insert(RatVector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < ambient_ && v[p] == 0) ++p;
  if (p == ambient_) return false;
  const Rational lead = v[p];
  for (auto& x : v) x /= lead;
  // keep existing rows fully reduced against the new pivot
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (v[j] != 0) row[j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

std::vector<std::size_t> RowReducer::free_columns() const {
  std::vector<bool> piv(ambient_, false);
  for (auto p : pivots_) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ambient_; ++j)
    if (!piv[j]) out.push_back(j);
  return out;
}

}  // namespace nhodge
