#include "tropcount/linalg.hpp"

#include <algorithm>
#include <utility>

namespace tropcount {

namespace {

// Gauss-Jordan in place; returns pivot columns in row order.
std::vector<std::size_t> reduce_to_rref(RatMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    const Rational inv = 1 / m(row, col);
    // the systems we meet are sparse: touch only the pivot row's support
    std::vector<std::size_t> support;
    for (std::size_t j = col; j < m.cols(); ++j)
      if (m(row, j) != 0) {
        m(row, j) *= inv;
        support.push_back(j);
      }
    Rational t;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j : support) {
        mpq_mul(t.get_mpq_t(), f.get_mpq_t(), m(row, j).get_mpq_t());
        mpq_sub(m(i, j).get_mpq_t(), m(i, j).get_mpq_t(), t.get_mpq_t());
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Row-style Hermite reduction of a full-rank set of integer rows.
std::vector<IntVector> hermite_rows(std::vector<IntVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    // Euclid on column `col` among rows r..end.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs_of(rows[i][col]) < abs_of(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool again = false;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) again = true;
      }
      if (!again) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_affine: A has " + std::to_string(a.rows()) +
                                                        " rows but b has " + std::to_string(b.size()) + " entries");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = reduce_to_rref(aug, n);
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (aug(i, n) != 0) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol.particular[pivots[r]] = aug(r, n);
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector k(n, Rational(0));
    k[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, f);
    sol.kernel_basis.push_back(std::move(k));
  }
  return sol;
}

std::vector<RatVector> null_space(const RatMatrix& a) {
  return solve_affine(a, RatVector(a.rows(), Rational(0)))->kernel_basis;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return reduce_to_rref(m, m.cols()).size();
}

std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && a(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      a.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm s{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(cols)};
  IntMatrix& d = s.d;

  auto row_add = [&](std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t j = 0; j < cols; ++j) d(target, j) += k * d(source, j);
    for (std::size_t j = 0; j < rows; ++j) s.u(target, j) += k * s.u(source, j);
  };
  auto col_add = [&](std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t i = 0; i < rows; ++i) d(i, target) += k * d(i, source);
    for (std::size_t i = 0; i < cols; ++i) s.v(i, target) += k * s.v(i, source);
    for (std::size_t j = 0; j < cols; ++j) s.v_inverse(source, j) -= k * s.v_inverse(target, j);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    s.u.swap_rows(a, b);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    s.v.swap_cols(a, b);
    s.v_inverse.swap_rows(a, b);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (pi == rows || abs_of(d(i, j)) < abs_of(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder is now smaller than the pivot: move it into place.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs_of(d(i, t)) < abs_of(d(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs_of(d(t, j)) < abs_of(d(bi, bj))) {
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Row and column cleared; enforce divisibility of the remaining block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_add(t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  return s;
}

std::optional<Integer> lattice_index(const IntMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const SmithForm s = smith_normal_form(m);
  Integer index = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (s.d(i, i) == 0) return std::nullopt;
    index *= s.d(i, i);
  }
  return index;
}

PrimitivePart primitive_part(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw ZeroVectorError();
  PrimitivePart p;
  p.multiple = g;
  p.primitive.reserve(v.size());
  for (const auto& x : v) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    p.primitive.push_back(q);
  }
  return p;
}

std::vector<IntVector> saturate(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return {};
  IntMatrix m;
  for (const auto& v : vectors) m.append_row(v);
  const SmithForm s = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    if (s.d(i, i) == 0) break;
    basis.push_back(s.v_inverse.row(i));
  }
  return hermite_rows(std::move(basis));
}

IntMatrix quotient_map(const std::vector<IntVector>& basis, std::size_t ambient) {
  const auto sat = saturate(basis);
  if (sat.empty()) return IntMatrix::identity(ambient);
  IntMatrix b;
  for (const auto& v : sat) {
    if (v.size() != ambient) throw std::invalid_argument("quotient_map: vector length differs from ambient rank");
    b.append_row(v);
  }
  const SmithForm s = smith_normal_form(b);
  const std::size_t r = sat.size();
  IntMatrix q(ambient - r, ambient);
  for (std::size_t k = r; k < ambient; ++k)
    for (std::size_t i = 0; i < ambient; ++i) q(k - r, i) = s.v(i, k);
  return q;
}

bool in_span(const std::vector<IntVector>& span, const IntVector& v) {
  IntMatrix m;
  for (const auto& s : span) m.append_row(s);
  const std::size_t before = span.empty() ? 0 : rank(m);
  m.append_row(v);
  return rank(m) == before;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  if (reduce_to_rref(aug, n).size() != n) throw std::invalid_argument("matrix is singular");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = aug(i, n + j);
      if (x.get_den() != 1) throw std::invalid_argument("matrix is not unimodular");
      inv(i, j) = x.get_num();
    }
  return inv;
}

namespace {

bool fourier_motzkin(std::vector<StrictInequality> system, std::size_t unknowns, bool strict) {
  auto normalize = [](StrictInequality& q) {
    // Scale so the first nonzero coefficient has absolute value 1.
    Rational lead = 0;
    for (const auto& c : q.coeffs)
      if (c != 0) {
        lead = abs(c);
        break;
      }
    if (lead == 0) return;
    q.constant /= lead;
    for (auto& c : q.coeffs) c /= lead;
  };
  auto key_less = [](const StrictInequality& a, const StrictInequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.constant < b.constant;
  };

  for (std::size_t var = unknowns; var-- > 0;) {
    std::vector<StrictInequality> pos, neg, keep;
    for (auto& q : system) {
      if (q.coeffs[var] > 0)
        pos.push_back(std::move(q));
      else if (q.coeffs[var] < 0)
        neg.push_back(std::move(q));
      else
        keep.push_back(std::move(q));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        const Rational a = -n.coeffs[var];
        const Rational b = p.coeffs[var];
        StrictInequality c;
        c.constant = a * p.constant + b * n.constant;
        c.coeffs.resize(unknowns);
        for (std::size_t k = 0; k < unknowns; ++k) c.coeffs[k] = a * p.coeffs[k] + b * n.coeffs[k];
        c.coeffs[var] = 0;
        keep.push_back(std::move(c));
      }
    for (auto& q : keep) normalize(q);
    // Parallel constraints: only the tightest (smallest constant) matters.
    std::sort(keep.begin(), keep.end(), key_less);
    std::vector<StrictInequality> pruned;
    for (auto& q : keep)
      if (pruned.empty() || pruned.back().coeffs != q.coeffs) pruned.push_back(std::move(q));
    system = std::move(pruned);
  }
  return std::all_of(system.begin(), system.end(), [strict](const StrictInequality& q) { return strict ? q.constant > 0 : q.constant >= 0; });
}

}  // namespace

bool strictly_feasible(std::vector<StrictInequality> system, std::size_t unknowns) {
  return fourier_motzkin(std::move(system), unknowns, true);
}

bool closure_feasible(std::vector<StrictInequality> system, std::size_t unknowns) {
  return fourier_motzkin(std::move(system), unknowns, false);
}

}  // namespace tropcount
