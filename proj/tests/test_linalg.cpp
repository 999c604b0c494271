#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tropcount/linalg.hpp"

using namespace tropcount;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k && d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    if (i + 1 < k && d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const IntMatrix m = testing::random_matrix(rng, n, n, 6);
    CHECK(determinant(m) == testing::cofactor_det(m));
  }
  CHECK(determinant(IntMatrix{{2, 0}, {0, 3}}) == 6);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("smith normal form: U M V = D with a divisibility chain") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix m = testing::random_matrix(rng, r, c, 5);
    const SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_diagonal_chain(s.d));
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(s.v * s.v_inverse == IntMatrix::identity(c));
    if (r == c) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= s.d(i, i);
      CHECK(prod == abs(testing::cofactor_det(m)));
    }
  }
}

TEST_CASE("lattice index is |det| for full-rank square maps") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntMatrix m = testing::random_matrix(rng, n, n, 4);
    const Integer det = testing::cofactor_det(m);
    const auto idx = lattice_index(m);
    if (det == 0)
      CHECK_FALSE(idx.has_value());
    else
      CHECK(idx == abs(det));
  }
  CHECK_FALSE(lattice_index(IntMatrix{{1, 0, 0}, {0, 1, 0}}).has_value());
}

TEST_CASE("lattice index is unchanged by unimodular factors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntMatrix m = testing::random_matrix(rng, n, n, 4);
    const IntMatrix a = testing::random_unimodular(rng, n);
    const IntMatrix b = testing::random_unimodular(rng, n);
    CHECK(lattice_index(a * m * b) == lattice_index(m));
  }
}

TEST_CASE("solve_affine returns a particular solution and a kernel basis") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 3) % 5;
    const RatMatrix a = to_rational(testing::random_matrix(rng, r, c, 3));
    // consistent right-hand side by construction
    RatVector x(c);
    for (auto& v : x) {
      v = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
      v.canonicalize();
    }
    const RatVector b = a * x;
    const auto sol = solve_affine(a, b);
    REQUIRE(sol.has_value());
    CHECK(a * sol->particular == b);
    CHECK(sol->kernel_basis.size() == c - rank(a));
    for (const auto& k : sol->kernel_basis) CHECK(a * k == RatVector(r, Rational(0)));
  }
  CHECK_FALSE(solve_affine(RatMatrix{{1, 1}, {2, 2}}, RatVector{1, 3}).has_value());
}

TEST_CASE("primitive part and saturation") {
  const auto p = primitive_part(IntVector{4, -6});
  CHECK(p.primitive == IntVector{2, -3});
  CHECK(p.multiple == 2);
  CHECK_THROWS_AS(primitive_part(IntVector{0, 0}), ZeroVectorError);

  const auto sat = saturate({IntVector{2, 4, 0}});
  REQUIRE(sat.size() == 1);
  CHECK(abs(sat[0][0]) == 1);
  CHECK(sat[0][1] == 2 * sat[0][0]);
  // (2,0) and (0,2) span a sublattice of index 4; the saturation is Z^2
  const auto full = saturate({IntVector{2, 0}, IntVector{0, 2}});
  IntMatrix m;
  for (const auto& v : full) m.append_row(v);
  CHECK(abs(determinant(m)) == 1);
}

TEST_CASE("quotient map kills exactly the span") {
  const std::vector<IntVector> span{IntVector{1, 2, 0}};
  const IntMatrix q = quotient_map(saturate(span), 3);
  CHECK(q.rows() == 2);
  CHECK(q * IntVector{1, 2, 0} == IntVector{0, 0});
  CHECK(rank(q) == 2);
  // surjective onto Z^2: the maximal minors are coprime
  Integer g = 0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) g = gcd(g, Integer(q(0, a) * q(1, b) - q(0, b) * q(1, a)));
  CHECK(g == 1);
  CHECK(in_span(span, IntVector{-2, -4, 0}));
  CHECK_FALSE(in_span(span, IntVector{0, 0, 1}));
}

TEST_CASE("unimodular inverse") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix u = testing::random_unimodular(rng, 3);
    CHECK(u * unimodular_inverse(u) == IntMatrix::identity(3));
  }
  CHECK_THROWS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}));
}

TEST_CASE("strict and closure feasibility") {
  using S = StrictInequality;
  // 0 < t < 1
  CHECK(strictly_feasible({S{0, {1}}, S{1, {-1}}}, 1));
  // t > 0 and -t > 0
  CHECK_FALSE(strictly_feasible({S{0, {1}}, S{0, {-1}}}, 1));
  CHECK(closure_feasible({S{0, {1}}, S{0, {-1}}}, 1));
  // t1 > 0, t2 > 0, -t1 - t2 - 1 > 0
  CHECK_FALSE(closure_feasible({S{0, {1, 0}}, S{0, {0, 1}}, S{-1, {-1, -1}}}, 2));
  // brute force on a grid for random two-variable systems
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<S> sys;
    for (int k = 0; k < 3; ++k) sys.push_back(S{d(rng), {d(rng), d(rng)}});
    bool witness = false;
    for (long a = -40; a <= 40 && !witness; ++a)
      for (long b = -40; b <= 40 && !witness; ++b) {
        const Rational t1(a, 4), t2(b, 4);
        witness = std::all_of(sys.begin(), sys.end(), [&](const S& s) { return s.constant + s.coeffs[0] * t1 + s.coeffs[1] * t2 > 0; });
      }
    // a grid witness proves feasibility; the converse need not hold on a grid
    if (witness) CHECK(strictly_feasible(sys, 2));
    if (strictly_feasible(sys, 2)) CHECK(closure_feasible(sys, 2));
  }
}

TEST_CASE("exact fraction literals") {
  CHECK(parse_fraction("-3/2") == Rational(-3, 2));
  CHECK(parse_fraction("+4/6") == Rational(2, 3));
  CHECK(parse_fraction("7") == 7);
  CHECK_THROWS_AS(parse_fraction("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
  CHECK(format_fraction(Rational(-3, 2)) == "-3/2");
  CHECK(format_fraction(Rational(4, 2)) == "2");
}
