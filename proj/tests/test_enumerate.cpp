#include <doctest.h>

#include <random>
#include <set>

#include "tropcount/counting.hpp"
#include "tropcount/enumerate.hpp"
#include "tropcount/verify.hpp"
#include "types.hpp"

using namespace tropcount;

namespace {

// Same abstract type, different presentation.
CombinatorialType shuffled(const CombinatorialType& t, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(t.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  CombinatorialType s = t;
  for (auto& e : s.edges) {
    e.tail = perm[e.tail];
    e.head = perm[e.head];
    if (rng() % 2) {
      std::swap(e.tail, e.head);
      e.direction = negated(e.direction);
    }
  }
  std::shuffle(s.edges.begin(), s.edges.end(), rng);
  for (auto& e : s.ends) e.vertex = perm[e.vertex];
  std::shuffle(s.ends.begin(), s.ends.end(), rng);
  for (auto& v : s.marking_vertex) v = perm[v];
  return s;
}

std::set<std::string> keys(const TypeCatalog& c) {
  std::set<std::string> out;
  for (const auto& e : c.entries) out.insert(e.key);
  return out;
}

Rational count_with_types(Problem p, const TypeCatalog& c) {
  for (const auto& e : c.entries) p.user_types.push_back(e.type);
  return count(p).total;
}

}  // namespace

TEST_CASE("canonical key ignores presentation") {
  std::mt19937_64 rng(23);
  std::vector<CombinatorialType> samples{testing::genus2_chain(), testing::parallel_bubble()};
  for (const auto& e : enumerate_line(1, {2, 1}, {1, 1, 1}).entries) samples.push_back(e.type);
  for (const auto& e : candidate_types(plane_curves_through_points(2)).entries) samples.push_back(e.type);
  for (const auto& t : samples)
    for (int k = 0; k < 5; ++k) CHECK(canonical_key(shuffled(t, rng)) == canonical_key(t));
}

TEST_CASE("canonical key separates non-isomorphic types") {
  auto a = testing::genus2_chain();
  auto b = a;
  std::swap(b.marking_vertex[1], b.marking_vertex[2]);
  CHECK(canonical_key(a) != canonical_key(b));
  // catalogs never contain two isomorphic entries
  const auto cat = enumerate_line(2, {1, 1}, {2});
  CHECK(keys(cat).size() == cat.size());
  for (const auto& e : cat.entries) CHECK(e.key == canonical_key(e.type));
  CHECK(std::is_sorted(cat.entries.begin(), cat.entries.end(), [](const auto& x, const auto& y) { return x.key < y.key; }));
}

TEST_CASE("genus-0 catalogs are valid trees with the forced valences") {
  const std::vector<Problem> problems{plane_curves_through_points(1), line_point_psi(), line_line_psi2(),
                                      line_point_psi_free_psi(), plane_curves_through_points(2), p1_cubic_four_psi()};
  for (const auto& p : problems) {
    for (auto mode : {Genus0Mode::AllShapes, Genus0Mode::Realizable}) {
      if (mode == Genus0Mode::AllShapes && p.degree.size() > 3 && p.ambient > 1) continue;  // conics: far too many shapes
      const auto cat = enumerate_genus0(p, mode);
      for (const auto& e : cat.entries) {
        CHECK(validate(e.type).empty());
        CHECK(genus(e.type) == 0);
        CHECK(euler_identity_holds(e.type));
        const auto psi = p.psi();
        for (std::size_t v = 0; v < e.type.vertex_count; ++v) {
          int s = 0;
          for (int m : e.type.marking_labels_at(v)) s += psi[static_cast<std::size_t>(m - 1)];
          CHECK(over_valence(e.type, v) == s);
        }
      }
    }
  }
}

TEST_CASE("pruned and unpruned enumerations give the same totals") {
  const std::vector<Problem> problems{plane_curves_through_points(1), line_point_psi(), line_line_psi2(), line_point_psi_free_psi(),
                                      p1_cubic_four_psi()};
  for (const auto& p : problems) {
    const auto all = enumerate_genus0(p, Genus0Mode::AllShapes);
    const auto real = enumerate_genus0(p, Genus0Mode::Realizable);
    const auto ka = keys(all);
    for (const auto& k : keys(real)) CHECK(ka.count(k) == 1);
    CHECK(count_with_types(p, all) == count_with_types(p, real));
  }
}

TEST_CASE("genus-0 tree enumeration and the line sweep agree on covers of the line") {
  const Problem p = p1_cubic_four_psi();
  CHECK(count_with_types(p, enumerate_genus0(p, Genus0Mode::AllShapes)) == 144);
  CHECK(count(p).total == 144);
}

TEST_CASE("line sweep shapes") {
  // one trivalent vertex per branch point, all of genus g
  for (int g = 0; g <= 2; ++g) {
    const auto cat = enumerate_line(g, {2, 1}, {1, 1, 1});
    for (const auto& e : cat.entries) {
      CHECK(validate(e.type).empty());
      CHECK(genus(e.type) == g);
      CHECK(e.type.vertex_count == static_cast<std::size_t>(2 * g - 2 + 5));
      for (std::size_t v = 0; v < e.type.vertex_count; ++v) {
        CHECK(e.type.valence(v) == 3);
        CHECK(e.type.markings_at(v) == 1);
      }
    }
  }
  // the genus-2 double cover has a single monodromy graph
  CHECK(enumerate_line(2, {2}, {2}).size() == 1);
  // a permuted sweep order relabels markings but keeps the count of shapes
  CHECK(enumerate_line(0, {1, 1}, {1, 1}, {2, 1}).size() == enumerate_line(0, {1, 1}, {1, 1}).size());
}

TEST_CASE("enumeration argument errors") {
  CHECK_THROWS_AS(enumerate_line(0, {}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_line(0, {2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_line(0, {0, 1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_line(0, {1, 1}, {1, 1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_line(-1, {1}, {1}), std::invalid_argument);

  Problem p = genus2_double_cover();
  try {
    (void)enumerate_genus0(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Invalid);
  }
  p = plane_curves_through_points(1);
  p.markings.pop_back();
  try {
    (void)enumerate_genus0(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("problem fingerprint reflects the discrete data") {
  CHECK(problem_fingerprint(plane_curves_through_points(2, 1)) == problem_fingerprint(plane_curves_through_points(2, 2)));
  CHECK(problem_fingerprint(plane_curves_through_points(1)) != problem_fingerprint(line_point_psi()));
}
