#include <doctest.h>

#include "tropcount/counting.hpp"
#include "tropcount/problem.hpp"
#include "tropcount/verify.hpp"
#include "types.hpp"

using namespace tropcount;

namespace {

bool has(const std::vector<Violation>& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [k](const Violation& x) { return x.kind == k; });
}

}  // namespace

TEST_CASE("degree validation") {
  CHECK_THROWS_AS(Degree({{IntVector{2, 0}, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Degree({{IntVector{0, 0}, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Degree({{IntVector{1, 0}, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Degree({{IntVector{1, 0}, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Degree({{IntVector{1, 0}, 1, 1}, {IntVector{1}, 1, 2}}), std::invalid_argument);
  const Degree d = plane_degree(2);
  CHECK(d.size() == 6);
  CHECK(is_zero(d.total()));
}

TEST_CASE("valid hand-built types") {
  const auto line = testing::line_vertex(0);
  CHECK(validate(line).empty());
  CHECK(genus(line) == 0);
  CHECK(over_valence(line, 0) == 0);
  CHECK(euler_identity_holds(line));

  const auto chain = testing::genus2_chain();
  CHECK(validate(chain).empty());
  CHECK(genus(chain) == 2);
  for (std::size_t v = 0; v < 4; ++v) CHECK(over_valence(chain, v) == 1);
  CHECK(over_valence_total(chain) == 4);
  CHECK(euler_identity_holds(chain));
  // 2 + 4 + (1 - 3)(1 - 2): four points and four psi^1
  CHECK(expected_dim(1, 2, 2, 4) == 8);
}

TEST_CASE("validate reports each broken invariant") {
  auto t = testing::genus2_chain();
  t.edges[2].weight = 1;  // flux no longer balances at vertices 1 and 2
  CHECK(has(validate(t), ViolationKind::Unbalanced));

  t = testing::genus2_chain();
  t.edges[0].direction = IntVector{2};
  CHECK(has(validate(t), ViolationKind::NonPrimitiveDirection));

  t = testing::genus2_chain();
  t.edges[0].head = 0;
  CHECK(has(validate(t), ViolationKind::SelfAdjacentEdge));

  t = testing::genus2_chain();
  t.edges[0].head = 9;
  CHECK(has(validate(t), ViolationKind::BadIndex));

  t = testing::genus2_chain();
  t.ends[1].label = 1;
  CHECK(has(validate(t), ViolationKind::DuplicateLabel));
  CHECK(has(validate(t), ViolationKind::MissingLabel));

  t = testing::genus2_chain();
  t.edges[2].weight = 0;
  CHECK(has(validate(t), ViolationKind::ZeroWeightEdge));

  t = testing::line_vertex(0);
  t.vertex_count = 2;
  CHECK(has(validate(t), ViolationKind::Disconnected));

  t = testing::line_vertex(0);
  t.vertex_count = 0;
  CHECK(has(validate(t), ViolationKind::NoVertices));

  // a 2-valent vertex without a marking
  CombinatorialType u;
  u.ambient = 1;
  u.vertex_count = 2;
  u.degree = Degree({{IntVector{-1}, 1, 1}, {IntVector{1}, 1, 2}});
  u.edges = {{0, 1, IntVector{1}, 1}};
  u.ends = {{0, 1}, {1, 2}};
  u.marking_vertex = {0};
  CHECK(has(validate(u), ViolationKind::NegativeOverValence));
  CHECK_THROWS_AS((void)over_valence(u, 1), NegativeOverValenceError);
}

TEST_CASE("deformation dimension matches the nullity oracle") {
  CHECK(deformation_dim(testing::genus2_chain()) == testing::deformation_nullity(testing::genus2_chain()));
  CHECK(deformation_dim(testing::genus2_chain()) == 4);
  CHECK_FALSE(is_superabundant(testing::genus2_chain()));

  const auto bubble = testing::parallel_bubble();
  CHECK(validate(bubble).empty());
  CHECK(deformation_dim(bubble) == testing::deformation_nullity(bubble));
  // n + e_bar - n g = 2 + 2 - 2 = 2, but the loop only imposes one condition
  CHECK(deformation_dim(bubble) == 3);
  CHECK(is_superabundant(bubble));

  for (const auto& e : candidate_types(plane_curves_through_points(2)).entries) {
    CHECK(deformation_dim(e.type) == testing::deformation_nullity(e.type));
    CHECK_FALSE(is_superabundant(e.type));
  }
  for (const auto& e : enumerate_line(2, {2, 1}, {3}).entries) {
    CHECK(deformation_dim(e.type) == testing::deformation_nullity(e.type));
    CHECK_FALSE(is_superabundant(e.type));
  }
}

TEST_CASE("automorphisms agree with brute force") {
  const auto c = testing::genus2_chain_curve();
  CHECK(validate_curve(c).empty());
  CHECK(testing::brute_force_automorphisms(c) == 4);
  CHECK(automorphism_count(c) == 4);

  // every contribution of a few small counts
  for (const auto& p : {p1_cubic_four_psi(), genus2_double_cover(), plane_curves_through_points(2)}) {
    for (const auto& contrib : count(p).contributions) {
      if (contrib.curve.type.edges.size() > 8 || contrib.curve.type.vertex_count > 7) continue;
      CHECK(automorphism_count(contrib.curve) == testing::brute_force_automorphisms(contrib.curve));
    }
  }
}

TEST_CASE("validate_curve catches inconsistent positions") {
  auto c = testing::genus2_chain_curve();
  c.lengths[2] = 3;
  CHECK_FALSE(validate_curve(c).empty());
  c = testing::genus2_chain_curve();
  c.lengths[0] = 0;
  c.positions[1] = RatVector{1};
  CHECK_FALSE(validate_curve(c).empty());
}

TEST_CASE("aut_delta and stab_delta") {
  CHECK(aut_delta(plane_degree(1)) == 1);
  CHECK(aut_delta(plane_degree(2)) == 8);
  CHECK(aut_delta(plane_degree(3)) == 216);
  CHECK(aut_delta(Degree({{IntVector{-1}, 2, 1}, {IntVector{-1}, 1, 2}, {IntVector{-1}, 1, 3}, {IntVector{1}, 4, 4}})) == 2);
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  // relabeling the ends does not change aut_delta
  std::vector<DegreeEntry> entries = plane_degree(2).entries();
  std::vector<int> labels{4, 2, 6, 1, 5, 3};
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].label = labels[i];
  CHECK(aut_delta(Degree(entries)) == 8);

  const auto chain = testing::genus2_chain_curve();
  CHECK(stab_delta(chain) == 1);
  auto line = TropicalCurve{testing::line_vertex(1), {RatVector{0, 0}}, {}};
  CHECK(stab_delta(line) == 1);
}

TEST_CASE("over-valence follows val + m_V - 3") {
  for (const auto& e : enumerate_line(1, {2, 1}, {2, 1}).entries) {
    for (std::size_t v = 0; v < e.type.vertex_count; ++v)
      CHECK(over_valence(e.type, v) == static_cast<int>(e.type.valence(v) + e.type.markings_at(v)) - 3);
    CHECK(euler_identity_holds(e.type));
  }
}
