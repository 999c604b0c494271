#include <doctest.h>

#include <map>
#include <random>

#include "helpers.hpp"
#include "tropcount/counting.hpp"
#include "tropcount/verify.hpp"
#include "types.hpp"

using namespace tropcount;

namespace {

IntMatrix random_gl2(std::mt19937_64& rng) { return testing::random_unimodular(rng, 2, 6); }

// Relabels the ends by a permutation that maps each (direction, weight)
// class to itself.
Problem relabel_within_classes(const Problem& p, std::mt19937_64& rng) {
  std::vector<DegreeEntry> entries = p.degree.entries();
  std::map<std::pair<IntVector, Integer>, std::vector<int>> classes;
  for (const auto& e : entries) classes[{e.direction, e.weight}].push_back(e.label);
  for (auto& [k, labels] : classes) {
    auto shuffled = labels;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < labels.size(); ++i)
      entries[static_cast<std::size_t>(labels[i] - 1)].label = shuffled[i];
  }
  Problem q = p;
  q.degree = Degree(entries);
  return q;
}

}  // namespace

TEST_CASE("superabundance and genus are GL(2,Z)-invariant") {
  std::mt19937_64 rng(37);
  std::vector<CombinatorialType> types{testing::parallel_bubble(), testing::line_vertex(0)};
  for (const auto& e : candidate_types(plane_curves_through_points(2)).entries) types.push_back(e.type);
  for (const auto& t : types) {
    for (int k = 0; k < 4; ++k) {
      Problem p;
      p.ambient = 2;
      p.degree = t.degree;
      p.user_types = {t};
      const Problem q = transformed(p, random_gl2(rng));
      const auto& u = q.user_types[0];
      CHECK(validate(u).empty());
      CHECK(genus(u) == genus(t));
      CHECK(is_superabundant(u) == is_superabundant(t));
      CHECK(deformation_dim(u) == deformation_dim(t));
    }
  }
}

TEST_CASE("counts are GL(2,Z)-invariant") {
  std::mt19937_64 rng(41);
  for (const auto& p : {plane_curves_through_points(1), line_point_psi(), line_line_psi2(), line_point_psi_free_psi(),
                        plane_curves_through_points(2)}) {
    const Rational total = count(p).total;
    for (int k = 0; k < 3; ++k) CHECK(count(transformed(p, random_gl2(rng))).total == total);
  }
}

TEST_CASE("counts do not depend on the generic placement") {
  for (std::uint64_t seed : {101u, 202u, 303u, 404u}) {
    CHECK(count(plane_curves_through_points(1, seed)).total == 1);
    CHECK(count(line_point_psi_free_psi(seed)).total == 2);
    CHECK(count(plane_curves_through_points(2, seed)).total == 8);
    CHECK(count(p1_cubic_four_psi(seed)).total == 144);
  }
}

TEST_CASE("relabeling within a class preserves the count") {
  std::mt19937_64 rng(43);
  for (const auto& p : {plane_curves_through_points(2), p1_cubic_four_psi()}) {
    const Rational total = count(p).total;
    for (int k = 0; k < 3; ++k) {
      const Problem q = relabel_within_classes(p, rng);
      CHECK(count(q).total == total);
      CHECK(count_unlabeled(q) * Rational(aut_delta(q.degree)) == total);
    }
  }
}

TEST_CASE("Hurwitz counts are symmetric in the branch point placement") {
  // any increasing placement of the branch points gives the same count
  Problem p = p1_cubic_four_psi();
  const Rational total = count(p).total;
  const std::vector<Rational> xs{Rational(-7, 3), Rational(0), Rational(5, 2), Rational(11)};
  for (std::size_t i = 0; i < xs.size(); ++i) p.markings[i].locus = AffineSubspace::point(RatVector{xs[3 - i]});
  CHECK(count(p).total == total);
}

TEST_CASE("each enumerated curve is balanced and meets its constraints") {
  for (const auto& p : {plane_curves_through_points(2), line_point_psi_free_psi(), genus2_double_cover()}) {
    for (const auto& c : count(p).contributions) {
      CHECK(validate(c.curve.type).empty());
      CHECK(validate_curve(c.curve).empty());
      CHECK(euler_identity_holds(c.curve.type));
      for (std::size_t i = 0; i < p.markings.size(); ++i)
        CHECK(p.markings[i].locus.contains(c.curve.positions[c.curve.type.marking_vertex[i]]));
    }
  }
}
