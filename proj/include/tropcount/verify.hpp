#pragma once

// Independent oracles, canned problems and the built-in check suites.

#include <cstdint>
#include <string>
#include <vector>

#include "tropcount/problem.hpp"

namespace tropcount {

/// Number of rational plane curves of degree d through 3d - 1 general
/// points, by Kontsevich's recursion. Throws std::invalid_argument for d < 1.
Integer kontsevich(int d);

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Degree of plane curves of degree d: d ends each in directions
/// (-1,0), (0,-1), (1,1), labeled in that order.
Degree plane_degree(int d);

/// Plane curves of degree d through 3d - 1 seeded generic points.
Problem plane_curves_through_points(int d, std::uint64_t seed = kDefaultSeed);
/// Lines with one marking at a point carrying psi^1.
Problem line_point_psi(std::uint64_t seed = kDefaultSeed);
/// Lines with one marking on a line carrying psi^2.
Problem line_line_psi2(std::uint64_t seed = kDefaultSeed);
/// Lines with psi^1 at a point and psi^1 at an unconstrained marking.
Problem line_point_psi_free_psi(std::uint64_t seed = kDefaultSeed);
/// Degree-3 covers of the line, three simple ends on each side, four points
/// each carrying psi^1.
Problem p1_cubic_four_psi(std::uint64_t seed = kDefaultSeed);
/// Genus-2 double cover problem with full ramification on both sides.
Problem genus2_double_cover(std::uint64_t seed = kDefaultSeed);

struct Check {
  std::string name;
  std::string expected;
  std::string computed;
  bool passed = false;
  double seconds = 0;
};

struct SuiteResult {
  std::vector<Check> checks;  // sorted by name
  [[nodiscard]] bool passed() const;
};

enum class SuiteLevel { Basic, Extended };

/// Runs every check of the level; never throws (failures become failed checks).
SuiteResult run_suite(SuiteLevel level);

struct DivisorIdentity {
  Rational line_psi2;          // tropical count, expected 0
  Rational point_psi1;         // tropical count, expected 1
  Rational ordinary_line_psi2 = -3;  // known ordinary value
  bool holds = false;          // 0 = ordinary + 3 * point_psi1 and line_psi2 = 0
};

DivisorIdentity divisor_identity_check();

}  // namespace tropcount
