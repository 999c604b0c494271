#pragma once

// Hand-built types and curves used across the unit tests.

#include <algorithm>
#include <numeric>

#include "tropcount/linalg.hpp"
#include "tropcount/tropical.hpp"

namespace testing {

using namespace tropcount;

// Genus-2 double cover of the line: ends of weight 2, two bubbles.
inline CombinatorialType genus2_chain() {
  CombinatorialType t;
  t.ambient = 1;
  t.vertex_count = 4;
  t.degree = Degree({{IntVector{-1}, 2, 1}, {IntVector{1}, 2, 2}});
  t.edges = {{0, 1, IntVector{1}, 1}, {0, 1, IntVector{1}, 1}, {1, 2, IntVector{1}, 2}, {2, 3, IntVector{1}, 1}, {2, 3, IntVector{1}, 1}};
  t.ends = {{0, 1}, {3, 2}};
  t.marking_vertex = {0, 1, 2, 3};
  return t;
}

inline TropicalCurve genus2_chain_curve() {
  TropicalCurve c;
  c.type = genus2_chain();
  c.positions = {RatVector{1}, RatVector{3}, RatVector{5}, RatVector{7}};
  c.lengths = {2, 2, 2, 2, 2};
  return c;
}

// A single trivalent vertex with the three ends of a tropical line.
inline CombinatorialType line_vertex(int markings) {
  CombinatorialType t;
  t.ambient = 2;
  t.vertex_count = 1;
  t.degree = Degree({{IntVector{-1, 0}, 1, 1}, {IntVector{0, -1}, 1, 2}, {IntVector{1, 1}, 1, 3}});
  t.ends = {{0, 1}, {0, 2}, {0, 3}};
  t.marking_vertex.assign(static_cast<std::size_t>(markings), 0);
  return t;
}

// Genus 1 in the plane with two parallel edges: superabundant.
inline CombinatorialType parallel_bubble() {
  CombinatorialType t;
  t.ambient = 2;
  t.vertex_count = 2;
  t.degree = Degree({{IntVector{-1, 0}, 2, 1}, {IntVector{1, 0}, 2, 2}});
  t.edges = {{0, 1, IntVector{1, 0}, 1}, {0, 1, IntVector{1, 0}, 1}};
  t.ends = {{0, 1}, {1, 2}};
  return t;
}

// Nullity of (positions, lengths) -> h(head) - h(tail) - length * u, which
// is the deformation space without going through a cycle basis.
inline std::size_t deformation_nullity(const CombinatorialType& t) {
  const std::size_t n = t.ambient, nv = t.vertex_count, ne = t.edges.size();
  RatMatrix m(n * ne, n * nv + ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& edge = t.edges[e];
    for (std::size_t k = 0; k < n; ++k) {
      m(n * e + k, n * edge.head + k) += 1;
      m(n * e + k, n * edge.tail + k) -= 1;
      m(n * e + k, n * nv + e) = -Rational(edge.direction[k]);
    }
  }
  return n * nv + ne - (ne == 0 ? 0 : rank(m));
}

// Every (vertex permutation, edge permutation) pair preserving incidence,
// orientation, direction, weight, markings, end attachments and positions.
inline Integer brute_force_automorphisms(const TropicalCurve& c) {
  const auto& t = c.type;
  std::vector<std::size_t> sigma(t.vertex_count);
  std::iota(sigma.begin(), sigma.end(), 0);
  Integer total = 0;
  do {
    bool ok = true;
    for (std::size_t v = 0; v < t.vertex_count && ok; ++v) ok = c.positions[sigma[v]] == c.positions[v];
    for (std::size_t v : t.marking_vertex) ok = ok && sigma[v] == v;
    for (const auto& e : t.ends) ok = ok && sigma[e.vertex] == e.vertex;
    if (!ok) continue;
    std::vector<std::size_t> pi(t.edges.size());
    std::iota(pi.begin(), pi.end(), 0);
    do {
      bool good = true;
      for (std::size_t e = 0; e < t.edges.size() && good; ++e) {
        const auto& a = t.edges[e];
        const auto& b = t.edges[pi[e]];
        good = b.tail == sigma[a.tail] && b.head == sigma[a.head] && b.direction == a.direction && b.weight == a.weight &&
               c.lengths[pi[e]] == c.lengths[e];
      }
      if (good) ++total;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace testing
