#pragma once

// Candidate combinatorial types for a counting problem.

#include <string>
#include <vector>

#include "tropcount/problem.hpp"
#include "tropcount/tropical.hpp"

namespace tropcount {

struct CatalogEntry {
  std::string key;
  CombinatorialType type;
};

/// Deduplicated types sorted by canonical key.
struct TypeCatalog {
  std::string fingerprint;
  std::vector<CatalogEntry> entries;

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
};

enum class Genus0Mode {
  /// Every tree with the valence profile forced by the psi exponents.
  AllShapes,
  /// Only trees every rooted piece of which can be realized, with edge
  /// lengths in the closure of the positive orthant, inside the problem's
  /// actual constraints and moves in at most an (n-1)-dimensional family.
  /// Also drops pieces whose expected dimension is negative, which is safe
  /// for constraints in general position. Degenerate limits (zero lengths)
  /// are kept so that solving reports them as non-generic.
  Realizable,
};

/// Genus-0 trees on the labeled ends: a vertex carrying markings M has
/// val + |M| = 3 + sum of s_i over M; internal edge vectors come from
/// balancing and types with a zero internal edge are discarded.
/// Throws Error(DimensionMismatch) when the conditions do not balance the
/// expected dimension and Error(Invalid) for ill-formed problems, g != 0 or
/// fewer than two ends without markings.
TypeCatalog enumerate_genus0(const Problem& problem, Genus0Mode mode = Genus0Mode::AllShapes);

/// Monodromy graphs in rank 1: m = 2g - 2 + l1 + l2 trivalent vertices, each
/// carrying one marking, swept left to right. Left ends carry labels 1..l1
/// (direction -1, weights alpha), right ends l1+1..l1+l2 (direction +1,
/// weights beta). Vertex k of the sweep carries marking sweep_order[k]
/// (default: marking k+1). Throws std::invalid_argument on an empty or
/// non-positive partition or when |alpha| != |beta|.
TypeCatalog enumerate_line(int g, const std::vector<long>& alpha, const std::vector<long>& beta,
                           const std::vector<int>& sweep_order = {});

/// Equal iff the types are isomorphic respecting markings, end labels,
/// weights and directions.
std::string canonical_key(const CombinatorialType& t);

/// Short textual summary of the discrete data of a problem.
std::string problem_fingerprint(const Problem& p);

}  // namespace tropcount
