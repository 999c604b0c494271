#pragma once

// Marked tropical curves: combinatorial types, realized curves and their
// structural invariants (genus, over-valence, superabundance, automorphisms).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropcount/numeric.hpp"

namespace tropcount {

/// One labeled unbounded end: primitive direction, weight, label in 1..e_inf.
struct DegreeEntry {
  IntVector direction;
  Integer weight = 1;
  int label = 0;

  friend bool operator==(const DegreeEntry&, const DegreeEntry&) = default;
};

/// The degree of a curve; entries are kept sorted by label.
class Degree {
 public:
  Degree() = default;
  /// Throws std::invalid_argument when labels are not exactly 1..e_inf, a
  /// direction is zero or not primitive, a weight is not positive, or
  /// directions disagree on the ambient rank.
  explicit Degree(std::vector<DegreeEntry> entries);

  [[nodiscard]] const std::vector<DegreeEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const DegreeEntry& at_label(int label) const { return entries_.at(static_cast<std::size_t>(label - 1)); }
  [[nodiscard]] std::size_t ambient() const { return entries_.empty() ? 0 : entries_.front().direction.size(); }
  /// Sum of weight * direction over all ends (zero for a balanced degree).
  [[nodiscard]] IntVector total() const;

  friend bool operator==(const Degree&, const Degree&) = default;

 private:
  std::vector<DegreeEntry> entries_;
};

/// Bounded edge oriented tail -> head; head - tail = length * direction.
struct CompactEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  IntVector direction;
  Integer weight = 1;

  friend bool operator==(const CompactEdge&, const CompactEdge&) = default;
};

/// Attachment of the unbounded end with the given label.
struct EndAttachment {
  std::size_t vertex = 0;
  int label = 0;

  friend bool operator==(const EndAttachment&, const EndAttachment&) = default;
};

/// The type (Gamma, mu, epsilon, u) of a marked tropical curve with all
/// vertex genera zero.
struct CombinatorialType {
  std::size_t ambient = 0;
  std::size_t vertex_count = 0;
  Degree degree;
  std::vector<CompactEdge> edges;
  std::vector<EndAttachment> ends;
  /// marking_vertex[i] is the vertex carrying marking i+1.
  std::vector<std::size_t> marking_vertex;

  [[nodiscard]] std::size_t marking_count() const noexcept { return marking_vertex.size(); }
  [[nodiscard]] std::size_t valence(std::size_t v) const;
  [[nodiscard]] std::size_t markings_at(std::size_t v) const;
  /// Markings (1-based labels) carried by v, ascending.
  [[nodiscard]] std::vector<int> marking_labels_at(std::size_t v) const;
  /// Vertex of the end with the given label.
  [[nodiscard]] std::size_t end_vertex(int label) const;

  friend bool operator==(const CombinatorialType&, const CombinatorialType&) = default;
};

/// A combinatorial type realized in Q^n.
struct TropicalCurve {
  CombinatorialType type;
  std::vector<RatVector> positions;
  std::vector<Rational> lengths;
};

enum class ViolationKind {
  Unbalanced,
  Disconnected,
  ZeroWeightEdge,
  NonPrimitiveDirection,
  DuplicateLabel,
  MissingLabel,
  SelfAdjacentEdge,
  BadIndex,
  WrongAmbient,
  NegativeOverValence,
  NoVertices,
};

struct Violation {
  ViolationKind kind;
  std::size_t index = 0;  // vertex, edge or label depending on kind
  std::string message;
};

std::string to_string(ViolationKind kind);

/// Every violated invariant of t; an empty result means the type is valid.
std::vector<Violation> validate(const CombinatorialType& t);

/// Structural checks on a realized curve: positions, positive lengths and
/// h(head) - h(tail) = length * direction.
std::vector<std::string> validate_curve(const TropicalCurve& c);

class NegativeOverValenceError : public std::domain_error {
 public:
  explicit NegativeOverValenceError(std::size_t vertex)
      : std::domain_error("vertex " + std::to_string(vertex) + " has negative over-valence"), vertex_(vertex) {}
  [[nodiscard]] std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

/// ov(V) = val(V) + m_V - 3; throws NegativeOverValenceError when negative.
int over_valence(const CombinatorialType& t, std::size_t v);
int over_valence_total(const CombinatorialType& t);

/// First Betti number of the graph.
int genus(const CombinatorialType& t);

/// e_inf = e_bar - 3g + 3 + ov - m.
bool euler_identity_holds(const CombinatorialType& t);

/// e_inf + m + (n - 3)(1 - g).
long expected_dim(long n, long g, long e_inf, long m);

/// n + dim W, W cut out by the loop-closing equations.
std::size_t deformation_dim(const CombinatorialType& t);
bool is_superabundant(const CombinatorialType& t);

/// Automorphisms fixing markings and labeled ends, preserving weights and
/// commuting with h.
Integer automorphism_count(const TropicalCurve& c);

/// Product over (direction, weight) classes of (class size)!.
Integer aut_delta(const Degree& degree);

/// Product over vertices and (direction, weight) classes of the factorial of
/// the number of ends of that class at the vertex.
Integer stab_delta(const TropicalCurve& c);

Integer factorial(long n);

}  // namespace tropcount
