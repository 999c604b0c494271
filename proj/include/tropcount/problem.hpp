#pragma once

// A counting instance: ambient rank, genus, degree, affine incidence
// conditions on marked vertices and unbounded ends, and psi exponents.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropcount/numeric.hpp"
#include "tropcount/tropical.hpp"

namespace tropcount {

enum class ErrorKind { Internal = 1, Parse = 2, NonGeneric = 3, DimensionMismatch = 4, Invalid = 5 };

/// Engine error carrying a classification the CLI maps to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// An affine subspace base + span(L) of Q^n with an integral cell weight.
/// The span is saturated on construction.
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(RatVector base, const std::vector<IntVector>& span, Integer weight = 1);

  /// The whole of Q^n.
  static AffineSubspace everything(std::size_t n);
  /// A single point.
  static AffineSubspace point(RatVector p);

  [[nodiscard]] const RatVector& base() const noexcept { return base_; }
  [[nodiscard]] const std::vector<IntVector>& span() const noexcept { return span_; }
  [[nodiscard]] const Integer& weight() const noexcept { return weight_; }
  [[nodiscard]] std::size_t ambient() const noexcept { return base_.size(); }
  [[nodiscard]] std::size_t codim() const noexcept { return base_.size() - span_.size(); }
  /// Rows of the projection Z^n -> Z^n / L_N.
  [[nodiscard]] const IntMatrix& quotient() const noexcept { return quotient_; }
  [[nodiscard]] bool contains(const RatVector& x) const;

  void translate(const RatVector& offset);
  /// Applies x -> g x for an invertible integer matrix g.
  void transform(const IntMatrix& g);

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.base_ == b.base_ && a.span_ == b.span_ && a.weight_ == b.weight_;
  }

 private:
  RatVector base_;
  std::vector<IntVector> span_;
  Integer weight_ = 1;
  IntMatrix quotient_;
};

/// Condition h(V_i) in locus with psi exponent s_i.
struct MarkingCondition {
  AffineSubspace locus;
  int psi = 0;

  friend bool operator==(const MarkingCondition&, const MarkingCondition&) = default;
};

/// Condition h(E_j) contained in locus; u_j must lie in the span.
struct BoundaryCondition {
  int label = 0;
  AffineSubspace locus;

  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

struct Problem {
  std::size_t ambient = 0;
  int genus = 0;
  Degree degree;
  std::vector<MarkingCondition> markings;
  std::vector<BoundaryCondition> boundary;
  /// Explicit candidate types (needed for g >= 1 with n >= 2).
  std::vector<CombinatorialType> user_types;

  [[nodiscard]] std::size_t marking_count() const noexcept { return markings.size(); }
  [[nodiscard]] std::vector<int> psi() const;
  /// Boundary condition for an end, or nullptr when unconstrained.
  [[nodiscard]] const BoundaryCondition* boundary_for(int label) const;
  /// Sum of psi exponents and codimensions (left side of the balance).
  [[nodiscard]] long condition_total() const;
  /// e_inf + m + (n - 3)(1 - g).
  [[nodiscard]] long expected_dimension() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Structural validation (ranks, labels, psi >= 0, boundary spans containing
/// the end direction, supplied types). Throws Error(Invalid).
void check_well_formed(const Problem& p);

/// Throws Error(DimensionMismatch) naming both sides when the condition
/// total differs from the expected dimension.
void check_dimension(const Problem& p);

/// Translates every base point by an independent pseudo-random rational
/// vector drawn from the seed.
Problem randomly_translated(const Problem& p, std::uint64_t seed);

/// Applies g in GL(n, Z) to directions, spans, base points and supplied types.
Problem transformed(const Problem& p, const IntMatrix& g);

}  // namespace tropcount
