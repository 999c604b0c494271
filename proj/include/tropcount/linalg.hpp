#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tropcount/numeric.hpp"

namespace tropcount {

/// Raised by primitive_part on the zero vector; upstream this means an edge
/// would be contracted.
class ZeroVectorError : public std::invalid_argument {
 public:
  ZeroVectorError() : std::invalid_argument("zero vector has no primitive part") {}
};

struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> kernel_basis;
};

/// Solves A x = b over Q. Returns std::nullopt when the system is inconsistent.
/// The particular solution sets every free variable to zero.
std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVector& b);

/// Basis of { x : A x = 0 }.
std::vector<RatVector> null_space(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;  // diagonal, d(i,i) | d(i+1,i+1), all >= 0
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix v;  // unimodular, cols x cols
  IntMatrix v_inverse;
};

/// U * M * V = D by elementary row/column operations, smallest pivot first.
SmithForm smith_normal_form(const IntMatrix& m);

/// |coker M| for a square map of full rank, std::nullopt otherwise
/// (the NotFiniteIndex outcome).
std::optional<Integer> lattice_index(const IntMatrix& m);

struct PrimitivePart {
  IntVector primitive;
  Integer multiple;
};

/// v = multiple * primitive with gcd(primitive) = 1. Throws ZeroVectorError.
PrimitivePart primitive_part(const IntVector& v);

/// Basis of (Q-span of the input) ∩ Z^n, in Hermite row form.
std::vector<IntVector> saturate(const std::vector<IntVector>& vectors);

/// Integer matrix Q with n columns, rows = n - rank(L), such that
/// x |-> Q x is the projection Z^n -> Z^n / L for the saturated lattice L
/// spanned by `basis`. Over Q its kernel is exactly the span of L.
IntMatrix quotient_map(const std::vector<IntVector>& basis, std::size_t ambient);

/// True when v lies in the Q-span of `span`.
bool in_span(const std::vector<IntVector>& span, const IntVector& v);

/// Inverse of a square unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// A system of strict inequalities  constant + coeffs · t > 0  in d unknowns.
struct StrictInequality {
  Rational constant;
  RatVector coeffs;
};

/// Exact Fourier-Motzkin decision: does some t in Q^d satisfy every inequality?
bool strictly_feasible(std::vector<StrictInequality> system, std::size_t unknowns);
/// The same with every inequality relaxed to >= 0.
bool closure_feasible(std::vector<StrictInequality> system, std::size_t unknowns);

}  // namespace tropcount
