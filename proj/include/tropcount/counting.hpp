#pragma once

// Solving candidate types against the constraints, lattice-index
// multiplicities and the aggregated tropical count.

#include <optional>
#include <string>
#include <vector>

#include "tropcount/enumerate.hpp"
#include "tropcount/problem.hpp"
#include "tropcount/tropical.hpp"

namespace tropcount {

/// Matrix of the lattice map from prod_V Z^n to
/// prod_E Z^n/Z u_E  x  prod_i Z^n/L_N(A_i)  x  prod_j Z^n/L_N(B_j).
/// Columns are grouped by vertex (n each); rows by edge, marking, end.
IntMatrix build_phi(const CombinatorialType& t, const Problem& problem);

enum class SolveStatus { Rigid, NoSolution, NonRigid, NonGeneric };

std::string to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<TropicalCurve> curve;  // set when Rigid
  std::string detail;
};

/// Solves for vertex positions and edge lengths of one type.
SolveResult solve_positions(const CombinatorialType& t, const Problem& problem);

/// Multinomial ov(V)! / prod s_i!. Throws Error(Invalid) when
/// ov(V) != sum of the psi exponents at V.
Integer vertex_factor(const CombinatorialType& t, std::size_t v, const std::vector<int>& psi);

struct Contribution {
  std::string key;
  TropicalCurve curve;
  Integer index_phi = 1;
  std::vector<Integer> vertex_factors;
  Integer aut = 1;
  Integer edge_weight_product = 1;
  Integer constraint_weight_product = 1;
  Rational mult = 0;
};

/// Assembles the multiplicity of a rigid solved curve. Throws
/// Error(NonGeneric) when the lattice map is not of finite index.
Contribution multiplicity(const TropicalCurve& c, const Problem& problem);

struct CountReport {
  Problem problem;
  std::vector<Contribution> contributions;
  Rational total = 0;
  std::vector<std::string> warnings;
  std::size_t candidate_types = 0;
  bool vertexless = false;
};

struct CountOptions {
  /// Genus-0 candidate generation mode; Realizable is exact and much faster.
  Genus0Mode genus0_mode = Genus0Mode::Realizable;
  /// Worker threads for per-type solving (0 = hardware concurrency).
  unsigned workers = 0;
};

/// The candidate types count() will examine for this problem.
TypeCatalog candidate_types(const Problem& problem, const CountOptions& options = {});

/// Tropical count: sum of multiplicities of the rigid curves. Throws
/// Error(DimensionMismatch) or Error(NonGeneric).
CountReport count(const Problem& problem, const CountOptions& options = {});

/// count(problem).total / |Aut(Delta)|.
Rational count_unlabeled(const Problem& problem, const CountOptions& options = {});

/// True for rank-1 problems with only point conditions, all psi = 1, no
/// boundary conditions and m = 2g - 2 + e_inf (double Hurwitz shape).
bool is_hurwitz_shaped(const Problem& p);

}  // namespace tropcount
