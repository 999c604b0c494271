#pragma once

// Double Hurwitz numbers two ways: transitive factorizations in S_d and
// tropical covers of the line.

#include <string>
#include <string_view>
#include <vector>

#include "tropcount/numeric.hpp"

namespace tropcount {

/// Non-increasing list of positive parts.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts; throws std::invalid_argument when empty or when a part
  /// is not positive.
  explicit Partition(std::vector<long> parts);
  /// "2,1,1" or "[2,1,1]".
  static Partition parse(std::string_view text);

  [[nodiscard]] const std::vector<long>& parts() const noexcept { return parts_; }
  [[nodiscard]] std::size_t length() const noexcept { return parts_.size(); }
  [[nodiscard]] long size() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<long> parts_;
};

/// All partitions of d, in reverse lexicographic order.
std::vector<Partition> partitions_of(long d);

/// Image array on {0, ..., d-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int d);
  static Permutation transposition(int d, int a, int b);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(image_.size()); }
  [[nodiscard]] int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<int>& image() const noexcept { return image_; }
  /// Cycle lengths, non-increasing.
  [[nodiscard]] std::vector<long> cycle_type() const;
  [[nodiscard]] Permutation inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

struct HurwitzResult {
  int g = 0;
  long d = 0;
  Partition alpha, beta;
  long m = 0;
  Integer hat = 0;
  Rational labeled = 0;
  Rational unlabeled = 0;
};

/// prod over distinct parts of (multiplicity)!.
Integer aut_partition(const Partition& p);

/// Counts tuples (sigma_alpha, tau_1..tau_m) with sigma_alpha of cycle type
/// alpha, transpositions tau_i, (sigma_alpha tau_1 ... tau_m)^-1 of cycle type
/// beta, acting transitively. Throws std::invalid_argument when the degrees
/// differ or m < 0.
HurwitzResult hurwitz_symmetric(int g, const Partition& alpha, const Partition& beta);

/// The same number from rank-1 tropical covers with simple branch points
/// at 1, 3, 5, ...
HurwitzResult hurwitz_tropical(int g, const Partition& alpha, const Partition& beta);

/// labeled = |Aut a||Aut b|/d! * hat and unlabeled = hat/d!.
bool conversions_hold(const HurwitzResult& r);

struct CrosscheckRow {
  HurwitzResult tropical;
  HurwitzResult symmetric;
  bool equal = false;
};

/// Every (g, alpha, beta) with g <= max_g and |alpha| = |beta| <= max_d.
std::vector<CrosscheckRow> crosscheck(int max_g, long max_d);

}  // namespace tropcount
