#include "tropcount/problem.hpp"

#include <random>
#include <set>

#include "tropcount/linalg.hpp"

namespace tropcount {

AffineSubspace::AffineSubspace(RatVector base, const std::vector<IntVector>& span, Integer weight)
    : base_(std::move(base)), weight_(std::move(weight)) {
  for (const auto& v : span)
    if (v.size() != base_.size()) throw std::invalid_argument("span vector length differs from base point length");
  if (weight_ <= 0) throw std::invalid_argument("constraint weight must be positive");
  span_ = saturate(span);
  quotient_ = quotient_map(span_, base_.size());
}

AffineSubspace AffineSubspace::everything(std::size_t n) {
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  return AffineSubspace(RatVector(n, Rational(0)), basis);
}

AffineSubspace AffineSubspace::point(RatVector p) { return AffineSubspace(std::move(p), {}); }

bool AffineSubspace::contains(const RatVector& x) const {
  if (x.size() != base_.size()) return false;
  for (std::size_t r = 0; r < quotient_.rows(); ++r) {
    Rational s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += quotient_(r, k) * (x[k] - base_[k]);
    if (s != 0) return false;
  }
  return true;
}

void AffineSubspace::translate(const RatVector& offset) {
  for (std::size_t k = 0; k < base_.size(); ++k) base_[k] += offset.at(k);
}

void AffineSubspace::transform(const IntMatrix& g) {
  const RatVector b = to_rational(g) * base_;
  std::vector<IntVector> span;
  for (const auto& v : span_) span.push_back(g * v);
  *this = AffineSubspace(b, span, weight_);
}

std::vector<int> Problem::psi() const {
  std::vector<int> out;
  for (const auto& m : markings) out.push_back(m.psi);
  return out;
}

const BoundaryCondition* Problem::boundary_for(int label) const {
  for (const auto& b : boundary)
    if (b.label == label) return &b;
  return nullptr;
}

long Problem::condition_total() const {
  long total = 0;
  for (const auto& m : markings) total += m.psi + static_cast<long>(m.locus.codim());
  for (const auto& b : boundary) total += static_cast<long>(b.locus.codim());
  return total;
}

long Problem::expected_dimension() const {
  return tropcount::expected_dim(static_cast<long>(ambient), genus, static_cast<long>(degree.size()),
                                 static_cast<long>(markings.size()));
}

void check_well_formed(const Problem& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Invalid, what); };
  if (p.ambient == 0) fail("ambient rank must be positive");
  if (p.genus < 0) fail("genus must be non-negative");
  if (p.degree.size() == 0) fail("degree has no ends");
  if (p.degree.ambient() != p.ambient) fail("degree directions do not have length " + std::to_string(p.ambient));
  if (!is_zero(p.degree.total())) fail("degree is not balanced: sum of weighted directions is " + format_vector(p.degree.total()));
  for (std::size_t i = 0; i < p.markings.size(); ++i) {
    const auto& m = p.markings[i];
    if (m.locus.ambient() != p.ambient) fail("marking " + std::to_string(i + 1) + " lives in the wrong ambient rank");
    if (m.psi < 0) fail("marking " + std::to_string(i + 1) + " has a negative psi exponent");
  }
  std::set<int> labels;
  for (const auto& b : p.boundary) {
    if (b.label < 1 || static_cast<std::size_t>(b.label) > p.degree.size())
      fail("boundary condition names unknown end " + std::to_string(b.label));
    if (!labels.insert(b.label).second) fail("end " + std::to_string(b.label) + " has two boundary conditions");
    if (b.locus.ambient() != p.ambient) fail("boundary condition for end " + std::to_string(b.label) + " lives in the wrong ambient rank");
    if (!in_span(b.locus.span(), p.degree.at_label(b.label).direction))
      fail("boundary condition for end " + std::to_string(b.label) + " is not parallel to the end direction");
  }
  for (std::size_t k = 0; k < p.user_types.size(); ++k) {
    const auto& t = p.user_types[k];
    if (t.degree != p.degree) fail("supplied type " + std::to_string(k + 1) + " has a different degree");
    if (t.marking_count() != p.markings.size()) fail("supplied type " + std::to_string(k + 1) + " has the wrong number of markings");
    const auto violations = validate(t);
    if (!violations.empty()) fail("supplied type " + std::to_string(k + 1) + ": " + violations.front().message);
    if (genus(t) != p.genus) fail("supplied type " + std::to_string(k + 1) + " has genus " + std::to_string(genus(t)));
  }
}

void check_dimension(const Problem& p) {
  const long lhs = p.condition_total();
  const long rhs = p.expected_dimension();
  if (lhs != rhs)
    throw Error(ErrorKind::DimensionMismatch, "dimension mismatch: sum of psi exponents and codimensions is " +
                                                  std::to_string(lhs) + " but e_inf + m + (n-3)(1-g) is " + std::to_string(rhs));
}

Problem randomly_translated(const Problem& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  auto offset = [&]() {
    RatVector v(p.ambient);
    for (auto& x : v) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    return v;
  };
  Problem out = p;
  for (auto& m : out.markings) m.locus.translate(offset());
  for (auto& b : out.boundary) b.locus.translate(offset());
  return out;
}

Problem transformed(const Problem& p, const IntMatrix& g) {
  if (g.rows() != p.ambient || g.cols() != p.ambient) throw std::invalid_argument("transformation has the wrong size");
  const Integer det = determinant(g);
  if (det != 1 && det != -1) throw std::invalid_argument("transformation is not in GL(n, Z)");
  Problem out = p;
  std::vector<DegreeEntry> entries = p.degree.entries();
  for (auto& e : entries) e.direction = g * e.direction;
  out.degree = Degree(entries);
  for (auto& m : out.markings) m.locus.transform(g);
  for (auto& b : out.boundary) b.locus.transform(g);
  for (auto& t : out.user_types) {
    t.degree = out.degree;
    for (auto& e : t.edges) e.direction = g * e.direction;
  }
  return out;
}

}  // namespace tropcount
