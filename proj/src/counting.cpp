#include "tropcount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "tropcount/linalg.hpp"

namespace tropcount {

namespace {

void put_block(IntMatrix& m, std::size_t row, std::size_t col, const IntMatrix& block, const Integer& sign = 1) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) m(row + r, col + c) += sign * block(r, c);
}

IntMatrix edge_quotient(const IntVector& u) { return quotient_map({u}, u.size()); }

}  // namespace

IntMatrix build_phi(const CombinatorialType& t, const Problem& problem) {
  const std::size_t n = t.ambient;
  std::vector<IntMatrix> edge_q;
  std::size_t rows = 0;
  for (const auto& e : t.edges) {
    edge_q.push_back(edge_quotient(e.direction));
    rows += edge_q.back().rows();
  }
  for (const auto& m : problem.markings) rows += m.locus.quotient().rows();
  for (const auto& b : problem.boundary) rows += b.locus.quotient().rows();

  IntMatrix phi(rows, n * t.vertex_count);
  std::size_t r = 0;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    put_block(phi, r, n * t.edges[i].head, edge_q[i]);
    put_block(phi, r, n * t.edges[i].tail, edge_q[i], -1);
    r += edge_q[i].rows();
  }
  for (std::size_t i = 0; i < problem.markings.size(); ++i) {
    const IntMatrix& q = problem.markings[i].locus.quotient();
    put_block(phi, r, n * t.marking_vertex.at(i), q);
    r += q.rows();
  }
  for (const auto& b : problem.boundary) {
    const IntMatrix& q = b.locus.quotient();
    put_block(phi, r, n * t.end_vertex(b.label), q);
    r += q.rows();
  }
  return phi;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Rigid: return "rigid";
    case SolveStatus::NoSolution: return "no solution";
    case SolveStatus::NonRigid: return "non-rigid";
    case SolveStatus::NonGeneric: return "non-generic";
  }
  return "?";
}

namespace {

// Every vertex carries a point condition: positions are read off and the
// edges only need checking.
std::optional<SolveResult> solve_pinned(const CombinatorialType& t, const Problem& problem) {
  const std::size_t n = t.ambient;
  std::vector<const RatVector*> pos(t.vertex_count, nullptr);
  for (std::size_t i = 0; i < problem.markings.size(); ++i) {
    const auto& locus = problem.markings[i].locus;
    if (locus.codim() != n) continue;
    auto& slot = pos[t.marking_vertex.at(i)];
    if (slot && *slot != locus.base()) return SolveResult{SolveStatus::NoSolution, std::nullopt, "one vertex at two points"};
    slot = &locus.base();
  }
  for (const auto* x : pos)
    if (!x) return std::nullopt;

  SolveResult out;
  TropicalCurve c;
  c.type = t;
  for (const auto* x : pos) c.positions.push_back(*x);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    std::optional<Rational> len;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational diff = (*pos[e.head])[k] - (*pos[e.tail])[k];
      if (e.direction[k] == 0) {
        if (diff != 0) return SolveResult{SolveStatus::NoSolution, std::nullopt, "edge " + std::to_string(i) + " is not parallel to its direction"};
        continue;
      }
      Rational l = diff / Rational(e.direction[k]);
      if (len && *len != l) return SolveResult{SolveStatus::NoSolution, std::nullopt, "edge " + std::to_string(i) + " is not parallel to its direction"};
      len = l;
    }
    if (*len < 0) return SolveResult{SolveStatus::NoSolution, std::nullopt, "edge " + std::to_string(i) + " would have negative length"};
    if (*len == 0) return SolveResult{SolveStatus::NonGeneric, std::nullopt, "edge " + std::to_string(i) + " is contracted"};
    c.lengths.push_back(*len);
  }
  for (std::size_t i = 0; i < problem.markings.size(); ++i)
    if (!problem.markings[i].locus.contains(c.positions[t.marking_vertex[i]]))
      return SolveResult{SolveStatus::NoSolution, std::nullopt, "marking " + std::to_string(i + 1) + " misses its constraint"};
  for (const auto& b : problem.boundary)
    if (!b.locus.contains(c.positions[t.end_vertex(b.label)]))
      return SolveResult{SolveStatus::NoSolution, std::nullopt, "end " + std::to_string(b.label) + " misses its constraint"};
  out.status = SolveStatus::Rigid;
  out.curve = std::move(c);
  return out;
}

}  // namespace

SolveResult solve_positions(const CombinatorialType& t, const Problem& problem) {
  if (auto quick = solve_pinned(t, problem)) return *std::move(quick);
  const std::size_t n = t.ambient;
  const std::size_t vn = n * t.vertex_count;
  const std::size_t unknowns = vn + t.edges.size();
  RatMatrix a;
  RatVector rhs;
  auto blank = [&]() { return RatVector(unknowns, Rational(0)); };
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    for (std::size_t k = 0; k < n; ++k) {
      RatVector row = blank();
      row[n * e.head + k] += 1;
      row[n * e.tail + k] -= 1;
      row[vn + i] = -Rational(e.direction[k]);
      a.append_row(row);
      rhs.push_back(0);
    }
  }
  auto add_locus = [&](std::size_t v, const AffineSubspace& locus) {
    const IntMatrix& q = locus.quotient();
    for (std::size_t r = 0; r < q.rows(); ++r) {
      RatVector row = blank();
      Rational c = 0;
      for (std::size_t k = 0; k < n; ++k) {
        row[n * v + k] = q(r, k);
        c += q(r, k) * locus.base()[k];
      }
      a.append_row(row);
      rhs.push_back(c);
    }
  };
  for (std::size_t i = 0; i < problem.markings.size(); ++i) add_locus(t.marking_vertex.at(i), problem.markings[i].locus);
  for (const auto& b : problem.boundary) add_locus(t.end_vertex(b.label), b.locus);

  SolveResult out;
  std::optional<AffineSolution> sol;
  if (a.rows() == 0) {
    sol = AffineSolution{RatVector(unknowns, Rational(0)), null_space(RatMatrix(1, unknowns))};
  } else {
    sol = solve_affine(a, rhs);
  }
  if (!sol) {
    out.status = SolveStatus::NoSolution;
    out.detail = "constraints are inconsistent";
    return out;
  }
  const std::size_t d = sol->kernel_basis.size();
  if (d > 0) {
    std::vector<StrictInequality> lengths;
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      StrictInequality s{sol->particular[vn + i], RatVector(d, Rational(0))};
      for (std::size_t j = 0; j < d; ++j) s.coeffs[j] = sol->kernel_basis[j][vn + i];
      lengths.push_back(std::move(s));
    }
    if (strictly_feasible(lengths, d)) {
      out.status = SolveStatus::NonRigid;
      out.detail = "solutions form a family of dimension " + std::to_string(d);
    } else {
      out.status = SolveStatus::NoSolution;
      out.detail = "no solution with positive edge lengths";
    }
    return out;
  }
  TropicalCurve c;
  c.type = t;
  for (std::size_t v = 0; v < t.vertex_count; ++v)
    c.positions.emplace_back(sol->particular.begin() + static_cast<long>(n * v),
                             sol->particular.begin() + static_cast<long>(n * (v + 1)));
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Rational& len = sol->particular[vn + i];
    if (len < 0) {
      out.status = SolveStatus::NoSolution;
      out.detail = "edge " + std::to_string(i) + " would have negative length";
      return out;
    }
    if (len == 0) {
      out.status = SolveStatus::NonGeneric;
      out.detail = "edge " + std::to_string(i) + " is contracted";
      return out;
    }
    c.lengths.push_back(len);
  }
  out.status = SolveStatus::Rigid;
  out.curve = std::move(c);
  return out;
}

Integer vertex_factor(const CombinatorialType& t, std::size_t v, const std::vector<int>& psi) {
  const int ov = over_valence(t, v);
  int sum = 0;
  Integer denom = 1;
  for (int m : t.marking_labels_at(v)) {
    const int s = psi.at(static_cast<std::size_t>(m - 1));
    sum += s;
    denom *= factorial(s);
  }
  if (sum != ov)
    throw Error(ErrorKind::Invalid, "psi mismatch at vertex " + std::to_string(v) + ": over-valence " + std::to_string(ov) +
                                        " but psi exponents sum to " + std::to_string(sum));
  return factorial(ov) / denom;
}

Contribution multiplicity(const TropicalCurve& c, const Problem& problem) {
  Contribution out;
  out.curve = c;
  const auto index = lattice_index(build_phi(c.type, problem));
  if (!index) throw Error(ErrorKind::NonGeneric, "lattice map of a rigid curve is not of finite index");
  out.index_phi = *index;
  const auto psi = problem.psi();
  Integer numerator = out.index_phi;
  for (std::size_t v = 0; v < c.type.vertex_count; ++v) {
    out.vertex_factors.push_back(vertex_factor(c.type, v, psi));
    numerator *= out.vertex_factors.back();
  }
  for (const auto& e : c.type.edges) out.edge_weight_product *= e.weight;
  for (const auto& m : problem.markings) out.constraint_weight_product *= m.locus.weight();
  for (const auto& b : problem.boundary) out.constraint_weight_product *= b.locus.weight();
  numerator *= out.edge_weight_product * out.constraint_weight_product;
  out.aut = automorphism_count(c);
  out.mult = Rational(numerator, out.aut);
  out.mult.canonicalize();
  return out;
}

bool is_hurwitz_shaped(const Problem& p) {
  if (p.ambient != 1 || !p.boundary.empty() || !p.user_types.empty()) return false;
  for (const auto& m : p.markings)
    if (m.psi != 1 || m.locus.codim() != 1) return false;
  const long m = static_cast<long>(p.markings.size());
  const long e = static_cast<long>(p.degree.size());
  return m >= 1 && m == 2L * p.genus - 2 + e;
}

namespace {

bool is_vertexless(const Problem& p) {
  return p.genus == 0 && p.degree.size() == 2 && p.markings.empty() && p.user_types.empty();
}

TypeCatalog hurwitz_catalog(const Problem& p) {
  // sweep order: markings sorted by their point
  std::vector<int> order;
  for (std::size_t i = 0; i < p.markings.size(); ++i) order.push_back(static_cast<int>(i + 1));
  auto at = [&](int label) { return p.markings[static_cast<std::size_t>(label - 1)].locus.base()[0]; };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return at(a) < at(b); });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (at(order[k]) == at(order[k - 1])) throw Error(ErrorKind::NonGeneric, "two marked points coincide");

  std::vector<long> alpha, beta;
  std::vector<int> local_to_label;
  for (const auto& e : p.degree.entries())
    if (e.direction[0] < 0) {
      alpha.push_back(e.weight.get_si());
      local_to_label.push_back(e.label);
    }
  for (const auto& e : p.degree.entries())
    if (e.direction[0] > 0) {
      beta.push_back(e.weight.get_si());
      local_to_label.push_back(e.label);
    }
  if (alpha.empty() || beta.empty()) throw Error(ErrorKind::Invalid, "rank-1 degree needs ends on both sides");
  TypeCatalog cat = enumerate_line(p.genus, alpha, beta, order);
  std::vector<CombinatorialType> relabeled;
  for (auto& entry : cat.entries) {
    CombinatorialType t = std::move(entry.type);
    t.degree = p.degree;
    for (auto& a : t.ends) a.label = local_to_label[static_cast<std::size_t>(a.label - 1)];
    std::sort(t.ends.begin(), t.ends.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
    relabeled.push_back(std::move(t));
  }
  TypeCatalog out;
  out.fingerprint = problem_fingerprint(p);
  for (auto& t : relabeled) out.entries.push_back({canonical_key(t), std::move(t)});
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

Rational vertexless_total(const Problem& p) {
  const auto& e1 = p.degree.at_label(1);
  const IntVector& u = e1.direction;
  const std::size_t n = p.ambient;
  // the line x + R u must meet every boundary locus
  RatMatrix a;
  RatVector rhs;
  std::vector<IntMatrix> qs;
  for (const auto& b : p.boundary) {
    const IntMatrix& q = b.locus.quotient();
    qs.push_back(q);
    for (std::size_t r = 0; r < q.rows(); ++r) {
      RatVector row(n, Rational(0));
      Rational c = 0;
      for (std::size_t k = 0; k < n; ++k) {
        row[k] = q(r, k);
        c += q(r, k) * b.locus.base()[k];
      }
      a.append_row(row);
      rhs.push_back(c);
    }
  }
  if (a.rows() > 0 && !solve_affine(a, rhs)) return 0;
  // complement of Z u: columns 2..n of a unimodular matrix with first column u
  IntMatrix col(n, 1);
  for (std::size_t k = 0; k < n; ++k) col(k, 0) = u[k];
  const IntMatrix basis = unimodular_inverse(smith_normal_form(col).u);
  IntMatrix map(a.rows(), n - 1);
  std::size_t r = 0;
  for (const auto& q : qs)
    for (std::size_t i = 0; i < q.rows(); ++i, ++r)
      for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) map(r, j - 1) += q(i, k) * basis(k, j);
  Integer index = 1;
  if (n > 1) {
    const auto idx = lattice_index(map);
    if (!idx) throw Error(ErrorKind::NonGeneric, "the line through the boundary conditions is not isolated");
    index = *idx;
  }
  Integer weights = 1;
  for (const auto& b : p.boundary) weights *= b.locus.weight();
  Rational total(index * weights, e1.weight);
  total.canonicalize();
  return total;
}

}  // namespace

TypeCatalog candidate_types(const Problem& problem, const CountOptions& options) {
  if (!problem.user_types.empty()) {
    TypeCatalog out;
    out.fingerprint = problem_fingerprint(problem);
    for (const auto& t : problem.user_types) out.entries.push_back({canonical_key(t), t});
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
  }
  if (is_vertexless(problem)) return TypeCatalog{problem_fingerprint(problem), {}};
  if (is_hurwitz_shaped(problem)) return hurwitz_catalog(problem);
  if (problem.genus == 0) return enumerate_genus0(problem, options.genus0_mode);
  throw Error(ErrorKind::Invalid, "positive genus needs explicit candidate types unless the problem is a rank-1 double Hurwitz problem");
}

CountReport count(const Problem& problem, const CountOptions& options) {
  check_well_formed(problem);
  check_dimension(problem);
  CountReport report;
  report.problem = problem;
  if (is_vertexless(problem)) {
    report.vertexless = true;
    report.total = vertexless_total(problem);
    return report;
  }
  const TypeCatalog catalog = candidate_types(problem, options);
  report.candidate_types = catalog.size();

  struct Outcome {
    std::optional<Contribution> contribution;
    std::string warning;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(catalog.size());
  const auto psi = problem.psi();
  auto work = [&](std::size_t i) {
    const auto& entry = catalog.entries[i];
    Outcome& o = outcomes[i];
    try {
      if (is_superabundant(entry.type)) {
        o.warning = "skipped superabundant type " + entry.key;
        return;
      }
      for (std::size_t v = 0; v < entry.type.vertex_count; ++v) {
        int sum = 0;
        for (int m : entry.type.marking_labels_at(v)) sum += psi[static_cast<std::size_t>(m - 1)];
        if (sum != over_valence(entry.type, v)) {
          o.warning = "skipped type with psi exponents not matching over-valence: " + entry.key;
          return;
        }
      }
      SolveResult s = solve_positions(entry.type, problem);
      switch (s.status) {
        case SolveStatus::NoSolution: return;
        case SolveStatus::NonRigid:
        case SolveStatus::NonGeneric:
          throw Error(ErrorKind::NonGeneric, "type " + entry.key + ": " + s.detail);
        case SolveStatus::Rigid: break;
      }
      Contribution c = multiplicity(*s.curve, problem);
      c.key = entry.key;
      o.contribution = std::move(c);
    } catch (...) {
      o.error = std::current_exception();
    }
  };

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, catalog.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < catalog.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (std::size_t i = next++; i < catalog.size(); i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }

  for (auto& o : outcomes) {
    if (o.error) std::rethrow_exception(o.error);
    if (!o.warning.empty()) report.warnings.push_back(o.warning);
    if (o.contribution) {
      report.total += o.contribution->mult;
      report.contributions.push_back(std::move(*o.contribution));
    }
  }
  return report;
}

Rational count_unlabeled(const Problem& problem, const CountOptions& options) {
  Rational q = count(problem, options).total / Rational(aut_delta(problem.degree));
  q.canonicalize();
  return q;
}

}  // namespace tropcount
