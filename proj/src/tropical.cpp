#include "tropcount/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>

#include "tropcount/linalg.hpp"

namespace tropcount {

namespace {

bool is_primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g == 1;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Degree::Degree(std::vector<DegreeEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.label != static_cast<int>(i + 1))
      throw std::invalid_argument("degree labels must be exactly 1.." + std::to_string(entries_.size()));
    if (e.direction.size() != entries_.front().direction.size())
      throw std::invalid_argument("degree directions have different lengths");
    if (is_zero(e.direction)) throw std::invalid_argument("end " + std::to_string(e.label) + " has zero direction");
    if (!is_primitive(e.direction))
      throw std::invalid_argument("end " + std::to_string(e.label) + " direction " + format_vector(e.direction) +
                                  " is not primitive");
    if (e.weight <= 0) throw std::invalid_argument("end " + std::to_string(e.label) + " has non-positive weight");
  }
}

IntVector Degree::total() const {
  IntVector sum(ambient());
  for (const auto& e : entries_)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += e.weight * e.direction[k];
  return sum;
}

std::size_t CombinatorialType::valence(std::size_t v) const {
  std::size_t val = 0;
  for (const auto& e : edges) val += (e.tail == v) + (e.head == v);
  for (const auto& e : ends) val += e.vertex == v;
  return val;
}

std::size_t CombinatorialType::markings_at(std::size_t v) const {
  return static_cast<std::size_t>(std::count(marking_vertex.begin(), marking_vertex.end(), v));
}

std::vector<int> CombinatorialType::marking_labels_at(std::size_t v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < marking_vertex.size(); ++i)
    if (marking_vertex[i] == v) out.push_back(static_cast<int>(i + 1));
  return out;
}

std::size_t CombinatorialType::end_vertex(int label) const {
  for (const auto& e : ends)
    if (e.label == label) return e.vertex;
  throw std::out_of_range("no end with label " + std::to_string(label));
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Unbalanced: return "Unbalanced";
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::ZeroWeightEdge: return "ZeroWeightEdge";
    case ViolationKind::NonPrimitiveDirection: return "NonPrimitiveDirection";
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
    case ViolationKind::MissingLabel: return "MissingLabel";
    case ViolationKind::SelfAdjacentEdge: return "SelfAdjacentEdge";
    case ViolationKind::BadIndex: return "BadIndex";
    case ViolationKind::WrongAmbient: return "WrongAmbient";
    case ViolationKind::NegativeOverValence: return "NegativeOverValence";
    case ViolationKind::NoVertices: return "NoVertices";
  }
  return "Unknown";
}

std::vector<Violation> validate(const CombinatorialType& t) {
  std::vector<Violation> out;
  const std::size_t n = t.ambient;
  const std::size_t nv = t.vertex_count;
  if (nv == 0) {
    out.push_back({ViolationKind::NoVertices, 0, "type has no vertices"});
    return out;
  }
  if (t.degree.size() > 0 && t.degree.ambient() != n)
    out.push_back({ViolationKind::WrongAmbient, 0, "degree lives in a different ambient rank"});

  bool indices_ok = true;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    if (e.tail >= nv || e.head >= nv) {
      out.push_back({ViolationKind::BadIndex, i, "edge " + std::to_string(i) + " has an endpoint out of range"});
      indices_ok = false;
      continue;
    }
    if (e.direction.size() != n) {
      out.push_back({ViolationKind::WrongAmbient, i, "edge " + std::to_string(i) + " direction has wrong length"});
      indices_ok = false;
      continue;
    }
    if (e.weight <= 0) out.push_back({ViolationKind::ZeroWeightEdge, i, "edge " + std::to_string(i) + " has weight " + e.weight.get_str()});
    if (!is_primitive(e.direction))
      out.push_back({ViolationKind::NonPrimitiveDirection, i,
                     "edge " + std::to_string(i) + " direction " + format_vector(e.direction) + " is not primitive"});
    if (e.tail == e.head)
      out.push_back({ViolationKind::SelfAdjacentEdge, i, "edge " + std::to_string(i) + " is self-adjacent"});
  }
  for (std::size_t i = 0; i < t.marking_vertex.size(); ++i)
    if (t.marking_vertex[i] >= nv) {
      out.push_back({ViolationKind::BadIndex, i + 1, "marking " + std::to_string(i + 1) + " sits on a missing vertex"});
      indices_ok = false;
    }

  std::vector<int> seen(t.degree.size() + 1, 0);
  for (const auto& e : t.ends) {
    if (e.vertex >= nv) {
      out.push_back({ViolationKind::BadIndex, static_cast<std::size_t>(e.label),
                     "end " + std::to_string(e.label) + " attaches to a missing vertex"});
      indices_ok = false;
    }
    if (e.label < 1 || static_cast<std::size_t>(e.label) > t.degree.size()) {
      out.push_back({ViolationKind::BadIndex, static_cast<std::size_t>(std::max(e.label, 0)),
                     "end label " + std::to_string(e.label) + " is not in the degree"});
      indices_ok = false;
      continue;
    }
    if (++seen[static_cast<std::size_t>(e.label)] == 2)
      out.push_back({ViolationKind::DuplicateLabel, static_cast<std::size_t>(e.label),
                     "end label " + std::to_string(e.label) + " is used more than once"});
  }
  for (std::size_t j = 1; j < seen.size(); ++j)
    if (seen[j] == 0) {
      out.push_back({ViolationKind::MissingLabel, j, "end label " + std::to_string(j) + " is not attached"});
    }
  if (!indices_ok) return out;

  std::vector<IntVector> flux(nv, IntVector(n));
  UnionFind uf(nv);
  for (const auto& e : t.edges) {
    for (std::size_t k = 0; k < n; ++k) {
      flux[e.tail][k] += e.weight * e.direction[k];
      flux[e.head][k] -= e.weight * e.direction[k];
    }
    uf.unite(e.tail, e.head);
  }
  for (const auto& e : t.ends) {
    if (e.label < 1 || static_cast<std::size_t>(e.label) > t.degree.size()) continue;
    const auto& d = t.degree.at_label(e.label);
    for (std::size_t k = 0; k < n; ++k) flux[e.vertex][k] += d.weight * d.direction[k];
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!is_zero(flux[v]))
      out.push_back({ViolationKind::Unbalanced, v,
                     "vertex " + std::to_string(v) + " is unbalanced, net flux " + format_vector(flux[v])});
    if (t.valence(v) + t.markings_at(v) < 3)
      out.push_back({ViolationKind::NegativeOverValence, v, "vertex " + std::to_string(v) + " has val + m_V < 3"});
  }
  for (std::size_t v = 1; v < nv; ++v)
    if (uf.find(v) != uf.find(0)) {
      out.push_back({ViolationKind::Disconnected, v, "graph is disconnected"});
      break;
    }
  return out;
}

std::vector<std::string> validate_curve(const TropicalCurve& c) {
  std::vector<std::string> out;
  const auto& t = c.type;
  if (c.positions.size() != t.vertex_count) out.push_back("wrong number of vertex positions");
  if (c.lengths.size() != t.edges.size()) out.push_back("wrong number of edge lengths");
  if (!out.empty()) return out;
  for (std::size_t v = 0; v < t.vertex_count; ++v)
    if (c.positions[v].size() != t.ambient) out.push_back("vertex " + std::to_string(v) + " position has wrong length");
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = t.edges[i];
    if (c.lengths[i] <= 0) out.push_back("edge " + std::to_string(i) + " has non-positive length");
    for (std::size_t k = 0; k < t.ambient; ++k)
      if (c.positions[e.head][k] - c.positions[e.tail][k] != c.lengths[i] * e.direction[k]) {
        out.push_back("edge " + std::to_string(i) + " does not match its endpoints");
        break;
      }
  }
  return out;
}

int over_valence(const CombinatorialType& t, std::size_t v) {
  const long ov = static_cast<long>(t.valence(v) + t.markings_at(v)) - 3;
  if (ov < 0) throw NegativeOverValenceError(v);
  return static_cast<int>(ov);
}

int over_valence_total(const CombinatorialType& t) {
  int total = 0;
  for (std::size_t v = 0; v < t.vertex_count; ++v) total += over_valence(t, v);
  return total;
}

int genus(const CombinatorialType& t) {
  return static_cast<int>(t.edges.size()) - static_cast<int>(t.vertex_count) + 1;
}

bool euler_identity_holds(const CombinatorialType& t) {
  const long e_inf = static_cast<long>(t.ends.size());
  const long e_bar = static_cast<long>(t.edges.size());
  const long g = genus(t);
  const long m = static_cast<long>(t.marking_count());
  return e_inf == e_bar - 3 * g + 3 + over_valence_total(t) - m;
}

long expected_dim(long n, long g, long e_inf, long m) { return e_inf + m + (n - 3) * (1 - g); }

std::size_t deformation_dim(const CombinatorialType& t) {
  const std::size_t n = t.ambient;
  const std::size_t nv = t.vertex_count;
  const std::size_t ne = t.edges.size();
  // BFS spanning tree. parent_sign[v] is +1 when the tree edge runs parent -> v.
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t i = 0; i < ne; ++i) {
    incident[t.edges[i].tail].push_back(i);
    incident[t.edges[i].head].push_back(i);
  }
  std::vector<long> parent_edge(nv, -1);
  std::vector<int> parent_sign(nv, 0);
  std::vector<std::size_t> depth(nv, 0);
  std::vector<bool> visited(nv, false), tree_edge(ne, false);
  std::queue<std::size_t> bfs;
  bfs.push(0);
  visited[0] = true;
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop();
    for (std::size_t i : incident[v]) {
      const auto& e = t.edges[i];
      const std::size_t w = e.tail == v ? e.head : e.tail;
      if (visited[w]) continue;
      visited[w] = true;
      tree_edge[i] = true;
      parent_edge[w] = static_cast<long>(i);
      parent_sign[w] = e.tail == v ? 1 : -1;
      depth[w] = depth[v] + 1;
      bfs.push(w);
    }
  }
  auto parent_of = [&](std::size_t v) {
    const auto& e = t.edges[static_cast<std::size_t>(parent_edge[v])];
    return e.tail == v ? e.head : e.tail;
  };

  RatMatrix loops(0, ne);
  for (std::size_t c = 0; c < ne; ++c) {
    if (tree_edge[c]) continue;
    // Loop: chord tail -> head, then tree path head -> tail.
    std::vector<Rational> coeff(ne, Rational(0));
    coeff[c] += 1;
    std::size_t a = t.edges[c].head;  // walk from here ...
    std::size_t b = t.edges[c].tail;  // ... to here
    while (a != b) {
      if (depth[a] >= depth[b]) {
        // step a -> parent(a): traverses parent->a backwards
        coeff[static_cast<std::size_t>(parent_edge[a])] -= parent_sign[a];
        a = parent_of(a);
      } else {
        // path continues parent(b) -> b, traversed forwards
        coeff[static_cast<std::size_t>(parent_edge[b])] += parent_sign[b];
        b = parent_of(b);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Rational> row(ne, Rational(0));
      for (std::size_t i = 0; i < ne; ++i) row[i] = coeff[i] * t.edges[i].direction[k];
      loops.append_row(row);
    }
  }
  const std::size_t w_dim = ne - (loops.rows() == 0 ? 0 : rank(loops));
  return n + w_dim;
}

bool is_superabundant(const CombinatorialType& t) {
  const long n = static_cast<long>(t.ambient);
  const long expected = n + static_cast<long>(t.edges.size()) - n * genus(t);
  return static_cast<long>(deformation_dim(t)) > expected;
}

Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max(n, 0L)));
  return f;
}

Integer automorphism_count(const TropicalCurve& c) {
  const auto& t = c.type;
  const std::size_t nv = t.vertex_count;

  // Edges between ordered vertex pairs, as sorted (weight, direction from first to second).
  using EdgeSig = std::pair<Integer, IntVector>;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<EdgeSig>> between;
  for (const auto& e : t.edges) {
    between[{e.tail, e.head}].emplace_back(e.weight, e.direction);
    between[{e.head, e.tail}].emplace_back(e.weight, negated(e.direction));
  }
  for (auto& [k, v] : between) std::sort(v.begin(), v.end());
  auto edges_between = [&](std::size_t a, std::size_t b) -> const std::vector<EdgeSig>& {
    static const std::vector<EdgeSig> none;
    const auto it = between.find({a, b});
    return it == between.end() ? none : it->second;
  };

  std::vector<std::vector<int>> marks(nv), labels(nv);
  for (std::size_t v = 0; v < nv; ++v) marks[v] = t.marking_labels_at(v);
  for (const auto& e : t.ends) labels[e.vertex].push_back(e.label);
  for (auto& l : labels) std::sort(l.begin(), l.end());

  auto compatible = [&](std::size_t v, std::size_t w) {
    return marks[v] == marks[w] && labels[v] == labels[w] && t.valence(v) == t.valence(w) &&
           c.positions[v] == c.positions[w];
  };

  std::vector<std::size_t> image(nv, nv);
  std::vector<bool> used(nv, false);
  Integer vertex_maps = 0;
  auto extend = [&](auto&& self, std::size_t v) -> void {
    if (v == nv) {
      ++vertex_maps;
      return;
    }
    for (std::size_t w = 0; w < nv; ++w) {
      if (used[w] || !compatible(v, w)) continue;
      bool ok = edges_between(v, v) == edges_between(w, w);
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = edges_between(u, v) == edges_between(image[u], w);
      if (!ok) continue;
      image[v] = w;
      used[w] = true;
      self(self, v + 1);
      used[w] = false;
    }
  };
  extend(extend, 0);

  // For each vertex map, parallel edges of equal weight permute freely.
  std::map<std::tuple<std::size_t, std::size_t, Integer, IntVector>, long> parallel;
  for (const auto& e : t.edges) {
    if (e.tail < e.head)
      ++parallel[{e.tail, e.head, e.weight, e.direction}];
    else
      ++parallel[{e.head, e.tail, e.weight, negated(e.direction)}];
  }
  Integer edge_perms = 1;
  for (const auto& [k, count] : parallel) edge_perms *= factorial(count);
  return vertex_maps * edge_perms;
}

Integer aut_delta(const Degree& degree) {
  std::map<std::pair<IntVector, Integer>, long> classes;
  for (const auto& e : degree.entries()) ++classes[{e.direction, e.weight}];
  Integer out = 1;
  for (const auto& [k, count] : classes) out *= factorial(count);
  return out;
}

Integer stab_delta(const TropicalCurve& c) {
  const auto& t = c.type;
  std::map<std::tuple<std::size_t, IntVector, Integer>, long> classes;
  for (const auto& e : t.ends) {
    const auto& d = t.degree.at_label(e.label);
    ++classes[{e.vertex, d.direction, d.weight}];
  }
  Integer out = 1;
  for (const auto& [k, count] : classes) out *= factorial(count);
  return out;
}

}  // namespace tropcount
