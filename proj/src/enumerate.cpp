#include "tropcount/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tropcount/linalg.hpp"

namespace tropcount {

// ---------------------------------------------------------------------------
// canonical keys: colour refinement, then individualize-and-refine

namespace {

struct Incidence {
  std::size_t other;
  long edge_class;  // class of (direction seen from this vertex, weight)
};

struct KeyContext {
  const CombinatorialType& t;
  std::vector<std::vector<Incidence>> adj;
  std::vector<std::string> vertex_labels;
  std::vector<long> edge_class_forward;   // direction as stored
  std::vector<long> edge_class_backward;  // negated direction

  explicit KeyContext(const CombinatorialType& type) : t(type), adj(type.vertex_count), vertex_labels(type.vertex_count) {
    std::vector<std::string> fwd, bwd;
    std::set<std::string> all;
    for (const auto& e : t.edges) {
      const std::string w = "w" + e.weight.get_str();
      fwd.push_back(format_vector(e.direction) + w);
      bwd.push_back(format_vector(negated(e.direction)) + w);
      all.insert(fwd.back());
      all.insert(bwd.back());
    }
    const std::vector<std::string> sorted(all.begin(), all.end());
    auto id = [&](const std::string& s) {
      return static_cast<long>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin());
    };
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      edge_class_forward.push_back(id(fwd[i]));
      edge_class_backward.push_back(id(bwd[i]));
      adj.at(t.edges[i].tail).push_back({t.edges[i].head, edge_class_forward.back()});
      adj.at(t.edges[i].head).push_back({t.edges[i].tail, edge_class_backward.back()});
    }
    for (std::size_t v = 0; v < t.vertex_count; ++v) {
      std::ostringstream os;
      os << 'm';
      for (int m : t.marking_labels_at(v)) os << m << ',';
      os << 'e';
      std::vector<int> ends;
      for (const auto& a : t.ends)
        if (a.vertex == v) ends.push_back(a.label);
      std::sort(ends.begin(), ends.end());
      for (int e : ends) os << e << ',';
      vertex_labels[v] = os.str();
    }
  }
};

// Renumbers arbitrary comparable signatures to 0..k-1 in sorted order.
template <class Sig>
std::size_t renumber(const std::vector<Sig>& sigs, std::vector<long>& colours) {
  std::vector<Sig> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t v = 0; v < sigs.size(); ++v)
    colours[v] = static_cast<long>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
  return sorted.size();
}

std::size_t refine(const KeyContext& ctx, std::vector<long>& colours) {
  std::size_t classes = renumber(colours, colours);
  while (true) {
    std::vector<std::vector<long>> sigs(colours.size());
    for (std::size_t v = 0; v < colours.size(); ++v) {
      std::vector<std::pair<long, long>> nb;
      for (const auto& inc : ctx.adj[v]) nb.emplace_back(colours[inc.other], inc.edge_class);
      std::sort(nb.begin(), nb.end());
      sigs[v].push_back(colours[v]);
      for (const auto& [c, e] : nb) {
        sigs[v].push_back(c);
        sigs[v].push_back(e);
      }
    }
    const std::size_t next = renumber(sigs, colours);
    if (next == classes) return classes;
    classes = next;
  }
}

std::string encode(const KeyContext& ctx, const std::vector<long>& pos) {
  const auto& t = ctx.t;
  std::vector<std::size_t> order(t.vertex_count);
  for (std::size_t v = 0; v < t.vertex_count; ++v) order[static_cast<std::size_t>(pos[v])] = v;
  std::ostringstream os;
  os << "n" << t.ambient << "v" << t.vertex_count << '|';
  for (std::size_t v : order) os << ctx.vertex_labels[v] << '|';
  std::vector<std::tuple<long, long, long>> edges;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const long a = pos[t.edges[i].tail];
    const long b = pos[t.edges[i].head];
    if (a <= b)
      edges.emplace_back(a, b, ctx.edge_class_forward[i]);
    else
      edges.emplace_back(b, a, ctx.edge_class_backward[i]);
  }
  std::sort(edges.begin(), edges.end());
  // Edge classes are only meaningful with their decoding table.
  std::set<std::string> names;
  for (const auto& e : t.edges) {
    names.insert(format_vector(e.direction) + "w" + e.weight.get_str());
    names.insert(format_vector(negated(e.direction)) + "w" + e.weight.get_str());
  }
  for (const auto& [a, b, c] : edges) os << a << '-' << b << ':' << c << ';';
  os << '|';
  for (const auto& s : names) os << s << ';';
  return os.str();
}

std::string search(const KeyContext& ctx, std::vector<long> colours) {
  const std::size_t classes = refine(ctx, colours);
  if (classes == colours.size()) return encode(ctx, colours);
  std::vector<std::size_t> cell_size(classes, 0);
  for (long c : colours) ++cell_size[static_cast<std::size_t>(c)];
  long target = 0;
  while (cell_size[static_cast<std::size_t>(target)] < 2) ++target;
  std::string best;
  for (std::size_t v = 0; v < colours.size(); ++v) {
    if (colours[v] != target) continue;
    std::vector<long> next(colours.size());
    for (std::size_t w = 0; w < colours.size(); ++w) next[w] = 2 * colours[w] + ((colours[w] == target && w != v) ? 1 : 0);
    std::string candidate = search(ctx, std::move(next));
    if (best.empty() || candidate < best) best = std::move(candidate);
  }
  return best;
}

}  // namespace

std::string canonical_key(const CombinatorialType& t) {
  const KeyContext ctx(t);
  std::vector<std::string> initial(t.vertex_count);
  for (std::size_t v = 0; v < t.vertex_count; ++v)
    initial[v] = ctx.vertex_labels[v] + "/" + std::to_string(t.valence(v));
  std::vector<long> colours(t.vertex_count, 0);
  renumber(initial, colours);
  return search(ctx, std::move(colours));
}

std::string problem_fingerprint(const Problem& p) {
  std::ostringstream os;
  os << "n=" << p.ambient << " g=" << p.genus << " ends=";
  for (const auto& e : p.degree.entries()) os << format_vector(e.direction) << "x" << e.weight << ' ';
  os << "psi=";
  for (const auto& m : p.markings) os << m.psi << ',';
  os << " codim=";
  for (const auto& m : p.markings) os << m.locus.codim() << ',';
  os << " boundary=";
  for (const auto& b : p.boundary) os << b.label << ':' << b.locus.codim() << ',';
  return os.str();
}

namespace {

TypeCatalog make_catalog(std::string fingerprint, std::vector<CombinatorialType> types) {
  std::map<std::string, CombinatorialType> unique;
  for (auto& t : types) {
    std::string key = canonical_key(t);
    unique.try_emplace(std::move(key), std::move(t));
  }
  TypeCatalog out;
  out.fingerprint = std::move(fingerprint);
  for (auto& [k, t] : unique) out.entries.push_back({k, std::move(t)});
  return out;
}

// ---------------------------------------------------------------------------
// genus 0: rooted at end 1, memoized over the remaining leaves. Markings and
// constrained ends are individual leaves; in realizable mode the other ends
// only matter through their (direction, weight) class, so they are counted
// per class and receive their labels after the search.

struct Geometry {
  RatVector p0;                 // top vertex at t = 0
  std::vector<RatVector> dirs;  // top vertex moves by dirs[j] * t_j
  std::vector<StrictInequality> ineqs;
};

struct State {
  std::uint64_t items = 0;
  std::vector<std::uint8_t> counts;
  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(s.items);
    for (auto c : s.counts) h = h * 1000003u + c;
    return h;
  }
};

struct Node;

struct Child {
  enum class Kind { Leaf, ClassEnd, Subtree } kind = Kind::Leaf;
  int value = 0;  // end label for Leaf, class index for ClassEnd
  const Node* node = nullptr;
};

struct Node {
  std::vector<int> markings;
  std::vector<Child> children;
  IntVector flux;  // sum of w_j u_j over the ends below
  std::size_t vertices = 1;
  Geometry geo;
};

// Normalizes, drops tautologies, keeps the tightest of parallel constraints.
// Returns false when some constant constraint fails even in the closure.
bool simplify(std::vector<StrictInequality>& system) {
  std::map<RatVector, Rational> tightest;
  for (auto& ineq : system) {
    Rational scale = 0;
    for (const auto& c : ineq.coeffs)
      if (c != 0) {
        scale = abs(c);
        break;
      }
    if (scale == 0) {
      if (ineq.constant < 0) return false;
      continue;
    }
    for (auto& c : ineq.coeffs) c /= scale;
    ineq.constant /= scale;
    auto [it, fresh] = tightest.try_emplace(ineq.coeffs, ineq.constant);
    if (!fresh && ineq.constant < it->second) it->second = ineq.constant;
  }
  system.clear();
  for (auto& [coeffs, constant] : tightest) system.push_back({constant, coeffs});
  return true;
}

class Genus0Enumerator {
 public:
  Genus0Enumerator(const Problem& p, Genus0Mode mode) : p_(p), mode_(mode), n_(p.ambient) {
    const int e_inf = static_cast<int>(p.degree.size());
    for (int j = 2; j <= e_inf; ++j) {
      const auto& e = p.degree.at_label(j);
      const auto* b = p.boundary_for(j);
      const IntVector f = scaled(e.direction, e.weight);
      if (mode_ == Genus0Mode::AllShapes || b) {
        items_.push_back({j, 0, f, b ? b->locus.codim() : 0});
        continue;
      }
      auto it = std::find_if(classes_.begin(), classes_.end(),
                             [&](const EndClass& c) { return c.direction == e.direction && c.weight == e.weight; });
      if (it == classes_.end()) {
        classes_.push_back({e.direction, e.weight, f, {}});
        it = classes_.end() - 1;
      }
      it->labels.push_back(j);
    }
    for (std::size_t i = 0; i < p.markings.size(); ++i) {
      marking_bits_ |= std::uint64_t{1} << items_.size();
      items_.push_back({0, static_cast<int>(i + 1), IntVector(n_), p.markings[i].locus.codim()});
    }
    if (items_.size() > 63) throw Error(ErrorKind::Invalid, "too many constrained leaves for the genus-0 enumerator");
    for (const auto& c : classes_)
      if (c.labels.size() > 255) throw Error(ErrorKind::Invalid, "too many parallel ends for the genus-0 enumerator");
    full_.items = items_.empty() ? 0 : (std::uint64_t{1} << items_.size()) - 1;
    for (const auto& c : classes_) full_.counts.push_back(static_cast<std::uint8_t>(c.labels.size()));
  }

  std::vector<CombinatorialType> run() {
    std::vector<CombinatorialType> out;
    if (full_.items == 0 && std::all_of(full_.counts.begin(), full_.counts.end(), [](auto c) { return c == 0; }))
      return out;
    for (const auto& root : build(full_)) {
      CombinatorialType t;
      t.ambient = n_;
      t.degree = p_.degree;
      t.marking_vertex.assign(p_.markings.size(), 0);
      std::vector<std::pair<std::size_t, int>> slots;  // (vertex, class) awaiting a label
      const std::size_t v = emit(root, t, slots);
      t.ends.push_back({v, 1});
      distribute(t, slots, out);
    }
    return out;
  }

 private:
  struct Item {
    int end_label;
    int marking_label;
    IntVector flux;
    std::size_t codim;  // of its condition
  };

  struct EndClass {
    IntVector direction;
    Integer weight;
    IntVector flux;
    std::vector<int> labels;
  };

  IntVector flux(const State& s) const {
    IntVector f(n_);
    for (std::size_t b = 0; b < items_.size(); ++b)
      if (s.items >> b & 1) f = add(f, items_[b].flux);
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (s.counts[c] > 0) f = add(f, scaled(classes_[c].flux, s.counts[c]));
    return f;
  }

  std::size_t codim(const State& s) const {
    std::size_t c = 0;
    for (std::size_t b = 0; b < items_.size(); ++b)
      if (s.items >> b & 1) c += items_[b].codim;
    return c;
  }

  std::size_t emit(const Node& node, CombinatorialType& t, std::vector<std::pair<std::size_t, int>>& slots) const {
    const std::size_t v = t.vertex_count++;
    for (int m : node.markings) t.marking_vertex[static_cast<std::size_t>(m - 1)] = v;
    for (const auto& c : node.children) {
      switch (c.kind) {
        case Child::Kind::Leaf: t.ends.push_back({v, c.value}); break;
        case Child::Kind::ClassEnd: slots.emplace_back(v, c.value); break;
        case Child::Kind::Subtree: {
          const std::size_t cv = emit(*c.node, t, slots);
          const auto pp = primitive_part(negated(c.node->flux));
          t.edges.push_back({cv, v, pp.primitive, pp.multiple});
          break;
        }
      }
    }
    return v;
  }

  // Every way of handing each class's labels to that class's slots; slots of
  // one class at one vertex are interchangeable.
  void distribute(const CombinatorialType& base, const std::vector<std::pair<std::size_t, int>>& slots,
                  std::vector<CombinatorialType>& out) const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(classes_.size());  // (vertex, capacity)
    for (const auto& [v, c] : slots) {
      auto& g = groups[static_cast<std::size_t>(c)];
      auto it = std::find_if(g.begin(), g.end(), [&](const auto& x) { return x.first == v; });
      if (it == g.end())
        g.emplace_back(v, 1);
      else
        ++it->second;
    }
    CombinatorialType t = base;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t cls, std::size_t li) {
      if (cls == classes_.size()) {
        CombinatorialType done = t;
        std::sort(done.ends.begin(), done.ends.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
        out.push_back(std::move(done));
        return;
      }
      const auto& labels = classes_[cls].labels;
      if (li == labels.size()) {
        rec(cls + 1, 0);
        return;
      }
      for (auto& [v, cap] : groups[cls]) {
        if (cap == 0) continue;
        --cap;
        t.ends.push_back({v, labels[li]});
        rec(cls, li + 1);
        t.ends.pop_back();
        ++cap;
      }
    };
    rec(0, 0);
  }

  const std::vector<Node>& build(const State& state) {
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    std::vector<Node> nodes;
    const IntVector f = flux(state);
    if (!is_zero(f)) {
      const std::uint64_t marks = state.items & marking_bits_;
      // every subset M of the markings may sit at the top vertex
      for (std::uint64_t sub = marks;; sub = (sub - 1) & marks) {
        long k = 2;
        std::vector<int> labels;
        for (std::size_t b = 0; b < items_.size(); ++b)
          if (sub >> b & 1) {
            const int label = items_[b].marking_label;
            labels.push_back(label);
            k += p_.markings[static_cast<std::size_t>(label - 1)].psi - 1;
          }
        if (k >= 1) {
          Split split{state, f, labels, state.items & ~sub, static_cast<int>(k), {}, {}, state.counts};
          choose_class_ends(split, 0, nodes);
        }
        if (sub == 0) break;
      }
    }
    return memo_.emplace(state, std::move(nodes)).first->second;
  }

  struct Split {
    const State& whole;
    const IntVector& flux;
    std::vector<int> labels;       // markings at the top vertex
    std::uint64_t items_left;      // still to be placed into blocks
    int k;                         // children still to choose
    std::vector<int> class_leaves; // class ends attached directly
    std::vector<State> blocks;
    std::vector<std::uint8_t> counts_left;
  };

  // First the class ends hanging directly off the top vertex (as a multiset),
  // then the blocks, each holding at least one individual leaf.
  void choose_class_ends(Split& s, std::size_t cls, std::vector<Node>& out) {
    if (cls == classes_.size()) {
      if (s.k == 0) {
        if (s.items_left == 0 && std::all_of(s.counts_left.begin(), s.counts_left.end(), [](auto c) { return c == 0; }))
          combine(s, out);
        return;
      }
      if (s.items_left == 0 || std::popcount(s.items_left) < s.k) return;
      make_blocks(s, out);
      return;
    }
    const int avail = s.counts_left[cls];
    for (int take = 0; take <= std::min(avail, s.k); ++take) {
      s.counts_left[cls] = static_cast<std::uint8_t>(avail - take);
      s.k -= take;
      for (int i = 0; i < take; ++i) s.class_leaves.push_back(static_cast<int>(cls));
      choose_class_ends(s, cls + 1, out);
      for (int i = 0; i < take; ++i) s.class_leaves.pop_back();
      s.k += take;
    }
    s.counts_left[cls] = static_cast<std::uint8_t>(avail);
  }

  void make_blocks(Split& s, std::vector<Node>& out) {
    if (s.k == 1) {
      s.blocks.push_back({s.items_left, s.counts_left});
      combine(s, out);
      s.blocks.pop_back();
      return;
    }
    const std::uint64_t remaining = s.items_left;
    const std::uint64_t low = remaining & (~remaining + 1);
    const std::uint64_t others = remaining ^ low;
    for (std::uint64_t sub = others;; sub = (sub - 1) & others) {
      const std::uint64_t block = low | sub;
      if (std::popcount(remaining ^ block) >= s.k - 1) {
        // share of each class's ends going into this block
        std::vector<std::uint8_t> share(classes_.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t cls) {
          if (cls == classes_.size()) {
            s.blocks.push_back({block, share});
            const auto saved = s.counts_left;
            for (std::size_t c = 0; c < classes_.size(); ++c) s.counts_left[c] = static_cast<std::uint8_t>(s.counts_left[c] - share[c]);
            s.items_left = remaining ^ block;
            --s.k;
            make_blocks(s, out);
            ++s.k;
            s.items_left = remaining;
            s.counts_left = saved;
            s.blocks.pop_back();
            return;
          }
          for (int x = 0; x <= s.counts_left[cls]; ++x) {
            share[cls] = static_cast<std::uint8_t>(x);
            rec(cls + 1);
          }
          share[cls] = 0;
        };
        rec(0);
      }
      if (sub == 0) break;
    }
  }

  void combine(const Split& s, std::vector<Node>& out) {
    const bool root = s.whole == full_;
    const bool count_prune = mode_ == Genus0Mode::Realizable && !root;
    const std::size_t budget = codim(s.whole);

    std::vector<Child> fixed;
    for (int c : s.class_leaves) fixed.push_back({Child::Kind::ClassEnd, c, nullptr});
    std::vector<std::vector<Child>> options(s.blocks.size());
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      const State& b = s.blocks[i];
      const bool no_counts = std::all_of(b.counts.begin(), b.counts.end(), [](auto c) { return c == 0; });
      if (std::popcount(b.items) == 1 && (b.items & marking_bits_) == 0 && no_counts) {
        options[i].push_back({Child::Kind::Leaf, items_[static_cast<std::size_t>(std::countr_zero(b.items))].end_label, nullptr});
        continue;
      }
      for (const auto& node : build(b)) options[i].push_back({Child::Kind::Subtree, 0, &node});
      if (options[i].empty()) return;
    }
    // A piece with V vertices has n + V - 1 parameters and at most
    // codim independent conditions; it must move in < n dimensions.
    std::vector<Child> pick = fixed;
    pick.resize(fixed.size() + s.blocks.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t vertices) {
      if (count_prune && vertices > budget) return;
      if (i == s.blocks.size()) {
        if (count_prune && n_ + vertices < budget + 1) return;  // expected dimension negative
        Node node{s.labels, pick, s.flux, vertices, {}};
        if (mode_ == Genus0Mode::AllShapes || place(node, root)) out.push_back(std::move(node));
        return;
      }
      for (const auto& c : options[i]) {
        pick[fixed.size() + i] = c;
        rec(i + 1, vertices + (c.kind == Child::Kind::Subtree ? c.node->vertices : 0));
      }
    };
    rec(0, 1);
  }

  void add_locus_rows(const AffineSubspace& locus, RatMatrix& a, RatVector& rhs, std::size_t unknowns) const {
    const IntMatrix& q = locus.quotient();
    for (std::size_t r = 0; r < q.rows(); ++r) {
      std::vector<Rational> row(unknowns, Rational(0));
      Rational c = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        row[k] = q(r, k);
        c += q(r, k) * locus.base()[k];
      }
      a.append_row(row);
      rhs.push_back(c);
    }
  }

  // Solves for the family of top-vertex positions; false when empty or
  // provably not part of a rigid curve.
  bool place(Node& node, bool root) const {
    std::size_t unknowns = n_;
    std::vector<std::size_t> offset;
    for (const auto& c : node.children) {
      offset.push_back(unknowns);
      if (c.kind == Child::Kind::Subtree) unknowns += c.node->geo.dirs.size() + 1;
    }
    RatMatrix a;
    RatVector rhs;
    for (std::size_t ci = 0; ci < node.children.size(); ++ci) {
      const auto& c = node.children[ci];
      if (c.kind == Child::Kind::Leaf) {
        if (const auto* b = p_.boundary_for(c.value)) add_locus_rows(b->locus, a, rhs, unknowns);
        continue;
      }
      if (c.kind == Child::Kind::ClassEnd) continue;
      const Geometry& g = c.node->geo;
      const IntVector u = primitive_part(negated(c.node->flux)).primitive;
      const std::size_t d = g.dirs.size();
      for (std::size_t k = 0; k < n_; ++k) {
        std::vector<Rational> row(unknowns, Rational(0));
        row[k] = 1;
        for (std::size_t j = 0; j < d; ++j) row[offset[ci] + j] = -g.dirs[j][k];
        row[offset[ci] + d] = -Rational(u[k]);
        a.append_row(row);
        rhs.push_back(g.p0[k]);
      }
    }
    for (int m : node.markings) add_locus_rows(p_.markings[static_cast<std::size_t>(m - 1)].locus, a, rhs, unknowns);
    if (root)
      if (const auto* b = p_.boundary_for(1)) add_locus_rows(b->locus, a, rhs, unknowns);

    std::optional<AffineSolution> sol;
    if (a.rows() == 0) {
      AffineSolution free_sol{RatVector(unknowns, Rational(0)), {}};
      for (std::size_t i = 0; i < unknowns; ++i) {
        RatVector e(unknowns, Rational(0));
        e[i] = 1;
        free_sol.kernel_basis.push_back(std::move(e));
      }
      sol = std::move(free_sol);
    } else {
      sol = solve_affine(a, rhs);
    }
    if (!sol) return false;
    const std::size_t d = sol->kernel_basis.size();
    if (!root && d + 1 > n_) return false;

    // the top vertex must move injectively with the parameters
    RatMatrix top(n_, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < n_; ++k) top(k, j) = sol->kernel_basis[j][k];
    if (d > 0 && rank(top) < d) return false;

    auto affine_in_params = [&](std::size_t var) {
      StrictInequality s{sol->particular[var], RatVector(d, Rational(0))};
      for (std::size_t j = 0; j < d; ++j) s.coeffs[j] = sol->kernel_basis[j][var];
      return s;
    };
    std::vector<StrictInequality> ineqs;
    for (std::size_t ci = 0; ci < node.children.size(); ++ci) {
      const auto& c = node.children[ci];
      if (c.kind != Child::Kind::Subtree) continue;
      const Geometry& g = c.node->geo;
      const std::size_t dc = g.dirs.size();
      ineqs.push_back(affine_in_params(offset[ci] + dc));  // edge length
      std::vector<StrictInequality> param;
      for (std::size_t j = 0; j < dc; ++j) param.push_back(affine_in_params(offset[ci] + j));
      for (const auto& old : g.ineqs) {
        StrictInequality s{old.constant, RatVector(d, Rational(0))};
        for (std::size_t j = 0; j < dc; ++j) {
          s.constant += old.coeffs[j] * param[j].constant;
          for (std::size_t q = 0; q < d; ++q) s.coeffs[q] += old.coeffs[j] * param[j].coeffs[q];
        }
        ineqs.push_back(std::move(s));
      }
    }
    if (!simplify(ineqs)) return false;
    // closure, so degenerate limits survive and get reported as non-generic
    if (!ineqs.empty() && !closure_feasible(ineqs, d)) return false;

    node.geo.p0.assign(sol->particular.begin(), sol->particular.begin() + static_cast<long>(n_));
    node.geo.dirs.clear();
    for (std::size_t j = 0; j < d; ++j)
      node.geo.dirs.emplace_back(sol->kernel_basis[j].begin(), sol->kernel_basis[j].begin() + static_cast<long>(n_));
    node.geo.ineqs = std::move(ineqs);
    return true;
  }

  const Problem& p_;
  Genus0Mode mode_;
  std::size_t n_;
  std::vector<Item> items_;
  std::vector<EndClass> classes_;
  std::uint64_t marking_bits_ = 0;
  State full_;
  std::unordered_map<State, std::vector<Node>, StateHash> memo_;
};

}  // namespace

TypeCatalog enumerate_genus0(const Problem& problem, Genus0Mode mode) {
  if (problem.genus != 0) throw Error(ErrorKind::Invalid, "the tree enumerator only handles genus 0");
  check_well_formed(problem);
  check_dimension(problem);
  if (problem.degree.size() < 2 || (problem.degree.size() == 2 && problem.markings.empty()))
    throw Error(ErrorKind::Invalid, "no vertices: the curve is a single line");
  Genus0Enumerator e(problem, mode);
  return make_catalog(problem_fingerprint(problem), e.run());
}

// ---------------------------------------------------------------------------
// rank 1: left-to-right sweep

namespace {

struct Strand {
  long source;  // >= 0: vertex index; < 0: -(left end label)
  long weight;
  friend auto operator<=>(const Strand&, const Strand&) = default;
};

class LineSweep {
 public:
  LineSweep(int g, std::vector<long> alpha, std::vector<long> beta, std::vector<int> order)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), order_(std::move(order)) {
    m_ = 2 * g - 2 + static_cast<long>(alpha_.size() + beta_.size());
    const auto l1 = static_cast<int>(alpha_.size());
    const auto l2 = static_cast<int>(beta_.size());
    std::vector<DegreeEntry> entries;
    for (int i = 0; i < l1; ++i) entries.push_back({IntVector{-1}, alpha_[static_cast<std::size_t>(i)], i + 1});
    for (int j = 0; j < l2; ++j) entries.push_back({IntVector{1}, beta_[static_cast<std::size_t>(j)], l1 + j + 1});
    degree_ = Degree(entries);
  }

  std::vector<CombinatorialType> run() {
    if (m_ < 1) return {};
    std::vector<Strand> strands;
    for (std::size_t i = 0; i < alpha_.size(); ++i) strands.push_back({-static_cast<long>(i + 1), alpha_[i]});
    step(0, strands);
    return std::move(out_);
  }

 private:
  struct Edge {
    long from;  // source as in Strand
    long to;    // vertex
    long weight;
  };

  void step(long k, std::vector<Strand>& strands) {
    if (k == m_) {
      finish(strands);
      return;
    }
    std::sort(strands.begin(), strands.end());
    // distinct classes by (source, weight)
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < strands.size(); ++i)
      if (i == 0 || strands[i] != strands[i - 1]) first.push_back(i);
    auto remove_at = [](std::vector<Strand> s, std::size_t i) {
      s.erase(s.begin() + static_cast<long>(i));
      return s;
    };
    // merges
    for (std::size_t a = 0; a < first.size(); ++a) {
      for (std::size_t b = a; b < first.size(); ++b) {
        std::size_t ia = first[a];
        std::size_t ib = first[b];
        if (a == b) {
          if (ia + 1 >= strands.size() || strands[ia + 1] != strands[ia]) continue;
          ib = ia + 1;
        }
        std::vector<Strand> next = remove_at(remove_at(strands, ib), ia);
        edges_.push_back({strands[ia].source, k, strands[ia].weight});
        edges_.push_back({strands[ib].source, k, strands[ib].weight});
        next.push_back({k, strands[ia].weight + strands[ib].weight});
        step(k + 1, next);
        edges_.pop_back();
        edges_.pop_back();
      }
    }
    // splits
    for (std::size_t a = 0; a < first.size(); ++a) {
      const Strand s = strands[first[a]];
      for (long w1 = 1; 2 * w1 <= s.weight; ++w1) {
        std::vector<Strand> next = remove_at(strands, first[a]);
        edges_.push_back({s.source, k, s.weight});
        next.push_back({k, w1});
        next.push_back({k, s.weight - w1});
        step(k + 1, next);
        edges_.pop_back();
      }
    }
  }

  void finish(std::vector<Strand> strands) {
    if (strands.size() != beta_.size()) return;
    std::sort(strands.begin(), strands.end());
    std::vector<bool> used(strands.size(), false);
    std::vector<std::size_t> assign(beta_.size());
    assign_right(0, strands, used, assign);
  }

  void assign_right(std::size_t j, const std::vector<Strand>& strands, std::vector<bool>& used,
                    std::vector<std::size_t>& assign) {
    if (j == beta_.size()) {
      emit(strands, assign);
      return;
    }
    for (std::size_t i = 0; i < strands.size(); ++i) {
      if (used[i] || strands[i].weight != beta_[j]) continue;
      // interchangeable copies: only the first unused one of a class
      if (i > 0 && strands[i - 1] == strands[i] && !used[i - 1]) continue;
      used[i] = true;
      assign[j] = i;
      assign_right(j + 1, strands, used, assign);
      used[i] = false;
    }
  }

  void emit(const std::vector<Strand>& strands, const std::vector<std::size_t>& assign) {
    CombinatorialType t;
    t.ambient = 1;
    t.vertex_count = static_cast<std::size_t>(m_);
    t.degree = degree_;
    for (const auto& e : edges_) {
      if (e.from < 0)
        t.ends.push_back({static_cast<std::size_t>(e.to), static_cast<int>(-e.from)});
      else
        t.edges.push_back({static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to), IntVector{1}, e.weight});
    }
    const int l1 = static_cast<int>(alpha_.size());
    for (std::size_t j = 0; j < assign.size(); ++j) {
      const Strand& s = strands[assign[j]];
      if (s.source < 0) return;  // a straight line through nothing
      t.ends.push_back({static_cast<std::size_t>(s.source), l1 + static_cast<int>(j) + 1});
    }
    std::sort(t.ends.begin(), t.ends.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    t.marking_vertex.assign(static_cast<std::size_t>(m_), 0);
    for (long k = 0; k < m_; ++k) {
      const int label = order_.empty() ? static_cast<int>(k + 1) : order_[static_cast<std::size_t>(k)];
      t.marking_vertex[static_cast<std::size_t>(label - 1)] = static_cast<std::size_t>(k);
    }
    for (const auto& v : validate(t))
      if (v.kind == ViolationKind::Disconnected) return;
    out_.push_back(std::move(t));
  }

  std::vector<long> alpha_, beta_;
  std::vector<int> order_;
  long m_ = 0;
  Degree degree_;
  std::vector<Edge> edges_;
  std::vector<CombinatorialType> out_;
};

void check_partition(const std::vector<long>& part, const char* name) {
  if (part.empty()) throw std::invalid_argument(std::string(name) + " is empty");
  for (long x : part)
    if (x <= 0) throw std::invalid_argument(std::string(name) + " has a non-positive part");
}

}  // namespace

TypeCatalog enumerate_line(int g, const std::vector<long>& alpha, const std::vector<long>& beta,
                           const std::vector<int>& sweep_order) {
  check_partition(alpha, "alpha");
  check_partition(beta, "beta");
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  if (std::accumulate(alpha.begin(), alpha.end(), 0L) != std::accumulate(beta.begin(), beta.end(), 0L))
    throw std::invalid_argument("alpha and beta are partitions of different degrees");
  const long m = 2L * g - 2 + static_cast<long>(alpha.size() + beta.size());
  if (!sweep_order.empty()) {
    std::vector<int> sorted = sweep_order;
    std::sort(sorted.begin(), sorted.end());
    for (long i = 0; i < m; ++i)
      if (static_cast<long>(sorted.size()) != m || sorted[static_cast<std::size_t>(i)] != i + 1)
        throw std::invalid_argument("sweep order is not a permutation of the markings");
  }
  LineSweep sweep(g, alpha, beta, sweep_order);
  std::ostringstream fp;
  fp << "line g=" << g << " alpha=";
  for (long a : alpha) fp << a << ',';
  fp << " beta=";
  for (long b : beta) fp << b << ',';
  return make_catalog(fp.str(), sweep.run());
}

}  // namespace tropcount
