#include "tropcount/hurwitz.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "tropcount/counting.hpp"
#include "tropcount/problem.hpp"

namespace tropcount {

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("partition has no parts");
  for (long p : parts_)
    if (p <= 0) throw std::invalid_argument("partition part " + std::to_string(p) + " is not positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::parse(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<long> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad partition part '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad partition part '" + item + "'");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

long Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

std::string Partition::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
  return out + "]";
}

std::vector<Partition> partitions_of(long d) {
  std::vector<Partition> out;
  std::vector<long> cur;
  std::function<void(long, long)> rec = [&](long left, long cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (long p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (d >= 1) rec(d, d);
  return out;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int x : image_) {
    if (x < 0 || static_cast<std::size_t>(x) >= image_.size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> im(static_cast<std::size_t>(d));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int d, int a, int b) {
  Permutation p = identity(d);
  std::swap(p.image_.at(static_cast<std::size_t>(a)), p.image_.at(static_cast<std::size_t>(b)));
  return p;
}

std::vector<long> Permutation::cycle_type() const {
  std::vector<long> out;
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(image_[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> im(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) im[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutations of different degrees");
  std::vector<int> im(b.image_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.image_[static_cast<std::size_t>(b.image_[i])];
  return Permutation(std::move(im));
}

Integer aut_partition(const Partition& p) {
  Integer out = 1;
  const auto& parts = p.parts();
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    out *= factorial(static_cast<long>(j - i));
    i = j;
  }
  return out;
}

namespace {

long branch_points(int g, const Partition& alpha, const Partition& beta) {
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  if (alpha.size() != beta.size())
    throw std::invalid_argument("mismatched degree: " + alpha.str() + " and " + beta.str() + " are partitions of different numbers");
  const long m = 2L * g - 2 + static_cast<long>(alpha.length() + beta.length());
  if (m < 0) throw std::invalid_argument("negative number of branch points");
  return m;
}

void fill_conversions(HurwitzResult& r) {
  const Integer dfact = factorial(r.d);
  r.labeled = Rational(aut_partition(r.alpha) * aut_partition(r.beta) * r.hat, dfact);
  r.labeled.canonicalize();
  r.unlabeled = Rational(r.hat, dfact);
  r.unlabeled.canonicalize();
}

// Depth-first count over transposition sequences. State: remaining steps,
// current product, and the orbit partition of everything used so far.
class FactorizationCounter {
 public:
  FactorizationCounter(int d, long m, std::vector<long> beta) : d_(d), m_(m), beta_(std::move(beta)) {}

  Integer count_from(const Permutation& sigma) {
    std::vector<int> block(static_cast<std::size_t>(d_));
    std::iota(block.begin(), block.end(), 0);
    for (int i = 0; i < d_; ++i) join(block, i, sigma(i));
    return dfs(0, sigma.image(), block);
  }

 private:
  static void join(std::vector<int>& block, int a, int b) {
    const int from = block[static_cast<std::size_t>(b)];
    const int to = block[static_cast<std::size_t>(a)];
    if (from == to) return;
    for (auto& x : block)
      if (x == from) x = to;
  }

  static long cycles(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    long c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      ++c;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
    }
    return c;
  }

  std::string key(long depth, const std::vector<int>& p, const std::vector<int>& block) const {
    std::string k;
    k.push_back(static_cast<char>(depth));
    for (int x : p) k.push_back(static_cast<char>(x));
    // blocks renamed by first occurrence
    std::vector<int> name(static_cast<std::size_t>(d_), -1);
    int next = 0;
    for (int x : block) {
      auto& n = name[static_cast<std::size_t>(x)];
      if (n < 0) n = next++;
      k.push_back(static_cast<char>(n));
    }
    return k;
  }

  Integer dfs(long depth, const std::vector<int>& p, const std::vector<int>& block) {
    const long left = m_ - depth;
    const long c = cycles(p);
    const long target = static_cast<long>(beta_.size());
    // each transposition changes the number of cycles by exactly one
    if (std::abs(c - target) > left || (c - target - left) % 2 != 0) return 0;
    if (left == 0) {
      for (int x : block)
        if (x != block[0]) return 0;
      return Permutation(p).cycle_type() == beta_ ? 1 : 0;
    }
    const std::string k = key(depth, p, block);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    Integer total = 0;
    for (int a = 0; a < d_; ++a)
      for (int b = a + 1; b < d_; ++b) {
        std::vector<int> q = p;  // q = p * (a b)
        std::swap(q[static_cast<std::size_t>(a)], q[static_cast<std::size_t>(b)]);
        std::vector<int> nb = block;
        join(nb, a, b);
        total += dfs(depth + 1, q, nb);
      }
    memo_.emplace(k, total);
    return total;
  }

  int d_;
  long m_;
  std::vector<long> beta_;
  std::unordered_map<std::string, Integer> memo_;
};

}  // namespace

HurwitzResult hurwitz_symmetric(int g, const Partition& alpha, const Partition& beta) {
  HurwitzResult r;
  r.g = g;
  r.alpha = alpha;
  r.beta = beta;
  r.m = branch_points(g, alpha, beta);
  r.d = alpha.size();
  const int d = static_cast<int>(r.d);

  // the full conjugacy class of alpha
  std::vector<Permutation> cls;
  std::vector<int> im(static_cast<std::size_t>(d));
  std::iota(im.begin(), im.end(), 0);
  do {
    Permutation p(im);
    if (p.cycle_type() == alpha.parts()) cls.push_back(p);
  } while (std::next_permutation(im.begin(), im.end()));

  const unsigned workers = std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 8u);
  std::vector<Integer> partial(workers, 0);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w]() {
      FactorizationCounter counter(d, r.m, beta.parts());
      for (std::size_t i = next++; i < cls.size(); i = next++) partial[w] += counter.count_from(cls[i]);
    });
  for (auto& t : pool) t.join();
  for (const auto& x : partial) r.hat += x;
  fill_conversions(r);
  return r;
}

HurwitzResult hurwitz_tropical(int g, const Partition& alpha, const Partition& beta) {
  HurwitzResult r;
  r.g = g;
  r.alpha = alpha;
  r.beta = beta;
  r.m = branch_points(g, alpha, beta);
  r.d = alpha.size();

  Problem p;
  p.ambient = 1;
  p.genus = g;
  std::vector<DegreeEntry> entries;
  int label = 1;
  for (long a : alpha.parts()) entries.push_back({IntVector{-1}, a, label++});
  for (long b : beta.parts()) entries.push_back({IntVector{1}, b, label++});
  p.degree = Degree(entries);
  for (long k = 0; k < r.m; ++k) p.markings.push_back({AffineSubspace::point(RatVector{Rational(2 * k + 1)}), 1});

  const CountReport report = count(p);
  r.labeled = report.total;
  r.unlabeled = report.total / Rational(aut_delta(p.degree));
  r.unlabeled.canonicalize();
  Rational hat = r.unlabeled * Rational(factorial(r.d));
  hat.canonicalize();
  if (hat.get_den() != 1) throw Error(ErrorKind::Internal, "tropical Hurwitz count gives a non-integral factorization count");
  r.hat = hat.get_num();
  return r;
}

bool conversions_hold(const HurwitzResult& r) {
  const Rational dfact(factorial(r.d));
  return r.labeled == Rational(aut_partition(r.alpha) * aut_partition(r.beta)) / dfact * Rational(r.hat) &&
         r.unlabeled == Rational(r.hat) / dfact;
}

std::vector<CrosscheckRow> crosscheck(int max_g, long max_d) {
  std::vector<CrosscheckRow> rows;
  for (int g = 0; g <= max_g; ++g)
    for (long d = 1; d <= max_d; ++d) {
      const auto parts = partitions_of(d);
      for (const auto& a : parts)
        for (const auto& b : parts) {
          CrosscheckRow row{hurwitz_tropical(g, a, b), hurwitz_symmetric(g, a, b), false};
          row.equal = row.tropical.labeled == row.symmetric.labeled && row.tropical.hat == row.symmetric.hat;
          rows.push_back(std::move(row));
        }
    }
  return rows;
}

}  // namespace tropcount
