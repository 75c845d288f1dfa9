#pragma once

// Exact clique search on CompatGraph.
//
// The optimizer is a bitset branch-and-bound in the MCQ/BBMC family. At each
// node the candidate set is greedily partitioned into independent sets; a
// clique takes at most one vertex per set, so the sum of the heaviest weight
// in each set bounds the achievable gain. Cardinality search is the same code
// with unit weights.
//
// Among all optimal cliques the lexicographically least sorted vertex list is
// returned: after the optimum is known, the answer is fixed one position at a
// time by decision searches ("is there an optimal clique that starts with
// this prefix?").

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "bitset.hpp"
#include "compat_graph.hpp"
#include "error.hpp"

namespace grassclique {

enum class Objective { Cardinality, Weight };

struct SolverOptions {
  /// Wall-clock budget in seconds; unset means unlimited.
  std::optional<double> time_budget;
  /// Resolve ties to the lexicographically least optimal vertex list.
  bool lex_tiebreak = true;
};

struct CliqueResult {
  std::vector<std::size_t> vertices; // sorted, indices into the graph
  std::uint64_t weight = 0;          // sum of graph weights
  bool is_proved_optimal = false;
  std::uint64_t nodes_explored = 0;
  std::uint64_t bound_cuts = 0;
  std::chrono::duration<double> time{0};
};

namespace detail {

class Deadline {
public:
  explicit Deadline(std::optional<double> budget)
      : start_(std::chrono::steady_clock::now()) {
    if (budget)
      end_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*budget));
  }
  bool expired() const {
    return end_ && std::chrono::steady_clock::now() >= *end_;
  }
  std::chrono::duration<double> elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

private:
  std::chrono::steady_clock::time_point start_;
  std::optional<std::chrono::steady_clock::time_point> end_;
};

/// Branch-and-bound over a relabelled copy of the graph. Internal vertex order
/// is a degeneracy (smallest-last) order with the densest core first.
class WeightedCliqueSearch {
public:
  WeightedCliqueSearch(const std::vector<Bitset> &adj, std::vector<std::uint64_t> weights,
                       const Deadline &deadline)
      : deadline_(deadline) {
    const std::size_t m = adj.size();
    order_ = degeneracy_order(adj);
    std::vector<std::size_t> pos(m);
    for (std::size_t i = 0; i < m; ++i)
      pos[order_[i]] = i;
    adj_.assign(m, Bitset(m));
    w_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      w_[i] = weights[order_[i]];
      adj[order_[i]].for_each([&](std::size_t j) { adj_[i].set(pos[j]); });
    }
  }

  /// Searches `candidates` (external indices) for a clique heavier than
  /// `floor`; stops early once `target` is reached. Returns the best clique
  /// found (external indices, unsorted) if it beats `floor`.
  std::optional<std::vector<std::size_t>> run(const Bitset &candidates, std::uint64_t floor,
                                              std::uint64_t target) {
    const std::size_t m = adj_.size();
    Bitset p(m);
    for (std::size_t i = 0; i < m; ++i)
      if (candidates.test(order_[i]))
        p.set(i);
    best_weight_ = floor;
    target_ = target;
    best_.clear();
    found_ = false;
    current_.clear();
    expand(p, 0);
    if (!found_)
      return std::nullopt;
    std::vector<std::size_t> out;
    for (auto v : best_)
      out.push_back(order_[v]);
    return out;
  }

  bool timed_out() const noexcept { return timed_out_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t cuts() const noexcept { return cuts_; }
  std::uint64_t best_weight() const noexcept { return best_weight_; }

private:
  static std::vector<std::size_t> degeneracy_order(const std::vector<Bitset> &adj) {
    const std::size_t m = adj.size();
    std::vector<std::size_t> degree(m);
    for (std::size_t i = 0; i < m; ++i)
      degree[i] = adj[i].count();
    std::vector<bool> removed(m, false);
    std::vector<std::size_t> removal;
    removal.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t pick = m;
      for (std::size_t i = 0; i < m; ++i)
        if (!removed[i] && (pick == m || degree[i] < degree[pick]))
          pick = i;
      removed[pick] = true;
      removal.push_back(pick);
      adj[pick].for_each([&](std::size_t j) {
        if (!removed[j])
          --degree[j];
      });
    }
    std::reverse(removal.begin(), removal.end());
    return removal;
  }

  bool stop() const noexcept { return timed_out_ || best_weight_ >= target_; }

  void expand(Bitset &p, std::uint64_t current_weight) {
    if ((++nodes_ & 1023) == 0 && deadline_.expired())
      timed_out_ = true;
    if (stop())
      return;

    // Greedy colouring: each class is an independent set; bound[i] is the
    // sum of class maxima up to and including the class of order[i].
    std::vector<std::size_t> order;
    std::vector<std::uint64_t> bound;
    order.reserve(p.count());
    bound.reserve(order.capacity());
    Bitset uncoloured = p;
    Bitset avail(p.size());
    std::uint64_t acc = 0;
    while (uncoloured.any()) {
      avail = uncoloured;
      std::uint64_t class_max = 0;
      for (std::size_t v = avail.first(); v < avail.size(); v = avail.first()) {
        avail.reset(v);
        avail.and_not(adj_[v]);
        uncoloured.reset(v);
        order.push_back(v);
        class_max = std::max(class_max, w_[v]);
      }
      acc += class_max;
      bound.resize(order.size(), acc);
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_weight + bound[i] <= best_weight_) {
        ++cuts_;
        return;
      }
      const std::size_t v = order[i];
      Bitset next = p;
      next &= adj_[v];
      current_.push_back(v);
      const std::uint64_t w = current_weight + w_[v];
      if (w > best_weight_) {
        best_weight_ = w;
        best_ = current_;
        found_ = true;
      }
      if (next.any())
        expand(next, w);
      current_.pop_back();
      if (stop())
        return;
      p.reset(v);
    }
  }

  const Deadline &deadline_;
  std::vector<std::size_t> order_;
  std::vector<Bitset> adj_;
  std::vector<std::uint64_t> w_;
  std::vector<std::size_t> current_, best_;
  std::uint64_t best_weight_ = 0;
  std::uint64_t target_ = 0;
  bool found_ = false;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t cuts_ = 0;
};

inline std::uint64_t sum_weights(std::span<const std::uint64_t> w,
                                 std::span<const std::size_t> verts) {
  std::uint64_t s = 0;
  for (auto v : verts)
    s += w[v];
  return s;
}

/// Optimum over the whole graph with the given search weights.
inline CliqueResult solve(const CompatGraph &g, const std::vector<std::uint64_t> &w,
                          const SolverOptions &opts) {
  const Deadline deadline(opts.time_budget);
  CliqueResult res;
  const std::size_t m = g.size();
  if (m == 0) {
    res.is_proved_optimal = true;
    return res;
  }
  WeightedCliqueSearch search(g.adj, w, deadline);
  Bitset all(m);
  all.set_all();
  const std::uint64_t unbounded = ~std::uint64_t{0};
  auto found = search.run(all, 0, unbounded);
  std::vector<std::size_t> best = found.value_or(std::vector<std::size_t>{});
  std::sort(best.begin(), best.end());
  bool proved = !search.timed_out();

  if (proved && opts.lex_tiebreak && !best.empty()) {
    const std::uint64_t optimum = sum_weights(w, best);
    std::vector<std::size_t> chosen;
    std::uint64_t chosen_weight = 0;
    Bitset cand = all;
    while (chosen_weight < optimum && !search.timed_out()) {
      const std::size_t pos = chosen.size();
      for (std::size_t v = cand.first(); v < best[pos]; v = cand.next(v)) {
        if (w[v] > optimum - chosen_weight)
          continue;
        const std::uint64_t need = optimum - chosen_weight - w[v];
        std::optional<std::vector<std::size_t>> tail;
        if (need == 0) {
          tail.emplace();
        } else {
          Bitset sub = cand;
          sub &= g.adj[v];
          sub.keep_above(v);
          if (sub.none())
            continue;
          tail = search.run(sub, need - 1, need);
          if (search.timed_out())
            break;
        }
        if (tail) {
          std::vector<std::size_t> witness = chosen;
          witness.push_back(v);
          witness.insert(witness.end(), tail->begin(), tail->end());
          std::sort(witness.begin(), witness.end());
          best = std::move(witness);
          break;
        }
      }
      const std::size_t u = best[pos];
      chosen.push_back(u);
      chosen_weight += w[u];
      cand &= g.adj[u];
      cand.keep_above(u);
    }
  }

  res.vertices = std::move(best);
  res.weight = g.weight_of(res.vertices);
  res.is_proved_optimal = proved;
  res.nodes_explored = search.nodes();
  res.bound_cuts = search.cuts();
  res.time = deadline.elapsed();
  if (!is_clique(g, res.vertices))
    throw Error(ErrorKind::InvalidArgument, "internal error: solver returned a non-clique");
  return res;
}

} // namespace detail

/// Maximum-cardinality clique; `weight` reports the sum of orbit sizes.
inline CliqueResult max_clique(const CompatGraph &g, const SolverOptions &opts = {}) {
  return detail::solve(g, std::vector<std::uint64_t>(g.size(), 1), opts);
}

/// Clique maximizing the total weight (orbit sizes: the codeword count).
inline CliqueResult max_weight_clique(const CompatGraph &g, const SolverOptions &opts = {}) {
  return detail::solve(g, g.weights, opts);
}

inline CliqueResult solve_objective(const CompatGraph &g, Objective objective,
                                    const SolverOptions &opts = {}) {
  return objective == Objective::Weight ? max_weight_clique(g, opts) : max_clique(g, opts);
}

/// Best clique containing `fixed`: fixed plus the best clique of the common
/// neighbourhood.
inline CliqueResult max_clique_with_fixed(const CompatGraph &g, std::span<const std::size_t> fixed,
                                          Objective objective = Objective::Cardinality,
                                          const SolverOptions &opts = {}) {
  const auto keep = to_indices(common_neighborhood(g, fixed));
  const CompatGraph sub = induced_subgraph(g, keep);
  CliqueResult res = solve_objective(sub, objective, opts);
  std::vector<std::size_t> verts(fixed.begin(), fixed.end());
  for (auto v : res.vertices)
    verts.push_back(keep[v]);
  std::sort(verts.begin(), verts.end());
  res.vertices = std::move(verts);
  res.weight = g.weight_of(res.vertices);
  return res;
}

struct EnumerationResult {
  std::vector<std::vector<std::size_t>> cliques;
  bool truncated = false;
};

/// Bron–Kerbosch with Tomita pivoting. `emit` receives each maximal clique
/// (sorted) and returns false to stop early. At most `cap` cliques are
/// emitted; returns true when the cap cut the enumeration short.
inline bool for_each_maximal_clique(
    const CompatGraph &g, std::uint64_t cap,
    const std::function<bool(const std::vector<std::size_t> &)> &emit) {
  if (cap == 0)
    throw Error(ErrorKind::InvalidArgument, "enumeration cap must be positive");
  const std::size_t m = g.size();
  std::uint64_t emitted = 0;
  bool truncated = false, stopped = false;
  std::vector<std::size_t> r;

  std::function<void(Bitset, Bitset)> recurse = [&](Bitset p, Bitset x) {
    if (truncated || stopped)
      return;
    if (p.none()) {
      if (x.none()) {
        if (emitted == cap) {
          truncated = true;
          return;
        }
        std::vector<std::size_t> clique = r;
        std::sort(clique.begin(), clique.end());
        ++emitted;
        if (!emit(clique))
          stopped = true;
      }
      return;
    }
    // pivot from P ∪ X maximizing |P ∩ N(u)|
    Bitset px = p;
    px |= x;
    std::size_t pivot = px.first(), best = 0;
    px.for_each([&](std::size_t u) {
      const std::size_t c = p.intersection_count(g.adj[u]);
      if (c > best) {
        best = c;
        pivot = u;
      }
    });
    Bitset branch = p;
    branch.and_not(g.adj[pivot]);
    for (std::size_t v = branch.first(); v < branch.size(); v = branch.next(v)) {
      Bitset np = p, nx = x;
      np &= g.adj[v];
      nx &= g.adj[v];
      r.push_back(v);
      recurse(std::move(np), std::move(nx));
      r.pop_back();
      if (truncated || stopped)
        return;
      p.reset(v);
      x.set(v);
    }
  };

  if (m == 0)
    return false;
  Bitset p(m), x(m);
  p.set_all();
  recurse(std::move(p), std::move(x));
  return truncated;
}

inline EnumerationResult enumerate_maximal_cliques(const CompatGraph &g, std::uint64_t cap) {
  EnumerationResult out;
  out.truncated = for_each_maximal_clique(g, cap, [&](const std::vector<std::size_t> &c) {
    out.cliques.push_back(c);
    return true;
  });
  return out;
}

/// All cliques of exactly `size` vertices among `allowed`, in lexicographic order.
inline void for_each_clique_of_size(const CompatGraph &g, const Bitset &allowed, std::size_t size,
                                    const std::function<bool(const std::vector<std::size_t> &)> &emit) {
  std::vector<std::size_t> cur;
  bool stopped = false;
  std::function<void(const Bitset &)> rec = [&](const Bitset &cand) {
    if (stopped)
      return;
    if (cur.size() == size) {
      if (!emit(cur))
        stopped = true;
      return;
    }
    for (std::size_t v = cand.first(); v < cand.size(); v = cand.next(v)) {
      Bitset next = cand;
      next &= g.adj[v];
      next.keep_above(v);
      if (next.count() + cur.size() + 1 < size)
        continue;
      cur.push_back(v);
      rec(next);
      cur.pop_back();
      if (stopped)
        return;
    }
  };
  rec(allowed);
}

} // namespace grassclique
