#pragma once

// Orbit compatibility graph: one vertex per orbit whose internal minimum
// distance reaches d, an edge when the union of the two orbits still has
// minimum distance >= d. Cliques are cyclic codes.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "error.hpp"
#include "orbits.hpp"
#include "parallel.hpp"

namespace grassclique {

struct CompatGraph {
  unsigned q = 2, n = 0, k = 0;
  unsigned d = 0;
  Exponent group_order = 0;          // q^n - 1
  std::vector<std::size_t> vertices; // orbit index per vertex
  std::vector<std::uint64_t> weights;
  std::vector<Bitset> adj;

  std::size_t size() const noexcept { return vertices.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adj[i].test(j); }
  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto &row : adj)
      c += row.count();
    return c / 2;
  }
  std::uint64_t weight_of(std::span<const std::size_t> verts) const {
    std::uint64_t w = 0;
    for (auto v : verts)
      w += weights[v];
    return w;
  }
  /// Orbit size (q^n-1)/(q^t-1) for stabilizer degree t.
  std::uint64_t class_period(unsigned t) const {
    return group_order / (ipow(q, t) - 1);
  }
};

/// Subspace distances between equal-dimension spaces are even, so ">= d" for
/// odd d is the same constraint as ">= d+1".
struct NormalizedDistance {
  unsigned d;
  bool adjusted;
};

inline NormalizedDistance normalize_distance(unsigned d) {
  if (d % 2)
    return {d + 1, true};
  return {d, false};
}

struct GraphOptions {
  unsigned threads = 1;
  /// Recompute every distance from all member pairs (slow reference path).
  bool pairwise_oracle = false;
};

inline CompatGraph build_graph(const FieldCtx &ctx, const OrbitSet &orbits, unsigned d,
                               const GraphOptions &opts = {}) {
  d = normalize_distance(d).d;
  CompatGraph g;
  g.q = orbits.q;
  g.n = orbits.n;
  g.k = orbits.k;
  g.d = d;
  g.group_order = ctx.order();
  for (std::size_t i = 0; i < orbits.orbits.size(); ++i) {
    const auto &o = orbits.orbits[i];
    if (o.min_dist != kInfiniteDistance && o.min_dist >= d) {
      g.vertices.push_back(i);
      g.weights.push_back(o.period);
    }
  }
  const std::size_t m = g.vertices.size();
  g.adj.assign(m, Bitset(m));
  // rows of the upper triangle are independent
  std::vector<std::vector<std::size_t>> hits(m);
  parallel_for(m, std::max(1u, opts.threads), [&](std::size_t i) {
    thread_local std::unique_ptr<ShiftCorrelator> corr;
    thread_local Exponent corr_order = 0;
    if (!corr || corr_order != ctx.order()) {
      corr = std::make_unique<ShiftCorrelator>(ctx.order());
      corr_order = ctx.order();
    }
    const Orbit &a = orbits.orbits[g.vertices[i]];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Orbit &b = orbits.orbits[g.vertices[j]];
      const unsigned dist = opts.pairwise_oracle
                                ? inter_orbit_distance_pairwise(ctx, a, b)
                                : inter_orbit_distance(ctx, a, b, corr.get());
      if (dist >= d)
        hits[i].push_back(j);
    }
  });
  for (std::size_t i = 0; i < m; ++i)
    for (auto j : hits[i]) {
      g.adj[i].set(j);
      g.adj[j].set(i);
    }
  return g;
}

/// Induced subgraph on `keep` (indices into g, must be increasing).
inline CompatGraph induced_subgraph(const CompatGraph &g, std::span<const std::size_t> keep) {
  CompatGraph h;
  h.q = g.q;
  h.n = g.n;
  h.k = g.k;
  h.d = g.d;
  h.group_order = g.group_order;
  const std::size_t m = keep.size();
  h.vertices.reserve(m);
  h.weights.reserve(m);
  for (auto v : keep) {
    h.vertices.push_back(g.vertices[v]);
    h.weights.push_back(g.weights[v]);
  }
  h.adj.assign(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (g.adj[keep[i]].test(keep[j])) {
        h.adj[i].set(j);
        h.adj[j].set(i);
      }
  return h;
}

/// Vertices of the class with orbit size (q^n-1)/(q^t-1); local indices.
inline std::vector<std::size_t> class_members(const CompatGraph &g, unsigned t) {
  std::vector<std::size_t> keep;
  if (t == 0 || g.n % t != 0)
    return keep;
  const std::uint64_t period = g.class_period(t);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.weights[v] == period)
      keep.push_back(v);
  return keep;
}

inline CompatGraph size_class_subgraph(const CompatGraph &g, unsigned t) {
  if (t == 0 || g.n % t != 0)
    throw Error(ErrorKind::InvalidArgument,
                "t=" + std::to_string(t) + " does not divide n=" + std::to_string(g.n));
  const auto keep = class_members(g, t);
  return induced_subgraph(g, keep);
}

inline bool is_clique(const CompatGraph &g, std::span<const std::size_t> verts) {
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= g.size())
      return false;
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (verts[i] == verts[j] || !g.adj[verts[i]].test(verts[j]))
        return false;
  }
  return true;
}

/// Vertices adjacent to every member of `fixed`, as a bitset over g.
inline Bitset common_neighborhood(const CompatGraph &g, std::span<const std::size_t> fixed) {
  if (!is_clique(g, fixed))
    throw Error(ErrorKind::FixedNotClique, "fixed vertex set is not a clique");
  Bitset common(g.size());
  common.set_all();
  for (auto v : fixed)
    common &= g.adj[v];
  return common;
}

inline std::vector<std::size_t> to_indices(const Bitset &b) {
  std::vector<std::size_t> out;
  b.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

inline CompatGraph common_neighborhood_subgraph(const CompatGraph &g,
                                                std::span<const std::size_t> fixed) {
  return induced_subgraph(g, to_indices(common_neighborhood(g, fixed)));
}

/// DIMACS edge-list text; vertices are 1-based, weights on "n" lines.
inline std::string to_dimacs(const CompatGraph &g) {
  std::string out = "c orbit compatibility graph q=" + std::to_string(g.q) +
                    " n=" + std::to_string(g.n) + " k=" + std::to_string(g.k) +
                    " d=" + std::to_string(g.d) + "\n";
  out += "p edge " + std::to_string(g.size()) + " " + std::to_string(g.edge_count()) + "\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    out += "n " + std::to_string(v + 1) + " " + std::to_string(g.weights[v]) + "\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = g.adj[i].next(i); j < g.size(); j = g.adj[i].next(j))
      out += "e " + std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
  return out;
}

} // namespace grassclique
