#pragma once

// End-to-end classification: orbits -> compatibility graph -> cliques.
//
// C_q(n,d,k) is the weight of a maximum-weight clique when every orbit is
// weighted by its size. The per-class clique numbers (upper bounds on the
// number of orbits of each size in any code) and the fixed-vertex
// conditional bounds are computed alongside so reports show the same
// decomposition into orbit-size classes that the bounds are stated in.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "clique.hpp"
#include "compat_graph.hpp"
#include "field.hpp"
#include "io.hpp"
#include "orbits.hpp"

namespace grassclique {

/// Fix `fixed_count` mutually compatible orbits of class `fixed_t` and ask
/// how many further orbits from the classes in `extend_ts` can join them.
/// An empty `extend_ts` means every class other than `fixed_t`.
struct ConditionalProfile {
  unsigned fixed_t = 1;
  unsigned fixed_count = 0;
  std::vector<unsigned> extend_ts;
};

struct ConditionalBound {
  ConditionalProfile profile;
  std::uint64_t bound = 0;         // max extension size over all fixed cliques
  std::uint64_t fixed_cliques = 0; // how many fixed cliques were tried
  bool proved = true;
};

struct PipelineOptions {
  std::optional<FieldParams> field; // default primitive polynomial when unset
  std::optional<double> time_budget; // seconds, per solver call
  unsigned threads = 1;
  std::uint64_t max_subspaces = 50'000'000;
  std::optional<std::filesystem::path> cache_dir; // no caching when unset
  std::vector<ConditionalProfile> conditions;
  bool lex_tiebreak = true;
};

struct ClassificationReport {
  unsigned q = 2, n = 0, k = 0, d = 0;
  unsigned requested_d = 0;
  std::vector<unsigned> poly;
  std::map<unsigned, std::uint64_t> alpha_bounds; // t -> max orbits of that class
  std::map<unsigned, bool> alpha_proved;
  std::map<unsigned, std::uint64_t> class_sizes; // t -> qualifying orbits
  std::vector<ConditionalBound> conditional_bounds;
  Certificate best_code;
  std::uint64_t M = 0;
  bool optimal = false;
  std::map<unsigned, std::uint64_t> decomposition; // t -> alpha_t achieved
  /// Equals M when optimal; otherwise the sum of class bounds times sizes.
  std::uint64_t upper_bound = 0;

  std::size_t orbit_count = 0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::uint64_t nodes_explored = 0;
  double seconds = 0;
};

/// Field, orbits and graph for one (q, n, k, d). The FieldCtx lives behind a
/// pointer because every Subspace refers back to it.
struct Instance {
  std::shared_ptr<const FieldCtx> ctx;
  std::shared_ptr<const OrbitSet> orbits;
  CompatGraph graph;
  unsigned requested_d = 0;
  bool orbits_from_cache = false;
};

inline FieldParams resolve_field(unsigned q, unsigned n, const PipelineOptions &opts) {
  if (!opts.field)
    return default_primitive_poly(q, n);
  if (opts.field->q != q || opts.field->n != n)
    throw Error(ErrorKind::InvalidArgument, "supplied polynomial does not match q and n");
  return *opts.field;
}

inline std::shared_ptr<const OrbitSet> load_or_enumerate(const FieldCtx &ctx, unsigned k,
                                                         const PipelineOptions &opts,
                                                         bool *from_cache = nullptr) {
  if (from_cache)
    *from_cache = false;
  if (opts.cache_dir) {
    if (auto cached = load_orbit_cache(*opts.cache_dir, ctx, k)) {
      if (from_cache)
        *from_cache = true;
      return std::make_shared<const OrbitSet>(std::move(*cached));
    }
  }
  auto set = std::make_shared<const OrbitSet>(
      enumerate_orbits(ctx, k, EnumerateOptions{opts.max_subspaces, opts.threads}));
  if (opts.cache_dir)
    store_orbit_cache(*opts.cache_dir, ctx, *set);
  return set;
}

inline Instance make_instance(std::shared_ptr<const FieldCtx> ctx,
                              std::shared_ptr<const OrbitSet> orbits, unsigned d,
                              const PipelineOptions &opts) {
  Instance inst;
  inst.requested_d = d;
  inst.graph = build_graph(*ctx, *orbits, d, GraphOptions{opts.threads, false});
  inst.ctx = std::move(ctx);
  inst.orbits = std::move(orbits);
  return inst;
}

inline Instance prepare_instance(unsigned q, unsigned n, unsigned k, unsigned d,
                                 const PipelineOptions &opts = {}) {
  auto ctx = std::make_shared<const FieldCtx>(build_field(resolve_field(q, n, opts)));
  bool cached = false;
  auto orbits = load_or_enumerate(*ctx, k, opts, &cached);
  Instance inst = make_instance(std::move(ctx), std::move(orbits), d, opts);
  inst.orbits_from_cache = cached;
  return inst;
}

/// Proper divisors t of n, i.e. the possible orbit-size classes.
inline std::vector<unsigned> size_classes(unsigned n) {
  std::vector<unsigned> ts;
  for (unsigned t = 1; t < n; ++t)
    if (n % t == 0)
      ts.push_back(t);
  return ts;
}

inline SolverOptions solver_options(const PipelineOptions &opts) {
  return SolverOptions{opts.time_budget, opts.lex_tiebreak};
}

/// Clique number of the class-t subgraph: no code uses more orbits of size
/// (q^n-1)/(q^t-1) than this.
inline CliqueResult alpha_bound_clique(const Instance &inst, unsigned t,
                                       const PipelineOptions &opts = {}) {
  return max_clique(size_class_subgraph(inst.graph, t), solver_options(opts));
}

inline std::uint64_t alpha_bound(const Instance &inst, unsigned t,
                                 const PipelineOptions &opts = {}) {
  return alpha_bound_clique(inst, t, opts).vertices.size();
}

inline std::uint64_t alpha_bound(unsigned q, unsigned n, unsigned k, unsigned d, unsigned t,
                                 const PipelineOptions &opts = {}) {
  return alpha_bound(prepare_instance(q, n, k, d, opts), t, opts);
}

inline ConditionalBound conditional_bound(const Instance &inst, const ConditionalProfile &profile,
                                          const PipelineOptions &opts = {}) {
  const CompatGraph &g = inst.graph;
  if (profile.fixed_t == 0 || g.n % profile.fixed_t != 0)
    throw Error(ErrorKind::InvalidArgument, "fixed class t must divide n");
  ConditionalBound out{profile, 0, 0, true};

  Bitset extension(g.size());
  if (profile.extend_ts.empty()) {
    for (unsigned t : size_classes(g.n))
      if (t != profile.fixed_t)
        for (auto v : class_members(g, t))
          extension.set(v);
  } else {
    for (unsigned t : profile.extend_ts)
      for (auto v : class_members(g, t))
        extension.set(v);
  }

  Bitset fixed_pool(g.size());
  for (auto v : class_members(g, profile.fixed_t))
    fixed_pool.set(v);

  const SolverOptions sopts = solver_options(opts);
  auto extend = [&](const std::vector<std::size_t> &fixed) {
    Bitset cand = fixed.empty() ? extension : common_neighborhood(g, fixed);
    cand &= extension;
    const CliqueResult r = max_clique(induced_subgraph(g, to_indices(cand)), sopts);
    out.bound = std::max<std::uint64_t>(out.bound, r.vertices.size());
    out.proved = out.proved && r.is_proved_optimal;
    ++out.fixed_cliques;
    return true;
  };

  if (profile.fixed_count == 0)
    extend({});
  else
    for_each_clique_of_size(g, fixed_pool, profile.fixed_count, extend);
  return out;
}

inline ConditionalBound conditional_bound(unsigned q, unsigned n, unsigned k, unsigned d,
                                          const ConditionalProfile &profile,
                                          const PipelineOptions &opts = {}) {
  return conditional_bound(prepare_instance(q, n, k, d, opts), profile, opts);
}

/// Certificate listing the canonical representative of each chosen orbit.
inline Certificate make_certificate(const Instance &inst, std::span<const std::size_t> clique) {
  Certificate c;
  c.q = inst.ctx->q();
  c.n = inst.ctx->n();
  c.k = inst.orbits->k;
  c.d = inst.graph.d;
  c.poly = inst.ctx->params().poly;
  for (auto v : clique)
    c.generators.push_back(inst.orbits->orbits[inst.graph.vertices[v]].rep.elems());
  c.M = inst.graph.weight_of(clique);
  return c;
}

inline ClassificationReport run_algorithm1(const Instance &inst, const PipelineOptions &opts = {}) {
  const auto started = std::chrono::steady_clock::now();
  const CompatGraph &g = inst.graph;
  ClassificationReport rep;
  rep.q = g.q;
  rep.n = g.n;
  rep.k = g.k;
  rep.d = g.d;
  rep.requested_d = inst.requested_d;
  rep.poly = inst.ctx->params().poly;
  rep.orbit_count = inst.orbits->orbits.size();
  rep.vertex_count = g.size();
  rep.edge_count = g.edge_count();

  std::uint64_t class_sum = 0;
  for (unsigned t : size_classes(g.n)) {
    const auto members = class_members(g, t);
    rep.class_sizes[t] = members.size();
    const CliqueResult r = alpha_bound_clique(inst, t, opts);
    rep.alpha_proved[t] = r.is_proved_optimal;
    rep.nodes_explored += r.nodes_explored;
    // an unproved clique number is only a lower bound; fall back to the class size
    rep.alpha_bounds[t] = r.is_proved_optimal ? r.vertices.size() : members.size();
    class_sum += rep.alpha_bounds[t] * g.class_period(t);
  }

  const CliqueResult best = max_weight_clique(g, solver_options(opts));
  rep.nodes_explored += best.nodes_explored;
  rep.M = best.weight;
  rep.optimal = best.is_proved_optimal;
  rep.upper_bound = rep.optimal ? rep.M : class_sum;
  for (unsigned t : size_classes(g.n))
    rep.decomposition[t] = 0;
  for (auto v : best.vertices)
    ++rep.decomposition[inst.orbits->orbits[g.vertices[v]].t];
  rep.best_code = make_certificate(inst, best.vertices);

  for (const auto &profile : opts.conditions)
    rep.conditional_bounds.push_back(conditional_bound(inst, profile, opts));

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

inline ClassificationReport run_algorithm1(unsigned q, unsigned n, unsigned k, unsigned d,
                                           const PipelineOptions &opts = {}) {
  return run_algorithm1(prepare_instance(q, n, k, d, opts), opts);
}

struct TableCell {
  unsigned d = 0, k = 0;
  std::optional<ClassificationReport> report;
  std::string error;
};

struct Table {
  unsigned q = 2, n = 0;
  std::vector<unsigned> ds, ks;
  std::vector<TableCell> cells; // row-major: d outer, k inner

  const TableCell &at(std::size_t row, std::size_t col) const {
    return cells[row * ks.size() + col];
  }
  bool complete() const {
    for (const auto &c : cells)
      if (!c.report || !c.report->optimal)
        return false;
    return true;
  }
};

/// Default ranges: k from 2 to n/2, even d from 4 to 2*kmax.
inline std::vector<unsigned> default_k_range(unsigned n) {
  std::vector<unsigned> ks;
  for (unsigned k = 2; k <= n / 2; ++k)
    ks.push_back(k);
  return ks;
}

inline std::vector<unsigned> default_d_range(unsigned n) {
  std::vector<unsigned> ds;
  for (unsigned d = 4; d <= 2 * (n / 2); d += 2)
    ds.push_back(d);
  return ds;
}

inline Table table(unsigned q, unsigned n, std::vector<unsigned> ds, std::vector<unsigned> ks,
                   const PipelineOptions &opts = {}) {
  Table tab{q, n, std::move(ds), std::move(ks), {}};
  std::shared_ptr<const FieldCtx> ctx;
  try {
    ctx = std::make_shared<const FieldCtx>(build_field(resolve_field(q, n, opts)));
  } catch (const Error &e) {
    for (unsigned d : tab.ds)
      for (unsigned k : tab.ks)
        tab.cells.push_back(TableCell{d, k, std::nullopt, e.what()});
    return tab;
  }
  // orbits depend only on k; enumerate once per column
  std::map<unsigned, std::shared_ptr<const OrbitSet>> by_k;
  std::map<unsigned, std::string> k_errors;
  for (unsigned k : tab.ks) {
    try {
      by_k[k] = load_or_enumerate(*ctx, k, opts);
    } catch (const Error &e) {
      k_errors[k] = e.what();
    }
  }
  for (unsigned d : tab.ds) {
    for (unsigned k : tab.ks) {
      TableCell cell{d, k, std::nullopt, {}};
      if (auto it = k_errors.find(k); it != k_errors.end()) {
        cell.error = it->second;
      } else {
        try {
          cell.report = run_algorithm1(make_instance(ctx, by_k[k], d, opts), opts);
        } catch (const Error &e) {
          cell.error = e.what();
        }
      }
      tab.cells.push_back(std::move(cell));
    }
  }
  return tab;
}

} // namespace grassclique
