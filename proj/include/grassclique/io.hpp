#pragma once

// JSON forms: certificates, orbit cache files, and graph export.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "certificate.hpp"
#include "compat_graph.hpp"
#include "orbits.hpp"

namespace grassclique {

inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr int kCacheSchema = 1;

using json = nlohmann::json;

// Certificates: {"q","n","k","d","poly","generators":[[ints]],"M"}. "poly" is
// polynomial text; a coefficient array is accepted on input.

inline json certificate_to_json(const Certificate &c) {
  return json{{"q", c.q},
              {"n", c.n},
              {"k", c.k},
              {"d", c.d},
              {"poly", format_polynomial(c.poly)},
              {"generators", c.generators},
              {"M", c.M}};
}

inline Certificate certificate_from_json(const json &j) {
  try {
    Certificate c;
    c.q = j.at("q").get<unsigned>();
    c.n = j.at("n").get<unsigned>();
    c.k = j.at("k").get<unsigned>();
    c.d = j.at("d").get<unsigned>();
    const json &poly = j.at("poly");
    if (poly.is_string())
      c.poly = parse_polynomial(c.q, poly.get<std::string>());
    else
      c.poly = poly.get<std::vector<unsigned>>();
    c.generators = j.at("generators").get<std::vector<std::vector<Exponent>>>();
    c.M = j.at("M").get<std::uint64_t>();
    return c;
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Parse, std::string("certificate: ") + e.what());
  }
}

inline Certificate load_certificate(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Parse, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  return certificate_from_json(j);
}

// Orbit cache. Header {q, n, k, poly, version, schema}; per orbit
// {rep, period, t, min_dist} with min_dist null for a single-member orbit.

inline json orbit_set_to_json(const OrbitSet &set) {
  json orbits = json::array();
  for (const auto &o : set.orbits) {
    json entry{{"rep", o.rep.elems()}, {"period", o.period}, {"t", o.t}};
    entry["min_dist"] = o.min_dist == kInfiniteDistance ? json(nullptr) : json(o.min_dist);
    orbits.push_back(std::move(entry));
  }
  return json{{"schema", kCacheSchema},
              {"version", kToolVersion},
              {"q", set.q},
              {"n", set.n},
              {"k", set.k},
              {"poly", set.poly},
              {"orbits", std::move(orbits)}};
}

/// Rebuilds an OrbitSet from cache JSON; nullopt when the header does not
/// match (ctx, k) or the file is malformed.
inline std::optional<OrbitSet> orbit_set_from_json(const FieldCtx &ctx, unsigned k,
                                                   const json &j) {
  try {
    if (j.at("schema").get<int>() != kCacheSchema ||
        j.at("version").get<std::string>() != kToolVersion ||
        j.at("q").get<unsigned>() != ctx.q() || j.at("n").get<unsigned>() != ctx.n() ||
        j.at("k").get<unsigned>() != k ||
        j.at("poly").get<std::vector<unsigned>>() != ctx.params().poly)
      return std::nullopt;
    OrbitSet set;
    set.q = ctx.q();
    set.n = ctx.n();
    set.k = k;
    set.poly = ctx.params().poly;
    std::uint64_t total = 0;
    for (const auto &entry : j.at("orbits")) {
      const auto rep = entry.at("rep").get<std::vector<Exponent>>();
      Orbit o{span(ctx, rep), entry.at("period").get<std::uint64_t>(),
              entry.at("t").get<unsigned>(), kInfiniteDistance};
      if (!entry.at("min_dist").is_null())
        o.min_dist = entry.at("min_dist").get<unsigned>();
      if (o.rep.dim() != k || o.rep.elems() != rep)
        return std::nullopt;
      total += o.period;
      ++set.counts_by_t[o.t];
      set.orbits.push_back(std::move(o));
    }
    if (total != gaussian_binomial(ctx.n(), k, ctx.q()))
      return std::nullopt;
    return set;
  } catch (const json::exception &) {
    return std::nullopt;
  } catch (const Error &) {
    return std::nullopt;
  }
}

inline std::filesystem::path orbit_cache_path(const std::filesystem::path &dir,
                                              const FieldCtx &ctx, unsigned k) {
  std::string poly;
  for (unsigned c : ctx.params().poly)
    poly += std::to_string(c);
  return dir / ("orbits_q" + std::to_string(ctx.q()) + "_n" + std::to_string(ctx.n()) +
                "_k" + std::to_string(k) + "_p" + poly + ".json");
}

/// Cache directory: GRASSCLIQUE_CACHE if set, else `fallback`.
inline std::filesystem::path resolve_cache_dir(const std::filesystem::path &fallback) {
  if (const char *env = std::getenv("GRASSCLIQUE_CACHE"); env && *env)
    return env;
  return fallback;
}

inline std::optional<OrbitSet> load_orbit_cache(const std::filesystem::path &dir,
                                                const FieldCtx &ctx, unsigned k) {
  std::ifstream in(orbit_cache_path(dir, ctx, k));
  if (!in)
    return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception &) {
    return std::nullopt;
  }
  return orbit_set_from_json(ctx, k, j);
}

/// Best effort; a cache that cannot be written is not an error.
inline bool store_orbit_cache(const std::filesystem::path &dir, const FieldCtx &ctx,
                              const OrbitSet &set) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = orbit_cache_path(dir, ctx, set.k);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      return false;
    out << orbit_set_to_json(set).dump();
    if (!out)
      return false;
  }
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

inline json graph_to_json(const CompatGraph &g, const OrbitSet &orbits) {
  json vertices = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto &o = orbits.orbits[g.vertices[v]];
    vertices.push_back(json{{"id", v},
                            {"weight", g.weights[v]},
                            {"t", o.t},
                            {"min_dist", o.min_dist},
                            {"rep", o.rep.elems()}});
  }
  json edges = json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = g.adj[i].next(i); j < g.size(); j = g.adj[i].next(j))
      edges.push_back(json::array({i, j}));
  return json{{"q", g.q},        {"n", g.n},         {"k", g.k},
              {"d", g.d},        {"poly", orbits.poly}, {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

} // namespace grassclique
