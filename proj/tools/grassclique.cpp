// grassclique: classify cyclic Grassmannian codes from the command line.
//
//   grassclique classify 2 6 3 4          C_2(6,4,3) with a certificate
//   grassclique orbits -q 2 -n 8 -k 4     orbit census
//   grassclique verify cert.json          re-check a certificate
//   grassclique table 2 8                 the C_2(8,d,k) table
//   grassclique graph-export 2 8 4 4      DIMACS or JSON graph
//
// Exit codes: 0 success, 1 computation error or failed verification,
// 2 usage error, 3 search stopped by the time budget (partial result).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include <grassclique/grassclique.hpp>
#include <grassclique/report.hpp>

namespace gc = grassclique;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

struct CommonArgs {
  std::vector<unsigned> positional;
  unsigned q = 2;
  unsigned n = 0, k = 0, d = 0;
  std::string poly;
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  double time_budget = 600;
  unsigned threads = gc::default_threads();
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fills q, n, k, d from positionals when given (in that order).
void apply_positional(CommonArgs &a, std::size_t expected) {
  if (a.positional.empty())
    return;
  if (a.positional.size() != expected)
    throw UsageError("expected " + std::to_string(expected) + " positional values, got " +
                     std::to_string(a.positional.size()));
  unsigned *slots[] = {&a.q, &a.n, &a.k, &a.d};
  for (std::size_t i = 0; i < expected; ++i)
    *slots[i] = a.positional[i];
}

std::filesystem::path default_cache_root() {
  if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "grassclique";
  if (const char *home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "grassclique";
  return std::filesystem::temp_directory_path() / "grassclique";
}

gc::PipelineOptions pipeline_options(const CommonArgs &a) {
  gc::PipelineOptions opts;
  if (!a.poly.empty()) {
    const auto params = gc::parse_field_params(a.q, a.poly);
    if (a.n && params.n != a.n)
      throw UsageError("polynomial degree " + std::to_string(params.n) + " differs from n=" +
                       std::to_string(a.n));
    opts.field = params;
  }
  if (a.time_budget > 0)
    opts.time_budget = a.time_budget;
  opts.threads = std::max(1u, a.threads);
  if (!a.no_cache)
    opts.cache_dir = gc::resolve_cache_dir(a.cache_dir.empty() ? default_cache_root()
                                                               : std::filesystem::path(a.cache_dir));
  return opts;
}

void add_common(CLI::App *cmd, CommonArgs &a, bool with_k, bool with_d) {
  cmd->add_option("-q", a.q, "base field order (prime)");
  cmd->add_option("-n", a.n, "extension degree");
  if (with_k)
    cmd->add_option("-k", a.k, "subspace dimension");
  if (with_d)
    cmd->add_option("-d", a.d, "minimum subspace distance");
  cmd->add_option("--poly", a.poly, "primitive polynomial, e.g. x^8+x^4+x^3+x^2+1 or 1,0,1,1,1,0,0,0,1");
  cmd->add_option("--cache-dir", a.cache_dir, "orbit cache directory (GRASSCLIQUE_CACHE overrides)");
  cmd->add_flag("--no-cache", a.no_cache, "do not read or write the orbit cache");
  cmd->add_option("--time-budget", a.time_budget, "seconds per clique search (0 = unlimited)");
  cmd->add_option("--threads", a.threads, "worker threads");
}

gc::ConditionalProfile parse_condition(const std::string &text) {
  // T:COUNT or T:COUNT:T1,T2
  gc::ConditionalProfile p;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');)
    parts.push_back(part);
  try {
    if (parts.size() < 2 || parts.size() > 3)
      throw UsageError("");
    p.fixed_t = static_cast<unsigned>(std::stoul(parts[0]));
    p.fixed_count = static_cast<unsigned>(std::stoul(parts[1]));
    if (parts.size() == 3) {
      std::stringstream ts(parts[2]);
      for (std::string t; std::getline(ts, t, ',');)
        p.extend_ts.push_back(static_cast<unsigned>(std::stoul(t)));
    }
  } catch (const std::exception &) {
    throw UsageError("bad --condition '" + text + "', expected T:COUNT[:T1,T2,...]");
  }
  return p;
}

void warn_if_adjusted(unsigned d) {
  if (gc::normalize_distance(d).adjusted)
    std::cerr << "warning: subspace distances in G_q(n,k) are even; d=" << d
              << " is treated as d=" << d + 1 << "\n";
}

void write_or_print(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw gc::Error(gc::ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

int run_classify(CommonArgs &a, const std::vector<std::string> &conditions,
                 const std::string &cert_out, bool list_cliques, std::uint64_t enumerate_cap) {
  apply_positional(a, 4);
  if (!a.n || !a.k || !a.d)
    throw UsageError("classify needs q n k d");
  warn_if_adjusted(a.d);
  auto opts = pipeline_options(a);
  for (const auto &c : conditions)
    opts.conditions.push_back(parse_condition(c));
  const gc::Instance inst = gc::prepare_instance(a.q, a.n, a.k, a.d, opts);
  const gc::ClassificationReport report = gc::run_algorithm1(inst, opts);

  if (a.format == "json") {
    gc::json j = gc::report_to_json(report);
    if (list_cliques) {
      gc::json cliques = gc::json::array();
      const bool truncated = gc::for_each_maximal_clique(
          inst.graph, enumerate_cap, [&](const std::vector<std::size_t> &c) {
            cliques.push_back(c);
            return true;
          });
      j["maximal_cliques"] = {{"cliques", cliques}, {"truncated", truncated}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << gc::render_text(report);
    if (list_cliques) {
      std::cout << "maximal cliques (vertex ids, orbit sizes):\n";
      const bool truncated = gc::for_each_maximal_clique(
          inst.graph, enumerate_cap, [&](const std::vector<std::size_t> &c) {
            std::cout << "  {";
            for (std::size_t i = 0; i < c.size(); ++i)
              std::cout << (i ? ", " : "") << c[i] << ":" << inst.graph.weights[c[i]];
            std::cout << "}\n";
            return true;
          });
      if (truncated)
        std::cout << "  ... truncated at " << enumerate_cap << "\n";
    }
  }
  if (!cert_out.empty())
    write_or_print(cert_out, gc::certificate_to_json(report.best_code).dump(2) + "\n");
  return report.optimal ? 0 : kExitPartial;
}

int run_orbits(CommonArgs &a, bool list) {
  apply_positional(a, 3);
  if (!a.n || !a.k)
    throw UsageError("orbits needs q n k");
  const auto opts = pipeline_options(a);
  const gc::FieldCtx ctx = gc::build_field(gc::resolve_field(a.q, a.n, opts));
  const auto set = gc::load_or_enumerate(ctx, a.k, opts);

  // (period, t, min_dist) -> count
  std::map<std::tuple<std::uint64_t, unsigned, unsigned>, std::size_t> census;
  for (const auto &o : set->orbits)
    ++census[{o.period, o.t, o.min_dist}];
  auto dist_text = [](unsigned d) {
    return d == gc::kInfiniteDistance ? std::string("inf") : std::to_string(d);
  };

  if (a.format == "json") {
    gc::json j = gc::orbit_set_to_json(*set);
    gc::json c = gc::json::array();
    for (const auto &[key, count] : census) {
      const auto &[period, t, md] = key;
      c.push_back({{"period", period},
                   {"t", t},
                   {"min_dist", md == gc::kInfiniteDistance ? gc::json(nullptr) : gc::json(md)},
                   {"count", count}});
    }
    j["census"] = c;
    if (!list)
      j.erase("orbits");
    std::cout << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::cout << "period,t,min_dist,count\n";
    for (const auto &[key, count] : census)
      std::cout << std::get<0>(key) << "," << std::get<1>(key) << ","
                << dist_text(std::get<2>(key)) << "," << count << "\n";
  } else {
    std::cout << "G_" << a.q << "(" << a.n << "," << a.k << "): " << set->orbits.size()
              << " orbits, " << gc::gaussian_binomial(a.n, a.k, a.q) << " subspaces\n";
    std::cout << "period\tt\tmin_dist\tcount\n";
    for (const auto &[key, count] : census)
      std::cout << std::get<0>(key) << "\t" << std::get<1>(key) << "\t"
                << dist_text(std::get<2>(key)) << "\t" << count << "\n";
    if (list)
      for (std::size_t i = 0; i < set->orbits.size(); ++i) {
        const auto &o = set->orbits[i];
        std::cout << i << "\t" << o.period << "\t" << dist_text(o.min_dist) << "\t"
                  << gc::format_exponents(o.rep.elems()) << "\n";
      }
  }
  return 0;
}

int run_verify(const std::string &path, const std::string &format) {
  const gc::Certificate cert = gc::load_certificate(path);
  const gc::Verdict v = gc::verify_certificate(cert);
  if (format == "json") {
    std::cout << gc::json{{"pass", v.pass},
                          {"M", v.M},
                          {"min_distance", v.min_distance},
                          {"violation", v.violation}}
                     .dump(2)
              << "\n";
  } else if (v.pass) {
    std::cout << "PASS " << gc::code_parameters(cert.n, v.M, cert.d, cert.k)
              << "-cyclic code, M=" << v.M << ", minimum distance " << v.min_distance << "\n";
  } else {
    std::cerr << "FAIL: " << v.violation << "\n";
  }
  return v.pass ? 0 : kExitError;
}

std::vector<unsigned> parse_list(const std::string &text) {
  std::vector<unsigned> out;
  if (text.empty())
    return out;
  auto number = [&](const std::string &s) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size())
      throw std::invalid_argument(s);
    return static_cast<unsigned>(v);
  };
  std::stringstream ss(text);
  try {
    for (std::string part; std::getline(ss, part, ',');) {
      const auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(number(part));
        continue;
      }
      const unsigned lo = number(part.substr(0, dash)), hi = number(part.substr(dash + 1));
      if (lo > hi)
        throw std::invalid_argument(part);
      for (unsigned v = lo; v <= hi; ++v)
        out.push_back(v);
    }
  } catch (const std::exception &) {
    throw UsageError("bad list '" + text + "' (use values like 4,6 or 4-8)");
  }
  return out;
}

int run_table(CommonArgs &a, const std::string &d_range, const std::string &k_range) {
  apply_positional(a, 2);
  if (!a.n)
    throw UsageError("table needs q n");
  auto ds = parse_list(d_range), ks = parse_list(k_range);
  if (ds.empty())
    ds = gc::default_d_range(a.n);
  if (ks.empty())
    ks = gc::default_k_range(a.n);
  for (unsigned d : ds)
    warn_if_adjusted(d);
  const gc::Table tab = gc::table(a.q, a.n, ds, ks, pipeline_options(a));
  if (a.format == "json")
    std::cout << gc::table_to_json(tab).dump(2) << "\n";
  else if (a.format == "csv")
    std::cout << gc::render_table_csv(tab);
  else
    std::cout << gc::render_table_text(tab);
  for (const auto &cell : tab.cells)
    if (!cell.report)
      return kExitError;
  return tab.complete() ? 0 : kExitPartial;
}

int run_graph_export(CommonArgs &a, const std::string &output) {
  apply_positional(a, 4);
  if (!a.n || !a.k || !a.d)
    throw UsageError("graph-export needs q n k d");
  warn_if_adjusted(a.d);
  const gc::Instance inst = gc::prepare_instance(a.q, a.n, a.k, a.d, pipeline_options(a));
  if (a.format == "json")
    write_or_print(output, gc::graph_to_json(inst.graph, *inst.orbits).dump(2) + "\n");
  else
    write_or_print(output, gc::to_dimacs(inst.graph));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Classification of cyclic Grassmannian codes via orbit cliques", "grassclique"};
  app.require_subcommand(1);

  CommonArgs classify_args, orbits_args, table_args, export_args;
  std::vector<std::string> conditions;
  std::string cert_out, verify_path, verify_format = "text", d_range, k_range, export_out;
  bool list_cliques = false, list_orbits = false;
  std::uint64_t enumerate_cap = 1000;

  auto *classify = app.add_subcommand("classify", "compute C_q(n,d,k) with bounds and a certificate");
  classify->add_option("params", classify_args.positional, "q n k d")->expected(0, 4);
  add_common(classify, classify_args, true, true);
  classify->add_option("--format", classify_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  classify->add_option("--condition", conditions,
                       "conditional bound T:COUNT[:T1,T2] (fix COUNT orbits of class T)");
  classify->add_option("--cert-out", cert_out, "write the best code as certificate JSON");
  classify->add_flag("--cliques", list_cliques, "also list maximal cliques of the graph");
  classify->add_option("--enumerate-cap", enumerate_cap, "maximum number of cliques listed")
      ->check(CLI::PositiveNumber);

  auto *orbits = app.add_subcommand("orbits", "orbit census of G_q(n,k)");
  orbits->add_option("params", orbits_args.positional, "q n k")->expected(0, 3);
  add_common(orbits, orbits_args, true, false);
  orbits->add_option("--format", orbits_args.format, "text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  orbits->add_flag("--list", list_orbits, "list every orbit representative");

  auto *verify = app.add_subcommand("verify", "re-check a certificate file by full expansion");
  verify->add_option("certificate", verify_path, "certificate JSON")->required();
  verify->add_option("--format", verify_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  auto *tab = app.add_subcommand("table", "C_q(n,d,k) over ranges of d and k");
  tab->add_option("params", table_args.positional, "q n")->expected(0, 2);
  add_common(tab, table_args, false, false);
  tab->add_option("--format", table_args.format, "text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  tab->add_option("--d-range", d_range, "d values, e.g. 4,6 or 4-8");
  tab->add_option("--k-range", k_range, "k values, e.g. 2,3 or 2-4");

  auto *exp = app.add_subcommand("graph-export", "write the compatibility graph");
  exp->add_option("params", export_args.positional, "q n k d")->expected(0, 4);
  add_common(exp, export_args, true, true);
  exp->add_option("--format", export_args.format, "dimacs|json")
      ->check(CLI::IsMember({"dimacs", "json"}));
  exp->add_option("-o,--output", export_out, "output file (default stdout)");
  export_args.format = "dimacs";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify)
      return run_classify(classify_args, conditions, cert_out, list_cliques, enumerate_cap);
    if (*orbits)
      return run_orbits(orbits_args, list_orbits);
    if (*verify)
      return run_verify(verify_path, verify_format);
    if (*tab)
      return run_table(table_args, d_range, k_range);
    if (*exp)
      return run_graph_export(export_args, export_out);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gc::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == gc::ErrorKind::Parse || e.kind() == gc::ErrorKind::InvalidArgument
               ? kExitUsage
               : kExitError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
