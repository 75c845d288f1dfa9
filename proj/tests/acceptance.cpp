// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails. Set GRASSCLIQUE_STRETCH=1 to run the n=9 stretch case.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <grassclique/grassclique.hpp>

#include "known_codes.hpp"

using namespace grassclique;

namespace {

struct Outcome {
  enum Status { Pass, Fail, Skip } status = Pass;
  std::string detail;
};

class Checker {
public:
  void expect(bool ok, const std::string &what) {
    if (!ok) {
      ok_ = false;
      failures_ << (failures_.tellp() > 0 ? "; " : "") << what;
    }
  }
  template <class A, class B>
  void expect_eq(const A &got, const B &want, const std::string &what) {
    std::ostringstream msg;
    msg << what << ": got " << got << ", want " << want;
    expect(got == want, msg.str());
  }
  Outcome outcome(const std::string &summary) const {
    return ok_ ? Outcome{Outcome::Pass, summary} : Outcome{Outcome::Fail, failures_.str()};
  }

private:
  bool ok_ = true;
  std::ostringstream failures_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

// Cell values of a table as rows of M (or -1 for a failed cell).
std::vector<std::vector<long long>> table_values(const Table &t) {
  std::vector<std::vector<long long>> rows(t.ds.size(), std::vector<long long>(t.ks.size()));
  for (std::size_t r = 0; r < t.ds.size(); ++r)
    for (std::size_t c = 0; c < t.ks.size(); ++c) {
      const auto &cell = t.at(r, c);
      rows[r][c] = cell.report ? static_cast<long long>(cell.report->M) : -1;
    }
  return rows;
}

std::string show(const std::vector<std::vector<long long>> &rows) {
  std::ostringstream o;
  o << "[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    o << (r ? "," : "") << "[";
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      o << (c ? "," : "") << rows[r][c];
    o << "]";
  }
  o << "]";
  return o.str();
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_algorithm1(2, 4, 2, 4);
  const double s = seconds_since(start);
  Checker c;
  c.expect_eq(r.M, 5u, "C_2(4,4,2)");
  c.expect(r.optimal, "optimal flag not set");
  c.expect(s < 1.0, "took " + fmt_seconds(s) + " (limit 1 s)");
  c.expect(verify_certificate(r.best_code).pass, "certificate rejected");
  return c.outcome(headline(r) + " in " + fmt_seconds(s));
}

Outcome criterion2() {
  const auto start = std::chrono::steady_clock::now();
  const Table t = table(2, 6, default_d_range(6), default_k_range(6));
  const double s = seconds_since(start);
  const auto got = table_values(t);
  const std::vector<std::vector<long long>> want{{21, 63}, {0, 9}};
  Checker c;
  c.expect(t.ds == std::vector<unsigned>{4, 6} && t.ks == std::vector<unsigned>{2, 3},
           "unexpected table ranges");
  c.expect_eq(show(got), show(want), "C_2(6,d,k)");
  c.expect(t.complete(), "not all cells proved optimal");
  c.expect(s < 10.0, "took " + fmt_seconds(s) + " (limit 10 s)");
  return c.outcome("C_2(6,d,k) = " + show(got) + " in " + fmt_seconds(s));
}

Outcome criterion3() {
  const auto start = std::chrono::steady_clock::now();
  const Table t = table(2, 7, default_d_range(7), default_k_range(7));
  const double s = seconds_since(start);
  const auto got = table_values(t);
  const std::vector<std::vector<long long>> want{{0, 254}, {0, 0}};
  Checker c;
  c.expect_eq(show(got), show(want), "C_2(7,d,k)");
  c.expect(t.complete(), "not all cells proved optimal");
  c.expect(s < 120.0, "took " + fmt_seconds(s) + " (limit 2 min)");
  const Instance inst = prepare_instance(2, 7, 3, 4);
  const CliqueResult w = max_clique(inst.graph);
  c.expect_eq(w.vertices.size(), 2u, "clique number of the d=4, k=3 graph");
  return c.outcome("C_2(7,d,k) = " + show(got) + ", clique number 2, in " + fmt_seconds(s));
}

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;

  const Table t = table(2, 8, default_d_range(8), default_k_range(8));
  const auto got = table_values(t);
  // rows d = 4, 6, 8; columns k = 2, 3, 4
  const std::vector<std::vector<long long>> want{{85, 1275, 4590}, {0, 0, 0}, {0, 0, 17}};
  c.expect(t.complete(), "not all cells proved optimal");
  for (std::size_t r = 0; r < want.size(); ++r)
    for (std::size_t k = 0; k < want[r].size(); ++k)
      c.expect_eq(got[r][k], want[r][k],
                  c_label(2, 8, t.ds[r], t.ks[k]));

  const auto &cell = t.at(0, 2).report;
  if (cell) {
    c.expect_eq(cell->alpha_bounds.at(1), 17u, "alpha_1 bound");
    c.expect_eq(cell->alpha_bounds.at(2), 4u, "alpha_2 bound");
    c.expect_eq(cell->alpha_bounds.at(4), 1u, "alpha_4 bound");
    c.expect(verify_certificate(cell->best_code).pass, "C_2(8,4,4) certificate rejected");
  }

  const Instance inst = prepare_instance(2, 8, 4, 4);
  const ConditionalBound with17 = conditional_bound(inst, ConditionalProfile{4, 1, {1, 2}});
  c.expect(with17.proved, "conditional search (size-17 orbit fixed) unfinished");
  c.expect_eq(with17.bound, 3u, "orbits joining the size-17 orbit");
  const ConditionalBound four85 = conditional_bound(inst, ConditionalProfile{2, 4, {1}});
  c.expect(four85.proved, "conditional search (four size-85 orbits fixed) unfinished");
  c.expect_eq(four85.fixed_cliques, 1u, "number of 4-cliques of size-85 orbits");
  c.expect_eq(four85.bound, 16u, "size-255 orbits joining four size-85 orbits");

  const double s = seconds_since(start);
  c.expect(s < 1800.0, "took " + fmt_seconds(s) + " (limit 30 min)");

  // C_2(8,6,4) is published as 0 although the published C_2(8,8,4) code
  // (one orbit of 17 spread elements, distance 8) also has distance >= 6.
  if (got.size() > 1 && got[1][2] != 0) {
    const Instance d6 = prepare_instance(2, 8, 4, 6);
    std::ostringstream note;
    note << " [C_2(8,6,4) graph: " << d6.graph.size() << " vertex(es), weights";
    for (auto w : d6.graph.weights)
      note << " " << w;
    note << "; the only orbit with distance >= 6 has distance "
         << d6.orbits->orbits[d6.graph.vertices.front()].min_dist
         << ", so 0 is reachable only if d means the exact minimum distance]";
    c.expect(false, note.str());
  }
  // The published bound of 3 orbits next to the size-17 orbit is contradicted
  // by an explicit code with 20 such orbits.
  if (with17.bound != 3) {
    const Verdict v = verify_certificate(
        Certificate{2, 8, 4, 4, known_codes::kPoly, known_codes::kCode4437, 4437});
    std::ostringstream note;
    note << " [a code made of the size-17 orbit, 4 size-85 and 16 size-255 orbits "
         << (v.pass ? "verifies" : "fails to verify") << ": M=" << v.M
         << ", minimum distance " << v.min_distance << "]";
    c.expect(false, note.str());
  }
  return c.outcome("C_2(8,d,k) = " + show(got) + ", alpha (17,4,1), conditional 3 and 16, in " +
                   fmt_seconds(s));
}

Outcome criterion5() {
  Checker c;
  auto cert = [](const std::vector<std::vector<Exponent>> &g, std::uint64_t m) {
    return Certificate{2, 8, 4, 4, known_codes::kPoly, g, m};
  };
  const Verdict a = verify_certificate(cert(known_codes::kCode4420, 4420));
  c.expect(a.pass, "4420 list: " + a.violation);
  c.expect_eq(a.M, 4420u, "4420 list size");
  const Verdict b = verify_certificate(cert(known_codes::kCode4590, 4590));
  c.expect(b.pass, "4590 list: " + b.violation);
  c.expect_eq(b.M, 4590u, "4590 list size");

  // every single-exponent change that keeps the exponent list duplicate-free
  std::mt19937 rng(2026);
  int mutants = 0, rejected = 0;
  for (const auto *list : {&known_codes::kCode4420, &known_codes::kCode4590}) {
    const std::uint64_t m = list == &known_codes::kCode4420 ? 4420 : 4590;
    for (std::size_t g = 0; g < list->size(); ++g) {
      std::uniform_int_distribution<std::size_t> pos(1, (*list)[g].size() - 1);
      std::uniform_int_distribution<Exponent> delta(1, 254);
      auto gens = *list;
      auto &row = gens[g];
      const std::size_t p = pos(rng);
      Exponent e = row[p];
      do
        e = (e + delta(rng)) % 255;
      while (std::find(row.begin(), row.end(), e) != row.end());
      row[p] = e;
      ++mutants;
      rejected += !verify_certificate(cert(gens, m)).pass;
    }
  }
  c.expect_eq(rejected, mutants, "mutated certificates rejected");
  std::ostringstream sum;
  sum << "4420 and 4590 lists verified (d=" << a.min_distance << "/" << b.min_distance
      << "), " << rejected << "/" << mutants << " single-exponent mutants rejected";
  return c.outcome(sum.str());
}

Outcome criterion6() {
  const char *flag = std::getenv("GRASSCLIQUE_STRETCH");
  if (!flag || std::string(flag) != "1")
    return {Outcome::Skip, "stretch case n=9 not run (set GRASSCLIQUE_STRETCH=1)"};
  const auto start = std::chrono::steady_clock::now();
  PipelineOptions opts;
  if (const char *budget = std::getenv("GRASSCLIQUE_STRETCH_BUDGET"))
    opts.time_budget = std::atof(budget);
  const Instance inst = prepare_instance(2, 9, 3, 4, opts);
  const auto r = run_algorithm1(inst, opts);
  Checker c;
  c.expect_eq(r.alpha_bounds.at(1), 11u, "alpha_1 bound");
  c.expect(r.alpha_proved.at(1), "alpha_1 search unfinished");
  c.expect_eq(r.alpha_bounds.at(3), 1u, "alpha_3 bound");
  c.expect(r.M >= 5694, "best code " + std::to_string(r.M) + " < 5694");
  c.expect(verify_certificate(r.best_code).pass, "certificate rejected");
  std::ostringstream sum;
  sum << headline(r) << ", alpha (" << r.alpha_bounds.at(1) << "," << r.alpha_bounds.at(3)
      << "); note: the published upper bound 5621 = 11*511 omits the compatible size-73 "
         "orbit, whose inclusion gives 11*511 + 73 = 5694; in "
      << fmt_seconds(seconds_since(start));
  return c.outcome(sum.str());
}

// Criterion 7: property suites in compact form.
Outcome criterion7() {
  Checker c;
  std::mt19937 rng(7);

  // partition identity
  int partitions = 0;
  for (unsigned q : {2u, 3u})
    for (unsigned n = 2; n <= (q == 2 ? 8u : 4u); ++n)
      for (unsigned k = 1; k <= (q == 2 ? std::min(4u, n) : n); ++k) {
        const FieldCtx ctx = build_field(default_primitive_poly(q, n));
        const OrbitSet s = enumerate_orbits(ctx, k);
        std::uint64_t total = 0;
        for (const auto &o : s.orbits)
          total += o.period;
        c.expect_eq(total, gaussian_binomial(n, k, q),
                    "partition q=" + std::to_string(q) + " n=" + std::to_string(n) +
                        " k=" + std::to_string(k));
        ++partitions;
      }

  // metric axioms and shift isometry
  {
    const FieldCtx ctx = build_field(default_primitive_poly(2, 7));
    std::uniform_int_distribution<Exponent> e(0, ctx.order() - 1);
    std::uniform_int_distribution<unsigned> dim(1, 3);
    auto rand_space = [&] {
      std::vector<Exponent> g(dim(rng));
      for (auto &x : g)
        x = e(rng);
      return span(ctx, g);
    };
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const Subspace x = rand_space(), y = rand_space(), z = rand_space();
      const unsigned dxy = subspace_distance(x, y);
      bad += dxy != subspace_distance(y, x);
      bad += (dxy == 0) != (x == y);
      bad += subspace_distance(x, z) > dxy + subspace_distance(y, z);
      const Exponent s = e(rng);
      bad += subspace_distance(cyclic_shift(ctx, x, s), cyclic_shift(ctx, y, s)) != dxy;
    }
    c.expect_eq(bad, 0, "metric/isometry violations");
  }

  // shift reduction vs pairwise on every orbit with period <= 63
  int orbit_checks = 0;
  for (auto [n, k] : {std::pair{4u, 2u}, {5u, 2u}, {6u, 2u}, {6u, 3u}}) {
    const FieldCtx ctx = build_field(default_primitive_poly(2, n));
    const OrbitSet s = enumerate_orbits(ctx, k);
    for (std::size_t i = 0; i < s.orbits.size(); ++i) {
      const Orbit &a = s.orbits[i];
      if (a.period < 2 || a.period > 63)
        continue;
      c.expect(a.min_dist == orbit_min_distance_pairwise(ctx, a), "intra-orbit distance");
      ++orbit_checks;
      for (std::size_t j = i + 1; j < s.orbits.size(); ++j) {
        if (s.orbits[j].period > 63)
          continue;
        c.expect(inter_orbit_distance(ctx, a, s.orbits[j]) ==
                     inter_orbit_distance_pairwise(ctx, a, s.orbits[j]),
                 "inter-orbit distance");
        ++orbit_checks;
      }
    }
  }

  // clique solver vs exhaustive subsets
  int graphs = 0;
  for (std::size_t m = 1; m <= 20; ++m)
    for (double p : {0.25, 0.5, 0.75}) {
      CompatGraph g;
      g.n = 1;
      g.group_order = 1;
      std::bernoulli_distribution edge(p);
      std::uniform_int_distribution<std::uint64_t> wt(1, 5);
      g.adj.assign(m, Bitset(m));
      std::vector<std::uint32_t> nbr(m, 0);
      for (std::size_t v = 0; v < m; ++v) {
        g.vertices.push_back(v);
        g.weights.push_back(wt(rng));
      }
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          if (edge(rng)) {
            g.adj[i].set(j);
            g.adj[j].set(i);
            nbr[i] |= 1u << j;
            nbr[j] |= 1u << i;
          }
      std::uint64_t best = 0;
      std::vector<char> is_clique(std::size_t{1} << m, 0);
      is_clique[0] = 1;
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
        const std::uint32_t rest = mask & (mask - 1);
        is_clique[mask] = is_clique[rest] && (nbr[low] & rest) == rest;
        if (!is_clique[mask])
          continue;
        std::uint64_t w = 0;
        for (std::size_t v = 0; v < m; ++v)
          if (mask >> v & 1)
            w += g.weights[v];
        best = std::max(best, w);
      }
      const CliqueResult r = max_weight_clique(g);
      c.expect(r.weight == best && r.is_proved_optimal,
               "clique solver mismatch on " + std::to_string(m) + " vertices");
      ++graphs;
    }

  // classification counts across two primitive polynomials
  for (auto [a, b] : {std::pair{default_primitive_poly(2, 4), FieldParams{2, 4, {1, 0, 0, 1, 1}}},
                      {default_primitive_poly(2, 6), FieldParams{2, 6, {1, 0, 0, 0, 0, 1, 1}}}}) {
    PipelineOptions oa, ob;
    oa.field = a;
    ob.field = b;
    const auto ds = default_d_range(a.n), ks = default_k_range(a.n);
    c.expect(show(table_values(table(2, a.n, ds, ks, oa))) ==
                 show(table_values(table(2, b.n, ds, ks, ob))),
             "counts differ across polynomials for n=" + std::to_string(a.n));
  }

  std::ostringstream sum;
  sum << partitions << " partition identities, 1000 metric triples, " << orbit_checks
      << " orbit distance checks, " << graphs
      << " clique graphs, polynomial invariance for n=4,6";
  return c.outcome(sum.str());
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 classify 2 4 2 4", criterion1},
      {"2 table 2 6", criterion2},
      {"3 table 2 7", criterion3},
      {"4 n=8 suite", criterion4},
      {"5 certificates", criterion5},
      {"6 stretch n=9", criterion6},
      {"7 property suites", criterion7},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception &e) {
      out = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char *tag = out.status == Outcome::Pass ? "PASS" : out.status == Outcome::Fail ? "FAIL" : "SKIP";
    failed += out.status == Outcome::Fail;
    std::cout << tag << "  criterion " << name << ": " << out.detail << std::endl;
  }
  return failed ? 1 : 0;
}
