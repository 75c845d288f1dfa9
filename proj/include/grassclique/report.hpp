#pragma once

// Text and JSON rendering of classification results.

#include <sstream>
#include <string>

#include "classify.hpp"
#include "io.hpp"

namespace grassclique {

/// "C_2(6,4,3)"
inline std::string c_label(unsigned q, unsigned n, unsigned d, unsigned k) {
  return "C_" + std::to_string(q) + "(" + std::to_string(n) + "," + std::to_string(d) + "," +
         std::to_string(k) + ")";
}

/// "[n,M,d,k]" parameter string.
inline std::string code_parameters(unsigned n, std::uint64_t m, unsigned d, unsigned k) {
  return "[" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(d) + "," +
         std::to_string(k) + "]";
}

inline std::string headline(const ClassificationReport &r) {
  const std::string label = c_label(r.q, r.n, r.d, r.k);
  if (r.optimal)
    return label + " = " + std::to_string(r.M) + " (optimal)";
  return label + " in [" + std::to_string(r.M) + ", " + std::to_string(r.upper_bound) +
         "] (not proved)";
}

inline std::string render_text(const ClassificationReport &r) {
  std::ostringstream out;
  out << headline(r) << "\n";
  out << "field: F_" << r.q << "^" << r.n << " via " << format_polynomial(r.poly) << "\n";
  out << "orbits: " << r.orbit_count << ", graph: " << r.vertex_count << " vertices, "
      << r.edge_count << " edges\n";
  const std::uint64_t order = ipow(r.q, r.n) - 1;
  out << "orbit-size classes:\n";
  std::uint64_t class_sum = 0;
  for (const auto &[t, bound] : r.alpha_bounds) {
    const std::uint64_t size = order / (ipow(r.q, t) - 1);
    class_sum += bound * size;
    out << "  t=" << t << " size " << size << ": " << r.class_sizes.at(t)
        << " qualifying orbits, alpha_" << t << " <= " << bound
        << (r.alpha_proved.at(t) ? "" : " (clique search unfinished, class size used)")
        << ", used " << r.decomposition.at(t) << "\n";
  }
  out << "sum of class bounds: " << class_sum << "\n";
  for (const auto &c : r.conditional_bounds) {
    out << "conditional: fixing " << c.profile.fixed_count << " orbit(s) of class t="
        << c.profile.fixed_t << " (" << c.fixed_cliques << " choices), at most " << c.bound
        << " more orbits" << (c.proved ? "" : " (unproved)") << "\n";
  }
  out << "decomposition: " << r.M << " =";
  bool first = true;
  for (const auto &[t, a] : r.decomposition) {
    out << (first ? " " : " + ") << a << "*" << order / (ipow(r.q, t) - 1);
    first = false;
  }
  if (first)
    out << " 0";
  out << "\n";
  if (r.M > 0) {
    out << code_parameters(r.n, r.M, r.d, r.k) << "-cyclic code, all cyclic shifts of:\n";
    for (const auto &g : r.best_code.generators)
      out << "  " << format_exponents(g) << "\n";
  } else {
    out << "no orbit reaches minimum distance " << r.d << "\n";
  }
  out << "search: " << r.nodes_explored << " nodes, " << r.seconds << " s\n";
  return out.str();
}

inline json report_to_json(const ClassificationReport &r) {
  auto keyed = [](const auto &m) {
    json j = json::object();
    for (const auto &[t, v] : m)
      j[std::to_string(t)] = v;
    return j;
  };
  json conditions = json::array();
  for (const auto &c : r.conditional_bounds)
    conditions.push_back(json{{"fixed_t", c.profile.fixed_t},
                              {"fixed_count", c.profile.fixed_count},
                              {"extend_ts", c.profile.extend_ts},
                              {"bound", c.bound},
                              {"fixed_cliques", c.fixed_cliques},
                              {"proved", c.proved}});
  return json{{"q", r.q},
              {"n", r.n},
              {"k", r.k},
              {"d", r.d},
              {"requested_d", r.requested_d},
              {"poly", format_polynomial(r.poly)},
              {"M", r.M},
              {"optimal", r.optimal},
              {"upper_bound", r.upper_bound},
              {"parameters", code_parameters(r.n, r.M, r.d, r.k)},
              {"alpha_bounds", keyed(r.alpha_bounds)},
              {"alpha_proved", keyed(r.alpha_proved)},
              {"class_sizes", keyed(r.class_sizes)},
              {"decomposition", keyed(r.decomposition)},
              {"conditional_bounds", std::move(conditions)},
              {"certificate", certificate_to_json(r.best_code)},
              {"stats",
               {{"orbits", r.orbit_count},
                {"vertices", r.vertex_count},
                {"edges", r.edge_count},
                {"nodes", r.nodes_explored},
                {"seconds", r.seconds}}}};
}

inline std::string render_table_text(const Table &tab) {
  std::ostringstream out;
  out << "C_" << tab.q << "(" << tab.n << ",d,k)\n";
  out << "d\\k";
  for (unsigned k : tab.ks)
    out << "\t" << k;
  out << "\n";
  for (std::size_t row = 0; row < tab.ds.size(); ++row) {
    out << tab.ds[row];
    for (std::size_t col = 0; col < tab.ks.size(); ++col) {
      const auto &cell = tab.at(row, col);
      out << "\t";
      if (!cell.report)
        out << "error";
      else if (cell.report->optimal)
        out << cell.report->M;
      else
        out << cell.report->M << "-" << cell.report->upper_bound;
    }
    out << "\n";
  }
  for (const auto &cell : tab.cells)
    if (!cell.report)
      out << "d=" << cell.d << " k=" << cell.k << ": " << cell.error << "\n";
  return out.str();
}

inline std::string render_table_csv(const Table &tab) {
  std::ostringstream out;
  out << "q,n,d,k,M,optimal,upper_bound,error\n";
  for (const auto &cell : tab.cells) {
    out << tab.q << "," << tab.n << "," << cell.d << "," << cell.k << ",";
    if (cell.report)
      out << cell.report->M << "," << (cell.report->optimal ? "true" : "false") << ","
          << cell.report->upper_bound << ",";
    else
      out << ",,,\"" << cell.error << "\"";
    out << "\n";
  }
  return out.str();
}

inline json table_to_json(const Table &tab) {
  json cells = json::array();
  for (const auto &cell : tab.cells) {
    json c{{"d", cell.d}, {"k", cell.k}};
    if (cell.report) {
      c["M"] = cell.report->M;
      c["optimal"] = cell.report->optimal;
      c["upper_bound"] = cell.report->upper_bound;
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(std::move(c));
  }
  return json{{"q", tab.q}, {"n", tab.n}, {"ds", tab.ds}, {"ks", tab.ks}, {"cells", cells}};
}

} // namespace grassclique
