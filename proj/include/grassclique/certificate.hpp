#pragma once

// A cyclic code written down as one generator subspace per orbit, and an
// independent checker that expands every orbit and compares all pairs of
// codewords by rank. The checker deliberately avoids the shift-reduction
// used by the search.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "subspace.hpp"

namespace grassclique {

struct Certificate {
  unsigned q = 2, n = 0, k = 0, d = 0;
  std::vector<unsigned> poly;
  /// Exponents per generator: either the full nonzero-element list or any
  /// generating set of the subspace.
  std::vector<std::vector<Exponent>> generators;
  std::uint64_t M = 0;
};

struct Verdict {
  bool pass = false;
  std::uint64_t M = 0;                         // distinct codewords found
  unsigned min_distance = 0;                   // over all pairs, 0 if M < 2
  std::map<std::uint64_t, unsigned> orbit_sizes; // orbit size -> count
  std::string violation;                       // first failure, empty on pass
};

inline FieldCtx certificate_field(const Certificate &cert) {
  if (cert.poly.size() != cert.n + 1)
    throw Error(ErrorKind::BadField, "polynomial degree does not match n=" +
                                         std::to_string(cert.n));
  try {
    return build_field(FieldParams{cert.q, cert.n, cert.poly});
  } catch (const Error &e) {
    throw Error(ErrorKind::BadField, e.what());
  }
}

inline Verdict verify_certificate(const Certificate &cert) {
  const FieldCtx ctx = certificate_field(cert);
  Verdict v;
  const unsigned k = cert.k;

  // codeword basis -> generator index
  std::map<std::vector<Word>, std::size_t> owner;
  std::vector<std::vector<Word>> words;
  for (std::size_t g = 0; g < cert.generators.size(); ++g) {
    if (cert.generators[g].empty()) {
      v.violation = "generator " + std::to_string(g) + " is empty";
      return v;
    }
    const Subspace base = span(ctx, cert.generators[g]);
    if (base.dim() != k) {
      v.violation = "generator " + std::to_string(g) + " " +
                    format_exponents(cert.generators[g]) + " spans dimension " +
                    std::to_string(base.dim()) + ", expected " + std::to_string(k);
      return v;
    }
    std::uint64_t orbit_size = 0;
    for (Exponent s = 0; s < ctx.order(); ++s) {
      const Subspace member = cyclic_shift(ctx, base, s);
      auto [it, inserted] = owner.emplace(member.basis(), g);
      if (inserted) {
        words.push_back(member.basis());
        ++orbit_size;
      } else if (it->second != g) {
        v.violation = "generators " + std::to_string(it->second) + " and " +
                      std::to_string(g) + " produce the same codeword (shift " +
                      std::to_string(s) + ")";
        return v;
      }
    }
    ++v.orbit_sizes[orbit_size];
  }
  v.M = words.size();

  v.min_distance = std::numeric_limits<unsigned>::max();
  std::vector<Word> stacked(2 * k);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::copy(words[i].begin(), words[i].end(), stacked.begin());
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      std::copy(words[j].begin(), words[j].end(), stacked.begin() + k);
      const unsigned dist = 2 * (rank_of(ctx, stacked) - k);
      if (dist < v.min_distance)
        v.min_distance = dist;
      if (dist < cert.d) {
        v.violation = "codewords " + std::to_string(i) + " and " + std::to_string(j) +
                      " are at distance " + std::to_string(dist) + " < d=" +
                      std::to_string(cert.d);
        return v;
      }
    }
  }
  if (v.M < 2)
    v.min_distance = 0;
  if (v.M != cert.M) {
    v.violation = "claimed M=" + std::to_string(cert.M) + " but the generators expand to " +
                  std::to_string(v.M) + " codewords";
    return v;
  }
  v.pass = true;
  return v;
}

} // namespace grassclique
