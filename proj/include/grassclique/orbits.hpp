#pragma once

// Orbits of the Grassmannian G_q(n,k) under multiplication by powers of a
// primitive element. In exponent form a cyclic shift by s is translation of
// every discrete log by s modulo q^n - 1.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "parallel.hpp"
#include "subspace.hpp"

namespace grassclique {

inline constexpr unsigned kInfiniteDistance = std::numeric_limits<unsigned>::max();

struct Orbit {
  Subspace rep;             // canonical member
  std::uint64_t period = 0; // orbit size
  unsigned t = 0;           // stabilizer subfield degree
  unsigned min_dist = kInfiniteDistance;

  unsigned dim() const noexcept { return rep.dim(); }
};

struct OrbitSet {
  unsigned q = 2, n = 0, k = 0;
  std::vector<unsigned> poly;
  std::vector<Orbit> orbits;
  std::map<unsigned, std::size_t> counts_by_t;
};

/// [n choose k]_q, exact; zero when k > n.
inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q) {
  if (k > n)
    return 0;
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= ipow(q, n - i) - 1;
    r /= ipow(q, i + 1) - 1;
  }
  return static_cast<std::uint64_t>(r);
}

/// Lexicographically least exponent list among all shifts that contain 0.
inline std::vector<Exponent> canonical_elems(std::span<const Exponent> elems, Exponent order) {
  std::vector<Exponent> best, cand(elems.size());
  for (Exponent pivot : elems) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      cand[i] = (elems[i] + order - pivot) % order;
    std::sort(cand.begin(), cand.end());
    if (best.empty() || cand < best)
      best = cand;
  }
  return best;
}

/// Least s > 0 with elems + s == elems (mod order); `elems` sorted.
inline std::uint64_t shift_period(std::span<const Exponent> elems, Exponent order) {
  std::uint64_t period = order;
  for (std::size_t i = 1; i < elems.size(); ++i) {
    const Exponent s = (elems[i] + order - elems[0]) % order;
    if (s == 0 || s >= period)
      continue;
    const bool stable = std::all_of(elems.begin(), elems.end(), [&](Exponent e) {
      return std::binary_search(elems.begin(), elems.end(), (e + s) % order);
    });
    if (stable)
      period = s;
  }
  return period;
}

inline unsigned stabilizer_degree(const FieldCtx &ctx, std::uint64_t period) {
  const std::uint64_t sub_order = ctx.order() / period + 1; // q^t
  unsigned t = 0;
  for (std::uint64_t p = 1; p < sub_order; p *= ctx.q())
    ++t;
  return t;
}

namespace detail {

/// dim of a subspace with `count` nonzero vectors.
inline unsigned dim_from_count(std::uint64_t count, unsigned q) {
  unsigned d = 0;
  for (std::uint64_t p = 1; p < count + 1; p *= q)
    ++d;
  return d;
}

} // namespace detail

/// Counts |A ∩ (B + s)| for every shift s at once. The count for shift s is
/// the number of nonzero vectors shared by A and alpha^s B.
class ShiftCorrelator {
public:
  explicit ShiftCorrelator(Exponent order) : order_(order), counts_(order, 0) {}

  /// Max over shifts s with s mod skip_modulus != 0 (skip_modulus = 0 keeps all).
  std::uint32_t max_overlap(std::span<const Exponent> a, std::span<const Exponent> b,
                            std::uint64_t skip_modulus = 0) {
    std::uint32_t best = 0;
    for (Exponent x : a) {
      for (Exponent y : b) {
        const Exponent s = x >= y ? x - y : x + order_ - y;
        if (counts_[s]++ == 0)
          touched_.push_back(s);
      }
    }
    for (Exponent s : touched_) {
      if (!(skip_modulus && s % skip_modulus == 0))
        best = std::max(best, counts_[s]);
      counts_[s] = 0;
    }
    touched_.clear();
    return best;
  }

private:
  Exponent order_;
  std::vector<std::uint32_t> counts_;
  std::vector<Exponent> touched_;
};

inline unsigned orbit_min_distance(const FieldCtx &ctx, const Orbit &o,
                                   ShiftCorrelator *scratch = nullptr) {
  if (o.period < 2)
    throw Error(ErrorKind::SingletonOrbit, "orbit has a single member");
  ShiftCorrelator local(scratch ? 1 : ctx.order());
  ShiftCorrelator &corr = scratch ? *scratch : local;
  const auto &e = o.rep.elems();
  const std::uint32_t overlap = corr.max_overlap(e, e, o.period);
  return 2 * o.dim() - 2 * detail::dim_from_count(overlap, ctx.q());
}

/// Builds the full orbit record from the elements of any member.
inline Orbit make_orbit(const FieldCtx &ctx, std::span<const Exponent> elems,
                        ShiftCorrelator *scratch = nullptr) {
  const auto canon = canonical_elems(elems, ctx.order());
  Orbit o{span(ctx, canon), 0, 0, kInfiniteDistance};
  o.period = shift_period(o.rep.elems(), ctx.order());
  o.t = stabilizer_degree(ctx, o.period);
  if (o.period > 1)
    o.min_dist = orbit_min_distance(ctx, o, scratch);
  return o;
}

inline Orbit orbit_of(const FieldCtx &ctx, const Subspace &v) {
  if (v.dim() == 0)
    throw Error(ErrorKind::InvalidArgument, "orbit of the null space");
  if (!v.field().same_field(ctx))
    throw Error(ErrorKind::MixedFields, "subspace belongs to another field");
  return make_orbit(ctx, v.elems());
}

inline unsigned inter_orbit_distance(const FieldCtx &ctx, const Orbit &a, const Orbit &b,
                                     ShiftCorrelator *scratch = nullptr) {
  if (a.rep.elems() == b.rep.elems())
    throw Error(ErrorKind::SameOrbit, "distance requested between an orbit and itself");
  if (a.dim() != b.dim())
    throw Error(ErrorKind::InvalidArgument, "orbits of different dimension");
  ShiftCorrelator local(scratch ? 1 : ctx.order());
  ShiftCorrelator &corr = scratch ? *scratch : local;
  const std::uint32_t overlap = corr.max_overlap(a.rep.elems(), b.rep.elems());
  return 2 * a.dim() - 2 * detail::dim_from_count(overlap, ctx.q());
}

/// All distinct members of an orbit, in shift order.
inline std::vector<Subspace> orbit_members(const FieldCtx &ctx, const Orbit &o) {
  std::vector<Subspace> members;
  members.reserve(o.period);
  for (std::uint64_t s = 0; s < o.period; ++s)
    members.push_back(cyclic_shift(ctx, o.rep, static_cast<Exponent>(s)));
  return members;
}

// Pairwise references: every pair of members compared by rank, no shift
// reduction. Test and cross-check use only.

inline unsigned orbit_min_distance_pairwise(const FieldCtx &ctx, const Orbit &o) {
  if (o.period < 2)
    throw Error(ErrorKind::SingletonOrbit, "orbit has a single member");
  const auto members = orbit_members(ctx, o);
  unsigned best = kInfiniteDistance;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      best = std::min(best, subspace_distance(members[i], members[j]));
  return best;
}

inline unsigned inter_orbit_distance_pairwise(const FieldCtx &ctx, const Orbit &a,
                                              const Orbit &b) {
  if (a.rep.elems() == b.rep.elems())
    throw Error(ErrorKind::SameOrbit, "distance requested between an orbit and itself");
  const auto ma = orbit_members(ctx, a), mb = orbit_members(ctx, b);
  unsigned best = kInfiniteDistance;
  for (const auto &x : ma)
    for (const auto &y : mb)
      best = std::min(best, subspace_distance(x, y));
  return best;
}

struct EnumerateOptions {
  std::uint64_t max_subspaces = 50'000'000;
  unsigned threads = 1;
};

/// Visits every (r)-dimensional subspace of the coordinates [offset, offset+m)
/// as RREF rows of packed words.
template <class Visit>
void for_each_rref(unsigned q, unsigned m, unsigned r, unsigned offset, Visit &&visit) {
  std::vector<Word> unit(m);
  for (unsigned c = 0; c < m; ++c)
    unit[c] = static_cast<Word>(ipow(q, c + offset));

  std::vector<unsigned> pivots(r);
  std::vector<Word> rows(r);
  // free slots: (row, column) pairs right of the row pivot and not a pivot column
  std::vector<std::pair<unsigned, unsigned>> slots;
  std::vector<unsigned> values;

  auto emit_all = [&] {
    slots.clear();
    std::vector<bool> is_pivot(m, false);
    for (unsigned p : pivots)
      is_pivot[p] = true;
    for (unsigned i = 0; i < r; ++i)
      for (unsigned c = pivots[i] + 1; c < m; ++c)
        if (!is_pivot[c])
          slots.emplace_back(i, c);
    values.assign(slots.size(), 0);
    for (;;) {
      for (unsigned i = 0; i < r; ++i)
        rows[i] = unit[pivots[i]];
      for (std::size_t s = 0; s < slots.size(); ++s)
        rows[slots[s].first] += values[s] * unit[slots[s].second];
      visit(std::span<const Word>(rows));
      std::size_t s = 0;
      while (s < values.size() && ++values[s] == q)
        values[s++] = 0;
      if (s == values.size())
        break;
    }
  };

  if (r > m)
    return;
  for (unsigned i = 0; i < r; ++i)
    pivots[i] = i;
  for (;;) {
    emit_all();
    // next combination of pivot columns
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && pivots[i] == m - r + static_cast<unsigned>(i))
      --i;
    if (i < 0)
      break;
    ++pivots[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j)
      pivots[j] = pivots[j - 1] + 1;
  }
}

/// One Orbit per cyclic-shift class of G_q(n,k), sorted by canonical rep.
/// Only subspaces through alpha^0 are generated: every orbit has one.
inline OrbitSet enumerate_orbits(const FieldCtx &ctx, unsigned k,
                                 const EnumerateOptions &opts = {}) {
  const unsigned q = ctx.q(), n = ctx.n();
  if (k < 1 || k > n)
    throw Error(ErrorKind::InvalidArgument,
                "k must lie in [1, n], got " + std::to_string(k));
  const std::uint64_t work = gaussian_binomial(n - 1, k - 1, q);
  if (work > opts.max_subspaces)
    throw Error(ErrorKind::ResourceCap,
                std::to_string(work) + " candidate subspaces exceed the cap of " +
                    std::to_string(opts.max_subspaces));

  std::set<std::vector<Exponent>> reps;
  std::vector<Word> basis(k);
  basis[0] = 1; // alpha^0
  for_each_rref(q, n - 1, k - 1, 1, [&](std::span<const Word> rows) {
    std::copy(rows.begin(), rows.end(), basis.begin() + 1);
    std::vector<Exponent> elems;
    elems.reserve(ipow(q, k) - 1);
    for (Word w : nonzero_span_words(ctx, basis))
      elems.push_back(ctx.log_unchecked(w));
    reps.insert(canonical_elems(elems, ctx.order()));
  });

  OrbitSet out;
  out.q = q;
  out.n = n;
  out.k = k;
  out.poly = ctx.params().poly;
  std::vector<std::vector<Exponent>> ordered(reps.begin(), reps.end());
  std::vector<std::optional<Orbit>> built(ordered.size());
  parallel_for(ordered.size(), std::max(1u, opts.threads), [&](std::size_t i) {
    thread_local std::unique_ptr<ShiftCorrelator> corr;
    thread_local Exponent corr_order = 0;
    if (!corr || corr_order != ctx.order()) {
      corr = std::make_unique<ShiftCorrelator>(ctx.order());
      corr_order = ctx.order();
    }
    built[i] = make_orbit(ctx, ordered[i], corr.get());
  });
  out.orbits.reserve(built.size());
  for (auto &o : built) {
    ++out.counts_by_t[o->t];
    out.orbits.push_back(std::move(*o));
  }
  return out;
}

} // namespace grassclique
