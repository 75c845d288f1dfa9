#pragma once

// k-dimensional F_q-subspaces of F_{q^n}, kept in two linked forms: the
// canonical reduced row echelon basis (rows are packed words) and the sorted
// discrete logs of the q^k - 1 nonzero elements.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace grassclique {

namespace detail {

inline unsigned inverse_mod(unsigned a, unsigned q) {
  for (unsigned x = 1; x < q; ++x)
    if (a * x % q == 1)
      return x;
  return 0;
}

/// Canonical RREF of the row space over F_2. Pivot = lowest set bit, i.e. the
/// lowest-degree coordinate; rows come out sorted by pivot.
inline std::vector<Word> rref_binary(std::vector<Word> rows, unsigned n) {
  std::size_t rank = 0;
  for (unsigned col = 0; col < n && rank < rows.size(); ++col) {
    const Word bit = Word{1} << col;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit))
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r] & bit))
        rows[r] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

inline std::vector<Word> rref_prime(const FieldCtx &ctx, std::vector<Word> rows) {
  const unsigned q = ctx.q(), n = ctx.n();
  std::vector<Vec> m;
  m.reserve(rows.size());
  for (Word w : rows)
    m.push_back(ctx.unpack(w));
  std::size_t rank = 0;
  for (unsigned col = 0; col < n && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0)
      ++pivot;
    if (pivot == m.size())
      continue;
    std::swap(m[rank], m[pivot]);
    const unsigned inv = inverse_mod(m[rank][col], q);
    for (auto &c : m[rank])
      c = static_cast<std::uint8_t>(c * inv % q);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0)
        continue;
      const unsigned f = m[r][col];
      for (unsigned j = 0; j < n; ++j)
        m[r][j] = static_cast<std::uint8_t>((m[r][j] + q * q - f * m[rank][j]) % q);
    }
    ++rank;
  }
  std::vector<Word> out;
  out.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r)
    out.push_back(ctx.pack(m[r]));
  return out;
}

} // namespace detail

inline std::vector<Word> rref(const FieldCtx &ctx, std::vector<Word> rows) {
  std::erase(rows, Word{0});
  if (ctx.q() == 2)
    return detail::rref_binary(std::move(rows), ctx.n());
  return detail::rref_prime(ctx, std::move(rows));
}

/// Rank of a set of packed row vectors; exact integer elimination.
inline unsigned rank_of(const FieldCtx &ctx, std::span<const Word> rows) {
  if (ctx.q() == 2) {
    // xor basis keyed by leading bit
    Word basis[32] = {};
    unsigned rank = 0;
    for (Word v : rows) {
      while (v) {
        const unsigned lead = static_cast<unsigned>(std::bit_width(v)) - 1;
        if (!basis[lead]) {
          basis[lead] = v;
          ++rank;
          break;
        }
        v ^= basis[lead];
      }
    }
    return rank;
  }
  return static_cast<unsigned>(
      rref(ctx, std::vector<Word>(rows.begin(), rows.end())).size());
}

/// All nonzero vectors of the row space of `basis`, as packed words.
inline std::vector<Word> nonzero_span_words(const FieldCtx &ctx,
                                            std::span<const Word> basis) {
  std::vector<Word> out;
  const unsigned k = static_cast<unsigned>(basis.size());
  if (ctx.q() == 2) {
    out.reserve((std::size_t{1} << k) - 1);
    Word w = 0;
    for (std::uint32_t i = 1; i < (std::uint32_t{1} << k); ++i) {
      w ^= basis[std::countr_zero(i)];
      out.push_back(w);
    }
    return out;
  }
  const std::uint64_t total = ipow(ctx.q(), k);
  out.reserve(total - 1);
  std::vector<unsigned> digits(k, 0);
  for (std::uint64_t i = 1; i < total; ++i) {
    for (unsigned j = 0; j < k; ++j) {
      if (++digits[j] < ctx.q())
        break;
      digits[j] = 0;
    }
    Word w = 0;
    for (unsigned j = 0; j < k; ++j)
      if (digits[j])
        w = ctx.add(w, ctx.scale(basis[j], digits[j]));
    out.push_back(w);
  }
  return out;
}

class Subspace {
public:
  /// Builds the subspace spanned by packed row vectors.
  static Subspace from_words(const FieldCtx &ctx, std::vector<Word> rows) {
    Subspace v;
    v.field_ = &ctx;
    v.basis_ = rref(ctx, std::move(rows));
    for (Word w : nonzero_span_words(ctx, v.basis_))
      v.elems_.push_back(ctx.log_unchecked(w));
    std::sort(v.elems_.begin(), v.elems_.end());
    return v;
  }

  unsigned dim() const noexcept { return static_cast<unsigned>(basis_.size()); }
  const std::vector<Word> &basis() const noexcept { return basis_; }
  const std::vector<Exponent> &elems() const noexcept { return elems_; }
  const FieldCtx &field() const noexcept { return *field_; }

  bool operator==(const Subspace &other) const {
    return basis_ == other.basis_ && field_->same_field(*other.field_);
  }
  bool operator<(const Subspace &other) const { return basis_ < other.basis_; }

private:
  Subspace() = default;

  const FieldCtx *field_ = nullptr;
  std::vector<Word> basis_;
  std::vector<Exponent> elems_;
};

inline Subspace span(const FieldCtx &ctx, std::span<const Exponent> generators) {
  if (generators.empty())
    throw Error(ErrorKind::InvalidArgument, "span of an empty generator list");
  std::vector<Word> rows;
  rows.reserve(generators.size());
  for (Exponent e : generators)
    rows.push_back(ctx.exp_word(e));
  return Subspace::from_words(ctx, std::move(rows));
}

inline Subspace span(const FieldCtx &ctx, std::initializer_list<Exponent> generators) {
  return span(ctx, std::span<const Exponent>(generators.begin(), generators.size()));
}

inline void require_same_field(const Subspace &x, const Subspace &y) {
  if (!x.field().same_field(y.field()))
    throw Error(ErrorKind::MixedFields, "subspaces live in different fields");
}

inline unsigned intersection_dim(const Subspace &x, const Subspace &y) {
  require_same_field(x, y);
  std::vector<Word> stacked(x.basis());
  stacked.insert(stacked.end(), y.basis().begin(), y.basis().end());
  return x.dim() + y.dim() - rank_of(x.field(), stacked);
}

inline unsigned subspace_distance(const Subspace &x, const Subspace &y) {
  return x.dim() + y.dim() - 2 * intersection_dim(x, y);
}

/// Multiplies every element by alpha^s.
inline Subspace cyclic_shift(const FieldCtx &ctx, const Subspace &v, Exponent s) {
  if (s >= ctx.order())
    throw Error(ErrorKind::ExponentOutOfRange,
                "shift " + std::to_string(s) + " not in [0, " +
                    std::to_string(ctx.order()) + ")");
  if (!v.field().same_field(ctx))
    throw Error(ErrorKind::MixedFields, "subspace belongs to another field");
  std::vector<Word> rows;
  rows.reserve(v.dim());
  for (Word w : v.basis())
    rows.push_back(ctx.exp_unchecked((ctx.log_unchecked(w) + s) % ctx.order()));
  return Subspace::from_words(ctx, std::move(rows));
}

/// "{0, 5, 10}" form used in certificates and logs.
inline std::string format_exponents(std::span<const Exponent> elems) {
  std::string out = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(elems[i]);
  }
  return out + "}";
}

} // namespace grassclique
