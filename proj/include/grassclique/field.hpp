#pragma once

// Extension field F_{q^n} over a prime field, stored as discrete-log tables.
//
// Elements are packed into a single machine word: for q = 2 bit i is the
// coefficient of x^i, for odd q the word is the base-q number whose digit i is
// the coefficient of x^i. The zero vector packs to 0.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace grassclique {

using Exponent = std::uint32_t;
using Word = std::uint32_t;
using Vec = std::vector<std::uint8_t>;

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

inline bool is_prime(unsigned q) {
  if (q < 2)
    return false;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0)
      return false;
  return true;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--)
    r *= base;
  return r;
}

struct FieldParams {
  unsigned q = 2;
  unsigned n = 1;
  std::vector<unsigned> poly; // constant term first, monic

  bool operator==(const FieldParams &) const = default;
};

class FieldCtx;
FieldCtx build_field(FieldParams params);

class FieldCtx {
public:
  const FieldParams &params() const noexcept { return params_; }
  unsigned q() const noexcept { return params_.q; }
  unsigned n() const noexcept { return params_.n; }
  /// Order of the multiplicative group, q^n - 1.
  Exponent order() const noexcept { return order_; }
  /// Number of field elements, q^n.
  std::uint32_t size() const noexcept { return order_ + 1; }

  Word exp_word(Exponent e) const {
    if (e >= order_)
      throw Error(ErrorKind::ExponentOutOfRange,
                  "exponent " + std::to_string(e) + " not in [0, " +
                      std::to_string(order_) + ")");
    return exp_[e];
  }
  Exponent log_word(Word w) const {
    if (w == 0)
      throw Error(ErrorKind::ZeroVectorHasNoLog, "log of zero vector");
    if (w > order_)
      throw Error(ErrorKind::InvalidArgument, "word outside field");
    return log_[w];
  }

  // Unchecked lookups for inner loops.
  Word exp_unchecked(Exponent e) const noexcept { return exp_[e]; }
  Exponent log_unchecked(Word w) const noexcept { return log_[w]; }

  Word add(Word a, Word b) const noexcept {
    if (params_.q == 2)
      return a ^ b;
    Word r = 0, place = 1;
    for (unsigned i = 0; i < params_.n; ++i) {
      r += ((a % params_.q + b % params_.q) % params_.q) * place;
      a /= params_.q;
      b /= params_.q;
      place *= params_.q;
    }
    return r;
  }

  Word scale(Word a, unsigned c) const noexcept {
    c %= params_.q;
    if (params_.q == 2)
      return c ? a : 0;
    Word r = 0, place = 1;
    for (unsigned i = 0; i < params_.n; ++i) {
      r += ((a % params_.q) * c % params_.q) * place;
      a /= params_.q;
      place *= params_.q;
    }
    return r;
  }

  Vec unpack(Word w) const {
    Vec v(params_.n);
    for (unsigned i = 0; i < params_.n; ++i) {
      v[i] = static_cast<std::uint8_t>(w % params_.q);
      w /= params_.q;
    }
    return v;
  }

  Word pack(const Vec &v) const {
    if (v.size() != params_.n)
      throw Error(ErrorKind::InvalidArgument, "vector length differs from n");
    Word w = 0;
    for (unsigned i = params_.n; i-- > 0;) {
      if (v[i] >= params_.q)
        throw Error(ErrorKind::InvalidArgument, "coordinate out of range");
      w = w * params_.q + v[i];
    }
    return w;
  }

  /// True when both contexts describe the same field and basis.
  bool same_field(const FieldCtx &other) const noexcept {
    return this == &other || params_ == other.params_;
  }

private:
  friend FieldCtx build_field(FieldParams params);
  FieldCtx() = default;

  FieldParams params_;
  Exponent order_ = 0;
  std::vector<Word> exp_;
  std::vector<Exponent> log_;
};

inline FieldCtx build_field(FieldParams params) {
  const unsigned q = params.q, n = params.n;
  if (!is_prime(q))
    throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");
  if (n == 0 || params.poly.size() != n + 1)
    throw Error(ErrorKind::WrongDegree,
                "polynomial must have exactly n+1 = " + std::to_string(n + 1) +
                    " coefficients");
  for (unsigned c : params.poly)
    if (c >= q)
      throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
  if (params.poly.back() != 1)
    throw Error(ErrorKind::NotMonic, "leading coefficient must be 1");
  if (ipow(q, n) > kMaxFieldSize)
    throw Error(ErrorKind::ResourceCap, "field too large for log tables");

  FieldCtx ctx;
  ctx.order_ = static_cast<Exponent>(ipow(q, n) - 1);
  ctx.exp_.assign(ctx.order_, 0);
  ctx.log_.assign(ctx.order_ + 1, std::numeric_limits<Exponent>::max());

  // Walk the powers of x as digit vectors, then pack.
  std::vector<unsigned> cur(n, 0);
  cur[0] = 1;
  auto pack = [&] {
    Word w = 0;
    for (unsigned i = n; i-- > 0;)
      w = w * q + cur[i];
    return w;
  };
  for (Exponent e = 0; e < ctx.order_; ++e) {
    const Word w = pack();
    if (w == 0 || ctx.log_[w] != std::numeric_limits<Exponent>::max())
      throw Error(ErrorKind::NotPrimitive,
                  "x has multiplicative order " + std::to_string(e) + " < " +
                      std::to_string(ctx.order_));
    ctx.exp_[e] = w;
    ctx.log_[w] = e;
    const unsigned top = cur[n - 1];
    for (unsigned i = n - 1; i > 0; --i)
      cur[i] = cur[i - 1];
    cur[0] = 0;
    // x^n = -(poly[0] + ... + poly[n-1] x^{n-1})
    for (unsigned i = 0; i < n; ++i)
      cur[i] = (cur[i] + (q - (top * params.poly[i]) % q)) % q;
  }
  if (pack() != 1)
    throw Error(ErrorKind::NotPrimitive, "x^(q^n-1) != 1");
  ctx.params_ = std::move(params);
  return ctx;
}

namespace detail {

struct DefaultPoly {
  unsigned q, n;
  std::vector<unsigned> poly;
};

inline const std::vector<DefaultPoly> &default_polys() {
  static const std::vector<DefaultPoly> table = {
      {2, 1, {1, 1}},
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
      {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 14, {1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1}},
      {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 16, {1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}},
      {3, 1, {1, 1}},
      {3, 2, {2, 1, 1}},
      {3, 3, {1, 0, 2, 1}},
      {3, 4, {2, 0, 0, 1, 1}},
      {3, 5, {1, 0, 0, 0, 2, 1}},
      {3, 6, {2, 0, 0, 0, 0, 1, 1}},
      {3, 7, {1, 0, 0, 0, 0, 1, 2, 1}},
      {3, 8, {2, 0, 0, 0, 0, 1, 0, 0, 1}},
  };
  return table;
}

} // namespace detail

/// Shipped primitive polynomial for (q, n); covers q = 2 up to n = 16 and
/// q = 3 up to n = 8.
inline FieldParams default_primitive_poly(unsigned q, unsigned n) {
  for (const auto &entry : detail::default_polys())
    if (entry.q == q && entry.n == n)
      return FieldParams{q, n, entry.poly};
  throw Error(ErrorKind::NoDefaultAvailable,
              "no stored primitive polynomial for q=" + std::to_string(q) +
                  ", n=" + std::to_string(n));
}

inline Vec exp_to_vec(const FieldCtx &ctx, Exponent e) {
  return ctx.unpack(ctx.exp_word(e));
}

inline Exponent vec_to_exp(const FieldCtx &ctx, const Vec &v) {
  const Word w = ctx.pack(v);
  if (w == 0)
    throw Error(ErrorKind::ZeroVectorHasNoLog, "log of zero vector");
  return ctx.log_unchecked(w);
}

// Polynomial text.
//
// Accepted forms: "x^8+x^4+x^3+x^2+1", "2*x^3+x+2", "2x^3", and the compact
// coefficient list "1,0,1,1,1,0,0,0,1" (constant term first).

inline std::vector<unsigned> parse_polynomial(unsigned q, std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t')
      s.push_back(c);
  if (s.empty())
    throw Error(ErrorKind::Parse, "empty polynomial");
  if (q < 2)
    throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");

  auto parse_uint = [&](std::string_view tok) -> unsigned {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
      throw Error(ErrorKind::Parse, "bad integer '" + std::string(tok) + "'");
    return v;
  };

  std::vector<unsigned> coeffs;
  if (s.find('x') == std::string::npos && s.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t comma = s.find(',', start);
      if (comma == std::string::npos)
        comma = s.size();
      coeffs.push_back(parse_uint(std::string_view(s).substr(start, comma - start)) % q);
      start = comma + 1;
    }
  } else {
    std::map<unsigned, unsigned> terms;
    std::size_t start = 0;
    while (start < s.size()) {
      std::size_t plus = s.find('+', start);
      if (plus == std::string::npos)
        plus = s.size();
      std::string_view term = std::string_view(s).substr(start, plus - start);
      if (term.empty())
        throw Error(ErrorKind::Parse, "empty term in '" + s + "'");
      unsigned coeff = 1, degree = 0;
      const std::size_t xpos = term.find('x');
      if (xpos == std::string_view::npos) {
        coeff = parse_uint(term);
      } else {
        std::string_view head = term.substr(0, xpos);
        if (!head.empty() && head.back() == '*')
          head.remove_suffix(1);
        if (!head.empty())
          coeff = parse_uint(head);
        std::string_view tail = term.substr(xpos + 1);
        if (tail.empty())
          degree = 1;
        else if (tail.front() == '^')
          degree = parse_uint(tail.substr(1));
        else
          throw Error(ErrorKind::Parse, "bad term '" + std::string(term) + "'");
      }
      terms[degree] = (terms[degree] + coeff) % q;
      start = plus + 1;
    }
    if (s.back() == '+')
      throw Error(ErrorKind::Parse, "trailing '+'");
    const unsigned deg = terms.rbegin()->first;
    coeffs.assign(deg + 1, 0);
    for (auto [d, c] : terms)
      coeffs[d] = c;
  }
  while (coeffs.size() > 1 && coeffs.back() == 0)
    coeffs.pop_back();
  return coeffs;
}

/// Parses polynomial text into FieldParams with n taken from the degree.
inline FieldParams parse_field_params(unsigned q, std::string_view text) {
  auto coeffs = parse_polynomial(q, text);
  if (coeffs.size() < 2)
    throw Error(ErrorKind::WrongDegree, "polynomial has degree 0");
  const unsigned n = static_cast<unsigned>(coeffs.size() - 1);
  return FieldParams{q, n, std::move(coeffs)};
}

inline std::string format_polynomial(const std::vector<unsigned> &poly) {
  std::string out;
  for (std::size_t d = poly.size(); d-- > 0;) {
    const unsigned c = poly[d];
    if (c == 0)
      continue;
    if (!out.empty())
      out += '+';
    if (d == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1)
      out += std::to_string(c) + "*";
    out += 'x';
    if (d > 1)
      out += '^' + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

} // namespace grassclique
