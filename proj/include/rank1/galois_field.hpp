#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank1 {

/// Field elements are integers 0..q-1: the base-p digits are the
/// coefficients of the residue polynomial, lowest degree first.
using fe_t = std::uint32_t;

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Writes q = p^f with p prime, or returns false.
inline bool prime_power(std::uint64_t q, std::uint64_t &p, unsigned &f)
{
  if (q < 2)
    return false;
  for (p = 2; p * p <= q && q % p != 0; ++p) {
  }
  if (q % p != 0)
    p = q;
  f = 0;
  for (std::uint64_t r = q; r > 1; r /= p, ++f)
    if (r % p != 0)
      return false;
  return true;
}

/// GF(p^f) with log/antilog tables. The defining polynomial is the first
/// monic primitive polynomial of degree f in lexicographic order of its
/// coefficients (constant term least significant), so the representation
/// and the generator are fixed for given (p, f).
class GaloisField {
public:
  GaloisField(std::uint32_t p, unsigned f)
  {
    if (!is_prime(p))
      throw std::invalid_argument("GaloisField: characteristic " + std::to_string(p) + " is not prime");
    if (f == 0)
      throw std::invalid_argument("GaloisField: degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < f; ++i)
      q *= p;
    if (q > (1u << 16))
      throw std::invalid_argument("GaloisField: order exceeds 2^16");
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->f = f;
    t->q = static_cast<std::uint32_t>(q);
    build(*t);
    tables_ = std::move(t);
  }

  static GaloisField of_order(std::uint64_t q)
  {
    std::uint64_t p;
    unsigned f;
    if (!prime_power(q, p, f))
      throw std::invalid_argument("GaloisField: " + std::to_string(q) + " is not a prime power");
    return GaloisField(static_cast<std::uint32_t>(p), f);
  }

  std::uint32_t characteristic() const { return tables_->p; }
  unsigned degree() const { return tables_->f; }
  std::uint32_t order() const { return tables_->q; }

  /// Coefficients of the defining polynomial, constant term first (monic,
  /// leading coefficient omitted).
  std::vector<std::uint32_t> const &modulus() const { return tables_->modulus; }

  fe_t zero() const { return 0; }
  fe_t one() const { return 1; }
  /// A generator of the multiplicative group.
  fe_t generator() const { return tables_->exp[1 % (tables_->q - 1)]; }

  /// The image of an integer in the prime field.
  fe_t from_int(std::int64_t n) const
  {
    auto p = static_cast<std::int64_t>(tables_->p);
    return static_cast<fe_t>(((n % p) + p) % p);
  }

  fe_t add(fe_t a, fe_t b) const
  {
    auto const &t = *tables_;
    if (t.p == 2)
      return a ^ b;
    fe_t result = 0, scale = 1;
    for (unsigned i = 0; i < t.f; ++i) {
      result += ((a % t.p + b % t.p) % t.p) * scale;
      a /= t.p;
      b /= t.p;
      scale *= t.p;
    }
    return result;
  }

  fe_t neg(fe_t a) const
  {
    auto const &t = *tables_;
    if (t.p == 2)
      return a;
    fe_t result = 0, scale = 1;
    for (unsigned i = 0; i < t.f; ++i) {
      result += ((t.p - a % t.p) % t.p) * scale;
      a /= t.p;
      scale *= t.p;
    }
    return result;
  }

  fe_t sub(fe_t a, fe_t b) const { return add(a, neg(b)); }

  fe_t mul(fe_t a, fe_t b) const
  {
    if (a == 0 || b == 0)
      return 0;
    auto const &t = *tables_;
    std::uint32_t s = t.log[a] + t.log[b];
    if (s >= t.q - 1)
      s -= t.q - 1;
    return t.exp[s];
  }

  fe_t inv(fe_t a) const
  {
    if (a == 0)
      throw std::domain_error("GaloisField: inverse of zero");
    auto const &t = *tables_;
    return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
  }

  fe_t div(fe_t a, fe_t b) const { return mul(a, inv(b)); }

  fe_t pow(fe_t a, std::int64_t e) const
  {
    if (a == 0) {
      if (e < 0)
        throw std::domain_error("GaloisField: negative power of zero");
      return e == 0 ? 1 : 0;
    }
    auto const &t = *tables_;
    std::int64_t m = t.q - 1;
    std::int64_t s = (static_cast<std::int64_t>(t.log[a]) * (e % m)) % m;
    if (s < 0)
      s += m;
    return t.exp[static_cast<std::size_t>(s)];
  }

  /// Discrete logarithm to the base generator(); a must be nonzero.
  std::uint32_t log(fe_t a) const
  {
    if (a == 0)
      throw std::domain_error("GaloisField: log of zero");
    return tables_->log[a];
  }

  /// x -> x^(p^e).
  fe_t frobenius(fe_t a, std::int64_t e = 1) const
  {
    auto f = static_cast<std::int64_t>(tables_->f);
    e = ((e % f) + f) % f;
    std::int64_t power = 1;
    for (std::int64_t i = 0; i < e; ++i)
      power *= tables_->p;
    return pow(a, power);
  }

  std::uint32_t multiplicative_order(fe_t a) const
  {
    auto m = tables_->q - 1;
    return m / std::gcd(m, log(a));
  }

  bool is_square(fe_t a) const
  {
    if (a == 0 || tables_->p == 2)
      return true;
    return log(a) % 2 == 0;
  }

  /// True iff a lies in the subfield of order p^d.
  bool in_subfield(fe_t a, unsigned d) const
  {
    if (d == 0 || tables_->f % d != 0)
      return false;
    return frobenius(a, d) == a;
  }

  /// Elements of the subfield of order p^d, in increasing order.
  std::vector<fe_t> subfield(unsigned d) const
  {
    if (d == 0 || tables_->f % d != 0)
      throw std::invalid_argument("GaloisField: no subfield of degree " + std::to_string(d));
    std::vector<fe_t> result;
    for (fe_t x = 0; x < tables_->q; ++x)
      if (frobenius(x, d) == x)
        result.push_back(x);
    return result;
  }

  /// A generator of the multiplicative group of the subfield of degree d.
  fe_t subfield_generator(unsigned d) const
  {
    if (d == 0 || tables_->f % d != 0)
      throw std::invalid_argument("GaloisField: no subfield of degree " + std::to_string(d));
    std::uint32_t q0 = 1;
    for (unsigned i = 0; i < d; ++i)
      q0 *= tables_->p;
    return pow(generator(), (tables_->q - 1) / (q0 - 1));
  }

  std::string to_string(fe_t a) const
  {
    auto const &t = *tables_;
    if (t.f == 1)
      return std::to_string(a);
    if (a == 0)
      return "0";
    return "w^" + std::to_string(t.log[a]);
  }

  bool operator==(GaloisField const &o) const
  {
    return tables_->p == o.tables_->p && tables_->f == o.tables_->f;
  }

private:
  struct Tables {
    std::uint32_t p = 2, q = 2;
    unsigned f = 1;
    std::vector<std::uint32_t> modulus;
    std::vector<fe_t> exp;
    std::vector<std::uint32_t> log;
  };

  // multiplication by x modulo the candidate polynomial
  static fe_t times_x(fe_t a, Tables const &t)
  {
    std::vector<std::uint32_t> c(t.f + 1, 0);
    for (unsigned i = 0; i < t.f; ++i) {
      c[i + 1] = a % t.p;
      a /= t.p;
    }
    std::uint32_t top = c[t.f];
    fe_t result = 0, scale = 1;
    for (unsigned i = 0; i < t.f; ++i) {
      std::uint32_t v = (c[i] + (t.p - t.modulus[i]) * top) % t.p;
      result += v * scale;
      scale *= t.p;
    }
    return result;
  }

  static void build(Tables &t)
  {
    t.exp.assign(t.q - 1, 0);
    t.log.assign(t.q, 0);
    if (t.f == 1) {
      for (fe_t g = 1; g < t.q; ++g) {
        if (fill_powers(t, [&](fe_t a) { return static_cast<fe_t>((std::uint64_t{a} * g) % t.q); }))
          return;
      }
      throw std::logic_error("GaloisField: no primitive root");
    }
    std::uint64_t candidates = t.q; // coefficient vectors of the non-leading terms
    for (std::uint64_t code = 0; code < candidates; ++code) {
      t.modulus.assign(t.f, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < t.f; ++i) {
        t.modulus[i] = static_cast<std::uint32_t>(c % t.p);
        c /= t.p;
      }
      if (t.modulus[0] == 0)
        continue;
      if (fill_powers(t, [&](fe_t a) { return times_x(a, t); }))
        return;
    }
    throw std::logic_error("GaloisField: no primitive polynomial");
  }

  template <class Step>
  static bool fill_powers(Tables &t, Step step)
  {
    std::vector<char> seen(t.q, 0);
    fe_t a = 1;
    for (std::uint32_t k = 0; k + 1 < t.q; ++k) {
      if (seen[a])
        return false;
      seen[a] = 1;
      t.exp[k] = a;
      t.log[a] = k;
      a = step(a);
    }
    return a == 1;
  }

  std::shared_ptr<Tables const> tables_;
};

} // namespace rank1
