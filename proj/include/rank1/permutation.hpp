#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank1 {

using point_t = std::uint32_t;

/// A bijection on {0, ..., degree-1} stored as an image table.
///
/// Products act on the right: for permutations a and b the point
/// x^(a*b) is (x^a)^b, so a*b means "apply a first, then b".
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), point_t{0});
  }

  explicit Permutation(std::vector<point_t> images) : images_(std::move(images))
  {
    std::vector<char> seen(images_.size(), 0);
    for (point_t x : images_) {
      if (x >= images_.size() || seen[x])
        throw std::invalid_argument("Permutation: image table is not a bijection");
      seen[x] = 1;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint (or not) cycles applied left to right.
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<point_t>> const &cycles)
  {
    Permutation result(degree);
    for (auto const &cycle : cycles) {
      if (cycle.size() < 2)
        continue;
      Permutation c(degree);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (cycle[i] >= degree)
          throw std::invalid_argument("Permutation: cycle entry out of range");
        c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      // validate that the cycle has no repeated entries
      c = Permutation(std::vector<point_t>(c.images_));
      result = result * c;
    }
    return result;
  }

  std::size_t degree() const { return images_.size(); }
  point_t operator[](point_t x) const { return images_[x]; }
  point_t image(point_t x) const { return images_.at(x); }
  std::vector<point_t> const &images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation operator*(Permutation const &rhs) const
  {
    check_degree(rhs);
    Permutation result;
    result.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[i] = rhs.images_[images_[i]];
    return result;
  }

  Permutation &operator*=(Permutation const &rhs) { return *this = *this * rhs; }

  Permutation inverse() const
  {
    Permutation result;
    result.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[images_[i]] = static_cast<point_t>(i);
    return result;
  }

  Permutation pow(long long e) const
  {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    Permutation result(degree());
    while (k) {
      if (k & 1u)
        result = result * base;
      base = base * base;
      k >>= 1u;
    }
    return result;
  }

  /// x^-1 * this * x
  Permutation conjugate_by(Permutation const &x) const { return x.inverse() * *this * x; }

  std::uint64_t order() const
  {
    std::uint64_t result = 1;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i])
        continue;
      std::uint64_t len = 0;
      for (point_t x = static_cast<point_t>(i); !seen[x]; x = images_[x]) {
        seen[x] = 1;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  std::vector<point_t> support() const
  {
    std::vector<point_t> result;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        result.push_back(static_cast<point_t>(i));
    return result;
  }

  std::vector<point_t> fixed_points() const
  {
    std::vector<point_t> result;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] == i)
        result.push_back(static_cast<point_t>(i));
    return result;
  }

  std::vector<std::vector<point_t>> cycles() const
  {
    std::vector<std::vector<point_t>> result;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      std::vector<point_t> cycle;
      for (point_t x = static_cast<point_t>(i); !seen[x]; x = images_[x]) {
        seen[x] = 1;
        cycle.push_back(x);
      }
      result.push_back(std::move(cycle));
    }
    return result;
  }

  /// Cycle notation with 0-based points, "()" for the identity.
  std::string to_cycle_string() const
  {
    auto cs = cycles();
    if (cs.empty())
      return "()";
    std::ostringstream out;
    for (auto const &c : cs) {
      out << '(';
      for (std::size_t i = 0; i < c.size(); ++i)
        out << (i ? "," : "") << c[i];
      out << ')';
    }
    return out.str();
  }

  /// Parses the output of to_cycle_string().
  static Permutation parse_cycles(std::size_t degree, std::string const &text)
  {
    std::vector<std::vector<point_t>> cycles;
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] != '(')
        throw std::invalid_argument("Permutation: expected '(' in cycle string");
      ++i;
      std::vector<point_t> cycle;
      std::string number;
      for (; i < text.size() && text[i] != ')'; ++i) {
        if (text[i] == ',') {
          cycle.push_back(static_cast<point_t>(std::stoul(number)));
          number.clear();
        } else if (text[i] != ' ') {
          number.push_back(text[i]);
        }
      }
      if (i == text.size())
        throw std::invalid_argument("Permutation: unterminated cycle");
      if (!number.empty())
        cycle.push_back(static_cast<point_t>(std::stoul(number)));
      ++i;
      cycles.push_back(std::move(cycle));
    }
    return from_cycles(degree, cycles);
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &a, Permutation const &b)
  {
    return a.images_ <=> b.images_;
  }

private:
  void check_degree(Permutation const &rhs) const
  {
    if (rhs.images_.size() != images_.size())
      throw std::invalid_argument("Permutation: degree mismatch");
  }

  std::vector<point_t> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (point_t x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Image of a tuple under a permutation, entrywise.
inline std::vector<point_t> image_tuple(std::vector<point_t> const &tuple, Permutation const &g)
{
  std::vector<point_t> result(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i)
    result[i] = g[tuple[i]];
  return result;
}

} // namespace rank1
