#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "orbit.hpp"
#include "permutation.hpp"
#include "stabilizer_chain.hpp"

namespace rank1 {

/// A permutation group given by generators. The stabilizer chain is built
/// on first use and shared between copies; the object is otherwise
/// immutable and may be read from several threads.
class PermutationGroup {
public:
  PermutationGroup() : PermutationGroup(1, {}) {}

  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::optional<std::uint64_t> order_hint = std::nullopt)
      : degree_(degree), order_hint_(order_hint), cache_(std::make_shared<Cache>())
  {
    if (degree == 0)
      throw std::invalid_argument("PermutationGroup: degree must be positive");
    for (auto &g : generators) {
      if (g.degree() != degree)
        throw std::invalid_argument("PermutationGroup: generator degree mismatch");
      if (!g.is_identity())
        generators_.push_back(std::move(g));
    }
  }

  static PermutationGroup trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

  static PermutationGroup symmetric(std::size_t n)
  {
    std::vector<Permutation> gens;
    if (n >= 2) {
      std::vector<point_t> cycle(n);
      std::iota(cycle.begin(), cycle.end(), point_t{0});
      gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
      gens.push_back(Permutation::from_cycles(n, {cycle}));
    }
    return PermutationGroup(n, gens);
  }

  static PermutationGroup alternating(std::size_t n)
  {
    std::vector<Permutation> gens;
    for (point_t k = 2; k < n; ++k)
      gens.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
    return PermutationGroup(n, gens);
  }

  static PermutationGroup cyclic(std::size_t n)
  {
    std::vector<point_t> cycle(n);
    std::iota(cycle.begin(), cycle.end(), point_t{0});
    return PermutationGroup(n, {Permutation::from_cycles(n, {cycle})});
  }

  std::size_t degree() const { return degree_; }
  std::vector<Permutation> const &generators() const { return generators_; }

  StabilizerChain const &chain() const
  {
    std::call_once(cache_->once, [this] {
      cache_->chain = StabilizerChain::build(degree_, generators_, {}, order_hint_);
    });
    return cache_->chain;
  }

  /// A fresh chain whose base starts with `prefix`.
  StabilizerChain chain_with_base(std::vector<point_t> const &prefix) const
  {
    std::vector<point_t> distinct;
    for (point_t p : prefix)
      if (std::find(distinct.begin(), distinct.end(), p) == distinct.end())
        distinct.push_back(p);
    return StabilizerChain::build(degree_, generators_, distinct, order());
  }

  std::uint64_t order() const { return order_hint_ ? *order_hint_ : chain().order(); }
  bool contains(Permutation const &g) const { return chain().contains(g); }

  bool contains_group(PermutationGroup const &h) const
  {
    for (auto const &g : h.generators())
      if (!contains(g))
        return false;
    return true;
  }

  std::vector<Permutation> elements() const { return chain().elements(); }

  std::vector<point_t> orbit(point_t x) const { return orbit_points(x, generators_, degree_); }
  std::vector<std::vector<point_t>> orbits() const { return rank1::orbits(generators_, degree_); }
  bool is_transitive() const { return orbit(0).size() == degree_; }

  /// Pointwise stabilizer of `points`, with known order.
  PermutationGroup pointwise_stabilizer(std::vector<point_t> const &points) const
  {
    if (points.empty())
      return *this;
    auto c = chain_with_base(points);
    // duplicate entries of `points` collapse to a single level
    std::vector<point_t> distinct(points);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return from_chain_level(c, distinct.size());
  }

  PermutationGroup stabilizer(point_t x) const { return pointwise_stabilizer({x}); }

  /// The subgroup generated by the strong generators at `depth` of `c`.
  static PermutationGroup from_chain_level(StabilizerChain const &c, std::size_t depth)
  {
    if (depth >= c.length())
      return trivial(c.degree());
    std::uint64_t ord = 1;
    for (std::size_t i = depth; i < c.length(); ++i)
      ord *= c.level(i).orbit.size();
    return PermutationGroup(c.degree(), c.level(depth).generators, ord);
  }

  PermutationGroup with_generator(Permutation const &g) const
  {
    auto gens = generators_;
    gens.push_back(g);
    return PermutationGroup(degree_, gens);
  }

private:
  struct Cache {
    std::once_flag once;
    StabilizerChain chain;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::optional<std::uint64_t> order_hint_;
  std::shared_ptr<Cache> cache_;
};

} // namespace rank1
