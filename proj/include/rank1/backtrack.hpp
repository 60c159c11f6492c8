#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "perm_group.hpp"

namespace rank1 {

/// Node counter shared by the bounded searches. A limit of zero means
/// "unbounded".
struct SearchBudget {
  std::uint64_t max_nodes = 0;
  std::uint64_t nodes = 0;

  bool exhausted() const { return max_nodes != 0 && nodes > max_nodes; }
  bool tick() { return ++nodes, !exhausted(); }
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("search budget exceeded") {}
};

/// Prune test used during backtracking: given the images of the first
/// (depth+1) base points, return false when no completion can satisfy the
/// search property.
using BasePrune = std::function<bool(std::vector<point_t> const &base,
                                     std::vector<point_t> const &images)>;

namespace detail {

inline bool search_below(StabilizerChain const &chain, std::size_t depth, Permutation const &prefix,
                         std::vector<point_t> const &base, std::vector<point_t> &images,
                         BasePrune const &prune,
                         std::function<bool(Permutation const &)> const &property,
                         SearchBudget *budget, Permutation &found)
{
  if (budget && !budget->tick())
    throw BudgetExceeded();
  if (depth == chain.length()) {
    if (property(prefix)) {
      found = prefix;
      return true;
    }
    return false;
  }
  auto const &lvl = chain.level(depth);
  std::vector<point_t> targets = lvl.orbit;
  std::sort(targets.begin(), targets.end());
  for (point_t gamma : targets) {
    Permutation next = lvl.rep(gamma) * prefix;
    images[depth] = next[base[depth]];
    std::vector<point_t> partial(images.begin(), images.begin() + static_cast<long>(depth) + 1);
    if (prune && !prune(base, partial))
      continue;
    if (search_below(chain, depth + 1, next, base, images, prune, property, budget, found))
      return true;
  }
  return false;
}

} // namespace detail

/// Generic subgroup search over the chain of `group` for the subgroup of
/// elements satisfying `property` (which must define a subgroup). Levels
/// are processed bottom-up; an orbit point already reached by the
/// subgroup found so far is skipped. `base_prefix` controls the base
/// order so that `prune` can act early.
inline PermutationGroup subgroup_search(PermutationGroup const &group,
                                        std::function<bool(Permutation const &)> const &property,
                                        BasePrune const &prune,
                                        std::vector<point_t> const &base_prefix = {},
                                        SearchBudget *budget = nullptr)
{
  auto chain = group.chain_with_base(base_prefix);
  auto base = chain.base();
  std::size_t n = group.degree();
  std::vector<Permutation> found_gens;
  std::vector<point_t> images(base.size());

  for (std::size_t i = chain.length(); i-- > 0;) {
    auto const &lvl = chain.level(i);
    std::vector<point_t> targets = lvl.orbit;
    std::sort(targets.begin(), targets.end());
    std::vector<point_t> reached = orbit_points(lvl.base, found_gens, n);
    std::vector<char> in_reached(n, 0);
    for (point_t x : reached)
      in_reached[x] = 1;

    for (point_t gamma : targets) {
      if (in_reached[gamma])
        continue;
      for (std::size_t m = 0; m < i; ++m)
        images[m] = base[m];
      images[i] = gamma;
      std::vector<point_t> partial(images.begin(), images.begin() + static_cast<long>(i) + 1);
      if (prune && !prune(base, partial))
        continue;
      Permutation found;
      if (detail::search_below(chain, i + 1, lvl.rep(gamma), base, images, prune, property, budget,
                               found)) {
        found_gens.push_back(found);
        for (point_t x : orbit_points(lvl.base, found_gens, n))
          in_reached[x] = 1;
      }
    }
  }
  return PermutationGroup(n, found_gens);
}

/// {x in G | L^x = L}. The empty set is stabilized by all of G.
inline PermutationGroup setwise_stabilizer(PermutationGroup const &group,
                                           std::vector<point_t> const &subset,
                                           SearchBudget *budget = nullptr)
{
  std::size_t n = group.degree();
  std::vector<char> member(n, 0);
  for (point_t x : subset) {
    if (x >= n)
      throw std::invalid_argument("setwise_stabilizer: point out of range");
    member[x] = 1;
  }
  std::size_t count = static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
  if (count == 0 || count == n)
    return group;

  std::vector<point_t> sorted(subset);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  auto property = [&](Permutation const &x) {
    for (point_t p : sorted)
      if (!member[x[p]])
        return false;
    return true;
  };
  auto prune = [&](std::vector<point_t> const &base, std::vector<point_t> const &images) {
    for (std::size_t m = 0; m < images.size(); ++m)
      if (member[base[m]] != member[images[m]])
        return false;
    return true;
  };
  return subgroup_search(group, property, prune, sorted, budget);
}

/// Transporters out of one fixed tuple I. The chain with base I is built
/// once, so many candidate images J can be tested cheaply.
class TupleTransporter {
public:
  TupleTransporter(PermutationGroup const &group, std::vector<point_t> from)
      : group_(group), from_(std::move(from))
  {
    std::size_t n = group.degree();
    for (std::size_t i = 0; i < from_.size(); ++i) {
      if (from_[i] >= n)
        throw std::invalid_argument("transporter: point out of range");
      if (std::find(distinct_.begin(), distinct_.end(), from_[i]) == distinct_.end())
        distinct_.push_back(from_[i]);
    }
    // a tuple through every point pins the element down; membership suffices
    full_ = distinct_.size() == n;
    if (!full_ && !distinct_.empty())
      chain_ = group.chain_with_base(distinct_);
  }

  std::vector<point_t> const &from() const { return from_; }

  std::optional<Permutation> find(std::vector<point_t> const &to) const
  {
    if (to.size() != from_.size())
      throw std::invalid_argument("transporter: tuple length mismatch");
    std::size_t n = group_.degree();
    std::vector<point_t> distinct_to;
    for (std::size_t i = 0; i < to.size(); ++i) {
      if (to[i] >= n)
        throw std::invalid_argument("transporter: point out of range");
      for (std::size_t j = 0; j < i; ++j)
        if ((from_[i] == from_[j]) != (to[i] == to[j]))
          return std::nullopt;
      if (std::find(from_.begin(), from_.begin() + static_cast<long>(i), from_[i]) ==
          from_.begin() + static_cast<long>(i))
        distinct_to.push_back(to[i]);
    }
    if (distinct_.empty())
      return Permutation::identity(n);
    if (full_) {
      std::vector<point_t> img(n);
      for (std::size_t i = 0; i < n; ++i)
        img[distinct_[i]] = distinct_to[i];
      Permutation x(std::move(img));
      if (group_.contains(x))
        return x;
      return std::nullopt;
    }
    Permutation acc = Permutation::identity(n);
    std::vector<point_t> targets = distinct_to;
    for (std::size_t m = 0; m < distinct_.size(); ++m) {
      auto const &lvl = chain_.level(m);
      point_t gamma = targets[m];
      if (!lvl.in_orbit(gamma))
        return std::nullopt;
      acc = lvl.rep(gamma) * acc;
      targets = image_tuple(targets, lvl.rep_inv(gamma));
    }
    return acc;
  }

private:
  PermutationGroup group_;
  std::vector<point_t> from_;
  std::vector<point_t> distinct_;
  bool full_ = false;
  StabilizerChain chain_;
};

/// Some x in G with I^x == J entrywise, or nothing when the tuples lie in
/// different G-orbits. Repeated entries are allowed.
inline std::optional<Permutation> transporter(PermutationGroup const &group,
                                              std::vector<point_t> const &from,
                                              std::vector<point_t> const &to)
{
  if (from.size() != to.size())
    throw std::invalid_argument("transporter: tuple length mismatch");
  return TupleTransporter(group, from).find(to);
}

/// The subgroup generated by a list of elements; cheap when the elements
/// come from a small group.
inline PermutationGroup subgroup_from_elements(std::size_t degree,
                                               std::vector<Permutation> const &elements)
{
  PermutationGroup current = PermutationGroup::trivial(degree);
  std::vector<Permutation> gens;
  for (auto const &x : elements) {
    if (x.is_identity() || current.contains(x))
      continue;
    gens.push_back(x);
    current = PermutationGroup(degree, gens);
  }
  return current;
}

/// Brute-force filter over all elements; for groups of modest order.
inline PermutationGroup filter_subgroup(PermutationGroup const &group,
                                        std::function<bool(Permutation const &)> const &pred)
{
  std::vector<Permutation> keep;
  group.chain().for_each_element([&](Permutation const &x) {
    if (pred(x))
      keep.push_back(x);
    return true;
  });
  return subgroup_from_elements(group.degree(), keep);
}

inline PermutationGroup centralizer(PermutationGroup const &group, Permutation const &x)
{
  return filter_subgroup(group, [&](Permutation const &g) { return g * x == x * g; });
}

/// N_G(H) by element filter.
inline PermutationGroup normalizer(PermutationGroup const &group, PermutationGroup const &sub)
{
  return filter_subgroup(group, [&](Permutation const &g) {
    for (auto const &h : sub.generators())
      if (!sub.contains(h.conjugate_by(g)))
        return false;
    return true;
  });
}

} // namespace rank1
