#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "backtrack.hpp"
#include "perm_group.hpp"

namespace rank1 {

/// Maps elements of a source permutation representation (for example the
/// natural action on the projective line) to permutations of an action.
struct ElementMap {
  std::size_t source_degree = 0;
  std::function<Permutation(Permutation const &)> image;
};

/// A group acting on a labelled point set. Faithfulness is not assumed.
struct GroupAction {
  PermutationGroup group;
  std::vector<std::string> labels;
  std::string provenance;
  std::shared_ptr<ElementMap const> from_source;
  // the point stabilized by the defining subgroup, for coset actions
  std::optional<point_t> home = std::nullopt;

  std::size_t degree() const { return group.degree(); }

  /// Image of an element of the source representation.
  Permutation lift(Permutation const &source_element) const
  {
    if (!from_source)
      return source_element;
    if (source_element.degree() != from_source->source_degree)
      throw std::invalid_argument("GroupAction: element is not from the source representation");
    return from_source->image(source_element);
  }

  static GroupAction natural(PermutationGroup g, std::string provenance = "natural")
  {
    GroupAction a{std::move(g), {}, std::move(provenance), nullptr};
    for (std::size_t i = 0; i < a.group.degree(); ++i)
      a.labels.push_back(std::to_string(i));
    return a;
  }

  void check() const
  {
    if (labels.size() != group.degree())
      throw std::invalid_argument("GroupAction: label count differs from degree");
    std::unordered_set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
      throw std::invalid_argument("GroupAction: duplicate point labels");
  }
};

/// Orbits of the group on ordered pairs; id(a, b) names the orbital.
class OrbitalTable {
public:
  OrbitalTable() = default;

  explicit OrbitalTable(PermutationGroup const &g) : n_(g.degree())
  {
    constexpr std::uint32_t unset = UINT32_MAX;
    ids_.assign(n_ * n_, unset);
    std::vector<std::size_t> queue;
    auto const &gens = g.generators();
    for (std::size_t p = 0; p < n_ * n_; ++p) {
      if (ids_[p] != unset)
        continue;
      ids_[p] = count_;
      queue.assign(1, p);
      for (std::size_t k = 0; k < queue.size(); ++k) {
        std::size_t a = queue[k] / n_, b = queue[k] % n_;
        for (auto const &s : gens) {
          std::size_t q = s[static_cast<point_t>(a)] * n_ + s[static_cast<point_t>(b)];
          if (ids_[q] == unset) {
            ids_[q] = count_;
            queue.push_back(q);
          }
        }
      }
      ++count_;
    }
  }

  std::size_t degree() const { return n_; }
  std::uint32_t count() const { return count_; }
  std::uint32_t id(point_t a, point_t b) const { return ids_[a * n_ + b]; }

  /// Does x map every pair into its own orbital?
  bool preserved_by(Permutation const &x) const
  {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (ids_[a * n_ + b] != ids_[x[static_cast<point_t>(a)] * n_ + x[static_cast<point_t>(b)]])
          return false;
    return true;
  }

private:
  std::size_t n_ = 0;
  std::uint32_t count_ = 0;
  std::vector<std::uint32_t> ids_;
};

struct ActionClass {
  bool transitive = false;
  bool primitive = false;
  bool two_transitive = false;
  std::size_t rank = 0; // number of orbits of a point stabilizer (transitive case)
};

namespace detail {

inline point_t uf_find(std::vector<point_t> &parent, point_t x)
{
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

} // namespace detail

/// The finest block system in which 0 and beta share a block, as a block id
/// per point (Atkinson's union-find closure).
inline std::vector<point_t> minimal_block_system(PermutationGroup const &g, point_t alpha,
                                                 point_t beta)
{
  std::size_t n = g.degree();
  std::vector<point_t> parent(n);
  std::iota(parent.begin(), parent.end(), point_t{0});
  std::vector<std::pair<point_t, point_t>> queue;
  auto merge = [&](point_t a, point_t b) {
    a = detail::uf_find(parent, a);
    b = detail::uf_find(parent, b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    parent[b] = a;
    queue.emplace_back(a, b);
  };
  merge(alpha, beta);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [x, y] = queue[k];
    for (auto const &s : g.generators())
      merge(s[x], s[y]);
  }
  for (point_t x = 0; x < n; ++x)
    parent[x] = detail::uf_find(parent, x);
  return parent;
}

inline ActionClass classify(PermutationGroup const &g)
{
  ActionClass c;
  std::size_t n = g.degree();
  c.transitive = g.is_transitive();
  if (!c.transitive)
    return c;
  if (n <= 2) {
    c.primitive = true;
    c.two_transitive = true;
    c.rank = n;
    return c;
  }
  auto stab = g.stabilizer(0);
  auto suborbits = stab.orbits();
  c.rank = suborbits.size();
  c.two_transitive = c.rank == 2;
  c.primitive = true;
  for (auto const &orb : suborbits) {
    if (orb.front() == 0)
      continue;
    auto blocks = minimal_block_system(g, 0, orb.front());
    if (std::any_of(blocks.begin(), blocks.end(), [](point_t b) { return b != 0; })) {
      c.primitive = false;
      break;
    }
  }
  return c;
}

inline ActionClass classify(GroupAction const &a) { return classify(a.group); }

/// g restricted to the invariant sorted subset `points`, relabelled 0..k-1.
inline Permutation restrict_to(Permutation const &g, std::vector<point_t> const &points)
{
  std::vector<std::int32_t> index(g.degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    index[points[i]] = static_cast<std::int32_t>(i);
  std::vector<point_t> images(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::int32_t j = index[g[points[i]]];
    if (j < 0)
      throw std::invalid_argument("restrict_to: subset is not invariant");
    images[i] = static_cast<point_t>(j);
  }
  return Permutation(std::move(images));
}

struct InducedAction {
  std::vector<point_t> points;  // sorted; point i of the image is points[i]
  PermutationGroup setwise;     // G_L
  PermutationGroup kernel;      // G_(L)
  GroupAction action;           // G^L acting faithfully on L
};

inline InducedAction induced_action(GroupAction const &a, std::vector<point_t> subset,
                                    SearchBudget *budget = nullptr)
{
  if (subset.empty())
    throw std::invalid_argument("induced_action: empty subset");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  auto setwise = setwise_stabilizer(a.group, subset, budget);
  auto kernel = a.group.pointwise_stabilizer(subset);
  std::vector<Permutation> gens;
  for (auto const &s : setwise.generators())
    gens.push_back(restrict_to(s, subset));
  std::uint64_t image_order = setwise.order() / kernel.order();
  GroupAction image{PermutationGroup(subset.size(), gens, image_order), {},
                    "induced on " + std::to_string(subset.size()) + " points of " + a.provenance,
                    nullptr};
  for (point_t x : subset)
    image.labels.push_back(a.labels.empty() ? std::to_string(x) : a.labels[x]);
  return InducedAction{subset, setwise, kernel, std::move(image)};
}

} // namespace rank1
