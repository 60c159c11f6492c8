#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "perm_group.hpp"

namespace rank1 {

/// Right cosets Hg of H in G. A coset is named by the lexicographically
/// least image of G's base over its elements; the least element is found
/// level by level with a chain of H whose base starts with G's base.
class CosetSpace {
public:
  CosetSpace(PermutationGroup const &g, PermutationGroup const &h)
      : degree_(g.degree()), base_(g.chain().base()), hchain_(h.chain_with_base(base_))
  {
    if (h.degree() != g.degree())
      throw std::invalid_argument("coset_action: degree mismatch");
    if (!g.contains_group(h))
      throw std::invalid_argument("coset_action: subgroup is not contained in the group");
  }

  std::vector<point_t> const &base() const { return base_; }

  /// The least element of the coset Hg (as a permutation).
  Permutation canonical(Permutation g) const
  {
    for (std::size_t i = 0; i < base_.size() && i < hchain_.length(); ++i) {
      auto const &lvl = hchain_.level(i);
      point_t best = lvl.orbit.front();
      for (point_t gamma : lvl.orbit)
        if (g[gamma] < g[best])
          best = gamma;
      if (best != lvl.base)
        g = lvl.rep(best) * g;
    }
    return g;
  }

  std::vector<point_t> label(Permutation const &g) const
  {
    auto c = canonical(g);
    std::vector<point_t> images;
    for (point_t b : base_)
      images.push_back(c[b]);
    return images;
  }

private:
  std::size_t degree_;
  std::vector<point_t> base_;
  StabilizerChain hchain_;
};

inline std::string tuple_label(std::vector<point_t> const &t)
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < t.size(); ++i)
    os << (i ? "," : "") << t[i];
  os << ']';
  return os.str();
}

/// G acting on the right cosets of H by right multiplication. Points are
/// numbered in lexicographic order of their canonical labels, and the
/// result can lift any element of G's own representation.
inline GroupAction coset_action(PermutationGroup const &g, PermutationGroup const &h,
                                std::string provenance = "cosets", std::size_t max_index = 100000)
{
  auto space = std::make_shared<CosetSpace const>(g, h);
  std::uint64_t index = g.order() / h.order();
  if (index > max_index)
    throw std::invalid_argument("coset_action: index " + std::to_string(index) + " exceeds limit");

  std::map<std::vector<point_t>, std::size_t> found;
  std::vector<Permutation> reps;
  std::vector<std::vector<point_t>> labels;
  auto visit = [&](Permutation const &x) {
    auto c = space->canonical(x);
    std::vector<point_t> lab;
    for (point_t b : space->base())
      lab.push_back(c[b]);
    auto [it, fresh] = found.emplace(lab, reps.size());
    if (fresh) {
      reps.push_back(std::move(c));
      labels.push_back(std::move(lab));
    }
    return it->second;
  };
  visit(Permutation::identity(g.degree()));
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (auto const &s : g.generators())
      visit(reps[k] * s);
  if (reps.size() != index)
    throw std::logic_error("coset_action: coset count differs from the index");

  // renumber by label
  std::vector<std::size_t> order(reps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  auto table = std::make_shared<std::map<std::vector<point_t>, point_t>>();
  auto sorted_reps = std::make_shared<std::vector<Permutation>>();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (*table)[labels[order[i]]] = static_cast<point_t>(i);
    sorted_reps->push_back(reps[order[i]]);
    names.push_back(tuple_label(labels[order[i]]));
  }

  auto map = std::make_shared<ElementMap>();
  map->source_degree = g.degree();
  map->image = [space, table, sorted_reps](Permutation const &x) {
    std::vector<point_t> img(sorted_reps->size());
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = table->at(space->label((*sorted_reps)[i] * x));
    return Permutation(std::move(img));
  };

  std::vector<Permutation> gens;
  for (auto const &s : g.generators())
    gens.push_back(map->image(s));
  GroupAction a{PermutationGroup(reps.size(), gens), std::move(names),
                std::move(provenance), map};
  a.home = table->at(labels[0]);
  return a;
}

/// Composes two source maps: elements of the original representation are
/// lifted through `inner` and then through `outer`.
inline std::shared_ptr<ElementMap const> compose_maps(std::shared_ptr<ElementMap const> inner,
                                                      std::shared_ptr<ElementMap const> outer)
{
  if (!inner)
    return outer;
  if (!outer)
    return inner;
  auto m = std::make_shared<ElementMap>();
  m->source_degree = inner->source_degree;
  m->image = [inner, outer](Permutation const &x) { return outer->image(inner->image(x)); };
  return m;
}

} // namespace rank1
