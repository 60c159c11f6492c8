#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "action.hpp"
#include "backtrack.hpp"
#include "perm_group.hpp"

namespace rank1 {

struct TwoClosureResult {
  PermutationGroup closure;
  bool is_closed = false;
  std::optional<Permutation> sigma;  // an element of the closure outside G
  bool two_transitive_shortcut = false;
};

namespace detail {

inline std::uint64_t factorial_or_zero(std::size_t n)
{
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > UINT64_MAX / i)
      return 0;
    f *= i;
  }
  return f;
}

/// Ordered partitions of the points refined against an orbital colouring.
/// Splits order the new cells by their invariant keys, so an automorphism
/// of the colouring maps refined partitions to refined partitions.
class OrbitalRefiner {
public:
  using Cells = std::vector<std::vector<point_t>>;

  explicit OrbitalRefiner(OrbitalTable const &t) : t_(t), n_(t.degree()) {}

  void refine(Cells &cells) const
  {
    std::vector<std::uint32_t> cell_of(n_);
    std::vector<std::uint64_t> key;
    for (;;) {
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (point_t v : cells[c])
          cell_of[v] = static_cast<std::uint32_t>(c);
      Cells next;
      bool split = false;
      for (auto const &cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<std::uint64_t>, point_t>> keyed;
        keyed.reserve(cell.size());
        for (point_t v : cell) {
          key.clear();
          for (point_t w = 0; w < n_; ++w)
            key.push_back(std::uint64_t{cell_of[w]} * t_.count() + t_.id(v, w));
          std::sort(key.begin(), key.end());
          keyed.emplace_back(key, v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::size_t start = next.size();
        next.emplace_back();
        for (std::size_t i = 0; i < keyed.size(); ++i) {
          if (i > 0 && keyed[i].first != keyed[i - 1].first)
            next.emplace_back();
          next.back().push_back(keyed[i].second);
        }
        for (std::size_t c = start; c < next.size(); ++c)
          std::sort(next[c].begin(), next[c].end());
        split |= next.size() - start > 1;
      }
      cells = std::move(next);
      if (!split)
        return;
    }
  }

  Cells individualize(Cells cells, std::size_t c, point_t v) const
  {
    auto &cell = cells[c];
    cell.erase(std::find(cell.begin(), cell.end(), v));
    cells.insert(cells.begin() + static_cast<long>(c), std::vector<point_t>{v});
    refine(cells);
    return cells;
  }

  static std::vector<std::size_t> shape(Cells const &cells)
  {
    std::vector<std::size_t> s;
    for (auto const &c : cells)
      s.push_back(c.size());
    return s;
  }

private:
  OrbitalTable const &t_;
  std::size_t n_;
};

} // namespace detail

/// The 2-closure of G: all permutations preserving every orbital. Computed
/// as the automorphism group of the orbital colouring by individualization
/// and refinement. The first path of the search tree gives a base; levels
/// are completed bottom-up, seeded with G's own stabilizer generators, and
/// every point of the target cell outside the known orbit gets an exhaustive
/// search. Throws BudgetExceeded when the node budget runs out.
inline TwoClosureResult two_closure(PermutationGroup const &g, std::size_t degree_cap = 200,
                                    SearchBudget *budget = nullptr)
{
  std::size_t n = g.degree();
  if (n > degree_cap)
    throw std::invalid_argument("two_closure: degree " + std::to_string(n) + " above the cap " +
                                std::to_string(degree_cap));
  OrbitalTable table(g);

  if (g.is_transitive() && table.count() == 2 && n > 2) {
    TwoClosureResult r{PermutationGroup::symmetric(n), false, std::nullopt, true};
    std::uint64_t f = detail::factorial_or_zero(n);
    if (f != 0 && g.order() == f) {
      r.is_closed = true;
      return r;
    }
    for (point_t i = 0; i + 1 < n; ++i) {
      auto t = Permutation::from_cycles(n, {{i, i + 1}});
      if (!g.contains(t)) {
        r.sigma = t;
        break;
      }
    }
    return r;
  }

  detail::OrbitalRefiner ref(table);
  using Cells = detail::OrbitalRefiner::Cells;

  // first path
  std::vector<Cells> path;
  std::vector<std::size_t> target;
  std::vector<point_t> base;
  Cells cells(1);
  for (point_t v = 0; v < n; ++v)
    cells[0].push_back(v);
  ref.refine(cells);
  for (;;) {
    path.push_back(cells);
    auto it = std::find_if(cells.begin(), cells.end(), [](auto const &c) { return c.size() > 1; });
    if (it == cells.end())
      break;
    std::size_t t = static_cast<std::size_t>(it - cells.begin());
    target.push_back(t);
    base.push_back(it->front());
    cells = ref.individualize(cells, t, it->front());
  }
  std::size_t m = base.size();
  std::vector<std::vector<std::size_t>> shapes;
  for (auto const &p : path)
    shapes.push_back(detail::OrbitalRefiner::shape(p));

  auto leaf_map = [&](Cells const &leaf) {
    std::vector<point_t> img(n);
    for (std::size_t k = 0; k < leaf.size(); ++k)
      img[path[m][k].front()] = leaf[k].front();
    return Permutation(std::move(img));
  };

  std::function<std::optional<Permutation>(std::size_t, Cells const &)> dfs =
      [&](std::size_t j, Cells const &p) -> std::optional<Permutation> {
    if (budget && !budget->tick())
      throw BudgetExceeded();
    if (j == m) {
      auto x = leaf_map(p);
      if (table.preserved_by(x))
        return x;
      return std::nullopt;
    }
    for (point_t d : p[target[j]]) {
      auto next = ref.individualize(p, target[j], d);
      if (detail::OrbitalRefiner::shape(next) != shapes[j + 1])
        continue;
      if (auto x = dfs(j + 1, next))
        return x;
    }
    return std::nullopt;
  };

  auto gchain = g.chain_with_base(base);
  std::vector<Permutation> found;
  std::uint64_t order = 1;
  for (std::size_t i = m; i-- > 0;) {
    auto gens = PermutationGroup::from_chain_level(gchain, i).generators();
    gens.insert(gens.end(), found.begin(), found.end());
    auto orbit = orbit_points(base[i], gens, n);
    std::vector<char> in_orbit(n, 0);
    for (point_t x : orbit)
      in_orbit[x] = 1;
    for (point_t gamma : path[i][target[i]]) {
      if (in_orbit[gamma])
        continue;
      auto start = ref.individualize(path[i], target[i], gamma);
      if (detail::OrbitalRefiner::shape(start) != shapes[i + 1])
        continue;
      auto x = dfs(i + 1, start);
      if (!x)
        continue;
      found.push_back(*x);
      gens.push_back(*x);
      orbit = orbit_points(base[i], gens, n);
      for (point_t y : orbit)
        in_orbit[y] = 1;
    }
    order *= orbit.size();
  }

  auto all = g.generators();
  all.insert(all.end(), found.begin(), found.end());
  TwoClosureResult r{PermutationGroup(n, all, order), order == g.order(), std::nullopt, false};
  if (!r.is_closed)
    for (auto const &x : found)
      if (!g.contains(x)) {
        r.sigma = x;
        break;
      }
  return r;
}

inline TwoClosureResult two_closure(GroupAction const &a, std::size_t degree_cap = 200,
                                    SearchBudget *budget = nullptr)
{
  return two_closure(a.group, degree_cap, budget);
}

} // namespace rank1
