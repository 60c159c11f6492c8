#pragma once

// Independent oracles for the test suites. Nothing in here goes through a
// stabilizer chain.

#include <algorithm>
#include <random>
#include <unordered_set>
#include <vector>

#include "rank1/permutation.hpp"

namespace rank1::oracle {

/// All elements of <gens> by breadth-first closure.
inline std::vector<Permutation> brute_elements(std::vector<Permutation> const &gens,
                                               std::size_t degree)
{
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(degree)};
  seen.insert(queue.front());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto const &g : gens) {
      Permutation y = queue[k] * g;
      if (seen.insert(y).second)
        queue.push_back(y);
    }
  return queue;
}

inline Permutation random_permutation(std::size_t degree, std::mt19937 &rng)
{
  std::vector<point_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i)
    images[i] = static_cast<point_t>(i);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

/// Subsets of {0..n-1} of size k in lexicographic order.
inline std::vector<std::vector<point_t>> k_subsets(std::size_t n, std::size_t k)
{
  std::vector<std::vector<point_t>> result;
  std::vector<point_t> cur;
  auto rec = [&](auto &&self, point_t start) -> void {
    if (cur.size() == k) {
      result.push_back(cur);
      return;
    }
    for (point_t x = start; x < n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return result;
}

} // namespace rank1::oracle
