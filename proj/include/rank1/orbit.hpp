#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "permutation.hpp"

namespace rank1 {

/// An orbit in discovery (breadth-first) order with a Schreier transversal:
/// start^rep(x) == x for every orbit point x.
struct Orbit {
  point_t start = 0;
  std::vector<point_t> points;
  std::vector<std::int32_t> slot;
  std::vector<Permutation> reps;

  bool contains(point_t x) const { return x < slot.size() && slot[x] >= 0; }
  std::size_t size() const { return points.size(); }
  Permutation const &rep(point_t x) const
  {
    if (!contains(x))
      throw std::invalid_argument("Orbit: point outside the orbit");
    return reps[static_cast<std::size_t>(slot[x])];
  }
};

inline std::vector<point_t> orbit_points(point_t start, std::vector<Permutation> const &gens,
                                         std::size_t degree)
{
  if (start >= degree)
    throw std::invalid_argument("orbit: start point out of range");
  std::vector<char> seen(degree, 0);
  std::vector<point_t> result{start};
  seen[start] = 1;
  for (std::size_t k = 0; k < result.size(); ++k)
    for (auto const &g : gens) {
      point_t y = g[result[k]];
      if (!seen[y]) {
        seen[y] = 1;
        result.push_back(y);
      }
    }
  return result;
}

inline Orbit orbit_with_transversal(point_t start, std::vector<Permutation> const &gens,
                                    std::size_t degree)
{
  if (start >= degree)
    throw std::invalid_argument("orbit: start point out of range");
  Orbit orb;
  orb.start = start;
  orb.slot.assign(degree, -1);
  orb.points.push_back(start);
  orb.slot[start] = 0;
  orb.reps.push_back(Permutation::identity(degree));
  for (std::size_t k = 0; k < orb.points.size(); ++k)
    for (auto const &g : gens) {
      point_t y = g[orb.points[k]];
      if (orb.slot[y] >= 0)
        continue;
      orb.slot[y] = static_cast<std::int32_t>(orb.points.size());
      orb.points.push_back(y);
      orb.reps.push_back(orb.reps[k] * g);
    }
  return orb;
}

/// Orbit id of every point; ids are numbered by smallest member.
inline std::vector<std::uint32_t> orbit_ids(std::vector<Permutation> const &gens,
                                            std::size_t degree, std::uint32_t *count = nullptr)
{
  constexpr std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> id(degree, unset);
  std::uint32_t next = 0;
  std::vector<point_t> queue;
  for (point_t x = 0; x < degree; ++x) {
    if (id[x] != unset)
      continue;
    queue.assign(1, x);
    id[x] = next;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto const &g : gens) {
        point_t y = g[queue[k]];
        if (id[y] == unset) {
          id[y] = next;
          queue.push_back(y);
        }
      }
    ++next;
  }
  if (count)
    *count = next;
  return id;
}

/// Orbits as sorted point lists, ordered by smallest member.
inline std::vector<std::vector<point_t>> orbits(std::vector<Permutation> const &gens,
                                                std::size_t degree)
{
  std::uint32_t count = 0;
  auto id = orbit_ids(gens, degree, &count);
  std::vector<std::vector<point_t>> result(count);
  for (point_t x = 0; x < degree; ++x)
    result[id[x]].push_back(x);
  return result;
}

} // namespace rank1
