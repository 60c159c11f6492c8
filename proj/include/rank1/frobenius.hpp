#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"

namespace rank1 {

inline void check_frobenius_params(std::uint32_t n, std::uint32_t kappa)
{
  if (n < 2)
    throw std::invalid_argument("frobenius: n must be at least 2");
  std::uint64_t k = kappa % n;
  if (k == 1)
    throw std::invalid_argument("frobenius: kappa = 1 (mod n)");
  if (std::gcd<std::uint64_t>(k, n) != 1)
    throw std::invalid_argument("frobenius: gcd(kappa, n) != 1");
  if (k * k % n * k % n != 1)
    throw std::invalid_argument("frobenius: kappa^3 != 1 (mod n)");
}

/// C_n x| C_3 on the points of C_n (written additively as 0..n-1): c is
/// x -> x+1 and x is x -> kappa*x.
inline GroupAction frobenius_metacyclic(std::uint32_t n, std::uint32_t kappa)
{
  check_frobenius_params(n, kappa);
  std::vector<point_t> shift(n), scale(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    shift[i] = (i + 1) % n;
    scale[i] = static_cast<point_t>(static_cast<std::uint64_t>(i) * kappa % n);
  }
  PermutationGroup g(n, {Permutation(shift), Permutation(scale)}, 3ull * n);
  return GroupAction::natural(std::move(g), "frob:" + std::to_string(n) + ":" + std::to_string(kappa));
}

} // namespace rank1
