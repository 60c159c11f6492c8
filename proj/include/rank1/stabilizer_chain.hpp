#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "permutation.hpp"

namespace rank1 {

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// strong generators fixing all earlier base points, with a right
/// transversal (base^u == gamma for the representative u of gamma).
struct ChainLevel {
  point_t base = 0;
  std::vector<Permutation> generators;
  std::vector<point_t> orbit;
  std::vector<std::int32_t> slot; // point -> index into transversal, -1 if outside orbit
  std::vector<Permutation> transversal;
  std::vector<Permutation> transversal_inv;

  bool in_orbit(point_t x) const { return slot[x] >= 0; }
  Permutation const &rep(point_t x) const { return transversal[static_cast<std::size_t>(slot[x])]; }
  Permutation const &rep_inv(point_t x) const
  {
    return transversal_inv[static_cast<std::size_t>(slot[x])];
  }
};

/// Base and strong generating set built with the deterministic Schreier-Sims
/// algorithm. New base points are always the smallest point moved by the
/// offending residue, so the chain is reproducible for a fixed input.
class StabilizerChain {
public:
  StabilizerChain() = default;

  /// Builds a chain for <generators>. `base_prefix` is used as the start of
  /// the base (levels with trivial basic orbit are kept). When `known_order`
  /// is given the algorithm stops as soon as the transversal sizes multiply
  /// up to it.
  static StabilizerChain build(std::size_t degree, std::vector<Permutation> const &generators,
                               std::vector<point_t> const &base_prefix = {},
                               std::optional<std::uint64_t> known_order = std::nullopt)
  {
    StabilizerChain chain;
    chain.degree_ = degree;
    for (point_t b : base_prefix) {
      if (b >= degree)
        throw std::invalid_argument("StabilizerChain: base point out of range");
      chain.append_level(b);
    }

    std::vector<Permutation> gens;
    for (auto const &g : generators) {
      if (g.degree() != degree)
        throw std::invalid_argument("StabilizerChain: generator degree mismatch");
      if (!g.is_identity())
        gens.push_back(g);
    }

    for (auto const &g : gens) {
      bool fixes_base = true;
      for (auto const &lvl : chain.levels_)
        if (g[lvl.base] != lvl.base) {
          fixes_base = false;
          break;
        }
      if (fixes_base)
        chain.append_level(g.support().front());
    }

    for (auto const &g : gens) {
      for (std::size_t i = 0; i < chain.levels_.size(); ++i) {
        chain.levels_[i].generators.push_back(g);
        if (g[chain.levels_[i].base] != chain.levels_[i].base)
          break;
      }
    }
    for (std::size_t i = 0; i < chain.levels_.size(); ++i)
      chain.rebuild_orbit(i);

    chain.schreier_sims(known_order);
    return chain;
  }

  std::size_t degree() const { return degree_; }
  std::size_t length() const { return levels_.size(); }
  std::vector<ChainLevel> const &levels() const { return levels_; }
  ChainLevel const &level(std::size_t i) const { return levels_.at(i); }

  std::vector<point_t> base() const
  {
    std::vector<point_t> result;
    for (auto const &lvl : levels_)
      result.push_back(lvl.base);
    return result;
  }

  /// Group order; throws std::overflow_error beyond 64 bits.
  std::uint64_t order() const
  {
    unsigned __int128 result = 1;
    for (auto const &lvl : levels_) {
      result *= lvl.orbit.size();
      if (result > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("StabilizerChain: order exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(result);
  }

  /// Sifts g from `start` downwards. Returns the residue and the level at
  /// which sifting stopped (length() means it passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start = 0) const
  {
    for (std::size_t i = start; i < levels_.size(); ++i) {
      auto const &lvl = levels_[i];
      point_t gamma = g[lvl.base];
      if (!lvl.in_orbit(gamma))
        return {std::move(g), i};
      g = g * lvl.rep_inv(gamma);
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(Permutation const &g) const
  {
    if (g.degree() != degree_)
      return false;
    auto [residue, lvl] = sift(g);
    return lvl == levels_.size() && residue.is_identity();
  }

  std::vector<Permutation> strong_generators() const
  {
    return levels_.empty() ? std::vector<Permutation>{} : levels_.front().generators;
  }

  /// Calls f on every group element, in the deterministic order given by
  /// the transversals (the first level varies fastest). Stops early when f
  /// returns false. Returns false iff stopped early.
  bool for_each_element(std::function<bool(Permutation const &)> const &f) const
  {
    return enumerate(levels_.size(), Permutation::identity(degree_), f);
  }

  std::vector<Permutation> elements() const
  {
    std::vector<Permutation> result;
    for_each_element([&](Permutation const &g) {
      result.push_back(g);
      return true;
    });
    return result;
  }

private:
  void append_level(point_t b)
  {
    ChainLevel lvl;
    lvl.base = b;
    lvl.slot.assign(degree_, -1);
    levels_.push_back(std::move(lvl));
  }

  void rebuild_orbit(std::size_t i)
  {
    auto &lvl = levels_[i];
    lvl.orbit.clear();
    lvl.transversal.clear();
    lvl.transversal_inv.clear();
    std::fill(lvl.slot.begin(), lvl.slot.end(), -1);
    lvl.orbit.push_back(lvl.base);
    lvl.slot[lvl.base] = 0;
    lvl.transversal.push_back(Permutation::identity(degree_));
    lvl.transversal_inv.push_back(Permutation::identity(degree_));
    for (std::size_t k = 0; k < lvl.orbit.size(); ++k) {
      point_t x = lvl.orbit[k];
      for (auto const &s : lvl.generators) {
        point_t y = s[x];
        if (lvl.slot[y] >= 0)
          continue;
        lvl.slot[y] = static_cast<std::int32_t>(lvl.transversal.size());
        Permutation u = lvl.transversal[k] * s;
        lvl.transversal_inv.push_back(u.inverse());
        lvl.transversal.push_back(std::move(u));
        lvl.orbit.push_back(y);
      }
    }
    if (checked_.size() < levels_.size())
      checked_.resize(levels_.size());
    checked_[i].clear();
  }

  bool order_reached(std::optional<std::uint64_t> const &target) const
  {
    if (!target)
      return false;
    unsigned __int128 product = 1;
    for (auto const &lvl : levels_)
      product *= lvl.orbit.size();
    return product >= *target;
  }

  void schreier_sims(std::optional<std::uint64_t> known_order)
  {
    checked_.assign(levels_.size(), {});
    if (levels_.empty() || order_reached(known_order))
      return;

    std::size_t i = levels_.size();
    while (i > 0) {
      std::size_t level_index = i - 1;
      bool restarted = false;
      auto &seen = checked_[level_index];
      std::size_t ngens = levels_[level_index].generators.size();
      if (seen.size() < ngens * degree_)
        seen.resize(ngens * degree_, 0);

      for (std::size_t k = 0; !restarted && k < levels_[level_index].orbit.size(); ++k) {
        auto const &lvl_now = levels_[level_index];
        point_t gamma = lvl_now.orbit[k];
        for (std::size_t s = 0; s < ngens; ++s) {
          auto &flag = checked_[level_index][s * degree_ + gamma];
          if (flag)
            continue;
          flag = 1;
          auto const &cur = levels_[level_index];
          auto const &gen = cur.generators[s];
          Permutation h = cur.rep(gamma) * gen * cur.rep_inv(gen[gamma]);
          auto [residue, stop] = sift(std::move(h), level_index + 1);
          if (residue.is_identity())
            continue;

          if (stop == levels_.size())
            append_level(residue.support().front());
          for (std::size_t l = level_index + 1; l <= stop; ++l) {
            levels_[l].generators.push_back(residue);
            rebuild_orbit(l);
          }
          if (order_reached(known_order))
            return;
          i = stop + 1;
          restarted = true;
          break;
        }
      }
      if (!restarted)
        --i;
    }
  }

  bool enumerate(std::size_t depth, Permutation const &suffix,
                 std::function<bool(Permutation const &)> const &f) const
  {
    // element = t_k * ... * t_1; build from the deepest level outwards
    if (depth == 0)
      return f(suffix);
    auto const &lvl = levels_[depth - 1];
    for (std::size_t k = 0; k < lvl.transversal.size(); ++k)
      if (!enumerate(depth - 1, suffix * lvl.transversal[k], f))
        return false;
    return true;
  }

  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
  std::vector<std::vector<char>> checked_;
};

} // namespace rank1
