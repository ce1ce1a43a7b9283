#pragma once

#include <compare>
#include <tuple>
#include <vector>

#include "gmtame/poly.hpp"

namespace gmtame {

// Module monomial x^e * theta^theta in the x-monomial component setting.
// Total x-degree first, degrevlex among equal degrees, then theta.
struct DegreeThetaOrder {
  int compare(const XMonomial& u, const XMonomial& v) const {
    if (int c = degrevlex_cmp(u.e, v.e); c != 0) return c;
    return u.theta == v.theta ? 0 : (u.theta < v.theta ? -1 : 1);
  }
};

// Module monomial theta^k * e_c in the phi-basis setting, c a coordinate
// column carrying its group rank and opposite-filtration level p.
struct LevelKey {
  int k = 0;      // theta exponent
  int group = 0;  // rank of the eigenvalue group; larger means larger V-degree
  int p = 0;      // opposite-filtration level (0 where unused)
  int col = 0;    // column index inside the group

  friend auto operator<=>(const LevelKey&, const LevelKey&) = default;
};

struct LevelOrder {
  bool use_p = false;
  int compare(const LevelKey& u, const LevelKey& v) const {
    auto t = [this](const LevelKey& a) { return std::tuple(a.k, a.group, use_p ? a.p : 0, a.col); };
    auto a = t(u), b = t(v);
    return a < b ? -1 : (a == b ? 0 : 1);
  }
};

}  // namespace gmtame
