#pragma once

#include <spincorr/linalg.hpp>

#include <array>
#include <cmath>

namespace spincorr {

// Hermitian generator basis of su(4), normalized to Tr(g_i g_j) = 2 delta_ij.
// Ordering: the su(2) triple on levels (1,2), then the (1,3), (2,3) ladder
// operators with the first diagonal completion, then the (1,4), (2,4), (3,4)
// ladder operators with the second diagonal completion.
inline const std::array<cmat, 15>& su4_generators() {
  static const std::array<cmat, 15> gens = [] {
    std::array<cmat, 15> g;
    for (auto& m : g) m = cmat::Zero(4, 4);
    auto pair_re = [](cmat& m, int a, int b) { m(a, b) = 1.0; m(b, a) = 1.0; };
    auto pair_im = [](cmat& m, int a, int b) { m(a, b) = -iu; m(b, a) = iu; };
    pair_re(g[0], 0, 1);
    pair_im(g[1], 0, 1);
    g[2].diagonal().real() << 1, -1, 0, 0;
    pair_re(g[3], 0, 2);
    pair_im(g[4], 0, 2);
    pair_re(g[5], 1, 2);
    pair_im(g[6], 1, 2);
    g[7].diagonal().real() << 1, 1, -2, 0;
    g[7] /= std::sqrt(3.0);
    pair_re(g[8], 0, 3);
    pair_im(g[9], 0, 3);
    pair_re(g[10], 1, 3);
    pair_im(g[11], 1, 3);
    pair_re(g[12], 2, 3);
    pair_im(g[13], 2, 3);
    g[14].diagonal().real() << 1, 1, 1, -3;
    g[14] /= std::sqrt(6.0);
    return g;
  }();
  return gens;
}

}  // namespace spincorr
