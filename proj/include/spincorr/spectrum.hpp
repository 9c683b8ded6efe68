#pragma once

#include <spincorr/linalg.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace spincorr {

// Multiplicities of the clustered values, in descending value order.
inline std::vector<int> multiplicities(rvec lambda, double gap = 1e-9) {
  std::sort(lambda.data(), lambda.data() + lambda.size(), std::greater<double>());
  std::vector<int> mult;
  for (int i = 0; i < lambda.size(); ++i) {
    if (i > 0 && lambda(i - 1) - lambda(i) <= gap)
      ++mult.back();
    else
      mult.push_back(1);
  }
  return mult;
}

// Number of unitary-group parameters that survive conjugation of a fixed
// spectrum: N(N-1) minus K(K-1) for every K-fold eigenvalue.
inline int encoded_param_count(const rvec& lambda, double gap = 1e-9) {
  const int n = static_cast<int>(lambda.size());
  int count = n * (n - 1);
  for (int k : multiplicities(lambda, gap)) count -= k * (k - 1);
  return count;
}

// Factor positions of the 12-factor SU(4) encoding product that stay active
// for a given 4-level spectrum (entries in the order supplied, assumed
// descending). Known closed-form reductions drop trailing factors; patterns
// without one are left to the numeric column selection.
inline std::optional<std::vector<int>> active_factor_positions(const rvec& lambda,
                                                               double gap = 1e-9) {
  auto all = [](int k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i;
    return v;
  };
  auto eq = [&](int i, int j) { return std::abs(lambda(i) - lambda(j)) <= gap; };
  const bool e12 = eq(0, 1), e23 = eq(1, 2), e34 = eq(2, 3);
  if (e12 && e23 && e34) return std::vector<int>{};
  if (e12 && e23) return all(6);
  if (e12 && !e23 && !e34) return all(10);
  if (!e12 && !e23 && !e34) return all(12);
  return std::nullopt;
}

}  // namespace spincorr
