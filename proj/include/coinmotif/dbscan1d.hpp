#ifndef COINMOTIF_DBSCAN1D_HPP_
#define COINMOTIF_DBSCAN1D_HPP_

#include <algorithm>
#include <numeric>
#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif {

/// Density clustering on a line. Returns one label per input value: a cluster
/// id >= 0 or -1 for noise. A point is core when at least `minPts` values
/// (itself included) lie within `eps`; core points within `eps` of an earlier
/// core share its cluster; border points join the leftmost core cluster that
/// reaches them. Labels are numbered by ascending cluster position.
template <typename Scalar>
std::vector<int> dbscan1d(const std::vector<Scalar>& values, Scalar eps,
                          int minPts) {
  if (!(eps > Scalar(0))) throw InvalidParamsError("dbscan eps must be positive");
  if (minPts < 1) throw InvalidParamsError("dbscan minPts must be >= 1");
  const std::size_t n = values.size();
  std::vector<int> labels(n, -1);
  if (n == 0) return labels;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });

  auto at = [&](std::size_t pos) { return values[order[pos]]; };

  // Two-pointer neighborhood counts over the sorted projection.
  std::vector<char> core(n, 0);
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (at(i) - at(lo) > eps) ++lo;
    if (hi < i + 1) hi = i + 1;
    while (hi < n && at(hi) - at(i) <= eps) ++hi;
    if (hi - lo >= static_cast<std::size_t>(minPts)) core[i] = 1;
  }

  std::vector<int> coreLabel(n, -1);
  int next = 0;
  std::size_t prevCore = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    if (prevCore < n && at(i) - at(prevCore) <= eps)
      coreLabel[i] = coreLabel[prevCore];
    else
      coreLabel[i] = next++;
    labels[order[i]] = coreLabel[i];
    prevCore = i;
  }

  // Border points: nearest reachable core on the left wins over the right,
  // so a border between two clusters joins the earlier one.
  std::size_t lastCore = n;
  std::vector<int> leftReach(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) lastCore = i;
    if (lastCore < n && at(i) - at(lastCore) <= eps)
      leftReach[i] = coreLabel[lastCore];
  }
  lastCore = n;
  for (std::size_t ii = n; ii-- > 0;) {
    if (core[ii]) lastCore = ii;
    if (core[ii]) continue;
    if (leftReach[ii] >= 0)
      labels[order[ii]] = leftReach[ii];
    else if (lastCore < n && at(lastCore) - at(ii) <= eps)
      labels[order[ii]] = coreLabel[lastCore];
  }
  return labels;
}

}  // namespace coinmotif

#endif  // COINMOTIF_DBSCAN1D_HPP_
