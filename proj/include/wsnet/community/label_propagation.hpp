#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "wsnet/community/common.hpp"
#include "wsnet/random.hpp"

namespace wsnet {

/// Asynchronous label propagation. Each sweep visits nodes in a fresh
/// seeded order; a node keeps its label when that label is already among
/// the most frequent in its neighbourhood, otherwise it adopts one of the
/// most frequent labels chosen uniformly at random. Stops after a sweep
/// with no change or after lp_max_sweeps sweeps.
inline Partition label_propagation(const UndirectedView& u, const DetectParams& dp) {
  dp.validate();
  detail::require_connected(u, "label_propagation");
  const std::size_t n = u.size();
  Rng rng = make_rng(dp.seed);
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<std::size_t> order(label);
  std::vector<std::size_t> freq(n, 0);
  std::vector<std::size_t> seen;
  std::vector<std::size_t> ties;

  for (std::size_t sweep = 0; sweep < dp.lp_max_sweeps; ++sweep) {
    shuffle(std::span<std::size_t>(order), rng);
    bool changed = false;
    for (std::size_t v : order) {
      if (u.degree(v) == 0) continue;
      seen.clear();
      std::size_t top = 0;
      for (NodeId w : u.neighbors(v)) {
        if (freq[label[w]]++ == 0) seen.push_back(label[w]);
        top = std::max(top, freq[label[w]]);
      }
      ties.clear();
      for (auto l : seen)
        if (freq[l] == top) ties.push_back(l);
      const bool keep = freq[label[v]] == top;
      for (auto l : seen) freq[l] = 0;
      if (keep) continue;
      std::sort(ties.begin(), ties.end());
      label[v] = ties[uniform_index(rng, ties.size())];
      changed = true;
    }
    if (!changed) break;
  }
  return detail::to_partition(u, label);
}

}  // namespace wsnet
