#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnet/error.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/partition.hpp"

namespace wsnet {

/// Knobs for the detection suite. Defaults are recorded in run manifests.
struct DetectParams {
  std::uint64_t seed = 1;
  std::size_t walktrap_t = 4;
  std::optional<std::size_t> gn_max_removals;
  std::size_t lp_max_sweeps = 1000;

  void validate() const {
    if (walktrap_t == 0) throw ValidationError("walktrap_t must be positive");
    if (lp_max_sweeps == 0) throw ValidationError("lp_max_sweeps must be positive");
    if (gn_max_removals && *gn_max_removals == 0) throw ValidationError("gn_max_removals must be positive");
  }
};

namespace detail {

inline Partition to_partition(const UndirectedView& u, const std::vector<std::size_t>& raw) {
  return Partition::from_membership(u.labels(), raw);
}

inline void require_connected(const UndirectedView& u, const char* algo) {
  if (u.size() == 0) throw EmptyInputError(std::string(algo) + ": graph has no nodes");
  if (!is_connected(u)) throw ValidationError(std::string(algo) + ": graph must be connected (pass the giant component)");
}

}  // namespace detail
}  // namespace wsnet
