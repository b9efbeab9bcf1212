#pragma once

#include <array>
#include <string>
#include <string_view>

#include "wsnet/community/common.hpp"
#include "wsnet/community/girvan_newman.hpp"
#include "wsnet/community/label_propagation.hpp"
#include "wsnet/community/leading_eigenvector.hpp"
#include "wsnet/community/louvain.hpp"
#include "wsnet/community/walktrap.hpp"
#include "wsnet/partition.hpp"

namespace wsnet {

enum class Algorithm { louvain, edge_betweenness, label_propagation, walktrap, eigenvector };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms{
    Algorithm::edge_betweenness, Algorithm::louvain, Algorithm::eigenvector, Algorithm::walktrap,
    Algorithm::label_propagation};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::louvain: return "louvain";
    case Algorithm::edge_betweenness: return "edgebetweenness";
    case Algorithm::label_propagation: return "labelprop";
    case Algorithm::walktrap: return "walktrap";
    case Algorithm::eigenvector: return "eigenvector";
  }
  return "louvain";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "louvain") return Algorithm::louvain;
  if (name == "edgebetweenness" || name == "girvan_newman" || name == "gn") return Algorithm::edge_betweenness;
  if (name == "labelprop" || name == "label_propagation" || name == "lp") return Algorithm::label_propagation;
  if (name == "walktrap") return Algorithm::walktrap;
  if (name == "eigenvector" || name == "leading_eigenvector") return Algorithm::eigenvector;
  return std::nullopt;
}

inline Partition detect(Algorithm a, const UndirectedView& u, const DetectParams& dp) {
  switch (a) {
    case Algorithm::louvain: return louvain(u, dp);
    case Algorithm::edge_betweenness: return girvan_newman(u, dp);
    case Algorithm::label_propagation: return label_propagation(u, dp);
    case Algorithm::walktrap: return walktrap(u, dp);
    case Algorithm::eigenvector: return leading_eigenvector(u, dp);
  }
  throw ValidationError("unknown algorithm");
}

}  // namespace wsnet
