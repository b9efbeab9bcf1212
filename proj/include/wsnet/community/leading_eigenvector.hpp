#pragma once

// Spectral modularity bisection: recursively split groups by the sign
// pattern of the leading eigenvector of the generalized modularity matrix.

#include <cmath>
#include <deque>
#include <sstream>
#include <vector>

#include "wsnet/community/common.hpp"
#include "wsnet/random.hpp"

namespace wsnet {

struct EigenvectorOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 500000;
  double min_gain = 1e-12;
};

namespace detail {

/// Generalized modularity matrix B^(g) of a node group, applied matrix-free.
class GroupModularityMatrix {
 public:
  GroupModularityMatrix(const UndirectedView& u, const std::vector<NodeId>& group)
      : u_(u), group_(group), local_(u.size(), kOutside), two_m_(2.0 * static_cast<double>(u.edge_count())) {
    for (std::size_t i = 0; i < group.size(); ++i) local_[group[i]] = i;
    k_.resize(group.size());
    for (std::size_t i = 0; i < group.size(); ++i) {
      k_[i] = static_cast<double>(u.degree(group[i]));
      k_group_ += k_[i];
    }
    // Row sums of B restricted to the group: k_i^(g) - k_i K_g / 2m.
    row_sum_.resize(group.size());
    shift_ = 0.0;
    for (std::size_t i = 0; i < group.size(); ++i) {
      double inside = 0.0;
      for (NodeId w : u.neighbors(group[i]))
        if (local_[w] != kOutside) inside += 1.0;
      row_sum_[i] = inside - k_[i] * k_group_ / two_m_;
      // Gershgorin bound on |B^(g)| row sums.
      shift_ = std::max(shift_, inside + k_[i] * k_group_ / two_m_ + std::abs(row_sum_[i]));
    }
  }

  std::size_t size() const { return group_.size(); }
  double shift() const { return shift_; }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    double kx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) kx += k_[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ax = 0.0;
      for (NodeId w : u_.neighbors(group_[i]))
        if (local_[w] != kOutside) ax += x[local_[w]];
      y[i] = ax - k_[i] * kx / two_m_ - row_sum_[i] * x[i];
    }
  }

  double quadratic(const std::vector<double>& x) const {
    std::vector<double> y(x.size());
    apply(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  }

 private:
  static constexpr std::size_t kOutside = static_cast<std::size_t>(-1);
  const UndirectedView& u_;
  const std::vector<NodeId>& group_;
  std::vector<std::size_t> local_;
  std::vector<double> k_;
  std::vector<double> row_sum_;
  double k_group_ = 0.0;
  double two_m_;
  double shift_ = 0.0;
};

/// Leading eigenvector of B^(g) by power iteration on B^(g) + shift I.
inline std::vector<double> leading_eigenvector(const GroupModularityMatrix& b, Rng& rng,
                                               const EigenvectorOptions& opt) {
  const std::size_t n = b.size();
  std::vector<double> x(n), y(n);
  for (auto& v : x) v = 2.0 * uniform01(rng) - 1.0;
  auto normalize = [](std::vector<double>& v) {
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw NumericalError("leading_eigenvector: power iteration collapsed to the zero vector");
    for (double& e : v) e /= norm;
  };
  normalize(x);
  double change = 0.0;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    b.apply(x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] += b.shift() * x[i];
    normalize(y);
    change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += (y[i] - x[i]) * (y[i] - x[i]);
    change = std::sqrt(change);
    x.swap(y);
    if (change <= opt.tolerance) return x;
  }
  std::ostringstream msg;
  msg << "leading_eigenvector: power iteration did not converge for a group of " << n << " nodes after "
      << opt.max_iterations << " iterations (last step change " << change << ", shift " << b.shift()
      << ", tolerance " << opt.tolerance << ")";
  throw NumericalError(msg.str());
}

}  // namespace detail

/// Newman's leading-eigenvector method. Connected components start as
/// separate groups; a group is split only when the split raises modularity
/// by more than opt.min_gain.
inline Partition leading_eigenvector(const UndirectedView& u, const DetectParams& dp,
                                     const EigenvectorOptions& opt = {}) {
  dp.validate();
  if (u.size() == 0) throw EmptyInputError("leading_eigenvector: graph has no nodes");
  if (u.edge_count() == 0) return Partition::singletons(u.labels());
  const double four_m = 4.0 * static_cast<double>(u.edge_count());
  Rng rng = make_rng(dp.seed);

  std::deque<std::vector<NodeId>> pending;
  for (auto& c : connected_components(u)) pending.push_back(std::move(c));
  std::vector<std::vector<NodeId>> done;
  while (!pending.empty()) {
    auto group = std::move(pending.front());
    pending.pop_front();
    if (group.size() < 2) {
      done.push_back(std::move(group));
      continue;
    }
    const detail::GroupModularityMatrix b(u, group);
    const auto vec = detail::leading_eigenvector(b, rng, opt);
    std::vector<double> s(group.size());
    std::vector<NodeId> plus, minus;
    for (std::size_t i = 0; i < group.size(); ++i) {
      s[i] = vec[i] > 0.0 ? 1.0 : -1.0;
      (vec[i] > 0.0 ? plus : minus).push_back(group[i]);
    }
    const double gain = b.quadratic(s) / four_m;
    if (plus.empty() || minus.empty() || !(gain > opt.min_gain)) {
      done.push_back(std::move(group));
      continue;
    }
    pending.push_back(std::move(plus));
    pending.push_back(std::move(minus));
  }
  std::vector<std::size_t> membership(u.size());
  std::sort(done.begin(), done.end());
  for (std::size_t c = 0; c < done.size(); ++c)
    for (NodeId v : done[c]) membership[v] = c;
  return detail::to_partition(u, membership);
}

}  // namespace wsnet
