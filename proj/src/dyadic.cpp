#include "dyw/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dyw {
namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int d = 0;
  while ((std::size_t{1} << d) < n) ++d;
  return d;
}

constexpr int kMaxDepth = 24;

}  // namespace

DyadicWeight::DyadicWeight(std::vector<double> leaves, double root_length)
    : root_length_(root_length), leaves_(std::move(leaves)) {
  if (leaves_.empty() || !power_of_two(leaves_.size()))
    throw std::invalid_argument("dyw: leaf count must be a power of two >= 1");
  depth_ = log2_exact(leaves_.size());
  if (depth_ > kMaxDepth)
    throw std::invalid_argument("dyw: depth exceeds supported maximum " +
                                std::to_string(kMaxDepth));
  if (!(std::isfinite(root_length_) && root_length_ > 0.0))
    throw std::invalid_argument("dyw: root_length must be finite and positive");
  for (double v : leaves_)
    if (!(std::isfinite(v) && v > 0.0))
      throw std::invalid_argument("dyw: leaves must be finite and positive");
  const std::int64_t n = leaf_count();
  avg_.assign(static_cast<std::size_t>(2 * n), 0.0);
  std::copy(leaves_.begin(), leaves_.end(), avg_.begin() + n);
  for (std::int64_t id = n - 1; id >= 1; --id)
    avg_[static_cast<std::size_t>(id)] =
        0.5 * (avg_[static_cast<std::size_t>(2 * id)] +
               avg_[static_cast<std::size_t>(2 * id + 1)]);
}

void DyadicWeight::check_node(NodeRef n) const {
  if (!contains(n))
    throw std::invalid_argument("dyw: node (" + std::to_string(n.level) + "," +
                                std::to_string(n.index) + ") outside tree of depth " +
                                std::to_string(depth_));
}

double DyadicWeight::average(NodeRef n) const {
  check_node(n);
  return avg_[static_cast<std::size_t>(node_id(n))];
}

double DyadicWeight::interval_length(NodeRef n) const {
  check_node(n);
  return root_length_ / static_cast<double>(std::int64_t{1} << n.level);
}

std::int64_t DyadicWeight::node_id(NodeRef n) const {
  check_node(n);
  return (std::int64_t{1} << n.level) + n.index;
}

NodeRef DyadicWeight::node_from_id(std::int64_t id) const {
  if (id < 1 || id >= 2 * leaf_count())
    throw std::invalid_argument("dyw: node id out of range");
  int level = 0;
  while ((std::int64_t{2} << level) <= id) ++level;
  return {level, id - (std::int64_t{1} << level)};
}

std::int64_t DyadicWeight::first_leaf(NodeRef n) const {
  check_node(n);
  return n.index << (depth_ - n.level);
}

std::int64_t DyadicWeight::last_leaf(NodeRef n) const {
  check_node(n);
  return (n.index + 1) << (depth_ - n.level);
}

double average_delta(const DyadicWeight& w, NodeRef node) {
  if (node.level >= w.depth())
    throw std::invalid_argument("dyw: average_delta needs an internal node");
  return w.average(DyadicWeight::left(node)) - w.average(DyadicWeight::right(node));
}

double doubling_constant(const DyadicWeight& w) {
  double best = 1.0;
  for_each_node(w, DyadicWeight::root(), [&](NodeRef n) {
    if (n.level >= w.depth()) return;
    const double p = w.average(n);
    best = std::max(best, p / w.average(DyadicWeight::left(n)));
    best = std::max(best, p / w.average(DyadicWeight::right(n)));
  });
  return best;
}

namespace {

// Fills m[0..span) with the chain maxima for `node`, where m is pre-loaded
// with leaf values at the bottom of the recursion.
void chain_max(const DyadicWeight& w, NodeRef node, double* m, std::int64_t span) {
  const double a = w.average(node);
  if (node.level == w.depth()) {
    m[0] = a;
    return;
  }
  chain_max(w, DyadicWeight::left(node), m, span / 2);
  chain_max(w, DyadicWeight::right(node), m + span / 2, span / 2);
  for (std::int64_t i = 0; i < span; ++i) m[i] = std::max(m[i], a);
}

}  // namespace

std::vector<double> maximal_function(const DyadicWeight& w, NodeRef node) {
  const std::int64_t span = w.last_leaf(node) - w.first_leaf(node);
  std::vector<double> m(static_cast<std::size_t>(span), 0.0);
  chain_max(w, node, m.data(), span);
  return m;
}

double maximal_average(const DyadicWeight& w, NodeRef node) {
  const std::vector<double> m = maximal_function(w, node);
  double acc = 0.0;
  for (double v : m) acc += v;
  return acc / static_cast<double>(m.size());
}

}  // namespace dyw
