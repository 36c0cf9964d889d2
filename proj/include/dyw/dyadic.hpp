#pragma once
// Dyadic step weights on a root interval with cached subinterval averages.
//
// A weight of depth N is a positive step function with 2^N equal-length
// pieces (leaves). Dyadic nodes are addressed by (level, index): level 0 is
// the root, and the halves of (j, k) are (j+1, 2k) and (j+1, 2k+1). In the
// difference convention used throughout, the "plus" half is the LEFT child:
//   delta(I) = <w>_{left(I)} - <w>_{right(I)}.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dyw {

struct NodeRef {
  int level = 0;
  std::int64_t index = 0;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

class DyadicWeight {
 public:
  // Leaves must be a power-of-two count of finite positive values.
  explicit DyadicWeight(std::vector<double> leaves, double root_length = 1.0);

  int depth() const noexcept { return depth_; }
  double root_length() const noexcept { return root_length_; }
  std::int64_t leaf_count() const noexcept { return std::int64_t{1} << depth_; }
  const std::vector<double>& leaves() const noexcept { return leaves_; }
  double leaf(std::int64_t i) const { return leaves_.at(static_cast<std::size_t>(i)); }

  bool contains(NodeRef n) const noexcept {
    return n.level >= 0 && n.level <= depth_ && n.index >= 0 &&
           n.index < (std::int64_t{1} << n.level);
  }

  // Mean of w over the node's interval; O(1) from the bottom-up cache.
  double average(NodeRef n) const;
  double interval_length(NodeRef n) const;

  static NodeRef root() noexcept { return {0, 0}; }
  static NodeRef left(NodeRef n) noexcept { return {n.level + 1, 2 * n.index}; }
  static NodeRef right(NodeRef n) noexcept { return {n.level + 1, 2 * n.index + 1}; }
  static NodeRef parent(NodeRef n) {
    if (n.level <= 0) throw std::invalid_argument("dyw: root has no parent");
    return {n.level - 1, n.index / 2};
  }

  // Flat heap id (1 << level) + index; ids run over [1, 2^{depth+1}).
  std::int64_t node_id(NodeRef n) const;
  std::int64_t node_count() const noexcept { return (std::int64_t{2} << depth_) - 1; }
  NodeRef node_from_id(std::int64_t id) const;

  // Leaf range [first, last) covered by a node.
  std::int64_t first_leaf(NodeRef n) const;
  std::int64_t last_leaf(NodeRef n) const;

 private:
  void check_node(NodeRef n) const;

  int depth_ = 0;
  double root_length_ = 1.0;
  std::vector<double> leaves_;
  std::vector<double> avg_;  // heap-indexed averages; avg_[0] unused
};

// <w>_{left(I)} - <w>_{right(I)} for an internal node I.
double average_delta(const DyadicWeight& w, NodeRef node);

// Largest <w>_parent / <w>_child over all parent/child pairs; 1 for depth 0.
double doubling_constant(const DyadicWeight& w);

// Dyadic maximal function of w restricted to `node`: entry i is the largest
// average among the dyadic intervals J with leaf i of `node` inside J and
// J inside `node`. Size equals the number of leaves under `node`.
std::vector<double> maximal_function(const DyadicWeight& w, NodeRef node);

// Mean of the maximal function above over `node`.
double maximal_average(const DyadicWeight& w, NodeRef node);

// Mean of f(w) over the leaves under one node.
template <class F>
double leaf_average(const DyadicWeight& w, NodeRef node, F&& f) {
  const std::int64_t a = w.first_leaf(node);
  const std::int64_t b = w.last_leaf(node);
  double acc = 0.0;
  for (std::int64_t i = a; i < b; ++i) acc += f(w.leaf(i));
  return acc / static_cast<double>(b - a);
}

// Averages of f(w) over every node, heap-indexed like DyadicWeight ids
// (entry 0 unused). Built bottom-up in one pass.
template <class F>
std::vector<double> profile_averages(const DyadicWeight& w, F&& f) {
  const std::int64_t n_leaves = w.leaf_count();
  std::vector<double> avg(static_cast<std::size_t>(2 * n_leaves), 0.0);
  for (std::int64_t i = 0; i < n_leaves; ++i)
    avg[static_cast<std::size_t>(n_leaves + i)] = f(w.leaf(i));
  for (std::int64_t id = n_leaves - 1; id >= 1; --id)
    avg[static_cast<std::size_t>(id)] =
        0.5 * (avg[static_cast<std::size_t>(2 * id)] +
               avg[static_cast<std::size_t>(2 * id + 1)]);
  return avg;
}

// Applies fn(NodeRef) to every node under (and including) `node`,
// parents before children, left before right.
template <class Fn>
void for_each_node(const DyadicWeight& w, NodeRef top, Fn&& fn) {
  if (!w.contains(top)) throw std::invalid_argument("dyw: node outside tree");
  for (int j = top.level; j <= w.depth(); ++j) {
    const std::int64_t shift = j - top.level;
    const std::int64_t first = top.index << shift;
    const std::int64_t last = (top.index + 1) << shift;
    for (std::int64_t k = first; k < last; ++k) fn(NodeRef{j, k});
  }
}

}  // namespace dyw
