#ifndef COINMOTIF_CFTREE_HPP_
#define COINMOTIF_CFTREE_HPP_

#include <cassert>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "coinmotif/cluster.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

/// Height-balanced CF tree in the BIRCH phase-1 style. Leaves are clusters;
/// every node holds at most `branching` children and the field-wise CF sum of
/// its subtree. Lookup descends greedily to the nearest child per level, so
/// the leaf it reaches is not guaranteed to be the globally nearest cluster.
///
/// There is no rebalancing beyond capacity-triggered splits on the insertion
/// path; entries never move between subtrees once placed.
template <typename Scalar>
class CFTree {
 public:
  struct Node {
    ClusterFeature<Scalar> cf;
    Vector<Scalar> centroid;  // cached cf.ls / cf.n
    Node* parent = nullptr;
    std::vector<std::unique_ptr<Node>> kids;
    int clusterId = -1;  // >= 0 on leaves

    bool leaf() const { return clusterId >= 0; }
  };

  explicit CFTree(int branching, Index dim) : branching_(branching), dim_(dim) {
    if (branching < 2) throw InvalidParamsError("cf-tree branching factor must be >= 2");
    root_ = std::make_unique<Node>();
    root_->cf = ClusterFeature<Scalar>(dim);
    root_->centroid = Vector<Scalar>::Zero(dim);
  }

  bool empty() const { return root_->kids.empty(); }
  int branching() const { return branching_; }
  const Node* root() const { return root_.get(); }
  std::size_t clusterCount() const { return leafOf_.size(); }

  /// Greedy nearest-child descent; returns the cluster id of the leaf reached,
  /// or -1 on an empty tree.
  int nearestLeaf(const Vector<Scalar>& point) const {
    if (empty()) return -1;
    const Node* node = root_.get();
    while (!node->leaf()) node = nearestChild(node, point);
    return node->clusterId;
  }

  /// Registers a brand-new cluster seeded at `point`, placing its leaf under
  /// the greedily nearest bottom-level node and splitting on overflow.
  void addCluster(int clusterId, const Vector<Scalar>& point) {
    assert(clusterId == static_cast<int>(leafOf_.size()));
    auto leaf = std::make_unique<Node>();
    leaf->cf = ClusterFeature<Scalar>(dim_);
    leaf->cf.add(point);
    leaf->centroid = point;
    leaf->clusterId = clusterId;
    leafOf_.push_back(leaf.get());

    Node* host = root_.get();
    while (!host->kids.empty() && !host->kids.front()->leaf())
      host = nearestChild(host, point);
    leaf->parent = host;
    host->kids.push_back(std::move(leaf));
    for (Node* a = host; a != nullptr; a = a->parent) {
      a->cf.add(point);
      a->centroid = a->cf.centroid();
    }
    splitUpward(host);
#ifndef NDEBUG
    if ((debugCounter_++ & 0x3f) == 0) assert(additivityHolds(1e-6));
#endif
  }

  /// Adds a point to an existing cluster, updating the leaf and all ancestors.
  void addPoint(int clusterId, const Vector<Scalar>& point) {
    Node* leaf = leafOf_[static_cast<std::size_t>(clusterId)];
    for (Node* a = leaf; a != nullptr; a = a->parent) {
      a->cf.add(point);
      a->centroid = a->cf.centroid();
    }
  }

  /// Field-wise check that every internal node's CF equals the sum of its
  /// children's CFs, within a relative tolerance.
  bool additivityHolds(double tol) const { return checkNode(root_.get(), tol); }

  int height() const {
    int h = 1;
    const Node* node = root_.get();
    while (!node->kids.empty()) {
      node = node->kids.front().get();
      ++h;
    }
    return h;
  }

  bool branchingRespected() const { return branchingRespected(root_.get()); }

 private:
  static Node* nearestChild(const Node* node, const Vector<Scalar>& point) {
    Node* best = nullptr;
    Scalar bestSq = std::numeric_limits<Scalar>::infinity();
    for (const auto& kid : node->kids) {
      const Scalar sq =
          squaredDistance(point.data(), kid->centroid.data(), point.size());
      if (sq < bestSq) {
        bestSq = sq;
        best = kid.get();
      }
    }
    return best;
  }

  void splitUpward(Node* node) {
    while (node != nullptr &&
           node->kids.size() > static_cast<std::size_t>(branching_)) {
      if (node->parent == nullptr) {
        // Root overflow: grow a new root above, then split below it.
        auto newRoot = std::make_unique<Node>();
        newRoot->cf = node->cf;
        newRoot->centroid = node->centroid;
        node->parent = newRoot.get();
        newRoot->kids.push_back(std::move(root_));
        root_ = std::move(newRoot);
      }
      splitNode(node);
      node = node->parent;
    }
  }

  /// Classic BIRCH split: the two farthest children seed two nodes and the
  /// rest join the nearer seed.
  void splitNode(Node* node) {
    auto kids = std::move(node->kids);
    node->kids.clear();

    std::size_t seedA = 0, seedB = 1;
    Scalar worst = -1;
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        const Scalar sq = squaredDistance(kids[i]->centroid.data(),
                                          kids[j]->centroid.data(), dim_);
        if (sq > worst) {
          worst = sq;
          seedA = i;
          seedB = j;
        }
      }

    Node* parent = node->parent;
    auto sibling = std::make_unique<Node>();
    sibling->cf = ClusterFeature<Scalar>(dim_);
    sibling->parent = parent;
    Node* siblingPtr = sibling.get();

    // Seed kids are moved out of `kids` as the loop distributes them, so
    // their centroids must be read up front.
    const Vector<Scalar> centroidA = kids[seedA]->centroid;
    const Vector<Scalar> centroidB = kids[seedB]->centroid;

    node->cf = ClusterFeature<Scalar>(dim_);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      Node* target;
      if (i == seedA) {
        target = node;
      } else if (i == seedB) {
        target = siblingPtr;
      } else {
        const Scalar da = squaredDistance(kids[i]->centroid.data(),
                                          centroidA.data(), dim_);
        const Scalar db = squaredDistance(kids[i]->centroid.data(),
                                          centroidB.data(), dim_);
        target = (db < da) ? siblingPtr : node;
      }
      kids[i]->parent = target;
      target->cf.merge(kids[i]->cf);
      target->kids.push_back(std::move(kids[i]));
    }
    node->centroid = node->cf.centroid();
    siblingPtr->centroid = siblingPtr->cf.centroid();

    // The parent's subtree content is unchanged by a split.
    parent->kids.push_back(std::move(sibling));
  }

  bool checkNode(const Node* node, double tol) const {
    if (node->leaf()) return true;
    ClusterFeature<Scalar> sum(dim_);
    long long n = 0;
    for (const auto& kid : node->kids) {
      if (!checkNode(kid.get(), tol)) return false;
      sum.merge(kid->cf);
      n += kid->cf.n;
    }
    if (node != root_.get() || !node->kids.empty()) {
      if (n != node->cf.n) return false;
      const double scale = std::max<double>(1.0, node->cf.ls.template lpNorm<Eigen::Infinity>());
      if (((sum.ls - node->cf.ls).template lpNorm<Eigen::Infinity>()) > tol * scale)
        return false;
      const double sscale = std::max<double>(1.0, std::abs(node->cf.ss));
      if (std::abs(sum.ss - node->cf.ss) > tol * sscale) return false;
    }
    return true;
  }

  bool branchingRespected(const Node* node) const {
    if (node->kids.size() > static_cast<std::size_t>(branching_)) return false;
    for (const auto& kid : node->kids)
      if (!branchingRespected(kid.get())) return false;
    return true;
  }

  int branching_;
  Index dim_;
  std::unique_ptr<Node> root_;
  std::vector<Node*> leafOf_;
#ifndef NDEBUG
  mutable unsigned debugCounter_ = 0;
#endif
};

}  // namespace coinmotif

#endif  // COINMOTIF_CFTREE_HPP_
