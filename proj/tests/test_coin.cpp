#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <coinmotif/cftree.hpp>
#include <coinmotif/cluster.hpp>
#include <coinmotif/coin.hpp>
#include <coinmotif/lsh.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace coinmotif;

namespace {

RowMatrix<double> rowsOf(const std::vector<std::vector<double>>& data) {
  RowMatrix<double> m(static_cast<Index>(data.size()),
                      data.empty() ? 0 : static_cast<Index>(data[0].size()));
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < data[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = data[i][j];
  return m;
}

Vector<double> vec(const std::vector<double>& v) {
  Vector<double> out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = v[i];
  return out;
}

std::vector<std::vector<Index>> memberships(
    const std::vector<Cluster<double>>& clusters) {
  std::vector<std::vector<Index>> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.members);
  return out;
}

struct BogusStrategy {
  static constexpr bool kScansAll = false;
  std::vector<int> candidates(const Vector<double>&) { return {7}; }
  void onInsert(int, const Vector<double>&, const Vector<double>&, bool) {}
};

}  // namespace

TEST_CASE("cluster feature accumulates count, linear sum, and squared sum") {
  ClusterFeature<double> cf(1);
  cf.add(vec({2.0}));
  CHECK(cf.n == 1);
  CHECK(cf.ls[0] == doctest::Approx(2.0));
  CHECK(cf.ss == doctest::Approx(4.0));

  cf.add(vec({4.0}));
  CHECK(cf.n == 2);
  CHECK(cf.ls[0] == doctest::Approx(6.0));
  CHECK(cf.ss == doctest::Approx(20.0));
  CHECK(cf.centroid()[0] == doctest::Approx(3.0));
}

TEST_CASE("cluster feature merge equals adding every point directly") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 2.0);
  const Index dim = 7;

  ClusterFeature<double> whole(dim), left(dim), right(dim);
  for (int i = 0; i < 100; ++i) {
    Vector<double> p(dim);
    for (Index j = 0; j < dim; ++j) p[j] = gauss(rng);
    whole.add(p);
    (i < 40 ? left : right).add(p);
  }
  left.merge(right);
  CHECK(left.n == whole.n);
  CHECK((left.ls - whole.ls).lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK(std::abs(left.ss - whole.ss) < 1e-9 * std::max(1.0, whole.ss));
}

TEST_CASE("three collinear points split into two clusters with drifting centroid") {
  const auto points = rowsOf({{0.0, 0.0}, {0.1, 0.0}, {10.0, 0.0}});
  CoinParams<double> params;
  params.radius = 1.0;
  const auto clusters = coinCluster(points, params);

  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].members == std::vector<Index>{0, 1});
  CHECK(clusters[0].centroid()[0] == doctest::Approx(0.05));
  CHECK(clusters[0].centroid()[1] == doctest::Approx(0.0));
  CHECK(clusters[1].members == std::vector<Index>{2});
  CHECK(clusters[1].centroid()[0] == doctest::Approx(10.0));
  CHECK(clusters[0].id == 0);
  CHECK(clusters[1].id == 1);
}

TEST_CASE("equidistant candidate joins the lowest cluster id") {
  const auto points = rowsOf({{0.0}, {2.0}, {1.0}});
  CoinParams<double> params;
  params.radius = 1.0;
  const auto clusters = coinCluster(points, params);

  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].members == std::vector<Index>{0, 2});
  CHECK(clusters[1].members == std::vector<Index>{1});
}

TEST_CASE("a point exactly at the radius joins the cluster") {
  const auto points = rowsOf({{0.0}, {1.0}});
  CoinParams<double> params;
  params.radius = 1.0;
  const auto clusters = coinCluster(points, params);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members == std::vector<Index>{0, 1});
}

TEST_CASE("single point and empty input edge cases") {
  CoinParams<double> params;
  params.radius = 0.5;

  const auto one = coinCluster(rowsOf({{3.0, -1.0}}), params);
  REQUIRE(one.size() == 1);
  CHECK(one[0].members == std::vector<Index>{0});
  CHECK(one[0].centroid()[0] == doctest::Approx(3.0));

  RowMatrix<double> empty(0, 4);
  CHECK(coinCluster(empty, params).empty());
}

TEST_CASE("non-positive radius is rejected") {
  const auto points = rowsOf({{0.0}});
  CoinParams<double> params;
  params.radius = 0.0;
  CHECK_THROWS_AS(coinCluster(points, params), InvalidParamsError);
  params.radius = -1.0;
  CHECK_THROWS_AS(coinCluster(points, params), InvalidParamsError);
}

TEST_CASE("out-of-range candidate ids from a strategy are detected") {
  const auto points = rowsOf({{0.0}, {0.1}});
  BogusStrategy bogus;
  CHECK_THROWS_AS(coinClusterWith(points, 1.0, bogus), InvariantViolation);
}

TEST_CASE("accelerator names round-trip and bad names are rejected") {
  CHECK(accelFromString("basic") == Accel::Basic);
  CHECK(accelFromString("birch") == Accel::Birch);
  CHECK(accelFromString("lsh") == Accel::Lsh);
  CHECK(accelName(Accel::Birch) == std::string("birch"));
  CHECK_THROWS_AS(accelFromString("nope"), InvalidParamsError);
  CHECK(defaultLshWidth(2.0) == doctest::Approx(7.0));
}

TEST_CASE("each strategy is deterministic across repeated runs") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RowMatrix<double> points(300, 10);
  for (Index i = 0; i < points.rows(); ++i)
    for (Index j = 0; j < points.cols(); ++j) points(i, j) = gauss(rng);

  for (const Accel accel : {Accel::Basic, Accel::Birch, Accel::Lsh}) {
    CoinParams<double> params;
    params.radius = 1.5;
    params.accel = accel;
    const auto first = memberships(coinCluster(points, params));
    const auto second = memberships(coinCluster(points, params));
    CHECK(first == second);
  }
}

TEST_CASE("well-separated blobs cluster identically under every strategy") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 0.05);
  const std::vector<double> centers = {0.0, 10.0, 20.0};
  RowMatrix<double> points(90, 5);
  for (Index i = 0; i < points.rows(); ++i) {
    const double c = centers[static_cast<std::size_t>(i) % 3];
    for (Index j = 0; j < points.cols(); ++j) points(i, j) = c + gauss(rng);
  }

  CoinParams<double> params;
  params.radius = 1.0;
  params.accel = Accel::Basic;
  const auto basic = memberships(coinCluster(points, params));
  REQUIRE(basic.size() == 3);

  params.accel = Accel::Birch;
  CHECK(memberships(coinCluster(points, params)) == basic);
  params.accel = Accel::Lsh;
  CHECK(memberships(coinCluster(points, params)) == basic);
}

TEST_CASE("float instantiation clusters a small matrix") {
  RowMatrix<float> points(4, 2);
  points << 0.f, 0.f, 0.1f, 0.f, 5.f, 5.f, 5.1f, 5.f;
  for (const Accel accel : {Accel::Basic, Accel::Birch, Accel::Lsh}) {
    CoinParams<float> params;
    params.radius = 1.f;
    params.accel = accel;
    const auto clusters = coinCluster(points, params);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].support() == 2);
    CHECK(clusters[1].support() == 2);
  }
}

TEST_CASE("cf-tree rejects branching below two") {
  CHECK_THROWS_AS(CFTree<double>(1, 3), InvalidParamsError);
}

TEST_CASE("cf-tree keeps additivity and branching under splits") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unif(-50.0, 50.0);
  CFTree<double> tree(3, 2);
  CHECK(tree.empty());
  CHECK(tree.nearestLeaf(vec({0.0, 0.0})) == -1);

  std::vector<Vector<double>> centers;
  for (int id = 0; id < 60; ++id) {
    Vector<double> p(2);
    p << unif(rng), unif(rng);
    tree.addCluster(id, p);
    centers.push_back(p);
  }
  CHECK(tree.clusterCount() == 60);
  CHECK(tree.branchingRespected());
  CHECK(tree.additivityHolds(1e-9));
  CHECK(tree.height() >= 3);

  for (int id = 0; id < 60; id += 7)
    tree.addPoint(id, vec({centers[static_cast<std::size_t>(id)][0] + 0.01,
                           centers[static_cast<std::size_t>(id)][1]}));
  CHECK(tree.additivityHolds(1e-9));

  for (int trial = 0; trial < 50; ++trial) {
    const int leaf = tree.nearestLeaf(vec({unif(rng), unif(rng)}));
    CHECK(leaf >= 0);
    CHECK(leaf < 60);
  }
}

TEST_CASE("flat cf-tree lookup matches brute-force nearest centroid") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 3.0);
  const Index dim = 4;
  CFTree<double> tree(50, dim);
  std::vector<Vector<double>> centers;
  for (int id = 0; id < 20; ++id) {
    Vector<double> p(dim);
    for (Index j = 0; j < dim; ++j) p[j] = gauss(rng);
    tree.addCluster(id, p);
    centers.push_back(p);
  }

  for (int trial = 0; trial < 100; ++trial) {
    Vector<double> q(dim);
    for (Index j = 0; j < dim; ++j) q[j] = gauss(rng);
    int best = -1;
    double bestSq = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 20; ++c) {
      const double sq =
          squaredDistance(q.data(), centers[static_cast<std::size_t>(c)].data(), dim);
      if (sq < bestSq) {
        bestSq = sq;
        best = c;
      }
    }
    CHECK(tree.nearestLeaf(q) == best);
  }
}

TEST_CASE("greedy descent can return a leaf that is not globally nearest") {
  CFTree<double> tree(2, 1);
  tree.addCluster(0, vec({0.0}));
  tree.addCluster(1, vec({100.0}));
  tree.addCluster(2, vec({49.0}));
  CHECK(tree.height() == 3);
  CHECK(tree.branchingRespected());

  // Cluster 2 at 49 is globally nearest to 65, but the top level routes the
  // query toward the 100-side node.
  CHECK(tree.nearestLeaf(vec({65.0})) == 1);
  CHECK(tree.nearestLeaf(vec({10.0})) == 0);
}

TEST_CASE("hash index returns deterministic sorted unique candidates") {
  LshIndex<double> index(3, 3, 5, 3.5, 9);
  CHECK(index.candidates(vec({0.0, 0.0, 0.0})).empty());

  const auto p = vec({0.2, -0.4, 1.0});
  index.registerCluster(0, p);
  index.registerCluster(1, p);
  index.registerCluster(2, p);
  const auto got = index.candidates(p);
  CHECK(got == std::vector<int>{0, 1, 2});

  LshIndex<double> other(3, 3, 5, 3.5, 9);
  CHECK(other.bucketKeys(p) == index.bucketKeys(p));
  other.registerCluster(0, p);
  other.registerCluster(1, p);
  other.registerCluster(2, p);
  CHECK(other.candidates(p) == got);
}

TEST_CASE("moved centroid is found at its new position") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss(0.0, 1.0);
  LshIndex<double> index(6, 3, 5, 3.5, 13);

  Vector<double> a(6), b(6);
  for (Index j = 0; j < 6; ++j) {
    a[j] = gauss(rng);
    b[j] = a[j] + 40.0;
  }
  index.registerCluster(0, a);
  index.updateCluster(0, b);
  const auto got = index.candidates(b);
  CHECK(std::find(got.begin(), got.end(), 0) != got.end());
}

TEST_CASE("hash candidate recall stays high within the query radius") {
  // Width 3.5 with radius 1: per-hash collision odds at the full radius are
  // about 0.84, so five 3-hash tables keep the miss rate near one percent.
  std::mt19937_64 rng(67);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Index dim = 10;
  const int trials = 2000;

  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    LshIndex<double> index(dim, 3, 5, 3.5, static_cast<std::uint64_t>(t + 1));
    Vector<double> center(dim), dir(dim);
    for (Index j = 0; j < dim; ++j) {
      center[j] = 4.0 * gauss(rng);
      dir[j] = gauss(rng);
    }
    dir /= dir.norm();
    const double u = std::max(1e-3, unif(rng));
    index.registerCluster(0, center);
    const auto got = index.candidates(center + u * dir);
    if (!got.empty() && got[0] == 0) ++hits;
  }
  CHECK(static_cast<double>(hits) / trials >= 0.95);
}
