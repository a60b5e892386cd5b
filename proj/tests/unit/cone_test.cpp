#include "vorcycle/cone.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "vorcycle/errors.hpp"

namespace vorcycle {
namespace {

IntVec v(std::initializer_list<long> xs) {
  IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Facets by exhaustion: every (dim-1)-subset of rays of full rank spans a
// hyperplane; keep it when all rays lie on one side.
std::set<RaySet> brute_force_facets(const PolyCone& c) {
  const std::size_t dim = c.ambient_dim(), m = c.ray_count();
  std::set<RaySet> out;
  std::vector<std::size_t> pick(dim - 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == dim - 1) {
      IntMat rows(dim - 1, dim);
      for (std::size_t r = 0; r < dim - 1; ++r)
        for (std::size_t k = 0; k < dim; ++k) rows(r, k) = c.pairing(pick[r])[k];
      auto ker = kernel_basis(rows);
      if (ker.size() != 1) return;
      IntVec normal = primitive(ker[0]);
      bool pos = false, neg = false;
      RaySet zeros;
      for (std::size_t i = 0; i < m; ++i) {
        Int s = 0;
        for (std::size_t k = 0; k < dim; ++k) s += c.pairing(i)[k] * normal[k];
        if (sgn(s) > 0) pos = true;
        if (sgn(s) < 0) neg = true;
        if (sgn(s) == 0) zeros.insert(i);
      }
      if (!(pos && neg)) out.insert(zeros);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::set<RaySet> incident_sets(const std::vector<FacetRec>& fs) {
  std::set<RaySet> out;
  for (const auto& f : fs) out.insert(f.incident);
  return out;
}

void expect_normals_valid(const PolyCone& c, const std::vector<FacetRec>& fs) {
  for (const auto& f : fs) {
    EXPECT_EQ(content(flatten(f.normal)), 1);
    for (std::size_t i = 0; i < c.ray_count(); ++i) {
      Int val = evaluate(f.normal, c.vector(i));
      if (f.incident.contains(i))
        EXPECT_EQ(val, 0);
      else
        EXPECT_GT(val, 0);
    }
    EXPECT_EQ(ray_rank(c, f.incident) + 1, c.ambient_dim());
  }
}

TEST(PolyCone, A2HasThreeRaysAndThreeFacets) {
  auto c = PolyCone::build(minimum_and_minimal_vectors(QForm(IntMat{{2, 1}, {1, 2}})), 2);
  EXPECT_EQ(c.ray_count(), 3u);
  auto fs = facets(c);
  EXPECT_EQ(fs.size(), 3u);
  expect_normals_valid(c, fs);
  // Each facet of the triangle cone drops exactly one ray.
  for (const auto& f : fs) EXPECT_EQ(f.incident.size(), 2u);
}

TEST(PolyCone, A3HasSixRays) {
  auto c = PolyCone::build(minimum_and_minimal_vectors(root_form_a(3)), 3);
  EXPECT_EQ(c.ray_count(), 6u);
  auto fs = facets(c);
  EXPECT_EQ(fs.size(), 6u);
  expect_normals_valid(c, fs);
}

TEST(PolyCone, IdentityFormIsNotFullDimensional) {
  EXPECT_THROW(PolyCone::build(minimum_and_minimal_vectors(QForm(IntMat::identity(2))), 2), NotFullDim);
}

TEST(PolyCone, FindLocatesEitherSign) {
  auto c = PolyCone::build(minimum_and_minimal_vectors(QForm(IntMat{{2, 1}, {1, 2}})), 2);
  EXPECT_GE(c.find(v({-1, 1})), 0);
  EXPECT_EQ(c.find(v({1, 1})), -1);
}

TEST(Facets, D4AgreesWithExhaustiveSearch) {
  auto c = PolyCone::build(minimum_and_minimal_vectors(root_form_d(4)), 4);
  ASSERT_EQ(c.ray_count(), 12u);
  ASSERT_EQ(c.ambient_dim(), 10u);
  auto fs = facets(c);
  expect_normals_valid(c, fs);
  EXPECT_EQ(incident_sets(fs), brute_force_facets(c));
  EXPECT_EQ(incident_sets(fs).size(), fs.size());
}

TEST(Facets, RandomConesAgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coord(-2, 2);
  int checked = 0;
  while (checked < 25) {
    std::set<IntVec> pool;
    std::size_t want = 6 + rng() % 4;
    while (pool.size() < want) {
      IntVec x{coord(rng), coord(rng), coord(rng)};
      if (std::all_of(x.begin(), x.end(), [](const Int& a) { return a == 0; })) continue;
      pool.insert(canonical_sign(primitive(x)));
    }
    auto c = PolyCone::from_vectors({pool.begin(), pool.end()}, 3);
    if (ray_rank(c, c.all()) != c.ambient_dim()) continue;
    // Keep only cones whose listed rays are all extreme.
    std::vector<FacetRec> fs;
    try {
      fs = facets(c);
    } catch (const InvariantViolation&) {
      continue;
    }
    expect_normals_valid(c, fs);
    EXPECT_EQ(incident_sets(fs), brute_force_facets(c));
    ++checked;
  }
}

TEST(DoubleDescription, Orthant) {
  auto rays = double_description(IntMat::identity(3));
  ASSERT_EQ(rays.size(), 3u);
  std::set<IntVec> coords;
  for (const auto& r : rays) coords.insert(r.coords);
  EXPECT_EQ(coords, (std::set<IntVec>{v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}));
}

TEST(DoubleDescription, SquarePyramid) {
  // Cone over a square: four constraints, four extreme rays.
  IntMat a{{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}};
  auto rays = double_description(a);
  EXPECT_EQ(rays.size(), 4u);
  for (const auto& r : rays) EXPECT_EQ(r.zeros.size(), 2u);
}

TEST(MeetsBoundary, Examples) {
  EXPECT_TRUE(meets_boundary({v({1, 0})}, 2));
  EXPECT_FALSE(meets_boundary({v({1, 0}), v({0, 1})}, 2));
  EXPECT_TRUE(meets_boundary({v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})}, 3));
  EXPECT_TRUE(meets_boundary(std::vector<IntVec>{}, 2));
}

TEST(FacesOfCodim, SimplicialConeHasBinomialCount) {
  // A4's cone is simplicial: 10 rays in a 10-dimensional space.
  auto c = PolyCone::build(minimum_and_minimal_vectors(root_form_a(4)), 4);
  ASSERT_EQ(c.ray_count(), c.ambient_dim());
  auto fs = facets(c);
  EXPECT_EQ(fs.size(), 10u);
  EXPECT_EQ(faces_of_codim(c, fs, 1).size(), 10u);
  EXPECT_EQ(faces_of_codim(c, fs, 2).size(), 45u);
  EXPECT_EQ(faces_of_codim(c, fs, 0).size(), 1u);
}

TEST(RaySet, Basics) {
  RaySet s;
  s.insert(3);
  s.insert(100);
  EXPECT_TRUE(s.contains(100));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{3, 100}));
  RaySet t = RaySet::first(5);
  EXPECT_EQ((s & t).indices(), (std::vector<std::size_t>{3}));
  EXPECT_TRUE((s & t).subset_of(t));
  s.erase(3);
  EXPECT_FALSE(s.contains(3));
}

}  // namespace
}  // namespace vorcycle
