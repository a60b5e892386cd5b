#include "vorcycle/complex.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "test_support.hpp"
#include "vorcycle/errors.hpp"

namespace vorcycle {
namespace {

using testing_support::random_unimodular;

std::set<IntMat> matrices(const std::vector<GroupElement>& gs) {
  std::set<IntMat> out;
  for (const auto& g : gs) out.insert(g.matrix());
  return out;
}

const VoronoiGraph& graph(std::size_t n) {
  static std::map<std::size_t, VoronoiGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_perfect_forms(n)).first;
  return it->second;
}

const VoronoiComplex& complex_of(std::size_t n, GroupKind kind) {
  static std::map<std::pair<std::size_t, GroupKind>, VoronoiComplex> cache;
  auto key = std::make_pair(n, kind);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_complex(graph(n), kind)).first;
  return it->second;
}

bool all_zero(const IntMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) return false;
  return true;
}

// Determinant of X -> g X g^T written out on the full n x n matrix space and
// restricted to the symmetric part by pairing e_ij + e_ji.
int action_sign_oracle(const GroupElement& g) {
  const std::size_t n = g.dim();
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) coords.emplace_back(i, j);
  const IntMat& a = g.matrix();
  IntMat m(coords.size(), coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    auto [p, q] = coords[k];
    IntMat x(n, n);
    x(p, q) = 1;
    x(q, p) = 1;
    IntMat y = a * x * a.transpose();
    for (std::size_t r = 0; r < coords.size(); ++r) m(r, k) = y(coords[r].first, coords[r].second);
  }
  return sgn(determinant(m));
}

TEST(ActionOrientation, MatchesDeterminantPower) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 5; ++n)
    for (int t = 0; t < 100; ++t) {
      GroupElement g = random_unimodular(rng, n);
      const int expected = (n + 1) % 2 == 0 ? 1 : g.det();
      EXPECT_EQ(to_int(action_orientation(g)), expected);
      EXPECT_EQ(action_sign_oracle(g), expected);
    }
}

TEST(Complex, DimensionTwo) {
  const auto& sl = complex_of(2, GroupKind::SL);
  ASSERT_EQ(sl.cells.size(), 1u);
  ASSERT_EQ(sl.facet_classes.size(), 1u);
  EXPECT_EQ(sl.facet_classes[0].kind, FacetKind::SelfIntersecting);
  EXPECT_FALSE(sl.facet_classes[0].in_sigma);
  EXPECT_EQ(sl.top_sigma.size(), 1u);
  EXPECT_TRUE(sl.facet_sigma.empty());
  EXPECT_EQ(sl.top.rows, 0u);
  EXPECT_EQ(sl.cells[0].stabilizer.size(), 6u);
  // The GL stabilizer of A2 contains orientation reversing elements.
  EXPECT_TRUE(complex_of(2, GroupKind::GL).top_sigma.empty());
}

TEST(Complex, DimensionThreeHasNoFacetsInSigma) {
  for (GroupKind kind : {GroupKind::GL, GroupKind::SL}) {
    const auto& c = complex_of(3, kind);
    EXPECT_EQ(c.cells.size(), 1u);
    EXPECT_EQ(c.top_sigma.size(), 1u);
    EXPECT_TRUE(c.facet_sigma.empty());
  }
}

TEST(Complex, SelfIntersectingClassesOutsideSigmaHaveOneSide) {
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    const auto& c = complex_of(n, GroupKind::SL);
    for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
      const auto& cls = c.facet_classes[t];
      if (cls.kind != FacetKind::SelfIntersecting) continue;
      EXPECT_EQ(cls.in_sigma, cls.sides.size() == 2) << "n=" << n;
      if (cls.in_sigma)
        for (std::size_t k = 0; k < c.cells.size(); ++k) EXPECT_EQ(incidence(c, k, t), 0) << "n=" << n;
    }
  }
}

void expect_row_structure(const VoronoiComplex& c) {
  IntMat a = c.top.dense();
  for (std::size_t r = 0; r < c.facet_sigma.size(); ++r) {
    const auto& cls = c.facet_classes[c.facet_sigma[r]];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(r, j)) != 0) nonzero.push_back(j);
    if (cls.kind == FacetKind::SelfIntersecting) {
      EXPECT_TRUE(nonzero.empty());
      continue;
    }
    ASSERT_EQ(nonzero.size(), 2u);
    EXPECT_EQ(sgn(a(r, nonzero[0])), -sgn(a(r, nonzero[1])));
    for (auto j : nonzero) {
      const auto& cell = c.cells[c.top_sigma[j]];
      EXPECT_EQ(cell.stabilizer.size() % cls.stabilizer.size(), 0u);
      EXPECT_EQ(abs(a(r, j)), Int(cell.stabilizer.size() / cls.stabilizer.size()));
    }
  }
}

TEST(Complex, DimensionFourSl) {
  const auto& c = complex_of(4, GroupKind::SL);
  EXPECT_EQ(c.cells.size(), 2u);
  EXPECT_EQ(c.top_sigma.size(), 2u);
  EXPECT_EQ(c.facet_sigma.size(), 1u);
  expect_row_structure(c);
  EXPECT_TRUE(complex_of(4, GroupKind::GL).top_sigma.empty());
}

TEST(Complex, DimensionFiveGl) {
  const auto& c = complex_of(5, GroupKind::GL);
  EXPECT_EQ(c.cells.size(), 3u);
  EXPECT_EQ(c.top_sigma.size(), 3u);
  expect_row_structure(c);
}

TEST(Complex, FacetClassesTouchBothSides) {
  for (std::size_t n : {2u, 3u, 4u})
    for (GroupKind kind : {GroupKind::GL, GroupKind::SL}) {
      const auto& c = complex_of(n, kind);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
        EXPECT_EQ(classify_facet(c, t), c.facet_classes[t].kind);
        for (const auto& s : c.facet_classes[t].sides) EXPECT_TRUE(seen.insert({s.cell, s.orbit}).second);
      }
      std::size_t orbits = 0;
      for (const auto& cell : c.cells) orbits += cell.facet_orbits.count();
      EXPECT_EQ(seen.size(), orbits);
    }
}

TEST(SelfIntersection, PaperExampleInDimensionTwo) {
  std::vector<IntVec> sigma{IntVec{1, 0}, IntVec{0, 1}, IntVec{1, -1}};
  GroupElement gamma(IntMat{{1, 0}, {0, -1}});
  auto stab = facet_stabilizer({IntVec{1, 0}, IntVec{0, 1}}, GroupKind::GL);
  EXPECT_EQ(stab.size(), 8u);
  auto split = split_facet_stabilizer(sigma, gamma, stab);
  EXPECT_TRUE(split.other.empty());
  std::set<IntMat> fixing{IntMat{{1, 0}, {0, 1}}, IntMat{{-1, 0}, {0, -1}}, IntMat{{0, 1}, {1, 0}},
                          IntMat{{0, -1}, {-1, 0}}};
  std::set<IntMat> swapping{IntMat{{1, 0}, {0, -1}}, IntMat{{-1, 0}, {0, 1}}, IntMat{{0, 1}, {-1, 0}},
                            IntMat{{0, -1}, {1, 0}}};
  EXPECT_EQ(matrices(split.fixing), fixing);
  EXPECT_EQ(matrices(split.swapping), swapping);
}

TEST(Epsilon, IndependentOfOffFacetRayAndFlipsOnSwap) {
  const auto& c = complex_of(4, GroupKind::SL);
  for (const auto& cell : c.cells)
    for (const auto& f : cell.facets) {
      auto on = vectors_of(cell.cone, f.incident);
      auto idx = independent_rows(rank_one_rows(on));
      std::vector<IntVec> basis;
      for (auto i : idx) basis.push_back(on[i]);
      std::optional<Sign> first;
      for (std::size_t r = 0; r < cell.cone.ray_count(); ++r) {
        if (f.incident.contains(r)) continue;
        Sign s = epsilon(cell, f.incident, basis, cell.cone.vector(r));
        if (!first) first = s;
        EXPECT_EQ(s, *first);
      }
      std::swap(basis[0], basis[1]);
      std::size_t off = 0;
      while (f.incident.contains(off)) ++off;
      EXPECT_EQ(epsilon(cell, f.incident, basis, cell.cone.vector(off)), -*first);
      std::size_t on_ray = *f.incident.indices().begin();
      EXPECT_THROW(epsilon(cell, f.incident, basis, cell.cone.vector(on_ray)), InvariantViolation);
    }
}

TEST(Eta, AgreesWithSigmaFilter) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto& c = complex_of(n, GroupKind::SL);
    const GroupElement id = GroupElement::identity(n);
    for (const auto& cls : c.facet_classes) {
      bool all_positive = true;
      for (const auto& s : cls.stabilizer) all_positive &= eta(cls, s, id) == Sign::Positive;
      EXPECT_EQ(all_positive, cls.in_sigma);
    }
  }
}

TEST(Eta, WitnessIndependentForSigmaClasses) {
  const auto& c = complex_of(4, GroupKind::SL);
  std::mt19937_64 rng(8);
  for (auto t : c.facet_sigma) {
    const auto& cls = c.facet_classes[t];
    for (int k = 0; k < 20; ++k) {
      GroupElement u = random_unimodular(rng, 4);
      const auto& s = cls.stabilizer[rng() % cls.stabilizer.size()];
      EXPECT_EQ(eta(cls, u * s, u), Sign::Positive);
    }
  }
}

TEST(Eta, RejectsMismatchedWitnesses) {
  const auto& c = complex_of(4, GroupKind::SL);
  const auto& cls = c.facet_classes[0];
  GroupElement id = GroupElement::identity(4);
  GroupElement shear(IntMat{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  bool threw = false;
  try {
    eta(cls, shear, id);
  } catch (const WitnessMismatch&) {
    threw = true;
  }
  bool same = matrices(cls.stabilizer).count(shear.matrix()) > 0;
  EXPECT_NE(threw, same);
}

TEST(Lemmas, HoldForSmallDimensions) {
  for (std::size_t n : {2u, 3u, 4u, 5u})
    for (GroupKind kind : {GroupKind::GL, GroupKind::SL})
      for (const auto& chk : check_lemmas(complex_of(n, kind)))
        EXPECT_TRUE(chk.ok) << "n=" << n << " " << to_string(kind) << " " << chk.name << ": " << chk.detail;
}

TEST(Lemmas, OrientationPreservingKeepsNonSelfClasses) {
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto& c = complex_of(n, GroupKind::SL);
    for (const auto& cls : c.facet_classes)
      if (cls.kind == FacetKind::NonSelfIntersecting) EXPECT_TRUE(cls.in_sigma);
  }
}

TEST(DoubleBoundary, VanishesUpToDimensionFour) {
  for (std::size_t n : {2u, 3u, 4u})
    for (GroupKind kind : {GroupKind::GL, GroupKind::SL}) {
      const auto& c = complex_of(n, kind);
      auto low = differential_lower(c);
      EXPECT_TRUE(all_zero(compose(low.lower, c.top)));
      EXPECT_TRUE(dd_sanity(c));
    }
}

TEST(DoubleBoundary, LocalBoundaryOfEveryCell) {
  const auto& c = complex_of(4, GroupKind::GL);
  for (const auto& cell : c.cells) {
    auto lb = local_boundary(cell);
    EXPECT_EQ(lb.outer.entries.size(), cell.facets.size());
    IntMat p = compose(lb.inner, lb.outer);
    EXPECT_TRUE(all_zero(p));
    // Every codim-2 face lies in exactly two facets.
    IntMat inner = lb.inner.dense();
    for (std::size_t r = 0; r < inner.rows(); ++r) {
      int count = 0;
      for (std::size_t f = 0; f < inner.cols(); ++f) count += sgn(inner(r, f)) != 0;
      EXPECT_EQ(count, 2);
    }
  }
}

TEST(DoubleBoundary, SignCorruptionIsDetected) {
  const auto& c = complex_of(4, GroupKind::GL);
  auto lb = local_boundary(c.cells[0]);
  ASSERT_FALSE(lb.inner.entries.empty());
  auto& v = std::get<2>(lb.inner.entries[3]);
  v = -v;
  EXPECT_FALSE(all_zero(compose(lb.inner, lb.outer)));
}

TEST(Incidence, RejectsBadIndices) {
  const auto& c = complex_of(2, GroupKind::SL);
  EXPECT_THROW(incidence(c, 5, 0), IndexOutOfRange);
  EXPECT_THROW(classify_facet(c, 9), IndexOutOfRange);
}

}  // namespace
}  // namespace vorcycle
