#include "vorcycle/tess.hpp"

#include <gtest/gtest.h>

#include <random>

#include "vorcycle/errors.hpp"
#include "vorcycle/homology.hpp"

namespace vorcycle {
namespace {

RatVec ones(std::size_t k) { return RatVec(k, Rat(1)); }

bool proportional_to_ones(const RatVec& v) {
  return !v.empty() && sgn(v[0]) != 0 && std::all_of(v.begin(), v.end(), [&](const Rat& x) { return x == v[0]; });
}

TEST(SectorFan, ShapeAndKernel) {
  for (std::size_t k : {2u, 3u, 5u, 8u}) {
    auto inst = sector_fan(k);
    EXPECT_EQ(inst.tiles.size(), k);
    EXPECT_EQ(inst.facets.size(), k - 1);
    for (const auto& v : weighted_boundary(inst, ones(k))) EXPECT_EQ(v, 0);
    auto verdict = check_general_theorem(inst);
    EXPECT_TRUE(verdict.holds());
    EXPECT_TRUE(verdict.connected());
    ASSERT_EQ(verdict.kernel_dim, 1u);
    EXPECT_TRUE(proportional_to_ones(verdict.kernel_basis[0]));
  }
}

TEST(SectorFan, HandMatrixForFive) {
  // Row i is e_i - e_{i+1}; the all-ones vector is the only kernel direction.
  auto inst = sector_fan(5);
  for (std::size_t i = 0; i < 4; ++i) {
    RatVec e(5);
    e[i] = 1;
    auto b = weighted_boundary(inst, e);
    for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(b[r], r == i ? 1 : (r + 1 == i ? -1 : 0));
  }
}

TEST(SectorFan, EqualSignsBreakTheVerdict) {
  auto inst = sector_fan(2);
  inst.facets[0].incidences[1].value = 1;
  auto verdict = check_general_theorem(inst);
  EXPECT_FALSE(verdict.holds());
  ASSERT_EQ(verdict.kernel_dim, 1u);
  EXPECT_EQ(verdict.kernel_basis[0][0], -verdict.kernel_basis[0][1]);
}

TEST(SectorFan, EveryInstanceHasAMutation) {
  for (std::size_t k : {2u, 3u, 5u, 8u}) {
    auto inst = sector_fan(k);
    auto& v = inst.facets[k / 2 - 1].incidences[0].value;
    v = -v;
    EXPECT_FALSE(check_general_theorem(inst).holds());
  }
}

TEST(WeightedBoundary, LinearAndZeroOnZero) {
  auto inst = sector_fan(5);
  for (const auto& v : weighted_boundary(inst, RatVec(5))) EXPECT_EQ(v, 0);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    RatVec a(5), b(5), sum(5);
    for (std::size_t i = 0; i < 5; ++i) {
      a[i] = Rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
      b[i] = Rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
      a[i].canonicalize();
      b[i].canonicalize();
      sum[i] = a[i] + 3 * b[i];
    }
    auto wa = weighted_boundary(inst, a), wb = weighted_boundary(inst, b), ws = weighted_boundary(inst, sum);
    for (std::size_t r = 0; r < ws.size(); ++r) EXPECT_EQ(ws[r], wa[r] + 3 * wb[r]);
  }
  EXPECT_THROW(weighted_boundary(inst, RatVec(4)), IndexOutOfRange);
}

TEST(Validate, RejectsBrokenHypotheses) {
  auto inst = sector_fan(3);
  inst.facets[0].incidences[0].tile = 9;
  EXPECT_THROW(validate(inst), IndexOutOfRange);
  inst = sector_fan(3);
  inst.tiles[1].stabilizer_order = 0;
  EXPECT_THROW(validate(inst), InvariantViolation);
  inst = sector_fan(3);
  inst.facets[0].incidences.push_back(IncidenceRecord{2, 1});
  EXPECT_THROW(validate(inst), InvariantViolation);
  inst = sector_fan(3);
  inst.facets[0].incidences[0].value = 2;
  EXPECT_THROW(validate(inst), InvariantViolation);
}

TEST(Components, DisconnectedInstanceIsReportedPerComponent) {
  auto a = sector_fan(2), b = sector_fan(3);
  TessInstance both = a;
  for (auto t : b.tiles) both.tiles.push_back(t);
  for (auto f : b.facets) {
    for (auto& r : f.incidences) r.tile += 2;
    both.facets.push_back(f);
  }
  for (auto [x, y] : b.adjacency) both.adjacency.emplace_back(x + 2, y + 2);
  auto verdict = check_general_theorem(both);
  EXPECT_FALSE(verdict.connected());
  EXPECT_EQ(verdict.components.size(), 2u);
  EXPECT_EQ(verdict.kernel_dim, 2u);
  EXPECT_TRUE(verdict.holds());
}

TEST(FromVoronoi, AgreesWithDirectVerification) {
  for (std::size_t n : {2u, 3u, 4u})
    for (GroupKind kind : {GroupKind::GL, GroupKind::SL}) {
      auto c = build_complex(enumerate_perfect_forms(n), kind);
      auto inst = from_voronoi(c);
      auto verdict = check_general_theorem(inst);
      auto report = verify(c);
      EXPECT_EQ(verdict.kernel_dim, report.kernel_dim) << n;
      EXPECT_EQ(verdict.holds(), report.verified()) << n;
      if (n == 2) {
        std::size_t kept = 0;
        for (const auto& f : inst.facets) kept += f.orientation_kept;
        EXPECT_EQ(kept, 0u);
      }
      if (n == 4) EXPECT_EQ(inst.tiles.size(), 2u);
    }
}

TEST(FromVoronoi, CanonicalWeightsAnnihilateAndMutationFails) {
  auto c = build_complex(enumerate_perfect_forms(4), GroupKind::SL);
  auto inst = from_voronoi(c);
  RatVec w(inst.tiles.size());
  for (std::size_t t = 0; t < w.size(); ++t) w[t] = Rat(1, inst.tiles[t].stabilizer_order);
  for (const auto& v : weighted_boundary(inst, w)) EXPECT_EQ(v, 0);
  for (auto& f : inst.facets)
    if (!f.incidences.empty()) {
      f.incidences[0].value = -f.incidences[0].value;
      break;
    }
  EXPECT_FALSE(check_general_theorem(inst).holds());
}

}  // namespace
}  // namespace vorcycle
