#include "vorcycle/perfect.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "test_support.hpp"
#include "vorcycle/errors.hpp"

namespace vorcycle {
namespace {

using testing_support::random_unimodular;

std::set<IntVec> pair_set(const std::vector<IntVec>& vs) {
  std::set<IntVec> out;
  for (const auto& v : vs) out.insert(canonical_sign(v));
  return out;
}

std::set<IntVec> image_set(const GroupElement& g, const std::vector<IntVec>& vs) {
  std::set<IntVec> out;
  for (const auto& v : vs) out.insert(canonical_sign(g.apply(v)));
  return out;
}

std::set<IntMat> matrices(const std::vector<GroupElement>& gs) {
  std::set<IntMat> out;
  for (const auto& g : gs) out.insert(g.matrix());
  return out;
}

const QForm kPaperA2(IntMat{{2, 1}, {1, 2}});

TEST(Neighbor, A2NeighboursAreA2) {
  for (const QForm& h : {kPaperA2, root_form_a(2)}) {
    auto rep = make_rep(h);
    ASSERT_EQ(rep.facets.size(), 3u);
    for (const auto& f : rep.facets) {
      QForm nb = neighbor(rep, f);
      EXPECT_NE(nb, rep.form);
      EXPECT_TRUE(is_equivalent(nb, h).has_value());
      // The two domains meet exactly in the facet.
      auto m2 = minimum_and_minimal_vectors(nb);
      std::set<IntVec> common;
      auto a = pair_set(rep.minvecs.vectors), b = pair_set(m2.vectors);
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(common, common.end()));
      EXPECT_EQ(common, pair_set(vectors_of(rep.domain, f.incident)));
    }
  }
}

TEST(Neighbor, A2AcrossSquareFacetIsReflection) {
  // Paper's sigma_2 across {e1, e2}: the opposite cell is diag(1,-1) . sigma_2.
  auto rep = make_rep(kPaperA2);
  for (const auto& f : rep.facets) {
    if (pair_set(vectors_of(rep.domain, f.incident)) != pair_set({IntVec{1, 0}, IntVec{0, 1}})) continue;
    QForm nb = neighbor(rep, f);
    GroupElement gamma(IntMat{{1, 0}, {0, -1}});
    EXPECT_EQ(nb.gram(), QForm(act(gamma, kPaperA2.gram())).gram());
  }
}

TEST(Neighbor, A3NeighboursAreA3) {
  auto rep = make_rep(root_form_a(3));
  EXPECT_EQ(rep.facets.size(), 6u);
  for (const auto& f : rep.facets) EXPECT_TRUE(is_equivalent(neighbor(rep, f), root_form_a(3)).has_value());
}

TEST(Neighbor, D4AndA4AreAdjacent) {
  auto d4 = make_rep(root_form_d(4));
  auto a4 = make_rep(root_form_a(4));
  bool d4_to_a4 = false, a4_to_d4 = false;
  for (const auto& f : d4.facets) d4_to_a4 |= is_equivalent(neighbor(d4, f), a4.form).has_value();
  for (const auto& f : a4.facets) a4_to_d4 |= is_equivalent(neighbor(a4, f), d4.form).has_value();
  EXPECT_TRUE(d4_to_a4);
  EXPECT_TRUE(a4_to_d4);
}

TEST(Neighbor, BoundaryFacetThrows) {
  auto rep = make_rep(kPaperA2);
  // A supporting hyperplane touching only e1 e1^T.
  FacetRec fake{IntMat{{0, 0}, {0, 1}}, RaySet{}};
  EXPECT_THROW(neighbor(rep, fake), BoundaryFacet);
}

TEST(IsEquivalent, Basics) {
  auto self = is_equivalent(root_form_a(3), root_form_a(3));
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(act(self->g, root_form_a(3).gram()), root_form_a(3).gram());
  EXPECT_FALSE(is_equivalent(root_form_a(4), root_form_d(4)).has_value());
  EXPECT_EQ(minimum_and_minimal_vectors(root_form_a(4)).vectors.size(), 10u);
  EXPECT_EQ(minimum_and_minimal_vectors(root_form_d(4)).vectors.size(), 12u);
}

TEST(IsEquivalent, RespectsConjugation) {
  std::mt19937_64 rng(5);
  const QForm a4 = root_form_a(4), d4 = root_form_d(4);
  for (int t = 0; t < 10; ++t) {
    GroupElement u = random_unimodular(rng, 4), v = random_unimodular(rng, 4);
    QForm ua(act(u, a4.gram())), va(act(v, a4.gram())), vd(act(v, d4.gram()));
    auto w = is_equivalent(ua, va);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(act(w->g, ua.gram()), va.gram());
    EXPECT_FALSE(is_equivalent(ua, vd).has_value());
  }
}

TEST(Stabilizer, OrdersOfSmallRootForms) {
  auto a2 = make_rep(kPaperA2);
  EXPECT_EQ(stabilizer(a2, GroupKind::GL).size(), 12u);
  EXPECT_EQ(stabilizer(a2, GroupKind::SL).size(), 6u);
  auto a4 = make_rep(root_form_a(4));
  auto d4 = make_rep(root_form_d(4));
  EXPECT_EQ(stabilizer(a4, GroupKind::GL).size(), 240u);
  EXPECT_EQ(stabilizer(d4, GroupKind::GL).size(), 1152u);
  EXPECT_EQ(stabilizer(a4, GroupKind::SL).size(), 120u);
  EXPECT_EQ(stabilizer(d4, GroupKind::SL).size(), 576u);
  for (const auto* rep : {&a2, &a4, &d4}) {
    EXPECT_EQ(rep->stabilizer.size() % 2, 0u);
    EXPECT_TRUE(matrices(rep->stabilizer).count(GroupElement::identity(rep->form.n()).matrix()));
    IntMat minus = IntMat::identity(rep->form.n());
    for (std::size_t i = 0; i < minus.rows(); ++i) minus(i, i) = -1;
    EXPECT_TRUE(matrices(rep->stabilizer).count(minus));
  }
}

TEST(Stabilizer, InvariantUnderEquivalence) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    GroupElement u = random_unimodular(rng, 3);
    auto rep = make_rep(QForm(act(u, root_form_a(3).gram())));
    EXPECT_EQ(rep.stabilizer.size(), 48u);
  }
}

TEST(FacetStabilizer, SquareFaceIsOrthogonalGroup) {
  auto gs = facet_stabilizer({IntVec{1, 0}, IntVec{0, 1}}, GroupKind::GL);
  std::set<IntMat> o2;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      o2.insert(IntMat{{a, 0}, {0, b}});
      o2.insert(IntMat{{0, a}, {b, 0}});
    }
  EXPECT_EQ(matrices(gs), o2);
}

TEST(FacetStabilizer, WholeCellGivesCellStabilizer) {
  auto rep = make_rep(root_form_a(3));
  EXPECT_EQ(matrices(facet_stabilizer(rep.minvecs.vectors, GroupKind::GL)), matrices(rep.stabilizer));
}

TEST(FacetStabilizer, PaperIntersectionOfCellStabilizers) {
  auto rep = make_rep(kPaperA2);
  GroupElement gamma(IntMat{{1, 0}, {0, -1}});
  auto other = image_set(gamma, rep.minvecs.vectors);
  std::set<IntMat> both;
  for (const auto& g : rep.stabilizer)
    if (image_set(g, std::vector<IntVec>(other.begin(), other.end())) == other) both.insert(g.matrix());
  std::set<IntMat> expected{IntMat{{1, 0}, {0, 1}}, IntMat{{-1, 0}, {0, -1}}, IntMat{{0, 1}, {1, 0}},
                            IntMat{{0, -1}, {-1, 0}}};
  EXPECT_EQ(both, expected);
}

TEST(CanonicalRepresentative, StaysInClass) {
  std::mt19937_64 rng(2);
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    GroupElement u = random_unimodular(rng, 4);
    QForm h(act(u, root_form_d(4).gram()));
    QForm c = canonical_representative(h, seed);
    EXPECT_TRUE(is_equivalent(c, root_form_d(4)).has_value());
    EXPECT_EQ(c, canonical_representative(h, seed));
  }
}

void expect_graph_consistent(const VoronoiGraph& g) {
  std::size_t facet_total = 0;
  for (const auto& node : g.nodes) facet_total += node.facets.size();
  ASSERT_EQ(g.edges.size(), facet_total);
  for (const auto& e : g.edges) {
    const auto& from = g.nodes[e.from];
    const auto& to = g.nodes[e.to];
    auto here = pair_set(from.minvecs.vectors);
    auto there = image_set(e.witness, to.minvecs.vectors);
    std::set<IntVec> common;
    std::set_intersection(here.begin(), here.end(), there.begin(), there.end(), std::inserter(common, common.end()));
    EXPECT_EQ(common, pair_set(vectors_of(from.domain, from.facets[e.facet].incident)));
    EXPECT_FALSE(meets_boundary(from.domain, from.facets[e.facet].incident));
  }
}

TEST(Enumerate, SmallDimensions) {
  for (std::size_t n : {2u, 3u}) {
    auto g = enumerate_perfect_forms(n);
    ASSERT_EQ(g.nodes.size(), 1u);
    EXPECT_EQ(g.nodes[0].name, "A" + std::to_string(n));
    EXPECT_EQ(class_count(g, GroupKind::SL), 1u);
    expect_graph_consistent(g);
  }
}

TEST(Enumerate, DimensionFour) {
  auto g = enumerate_perfect_forms(4);
  ASSERT_EQ(g.nodes.size(), 2u);
  std::set<std::string> names{g.nodes[0].name, g.nodes[1].name};
  EXPECT_EQ(names, (std::set<std::string>{"A4", "D4"}));
  EXPECT_EQ(class_count(g, GroupKind::SL), 2u);
  expect_graph_consistent(g);
}

// Invariants of the class list that do not depend on the representatives.
std::multiset<std::pair<std::size_t, std::size_t>> fingerprint(const VoronoiGraph& g) {
  std::multiset<std::pair<std::size_t, std::size_t>> out;
  for (const auto& node : g.nodes) out.insert({node.minvecs.vectors.size(), node.stabilizer.size()});
  return out;
}

TEST(Enumerate, DimensionFiveAgreesAcrossTraversals) {
  auto g = enumerate_perfect_forms(5);
  EXPECT_EQ(g.nodes.size(), 3u);
  expect_graph_consistent(g);
  auto other = enumerate_perfect_forms(5, EnumerationOptions{12345});
  EXPECT_EQ(fingerprint(g), fingerprint(other));
  // Every class of one run is equivalent to exactly one class of the other.
  for (const auto& a : g.nodes) {
    int matches = 0;
    for (const auto& b : other.nodes) matches += is_equivalent(a.form, b.form).has_value();
    EXPECT_EQ(matches, 1);
  }
}

TEST(Enumerate, StabGroupsIndexOnFacetOrbits) {
  auto g = enumerate_perfect_forms(4);
  for (const auto& node : g.nodes) {
    std::vector<RaySet> faces;
    for (const auto& f : node.facets) faces.push_back(f.incident);
    auto orbits = face_orbits(node.domain, faces, node.stabilizer);
    std::map<std::size_t, std::size_t> sizes;
    for (auto o : orbits.orbit_of) ++sizes[o];
    for (std::size_t o = 0; o < orbits.count(); ++o) {
      const RaySet& rep = faces[orbits.representative[o]];
      std::size_t fixing = 0;
      for (const auto& s : node.stabilizer) fixing += image_of(s, node.domain, rep) == rep;
      EXPECT_EQ(sizes[o] * fixing, node.stabilizer.size());
    }
  }
}

}  // namespace
}  // namespace vorcycle
