#include "vorcycle/isometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "test_support.hpp"
#include "vorcycle/errors.hpp"

namespace vorcycle {
namespace {

using testing_support::random_unimodular;

// Every unimodular matrix with entries in [-box, box] satisfying g^T q g = q.
std::set<IntMat> brute_force_automorphisms(const IntMat& q, int box, GroupKind kind) {
  const std::size_t n = q.rows();
  std::set<IntMat> out;
  IntMat g(n, n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n * n) {
      Int d = determinant(g);
      if (d != 1 && (kind == GroupKind::SL || d != -1)) return;
      if (g.transpose() * q * g == q) out.insert(g);
      return;
    }
    for (int v = -box; v <= box; ++v) {
      g(k / n, k % n) = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

std::set<IntMat> matrices(const std::vector<GroupElement>& gs) {
  std::set<IntMat> out;
  for (const auto& g : gs) out.insert(g.matrix());
  return out;
}

MarkedSet marking_of(const QForm& h) { return form_marking(h, minimum_and_minimal_vectors(h)); }

TEST(Automorphisms, A2MatchesBruteForce) {
  QForm a2(IntMat{{2, 1}, {1, 2}});
  auto gl = automorphisms(marking_of(a2), GroupKind::GL);
  auto sl = automorphisms(marking_of(a2), GroupKind::SL);
  EXPECT_EQ(gl.size(), 12u);
  EXPECT_EQ(sl.size(), 6u);
  EXPECT_EQ(matrices(gl), brute_force_automorphisms(a2.gram(), 2, GroupKind::GL));
  EXPECT_EQ(matrices(sl), brute_force_automorphisms(a2.gram(), 2, GroupKind::SL));
}

TEST(Automorphisms, A3MatchesBruteForce) {
  QForm a3 = root_form_a(3);
  auto gl = automorphisms(marking_of(a3), GroupKind::GL);
  EXPECT_EQ(gl.size(), 48u);
  // Columns of a Weyl group element in the root basis are roots, so entries lie in [-1, 1].
  EXPECT_EQ(matrices(gl), brute_force_automorphisms(a3.gram(), 1, GroupKind::GL));
  // -I has det -1 in odd dimension, so SL is exactly half.
  EXPECT_EQ(automorphisms(marking_of(a3), GroupKind::SL).size(), 24u);
}

TEST(Automorphisms, ClosedUnderProductAndInverse) {
  for (const QForm& h : {root_form_a(3), root_form_d(4)}) {
    auto gs = automorphisms(marking_of(h), GroupKind::GL);
    std::set<IntMat> set = matrices(gs);
    EXPECT_TRUE(set.count(IntMat::identity(h.n())));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
      const auto& a = gs[rng() % gs.size()];
      const auto& b = gs[rng() % gs.size()];
      EXPECT_TRUE(set.count((a * b).matrix()));
      EXPECT_TRUE(set.count(a.inverse().matrix()));
    }
  }
}

TEST(Automorphisms, OrthogonalGroupOfSquareFace) {
  auto gs = automorphisms(face_marking({IntVec{1, 0}, IntVec{0, 1}}), GroupKind::GL);
  EXPECT_EQ(gs.size(), 8u);
  EXPECT_EQ(matrices(gs), brute_force_automorphisms(IntMat::identity(2), 2, GroupKind::GL));
}

TEST(FindIsometry, RecoversRandomTransforms) {
  std::mt19937_64 rng(33);
  for (std::size_t n = 2; n <= 4; ++n) {
    QForm h = n == 4 ? root_form_d(4) : root_form_a(n);
    for (int t = 0; t < 20; ++t) {
      GroupElement u = random_unimodular(rng, n);
      QForm image(act(u, h.gram()));
      for (GroupKind kind : {GroupKind::GL, GroupKind::SL}) {
        auto g = find_isometry(marking_of(h), marking_of(image), kind);
        ASSERT_TRUE(g.has_value());
        EXPECT_EQ(act(*g, h.gram()), image.gram());
        if (kind == GroupKind::SL) EXPECT_EQ(g->det(), 1);
      }
    }
  }
}

TEST(FindIsometry, RejectsInequivalent) {
  EXPECT_FALSE(find_isometry(marking_of(root_form_a(4)), marking_of(root_form_d(4)), GroupKind::GL));
  // Faces with different numbers of vectors.
  EXPECT_FALSE(find_isometry(face_marking({IntVec{1, 0}, IntVec{0, 1}}),
                             face_marking({IntVec{1, 0}, IntVec{0, 1}, IntVec{1, 1}}), GroupKind::GL));
}

TEST(FindIsometry, SquareFacesAgreeInSl) {
  // {e1, e2} and {e1, e1+e2} are related by a shear of determinant 1.
  auto a = face_marking({IntVec{0, 1}, IntVec{1, 0}});
  auto b = face_marking({IntVec{1, 0}, IntVec{1, 1}});
  auto g = find_isometry(a, b, GroupKind::SL);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->det(), 1);
}

TEST(FaceMarking, RejectsDegenerate) {
  EXPECT_THROW(face_marking({IntVec{1, 0}}), NotFullDim);
  EXPECT_THROW(face_marking({}), NotFullDim);
}

TEST(PermutationOf, TracksSigns) {
  std::vector<IntVec> vs{IntVec{0, 1}, IntVec{1, -1}, IntVec{1, 0}};
  GroupElement swap(IntMat{{0, 1}, {1, 0}});
  EXPECT_EQ(permutation_of(swap, vs), (std::vector<long>{2, 1, 0}));
  GroupElement shear(IntMat{{1, 1}, {0, 1}});
  EXPECT_EQ(permutation_of(shear, vs)[0], -1);
}

TEST(GroupKind, Parse) {
  EXPECT_EQ(parse_group_kind("GL"), GroupKind::GL);
  EXPECT_EQ(parse_group_kind("sl"), GroupKind::SL);
  EXPECT_THROW(parse_group_kind("sp"), std::invalid_argument);
}

}  // namespace
}  // namespace vorcycle
