#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vorcycle/cone.hpp"
#include "vorcycle/forms.hpp"
#include "vorcycle/isometry.hpp"

namespace vorcycle {

/// A perfect form with its Voronoi domain and GL stabilizer.
struct PerfectFormRep {
  std::string name;
  QForm form;
  MinVecSet minvecs;
  PolyCone domain;
  std::vector<FacetRec> facets;
  /// Full stabilizer of the domain in GL_n(Z), sorted.
  std::vector<GroupElement> stabilizer;

  MarkedSet marking() const { return form_marking(form, minvecs); }
};

/// Builds every derived field of a perfect form. Throws InvariantViolation if
/// the form is not perfect.
PerfectFormRep make_rep(const QForm& h, std::string name = {});

struct EquivWitness {
  GroupElement g;
  /// act(g, h1) = scale * h2.
  Rat scale;
};

/// Perfect neighbour across a facet of D(h). Throws BoundaryFacet when the
/// facet meets the boundary of the positive cone.
QForm neighbor(const QForm& h, const MinVecSet& m, const FacetRec& f);
inline QForm neighbor(const PerfectFormRep& h, const FacetRec& f) { return neighbor(h.form, h.minvecs, f); }

std::optional<EquivWitness> is_equivalent(const QForm& h1, const QForm& h2, GroupKind kind = GroupKind::GL);

/// Stabilizer of D(h) in GL_n(Z) or SL_n(Z), sorted.
std::vector<GroupElement> stabilizer(const PerfectFormRep& h, GroupKind kind);

/// Stabilizer of the face spanned by x x^T, x in `face`: the automorphisms of
/// the barycenter form that permute the face vectors.
std::vector<GroupElement> facet_stabilizer(const std::vector<IntVec>& face, GroupKind kind);

/// Lexicographically minimal Gram matrix B^T G B over candidate bases B drawn
/// from the minimal vectors; `seed` permutes the order candidates are drawn in.
QForm canonical_representative(const QForm& h, std::uint64_t seed = 0);

/// Orbits of a group of automorphisms of a cone on a list of its faces.
struct FaceOrbits {
  std::vector<std::size_t> orbit_of;
  std::vector<std::size_t> representative;
  /// Index into the group of some g with face = g . representative.
  std::vector<std::size_t> transporter;

  std::size_t count() const { return representative.size(); }
};
FaceOrbits face_orbits(const PolyCone& c, const std::vector<RaySet>& faces, const std::vector<GroupElement>& group);

/// Faces of `c` hit by the vectors g x, x in the face; empty set if some image
/// lies outside the cone.
RaySet image_of(const GroupElement& g, const PolyCone& c, const RaySet& face);
RaySet rays_of(const PolyCone& c, const std::vector<IntVec>& vectors);
std::vector<IntVec> vectors_of(const PolyCone& c, const RaySet& face);

struct GraphEdge {
  std::size_t from = 0;
  std::size_t facet = 0;
  std::size_t to = 0;
  /// The neighbour of nodes[from] across the facet has domain witness . D(nodes[to]).
  GroupElement witness;
};

struct VoronoiGraph {
  std::size_t n = 0;
  std::vector<PerfectFormRep> nodes;
  /// One edge per facet of every node, sorted by (from, facet).
  std::vector<GraphEdge> edges;

  const GraphEdge& edge(std::size_t from, std::size_t facet) const;
};

struct EnumerationOptions {
  std::uint64_t seed_perm = 0;
};

/// Voronoi's algorithm from A_n: all GL_n(Z)-classes of perfect forms.
VoronoiGraph enumerate_perfect_forms(std::size_t n, const EnumerationOptions& opts = {});

/// Number of classes for the given group: a GL class splits in two SL classes
/// iff its GL stabilizer lies in SL.
std::size_t class_count(const VoronoiGraph& g, GroupKind kind);
bool stabilizer_in_sl(const PerfectFormRep& h);

}  // namespace vorcycle
