#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vorcycle/cone.hpp"
#include "vorcycle/isometry.hpp"
#include "vorcycle/perfect.hpp"

namespace vorcycle {

/// Sparse integer matrix; entries sorted by (row, col), zeros omitted.
struct Differential {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, Int>> entries;

  IntMat dense() const;
  static Differential from_dense(const IntMat& m);
  friend bool operator==(const Differential& a, const Differential& b) {
    return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
  }
};

/// Top-dimensional cell: placement . D(graph node).
struct TopCell {
  std::string name;
  std::size_t node = 0;
  GroupElement placement;
  std::vector<IntVec> vectors;
  PolyCone cone;
  std::vector<FacetRec> facets;
  /// Stabilizer in the chosen group, sorted.
  std::vector<GroupElement> stabilizer;
  FaceOrbits facet_orbits;
  /// For every facet f: f = this ∩ across_witness[f] . cells[across_cell[f]].
  std::vector<std::size_t> across_cell;
  std::vector<GroupElement> across_witness;
  bool in_sigma = false;
};

enum class FacetKind { SelfIntersecting, NonSelfIntersecting };

/// One (cell, Gamma_cell-orbit of facets) pair belonging to a facet class.
struct FacetSide {
  std::size_t cell = 0;
  std::size_t orbit = 0;
  /// The orbit representative facet equals transport . (class representative).
  GroupElement transport;
};

/// Gamma-orbit of facets of top cells.
struct FacetClass {
  FacetKind kind = FacetKind::NonSelfIntersecting;
  /// Containing cell and facet index there; the representative.
  std::size_t cell = 0;
  std::size_t facet = 0;
  std::vector<IntVec> vectors;
  /// rep = cells[cell] ∩ witness . cells[other_cell].
  std::size_t other_cell = 0;
  GroupElement witness;
  std::vector<FacetSide> sides;
  std::vector<GroupElement> stabilizer;
  /// Ordered vectors whose rank-one matrices form a basis of R(rep), oriented so
  /// that epsilon(cell, rep) = +1.
  std::vector<IntVec> basis;
  bool in_sigma = false;
};

struct VoronoiComplex {
  std::size_t n = 0;
  GroupKind kind = GroupKind::GL;
  std::vector<TopCell> cells;
  std::vector<FacetClass> facet_classes;
  /// Indices of cells and facet classes whose stabilizers keep orientation.
  std::vector<std::size_t> top_sigma;
  std::vector<std::size_t> facet_sigma;
  /// Rows follow facet_sigma, columns follow top_sigma.
  Differential top;
};

/// Sigma* in the top two degrees (cells, facet classes, stabilizers, bases);
/// no filtering and no differential yet.
VoronoiComplex build_sigma_star(const VoronoiGraph& graph, GroupKind kind);
/// Sets the in_sigma flags and the top_sigma / facet_sigma index lists.
void orientation_filter(VoronoiComplex& c);
Differential differential_top(const VoronoiComplex& c);
/// build_sigma_star + orientation_filter + differential_top.
VoronoiComplex build_complex(const VoronoiGraph& graph, GroupKind kind);

/// Flattened rank-one matrices of the vectors, as rows.
IntMat rank_one_rows(const std::vector<IntVec>& vectors);
/// Sign of the linear map X -> g X g^T on symmetric matrices.
Sign action_orientation(const GroupElement& g);
std::vector<IntVec> apply_all(const GroupElement& g, const std::vector<IntVec>& vectors);

/// epsilon(sigma, face) for a facet of a top cell with the given ordered basis,
/// using the ray `v` (vector of the cell off the facet). Throws InvariantViolation
/// if v lies on the facet.
Sign epsilon(const TopCell& cell, const RaySet& face, const std::vector<IntVec>& basis, const IntVec& v);
/// eta(tau, tau'): compares the orientation of tau' obtained through witness
/// `a` with the one through `b` (both map the class representative to tau').
/// Throws WitnessMismatch if the two witnesses disagree on the face.
Sign eta(const FacetClass& cls, const GroupElement& a, const GroupElement& b);
/// [sigma : tau] as a signed sum over the facets of sigma in the class of tau.
Int incidence(const VoronoiComplex& c, std::size_t cell, std::size_t facet_class);
FacetKind classify_facet(const VoronoiComplex& c, std::size_t facet_class);

/// Named exact checks of the structural lemmas on a built complex.
struct LemmaCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};
std::vector<LemmaCheck> check_lemmas(const VoronoiComplex& c);

/// Elements of Gamma_tau split by whether they fix or swap the two cells on
/// either side of a self-intersecting facet sigma ∩ gamma.sigma.
struct SelfIntersectionSplit {
  std::vector<GroupElement> fixing;
  std::vector<GroupElement> swapping;
  std::vector<GroupElement> other;
};
SelfIntersectionSplit split_facet_stabilizer(const std::vector<IntVec>& sigma, const GroupElement& gamma,
                                             const std::vector<GroupElement>& facet_stab);

/// Codimension-2 data for the d o d check.
struct LowerDegree {
  std::size_t class_count = 0;
  std::vector<std::size_t> sigma;
  /// Rows follow sigma (codim-2 classes), columns follow the complex's facet_sigma.
  Differential lower;
};
LowerDegree differential_lower(const VoronoiComplex& c);
/// lower * top, dense.
IntMat compose(const Differential& lower, const Differential& top);

/// Oriented boundary of a single cone: outer is facets x 1, inner is
/// codim-2 faces x facets, all faces included.
struct LocalBoundary {
  Differential outer;
  Differential inner;
};
LocalBoundary local_boundary(const TopCell& cell);

/// compose(lower, top) = 0 and inner * outer = 0 on every cell.
bool dd_sanity(const VoronoiComplex& c);

}  // namespace vorcycle
