#pragma once

#include <string>
#include <vector>

#include "vorcycle/complex.hpp"

namespace vorcycle {

struct TileOrbit {
  std::string name;
  std::size_t stabilizer_order = 1;
  bool orientation_kept = true;
  friend bool operator==(const TileOrbit&, const TileOrbit&) = default;
};

/// [tile : facet] for one tile orbit.
struct IncidenceRecord {
  std::size_t tile = 0;
  Int value;
  friend bool operator==(const IncidenceRecord&, const IncidenceRecord&) = default;
};

struct FacetOrbit {
  std::string name;
  std::size_t stabilizer_order = 1;
  FacetKind kind = FacetKind::NonSelfIntersecting;
  bool orientation_kept = true;
  std::vector<IncidenceRecord> incidences;
  friend bool operator==(const FacetOrbit&, const FacetOrbit&) = default;
};

/// Finite quotient data of a Gamma-tessellation of an open cone; facets lying
/// in the boundary of the cone are not listed.
struct TessInstance {
  std::size_t ambient_dim = 0;
  std::vector<TileOrbit> tiles;
  std::vector<FacetOrbit> facets;
  /// Pairs of tile orbits sharing a facet.
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;
  friend bool operator==(const TessInstance&, const TessInstance&) = default;
};

/// Throws InvariantViolation naming the failed hypothesis, IndexOutOfRange for
/// dangling tile indices.
void validate(const TessInstance& inst);

/// Coefficient of every facet orbit in sum_sigma lambda_sigma d(sigma); facets
/// whose orientation is not kept get 0. Throws IndexOutOfRange.
RatVec weighted_boundary(const TessInstance& inst, const RatVec& weights);

struct GeneralVerdict {
  std::vector<std::size_t> kept_tiles;
  /// 1 / |Gamma_sigma| on kept tiles, in kept_tiles order.
  RatVec canonical;
  bool canonical_annihilated = false;
  std::size_t kernel_dim = 0;
  std::vector<RatVec> kernel_basis;
  /// Kernel equals the span of the canonical weights on every component.
  bool kernel_is_canonical = false;
  std::vector<std::vector<std::size_t>> components;
  bool connected() const { return components.size() <= 1; }
  bool holds() const { return canonical_annihilated && kernel_is_canonical; }
};
GeneralVerdict check_general_theorem(const TessInstance& inst);

/// The open quadrant cut into k sectors by k + 1 rays, trivial group.
TessInstance sector_fan(std::size_t k);
/// Tiles are top cells, facet orbits are facet classes; incidences on Sigma.
TessInstance from_voronoi(const VoronoiComplex& c);

}  // namespace vorcycle
