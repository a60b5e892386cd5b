#include "vorcycle/tess.hpp"

#include <algorithm>
#include <numeric>

#include "vorcycle/errors.hpp"

namespace vorcycle {

void validate(const TessInstance& inst) {
  if (inst.ambient_dim == 0) throw InvariantViolation("tiles must be full-dimensional in a positive dimension");
  for (const auto& t : inst.tiles)
    if (t.stabilizer_order == 0) throw InvariantViolation("tile " + t.name + ": stabilizer must be finite and nonempty");
  for (const auto& [a, b] : inst.adjacency)
    if (a >= inst.tiles.size() || b >= inst.tiles.size()) throw IndexOutOfRange("adjacency names a missing tile");
  for (const auto& f : inst.facets) {
    if (f.stabilizer_order == 0) throw InvariantViolation("facet " + f.name + ": stabilizer must be finite and nonempty");
    std::vector<std::size_t> tiles;
    for (const auto& r : f.incidences) {
      if (r.tile >= inst.tiles.size()) throw IndexOutOfRange("facet " + f.name + " names a missing tile");
      tiles.push_back(r.tile);
    }
    std::sort(tiles.begin(), tiles.end());
    if (std::adjacent_find(tiles.begin(), tiles.end()) != tiles.end())
      throw InvariantViolation("facet " + f.name + ": tile listed twice");
    if (!f.orientation_kept) continue;
    // Each concrete facet lies on exactly two tiles.
    if (f.kind == FacetKind::NonSelfIntersecting && tiles.size() > 2)
      throw InvariantViolation("facet " + f.name + ": shared by more than two tiles");
    if (f.kind == FacetKind::SelfIntersecting && tiles.size() > 1)
      throw InvariantViolation("facet " + f.name + ": self-intersecting facet on two tile orbits");
    for (const auto& r : f.incidences) {
      const std::size_t order = inst.tiles[r.tile].stabilizer_order;
      if (f.kind == FacetKind::NonSelfIntersecting &&
          (order % f.stabilizer_order != 0 || abs(r.value) != Int(order / f.stabilizer_order)))
        throw InvariantViolation("facet " + f.name + ": incidence is not the orbit size");
    }
  }
}

RatVec weighted_boundary(const TessInstance& inst, const RatVec& weights) {
  if (weights.size() != inst.tiles.size()) throw IndexOutOfRange("one weight per tile orbit expected");
  RatVec out(inst.facets.size());
  for (std::size_t f = 0; f < inst.facets.size(); ++f) {
    if (!inst.facets[f].orientation_kept) continue;
    for (const auto& r : inst.facets[f].incidences) {
      if (r.tile >= inst.tiles.size()) throw IndexOutOfRange("incidence names a missing tile");
      if (inst.tiles[r.tile].orientation_kept) out[f] += weights[r.tile] * Rat(r.value);
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> components_of(const TessInstance& inst, const std::vector<std::size_t>& kept) {
  std::vector<std::size_t> parent(inst.tiles.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (const auto& [a, b] : inst.adjacency) join(a, b);
  for (const auto& f : inst.facets)
    for (std::size_t i = 1; i < f.incidences.size(); ++i) join(f.incidences[0].tile, f.incidences[i].tile);
  std::vector<std::vector<std::size_t>> out;
  std::vector<long> slot(inst.tiles.size(), -1);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    std::size_t root = find(kept[j]);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[root])].push_back(j);
  }
  return out;
}

}  // namespace

GeneralVerdict check_general_theorem(const TessInstance& inst) {
  validate(inst);
  GeneralVerdict v;
  for (std::size_t t = 0; t < inst.tiles.size(); ++t)
    if (inst.tiles[t].orientation_kept) v.kept_tiles.push_back(t);
  std::vector<std::size_t> kept_facets;
  for (std::size_t f = 0; f < inst.facets.size(); ++f)
    if (inst.facets[f].orientation_kept) kept_facets.push_back(f);

  RatMat a(kept_facets.size(), v.kept_tiles.size());
  for (std::size_t r = 0; r < kept_facets.size(); ++r)
    for (const auto& rec : inst.facets[kept_facets[r]].incidences) {
      auto it = std::find(v.kept_tiles.begin(), v.kept_tiles.end(), rec.tile);
      if (it != v.kept_tiles.end()) a(r, static_cast<std::size_t>(it - v.kept_tiles.begin())) += Rat(rec.value);
    }

  RatVec full(inst.tiles.size());
  for (auto t : v.kept_tiles) {
    v.canonical.push_back(Rat(1, inst.tiles[t].stabilizer_order));
    full[t] = v.canonical.back();
  }
  auto wb = weighted_boundary(inst, full);
  v.canonical_annihilated = std::all_of(wb.begin(), wb.end(), [](const Rat& x) { return sgn(x) == 0; });

  v.kernel_basis = kernel_basis(a);
  v.kernel_dim = v.kernel_basis.size();
  v.components = components_of(inst, v.kept_tiles);

  // The kernel should be spanned by the canonical weights restricted to each component.
  RatMat span(v.components.size() + v.kernel_dim, v.kept_tiles.size());
  for (std::size_t c = 0; c < v.components.size(); ++c)
    for (auto j : v.components[c]) span(c, j) = v.canonical[j];
  for (std::size_t k = 0; k < v.kernel_dim; ++k)
    for (std::size_t j = 0; j < v.kept_tiles.size(); ++j) span(v.components.size() + k, j) = v.kernel_basis[k][j];
  v.kernel_is_canonical = v.kernel_dim == v.components.size() && rank(span) == v.components.size();
  return v;
}

TessInstance sector_fan(std::size_t k) {
  if (k < 2) throw std::invalid_argument("sector_fan needs at least two sectors");
  TessInstance inst;
  inst.ambient_dim = 2;
  for (std::size_t i = 0; i < k; ++i) inst.tiles.push_back(TileOrbit{"S" + std::to_string(i), 1, true});
  for (std::size_t i = 0; i + 1 < k; ++i) {
    FacetOrbit f;
    f.name = "R" + std::to_string(i + 1);
    f.incidences = {IncidenceRecord{i, 1}, IncidenceRecord{i + 1, -1}};
    inst.facets.push_back(std::move(f));
    inst.adjacency.emplace_back(i, i + 1);
  }
  return inst;
}

TessInstance from_voronoi(const VoronoiComplex& c) {
  TessInstance inst;
  inst.ambient_dim = form_space_dim(c.n);
  for (const auto& cell : c.cells) inst.tiles.push_back(TileOrbit{cell.name, cell.stabilizer.size(), cell.in_sigma});
  for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
    const FacetClass& cls = c.facet_classes[t];
    FacetOrbit f;
    f.name = "F" + std::to_string(t);
    f.stabilizer_order = cls.stabilizer.size();
    f.kind = cls.kind;
    f.orientation_kept = cls.in_sigma;
    if (cls.in_sigma)
      for (auto k : c.top_sigma) {
        Int v = incidence(c, k, t);
        if (sgn(v) != 0) f.incidences.push_back(IncidenceRecord{k, v});
      }
    inst.facets.push_back(std::move(f));
  }
  for (std::size_t k = 0; k < c.cells.size(); ++k)
    for (auto other : c.cells[k].across_cell)
      if (other != k) inst.adjacency.emplace_back(std::min(k, other), std::max(k, other));
  std::sort(inst.adjacency.begin(), inst.adjacency.end());
  inst.adjacency.erase(std::unique(inst.adjacency.begin(), inst.adjacency.end()), inst.adjacency.end());
  return inst;
}

}  // namespace vorcycle
