#include "vorcycle/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "vorcycle/errors.hpp"

namespace vorcycle {

IntMat Differential::dense() const {
  IntMat m(rows, cols);
  for (const auto& [r, c, v] : entries) m(r, c) = v;
  return m;
}

Differential Differential::from_dense(const IntMat& m) {
  Differential d;
  d.rows = m.rows();
  d.cols = m.cols();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) d.entries.emplace_back(r, c, m(r, c));
  return d;
}

IntMat rank_one_rows(const std::vector<IntVec>& vectors) {
  std::vector<IntVec> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(flatten(rank_one(v)));
  const std::size_t n = vectors.empty() ? 0 : vectors.front().size();
  return IntMat::from_rows(rows, form_space_dim(n));
}

std::vector<IntVec> apply_all(const GroupElement& g, const std::vector<IntVec>& vectors) {
  std::vector<IntVec> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(g.apply(v));
  return out;
}

Sign action_orientation(const GroupElement& g) {
  const std::size_t n = g.dim(), d = form_space_dim(n);
  IntMat m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    IntVec e(d);
    e[k] = 1;
    IntVec image = flatten(act_on_rays(g, unflatten(e, n)));
    for (std::size_t r = 0; r < d; ++r) m(r, k) = image[r];
  }
  return det_sign(m);
}

namespace {

std::set<IntVec> pair_set(const std::vector<IntVec>& vs) {
  std::set<IntVec> out;
  for (const auto& v : vs) out.insert(canonical_sign(v));
  return out;
}

IntMat stack(const std::vector<IntVec>& basis, const IntVec& extra) {
  std::vector<IntVec> all = basis;
  all.push_back(extra);
  return rank_one_rows(all);
}

std::vector<IntVec> pick_basis(const std::vector<IntVec>& vectors, std::size_t size) {
  auto idx = independent_rows(rank_one_rows(vectors));
  if (idx.size() != size) throw InvariantViolation("face has the wrong dimension");
  std::vector<IntVec> out;
  for (auto i : idx) out.push_back(vectors[i]);
  return out;
}

const IntVec& vector_off_face(const PolyCone& c, const RaySet& face) {
  for (std::size_t i = 0; i < c.ray_count(); ++i)
    if (!face.contains(i)) return c.vector(i);
  throw InvariantViolation("face is the whole cone");
}

GroupElement diag_flip(std::size_t n) {
  IntMat m = IntMat::identity(n);
  m(0, 0) = -1;
  return GroupElement(std::move(m));
}

TopCell make_cell(const VoronoiGraph& graph, std::size_t node_index, const GroupElement& p, GroupKind kind) {
  const PerfectFormRep& node = graph.nodes[node_index];
  const std::size_t n = graph.n;
  TopCell cell;
  cell.node = node_index;
  cell.placement = p;
  const bool trivial = p == GroupElement::identity(n);
  std::vector<IntVec> moved;
  for (const auto& x : node.minvecs.vectors) moved.push_back(canonical_sign(p.apply(x)));
  cell.cone = PolyCone::from_vectors(moved, n);
  cell.vectors = cell.cone.vectors();
  std::vector<std::size_t> index(moved.size());
  for (std::size_t i = 0; i < moved.size(); ++i) index[i] = static_cast<std::size_t>(cell.cone.find(moved[i]));
  for (const auto& f : node.facets) {
    FacetRec g;
    g.normal = trivial ? f.normal : act(p, f.normal);
    for (auto i : f.incident.indices()) g.incident.insert(index[i]);
    cell.facets.push_back(std::move(g));
  }
  GroupElement pinv = p.inverse();
  for (const auto& s : node.stabilizer) {
    GroupElement t = trivial ? s : p * s * pinv;
    if (kind == GroupKind::GL || t.det() == 1) cell.stabilizer.push_back(std::move(t));
  }
  std::sort(cell.stabilizer.begin(), cell.stabilizer.end());
  std::vector<RaySet> faces;
  for (const auto& f : cell.facets) faces.push_back(f.incident);
  cell.facet_orbits = face_orbits(cell.cone, faces, cell.stabilizer);
  return cell;
}

bool orientation_preserving(const VoronoiComplex& c) { return c.kind == GroupKind::SL || c.n % 2 == 1; }

}  // namespace

VoronoiComplex build_sigma_star(const VoronoiGraph& graph, GroupKind kind) {
  VoronoiComplex c;
  c.n = graph.n;
  c.kind = kind;
  const std::size_t n = graph.n;
  const GroupElement id = GroupElement::identity(n);

  std::vector<std::vector<std::size_t>> cells_of_node(graph.nodes.size());
  for (std::size_t j = 0; j < graph.nodes.size(); ++j) {
    std::vector<GroupElement> placements{id};
    if (kind == GroupKind::SL && stabilizer_in_sl(graph.nodes[j])) placements.push_back(diag_flip(n));
    for (std::size_t k = 0; k < placements.size(); ++k) {
      TopCell cell = make_cell(graph, j, placements[k], kind);
      cell.name = graph.nodes[j].name + (k == 0 ? "" : "'");
      cells_of_node[j].push_back(c.cells.size());
      c.cells.push_back(std::move(cell));
    }
  }

  // Opposite cell across each facet, expressed as a translate of a representative.
  for (auto& cell : c.cells) {
    const PerfectFormRep& node = graph.nodes[cell.node];
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      const GraphEdge& e = graph.edge(cell.node, f);
      GroupElement h = cell.placement * e.witness;
      std::optional<std::size_t> target;
      GroupElement g;
      for (auto q : cells_of_node[e.to]) {
        GroupElement cand = h * c.cells[q].placement.inverse();
        if (kind == GroupKind::GL || cand.det() == 1) {
          target = q;
          g = cand;
          break;
        }
      }
      if (!target) {
        // Single SL cell whose GL stabilizer has a det -1 element s: h D = h s D.
        const auto& stab = graph.nodes[e.to].stabilizer;
        auto s = std::find_if(stab.begin(), stab.end(), [](const GroupElement& x) { return x.det() == -1; });
        if (s == stab.end()) throw InvariantViolation("no determinant -1 stabilizer element");
        target = cells_of_node[e.to].front();
        g = h * *s;
      }
      cell.across_cell.push_back(*target);
      cell.across_witness.push_back(g);
    }
    (void)node;
  }

  std::vector<std::unordered_map<RaySet, std::size_t, RaySetHash>> facet_index(c.cells.size());
  for (std::size_t k = 0; k < c.cells.size(); ++k)
    for (std::size_t f = 0; f < c.cells[k].facets.size(); ++f) facet_index[k].emplace(c.cells[k].facets[f].incident, f);

  const std::size_t d = form_space_dim(n);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> side_class;
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const TopCell& cell = c.cells[k];
    for (std::size_t o = 0; o < cell.facet_orbits.count(); ++o) {
      if (side_class.count({k, o})) continue;
      FacetClass cls;
      cls.cell = k;
      cls.facet = cell.facet_orbits.representative[o];
      const RaySet& face = cell.facets[cls.facet].incident;
      cls.vectors = vectors_of(cell.cone, face);
      cls.other_cell = cell.across_cell[cls.facet];
      cls.witness = cell.across_witness[cls.facet];
      const TopCell& other = c.cells[cls.other_cell];

      RaySet back = rays_of(other.cone, apply_all(cls.witness.inverse(), cls.vectors));
      auto it = facet_index[cls.other_cell].find(back);
      if (back.empty() || it == facet_index[cls.other_cell].end())
        throw InvariantViolation("facet does not reappear in the opposite cell");
      const std::size_t f2 = it->second;
      const std::size_t o2 = other.facet_orbits.orbit_of[f2];
      const GroupElement& s = other.stabilizer[other.facet_orbits.transporter[f2]];

      cls.sides.push_back(FacetSide{k, o, GroupElement::identity(n)});
      if (std::make_pair(cls.other_cell, o2) != std::make_pair(k, o)) {
        if (side_class.count({cls.other_cell, o2})) throw InvariantViolation("facet side claimed twice");
        cls.sides.push_back(FacetSide{cls.other_cell, o2, (cls.witness * s).inverse()});
      }
      cls.kind = cls.other_cell == k ? FacetKind::SelfIntersecting : FacetKind::NonSelfIntersecting;
      cls.stabilizer = facet_stabilizer(cls.vectors, kind);

      cls.basis = pick_basis(cls.vectors, d - 1);
      Sign e = det_sign(stack(cls.basis, vector_off_face(cell.cone, face)));
      if (e == Sign::Zero) throw InvariantViolation("degenerate facet orientation");
      if (e == Sign::Negative) std::swap(cls.basis[0], cls.basis[1]);

      const std::size_t id = c.facet_classes.size();
      for (const auto& side : cls.sides) side_class[{side.cell, side.orbit}] = id;
      c.facet_classes.push_back(std::move(cls));
    }
  }
  return c;
}

void orientation_filter(VoronoiComplex& c) {
  c.top_sigma.clear();
  c.facet_sigma.clear();
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    auto& cell = c.cells[k];
    cell.in_sigma = std::all_of(cell.stabilizer.begin(), cell.stabilizer.end(),
                                [](const GroupElement& g) { return action_orientation(g) == Sign::Positive; });
    if (cell.in_sigma) c.top_sigma.push_back(k);
  }
  for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
    auto& cls = c.facet_classes[t];
    const IntMat b = rank_one_rows(cls.basis);
    cls.in_sigma = std::all_of(cls.stabilizer.begin(), cls.stabilizer.end(), [&](const GroupElement& g) {
      return relative_orientation(b, rank_one_rows(apply_all(g, cls.basis))) == Sign::Positive;
    });
    if (cls.in_sigma) c.facet_sigma.push_back(t);
  }
}

Sign epsilon(const TopCell& cell, const RaySet& face, const std::vector<IntVec>& basis, const IntVec& v) {
  long i = cell.cone.find(v);
  if (i < 0 || face.contains(static_cast<std::size_t>(i))) throw InvariantViolation("epsilon needs a ray off the facet");
  return det_sign(stack(basis, v));
}

Sign eta(const FacetClass& cls, const GroupElement& a, const GroupElement& b) {
  if (pair_set(apply_all(a, cls.vectors)) != pair_set(apply_all(b, cls.vectors)))
    throw WitnessMismatch("witnesses map the class representative to different faces");
  return relative_orientation(rank_one_rows(apply_all(a, cls.basis)), rank_one_rows(apply_all(b, cls.basis)));
}

Int incidence(const VoronoiComplex& c, std::size_t cell_index, std::size_t class_index) {
  if (cell_index >= c.cells.size() || class_index >= c.facet_classes.size()) throw IndexOutOfRange("incidence");
  const TopCell& cell = c.cells[cell_index];
  const FacetClass& cls = c.facet_classes[class_index];
  Int total = 0;
  for (const auto& side : cls.sides) {
    if (side.cell != cell_index) continue;
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      if (cell.facet_orbits.orbit_of[f] != side.orbit) continue;
      // Translates carry the orientation pushed forward along this witness, so
      // eta(tau, tau') = +1 and only epsilon contributes.
      GroupElement gamma = cell.stabilizer[cell.facet_orbits.transporter[f]] * side.transport;
      const RaySet& face = cell.facets[f].incident;
      total += to_int(epsilon(cell, face, apply_all(gamma, cls.basis), vector_off_face(cell.cone, face)));
    }
  }
  return total;
}

FacetKind classify_facet(const VoronoiComplex& c, std::size_t facet_class) {
  if (facet_class >= c.facet_classes.size()) throw IndexOutOfRange("classify_facet");
  const FacetClass& cls = c.facet_classes[facet_class];
  auto here = pair_set(c.cells[cls.cell].vectors);
  auto there = pair_set(apply_all(cls.witness, c.cells[cls.other_cell].vectors));
  std::set<IntVec> common;
  std::set_intersection(here.begin(), here.end(), there.begin(), there.end(), std::inserter(common, common.end()));
  if (common != pair_set(cls.vectors)) throw InvariantViolation("facet witness does not reproduce the facet");
  return cls.other_cell == cls.cell ? FacetKind::SelfIntersecting : FacetKind::NonSelfIntersecting;
}

Differential differential_top(const VoronoiComplex& c) {
  Differential d;
  d.rows = c.facet_sigma.size();
  d.cols = c.top_sigma.size();
  for (std::size_t r = 0; r < c.facet_sigma.size(); ++r)
    for (std::size_t col = 0; col < c.top_sigma.size(); ++col) {
      Int v = incidence(c, c.top_sigma[col], c.facet_sigma[r]);
      if (sgn(v) != 0) d.entries.emplace_back(r, col, v);
    }
  return d;
}

VoronoiComplex build_complex(const VoronoiGraph& graph, GroupKind kind) {
  VoronoiComplex c = build_sigma_star(graph, kind);
  orientation_filter(c);
  c.top = differential_top(c);
  return c;
}

SelfIntersectionSplit split_facet_stabilizer(const std::vector<IntVec>& sigma, const GroupElement& gamma,
                                             const std::vector<GroupElement>& facet_stab) {
  const auto a = pair_set(sigma);
  const auto b = pair_set(apply_all(gamma, sigma));
  SelfIntersectionSplit out;
  for (const auto& s : facet_stab) {
    auto sa = pair_set(apply_all(s, std::vector<IntVec>(a.begin(), a.end())));
    auto sb = pair_set(apply_all(s, std::vector<IntVec>(b.begin(), b.end())));
    if (sa == a && sb == b)
      out.fixing.push_back(s);
    else if (sa == b && sb == a)
      out.swapping.push_back(s);
    else
      out.other.push_back(s);
  }
  return out;
}

std::vector<LemmaCheck> check_lemmas(const VoronoiComplex& c) {
  const std::size_t d = form_space_dim(c.n);
  std::vector<LemmaCheck> out;
  auto fail = [](LemmaCheck& chk, const std::string& why) {
    if (chk.ok) chk.detail = why;
    chk.ok = false;
  };

  LemmaCheck opposite{"opposite_orientations", true, {}}, boundary{"facets_avoid_boundary", true, {}}, index{"orbit_stabilizer_index", true, {}},
      intersection{"facet_stabilizer_is_intersection", true, {}};
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const TopCell& cell = c.cells[k];
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      const RaySet& face = cell.facets[f].incident;
      auto fv = vectors_of(cell.cone, face);
      if (meets_boundary(fv, c.n)) fail(boundary, cell.name + " facet " + std::to_string(f));
      auto basis = pick_basis(fv, d - 1);
      const IntVec& v = vector_off_face(cell.cone, face);
      auto far = apply_all(cell.across_witness[f], c.cells[cell.across_cell[f]].vectors);
      auto on = pair_set(fv);
      auto w = std::find_if(far.begin(), far.end(), [&](const IntVec& x) { return !on.count(canonical_sign(x)); });
      if (w == far.end()) {
        fail(opposite, "opposite cell has no ray off the facet");
        continue;
      }
      Sign s1 = det_sign(stack(basis, v)), s2 = det_sign(stack(basis, *w));
      if (s1 == Sign::Zero || s1 != -s2) fail(opposite, cell.name + " facet " + std::to_string(f));
    }
    for (std::size_t o = 0; o < cell.facet_orbits.count(); ++o) {
      const RaySet& rep = cell.facets[cell.facet_orbits.representative[o]].incident;
      std::size_t size = std::count(cell.facet_orbits.orbit_of.begin(), cell.facet_orbits.orbit_of.end(), o);
      std::size_t fixing = 0;
      for (const auto& s : cell.stabilizer) fixing += image_of(s, cell.cone, rep) == rep;
      if (size * fixing != cell.stabilizer.size()) fail(index, cell.name + " orbit " + std::to_string(o));
    }
  }

  LemmaCheck decomposition{"self_intersecting_decomposition", true, {}}, index12{"self_intersecting_index", true, {}},
      equivalence{"self_intersecting_equivalence", true, {}}, splitting{"self_intersecting_splitting", true, {}};
  for (std::size_t t = 0; t < c.facet_classes.size(); ++t) {
    const FacetClass& cls = c.facet_classes[t];
    const TopCell& cell = c.cells[cls.cell];
    const std::string tag = "class " + std::to_string(t);
    // Gamma_sigma ∩ Gamma_{gamma rho}, from the cell side.
    auto far = pair_set(apply_all(cls.witness, c.cells[cls.other_cell].vectors));
    std::set<IntMat> both;
    for (const auto& s : cell.stabilizer)
      if (pair_set(apply_all(s, std::vector<IntVec>(far.begin(), far.end()))) == far) both.insert(s.matrix());
    if (cls.kind == FacetKind::NonSelfIntersecting) {
      std::set<IntMat> stab;
      for (const auto& s : cls.stabilizer) stab.insert(s.matrix());
      if (stab != both) fail(intersection, tag);
      continue;
    }
    auto split = split_facet_stabilizer(cell.vectors, cls.witness, cls.stabilizer);
    std::set<IntMat> fixing;
    for (const auto& s : split.fixing) fixing.insert(s.matrix());
    if (!split.other.empty() || fixing != both) fail(decomposition, tag);
    const std::size_t idx = split.fixing.empty() ? 0 : cls.stabilizer.size() / split.fixing.size();
    if (idx != 1 && idx != 2) fail(index12, tag);
    const bool single_orbit = cls.sides.size() == 1;
    const bool has_swap = !split.swapping.empty();
    if (single_orbit != has_swap) fail(equivalence, tag + ": orbit test disagrees with index");
    if (orientation_preserving(c) && single_orbit == cls.in_sigma) fail(equivalence, tag + ": filter disagrees");
    if (cls.in_sigma && cls.sides.size() != 2) fail(splitting, tag);
  }

  LemmaCheck keep{"orientation_preserving_keeps_cells", true, {}};
  if (orientation_preserving(c)) {
    for (const auto& cell : c.cells)
      if (!cell.in_sigma) fail(keep, cell.name);
    for (std::size_t t = 0; t < c.facet_classes.size(); ++t)
      if (c.facet_classes[t].kind == FacetKind::NonSelfIntersecting && !c.facet_classes[t].in_sigma)
        fail(keep, "class " + std::to_string(t));
  }

  LemmaCheck neighbour{"non_self_facet_exists", true, {}};
  if (c.cells.size() > 1)
    for (std::size_t k = 0; k < c.cells.size(); ++k) {
      const auto& ac = c.cells[k].across_cell;
      if (std::all_of(ac.begin(), ac.end(), [&](std::size_t x) { return x == k; })) fail(neighbour, c.cells[k].name);
    }

  for (auto* chk : {&opposite, &boundary, &index, &intersection, &decomposition, &index12, &equivalence, &splitting,
                    &keep, &neighbour})
    out.push_back(*chk);
  return out;
}

LowerDegree differential_lower(const VoronoiComplex& c) {
  const std::size_t d = form_space_dim(c.n);
  struct Codim2Class {
    std::vector<IntVec> vectors;
    MarkedSet marking;
    std::vector<IntVec> basis;
    bool in_sigma = false;
  };
  std::vector<Codim2Class> classes;
  struct CellFaces {
    std::vector<RaySet> faces;
    FaceOrbits orbits;
    std::vector<std::size_t> class_of_orbit;
    std::vector<GroupElement> transport_of_orbit;
  };
  std::vector<CellFaces> per_cell(c.cells.size());

  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const TopCell& cell = c.cells[k];
    CellFaces& cf = per_cell[k];
    for (const auto& f : faces_of_codim(cell.cone, cell.facets, 2))
      if (!meets_boundary(cell.cone, f)) cf.faces.push_back(f);
    cf.orbits = face_orbits(cell.cone, cf.faces, cell.stabilizer);
    for (std::size_t o = 0; o < cf.orbits.count(); ++o) {
      auto vs = vectors_of(cell.cone, cf.faces[cf.orbits.representative[o]]);
      MarkedSet mk = face_marking(vs);
      std::optional<std::size_t> found;
      GroupElement g;
      for (std::size_t i = 0; i < classes.size() && !found; ++i) {
        if (classes[i].vectors.size() != vs.size()) continue;
        if (auto w = find_isometry(classes[i].marking, mk, c.kind)) {
          found = i;
          g = *w;
        }
      }
      if (!found) {
        Codim2Class cl;
        cl.vectors = vs;
        cl.marking = mk;
        cl.basis = pick_basis(vs, d - 2);
        const IntMat b = rank_one_rows(cl.basis);
        auto stab = facet_stabilizer(vs, c.kind);
        cl.in_sigma = std::all_of(stab.begin(), stab.end(), [&](const GroupElement& s) {
          return relative_orientation(b, rank_one_rows(apply_all(s, cl.basis))) == Sign::Positive;
        });
        found = classes.size();
        g = GroupElement::identity(c.n);
        classes.push_back(std::move(cl));
      }
      cf.class_of_orbit.push_back(*found);
      cf.transport_of_orbit.push_back(g);
    }
  }

  LowerDegree out;
  out.class_count = classes.size();
  std::vector<long> row_of(classes.size(), -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].in_sigma) {
      row_of[i] = static_cast<long>(out.sigma.size());
      out.sigma.push_back(i);
    }
  IntMat m(out.sigma.size(), c.facet_sigma.size());
  for (std::size_t col = 0; col < c.facet_sigma.size(); ++col) {
    const FacetClass& tau = c.facet_classes[c.facet_sigma[col]];
    const TopCell& cell = c.cells[tau.cell];
    const CellFaces& cf = per_cell[tau.cell];
    const RaySet& tau_rays = cell.facets[tau.facet].incident;
    const IntMat tau_basis = rank_one_rows(tau.basis);
    for (std::size_t i = 0; i < cf.faces.size(); ++i) {
      if (!cf.faces[i].subset_of(tau_rays)) continue;
      const std::size_t o = cf.orbits.orbit_of[i];
      const std::size_t cls = cf.class_of_orbit[o];
      if (row_of[cls] < 0) continue;
      GroupElement gamma = cell.stabilizer[cf.orbits.transporter[i]] * cf.transport_of_orbit[o];
      const IntVec* v = nullptr;
      for (auto r : tau_rays.indices())
        if (!cf.faces[i].contains(r)) {
          v = &cell.cone.vector(r);
          break;
        }
      if (!v) throw InvariantViolation("codim-2 face equals its facet");
      m(static_cast<std::size_t>(row_of[cls]), col) +=
          to_int(relative_orientation(tau_basis, stack(apply_all(gamma, classes[cls].basis), *v)));
    }
  }
  out.lower = Differential::from_dense(m);
  return out;
}

IntMat compose(const Differential& lower, const Differential& top) {
  if (lower.cols != top.rows) throw std::invalid_argument("compose: dimension mismatch");
  return lower.dense() * top.dense();
}

LocalBoundary local_boundary(const TopCell& cell) {
  const std::size_t d = form_space_dim(cell.cone.n());
  std::vector<std::vector<IntVec>> bases;
  IntMat outer(cell.facets.size(), 1);
  for (std::size_t f = 0; f < cell.facets.size(); ++f) {
    const RaySet& face = cell.facets[f].incident;
    auto b = pick_basis(vectors_of(cell.cone, face), d - 1);
    if (det_sign(stack(b, vector_off_face(cell.cone, face))) == Sign::Negative) std::swap(b[0], b[1]);
    outer(f, 0) = to_int(epsilon(cell, face, b, vector_off_face(cell.cone, face)));
    bases.push_back(std::move(b));
  }
  auto faces = faces_of_codim(cell.cone, cell.facets, 2);
  IntMat inner(faces.size(), cell.facets.size());
  for (std::size_t w = 0; w < faces.size(); ++w) {
    auto b = pick_basis(vectors_of(cell.cone, faces[w]), d - 2);
    for (std::size_t f = 0; f < cell.facets.size(); ++f) {
      const RaySet& face = cell.facets[f].incident;
      if (!faces[w].subset_of(face)) continue;
      for (auto r : face.indices())
        if (!faces[w].contains(r)) {
          inner(w, f) = to_int(relative_orientation(rank_one_rows(bases[f]), stack(b, cell.cone.vector(r))));
          break;
        }
    }
  }
  return LocalBoundary{Differential::from_dense(outer), Differential::from_dense(inner)};
}

bool dd_sanity(const VoronoiComplex& c) {
  auto is_zero = [](const IntMat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t q = 0; q < m.cols(); ++q)
        if (sgn(m(r, q)) != 0) return false;
    return true;
  };
  if (!is_zero(compose(differential_lower(c).lower, c.top))) return false;
  for (const auto& cell : c.cells) {
    auto lb = local_boundary(cell);
    if (!is_zero(compose(lb.inner, lb.outer))) return false;
  }
  return true;
}

}  // namespace vorcycle
