#include "vorcycle/perfect.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "vorcycle/errors.hpp"

namespace vorcycle {

PerfectFormRep make_rep(const QForm& h, std::string name) {
  PerfectFormRep rep;
  rep.name = std::move(name);
  rep.form = h;
  rep.minvecs = minimum_and_minimal_vectors(h);
  if (!is_perfect(rep.minvecs, h.n())) throw InvariantViolation("form is not perfect");
  rep.domain = PolyCone::build(rep.minvecs, h.n());
  // For n = 1 the only facet is the origin, which lies in the boundary.
  if (h.n() > 1) rep.facets = facets(rep.domain);
  rep.stabilizer = automorphisms(rep.marking(), GroupKind::GL);
  return rep;
}

QForm neighbor(const QForm& h, const MinVecSet& m, const FacetRec& f) {
  const std::size_t n = h.n();
  std::vector<IntVec> on_facet;
  for (const auto& x : m.vectors)
    if (sgn(evaluate(f.normal, x)) == 0) on_facet.push_back(x);
  if (meets_boundary(on_facet, n)) throw BoundaryFacet("facet meets the boundary of the positive cone");

  const RatMat g = to_rational(h.gram()), nm = to_rational(f.normal);
  const Rat mu(m.min_value);
  auto along = [&](const Rat& rho) {
    RatMat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = g(i, j) + rho * nm(i, j);
    return out;
  };

  Rat lo = 0, hi = 0, rho = 1;
  bool have_hi = false;
  for (;;) {
    RatMat hr = along(rho);
    if (!is_positive_definite(hr)) {
      hi = rho;
      have_hi = true;
      rho = (lo + hi) / 2;
      continue;
    }
    // Only vectors with N(v) < 0 can drop to mu or below; the facet vectors
    // stay at mu. Any v with a smaller critical value is already in the list.
    bool fresh = false;
    Rat crit;
    for (const auto& v : short_vectors(hr, mu)) {
      Int nv = evaluate(f.normal, v);
      if (sgn(nv) >= 0) continue;
      Rat r = Rat(h(v) - m.min_value) / Rat(-nv);
      if (!fresh || r < crit) crit = r;
      fresh = true;
    }
    if (!fresh) {
      lo = rho;
      rho = have_hi ? Rat((lo + hi) / 2) : Rat(rho * 2);
      continue;
    }
    QForm out = QForm::from_rational(along(crit));
    auto mm = minimum_and_minimal_vectors(out);
    if (!is_perfect(mm, n)) throw InvariantViolation("neighbour is not perfect");
    for (const auto& x : on_facet)
      if (!std::binary_search(mm.vectors.begin(), mm.vectors.end(), x))
        throw InvariantViolation("neighbour lost a facet vector");
    if (mm.vectors.size() <= on_facet.size()) throw InvariantViolation("neighbour has no new minimal vector");
    return out;
  }
}

std::optional<EquivWitness> is_equivalent(const QForm& h1, const QForm& h2, GroupKind kind) {
  if (h1.n() != h2.n()) return std::nullopt;
  auto m1 = minimum_and_minimal_vectors(h1);
  auto m2 = minimum_and_minimal_vectors(h2);
  if (m1.vectors.size() != m2.vectors.size()) return std::nullopt;
  auto g = find_isometry(form_marking(h1, m1), form_marking(h2, m2), kind);
  if (!g) return std::nullopt;
  // QForm stores primitive Gram matrices, so the scale is exactly 1.
  return EquivWitness{*g, Rat(1)};
}

std::vector<GroupElement> stabilizer(const PerfectFormRep& h, GroupKind kind) {
  if (kind == GroupKind::GL) return h.stabilizer;
  std::vector<GroupElement> out;
  for (const auto& g : h.stabilizer)
    if (g.det() == 1) out.push_back(g);
  return out;
}

std::vector<GroupElement> facet_stabilizer(const std::vector<IntVec>& face, GroupKind kind) {
  return automorphisms(face_marking(face), kind);
}

QForm canonical_representative(const QForm& h, std::uint64_t seed) {
  const std::size_t n = h.n();
  auto m = minimum_and_minimal_vectors(h);
  std::vector<IntVec> order = m.vectors;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::optional<IntMat> best;
  for (std::size_t s = 0; s < order.size(); ++s) {
    std::vector<IntVec> basis{order[s]};
    for (std::size_t k = 0; k < order.size() && basis.size() < n; ++k) {
      if (k == s) continue;
      basis.push_back(order[k]);
      if (rank(IntMat::from_rows(basis, n)) != basis.size()) basis.pop_back();
    }
    if (basis.size() != n) continue;
    IntMat b = IntMat::from_rows(basis, n).transpose();
    Int d = determinant(b);
    if (d != 1 && d != -1) continue;
    IntMat cand = b.transpose() * h.gram() * b;
    if (!best || cand < *best) best = std::move(cand);
  }
  return best ? QForm(*best) : h;
}

std::vector<IntVec> vectors_of(const PolyCone& c, const RaySet& face) {
  std::vector<IntVec> out;
  for (auto i : face.indices()) out.push_back(c.vector(i));
  return out;
}

RaySet rays_of(const PolyCone& c, const std::vector<IntVec>& vectors) {
  RaySet s;
  for (const auto& v : vectors) {
    long i = c.find(v);
    if (i < 0) return RaySet{};
    s.insert(static_cast<std::size_t>(i));
  }
  return s;
}

RaySet image_of(const GroupElement& g, const PolyCone& c, const RaySet& face) {
  RaySet s;
  for (auto i : face.indices()) {
    long j = c.find(g.apply(c.vector(i)));
    if (j < 0) return RaySet{};
    s.insert(static_cast<std::size_t>(j));
  }
  return s;
}

FaceOrbits face_orbits(const PolyCone& c, const std::vector<RaySet>& faces, const std::vector<GroupElement>& group) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::unordered_map<RaySet, std::size_t, RaySetHash> index;
  for (std::size_t i = 0; i < faces.size(); ++i) index.emplace(faces[i], i);
  std::vector<std::vector<long>> perms;
  perms.reserve(group.size());
  for (const auto& g : group) perms.push_back(permutation_of(g, c.vectors()));
  std::size_t id = kNone;
  for (std::size_t k = 0; k < group.size(); ++k)
    if (group[k] == GroupElement::identity(c.n())) id = k;
  if (id == kNone) throw InvariantViolation("group does not contain the identity");

  FaceOrbits out;
  out.orbit_of.assign(faces.size(), kNone);
  out.transporter.assign(faces.size(), kNone);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (out.orbit_of[f] != kNone) continue;
    const std::size_t orbit = out.representative.size();
    out.representative.push_back(f);
    out.orbit_of[f] = orbit;
    out.transporter[f] = id;
    for (std::size_t k = 0; k < group.size(); ++k) {
      RaySet img;
      for (auto r : faces[f].indices()) {
        if (perms[k][r] < 0) throw InvariantViolation("group element does not preserve the cone");
        img.insert(static_cast<std::size_t>(perms[k][r]));
      }
      auto it = index.find(img);
      if (it == index.end()) throw InvariantViolation("group element does not preserve the face list");
      if (out.orbit_of[it->second] == kNone) {
        out.orbit_of[it->second] = orbit;
        out.transporter[it->second] = k;
      } else if (out.orbit_of[it->second] != orbit) {
        throw InvariantViolation("face orbits overlap");
      }
    }
  }
  return out;
}

const GraphEdge& VoronoiGraph::edge(std::size_t from, std::size_t facet) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(from, facet),
                             [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& key) {
                               return std::make_pair(e.from, e.facet) < key;
                             });
  if (it == edges.end() || it->from != from || it->facet != facet) throw IndexOutOfRange("no such edge");
  return *it;
}

namespace {

std::string class_name(const QForm& h, std::size_t& unnamed) {
  const std::size_t n = h.n();
  if (is_equivalent(h, root_form_a(n))) return "A" + std::to_string(n);
  if (n >= 4 && is_equivalent(h, root_form_d(n))) return "D" + std::to_string(n);
  return "P" + std::to_string(n) + "." + std::to_string(++unnamed);
}

}  // namespace

VoronoiGraph enumerate_perfect_forms(std::size_t n, const EnumerationOptions& opts) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  VoronoiGraph graph;
  graph.n = n;
  graph.nodes.push_back(make_rep(canonical_representative(root_form_a(n), opts.seed_perm)));

  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    std::vector<RaySet> faces;
    for (const auto& f : graph.nodes[i].facets) faces.push_back(f.incident);
    auto orbits = face_orbits(graph.nodes[i].domain, faces, graph.nodes[i].stabilizer);
    for (std::size_t o = 0; o < orbits.count(); ++o) {
      const PerfectFormRep& node = graph.nodes[i];
      const FacetRec& f = node.facets[orbits.representative[o]];
      if (meets_boundary(node.domain, f.incident)) throw InvariantViolation("facet of a top cell meets the boundary");
      QForm nb = neighbor(node, f);
      std::optional<std::size_t> target;
      GroupElement w;
      for (std::size_t j = 0; j < graph.nodes.size() && !target; ++j)
        if (auto e = is_equivalent(graph.nodes[j].form, nb)) {
          target = j;
          w = e->g;
        }
      if (!target) {
        graph.nodes.push_back(make_rep(canonical_representative(nb, opts.seed_perm)));
        target = graph.nodes.size() - 1;
        auto e = is_equivalent(graph.nodes.back().form, nb);
        if (!e) throw InvariantViolation("canonical representative is not equivalent to its source");
        w = e->g;
      }
      const PerfectFormRep& here = graph.nodes[i];
      for (std::size_t k = 0; k < faces.size(); ++k)
        if (orbits.orbit_of[k] == o)
          graph.edges.push_back(GraphEdge{i, k, *target, here.stabilizer[orbits.transporter[k]] * w});
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::make_pair(a.from, a.facet) < std::make_pair(b.from, b.facet);
  });
  std::size_t unnamed = 0;
  for (auto& node : graph.nodes) node.name = class_name(node.form, unnamed);
  return graph;
}

bool stabilizer_in_sl(const PerfectFormRep& h) {
  return std::all_of(h.stabilizer.begin(), h.stabilizer.end(), [](const GroupElement& g) { return g.det() == 1; });
}

std::size_t class_count(const VoronoiGraph& g, GroupKind kind) {
  if (kind == GroupKind::GL) return g.nodes.size();
  std::size_t c = 0;
  for (const auto& node : g.nodes) c += stabilizer_in_sl(node) ? 2 : 1;
  return c;
}

}  // namespace vorcycle
