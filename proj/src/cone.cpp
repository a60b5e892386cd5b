#include "vorcycle/cone.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "vorcycle/errors.hpp"

namespace vorcycle {

RaySet RaySet::first(std::size_t count) {
  if (count > kCapacity) throw std::length_error("RaySet capacity exceeded");
  RaySet s;
  for (std::size_t i = 0; i < count; ++i) s.insert(i);
  return s;
}

std::vector<std::size_t> RaySet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 2; ++k) {
    std::uint64_t w = w_[k];
    while (w) {
      out.push_back(k * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

PolyCone PolyCone::from_vectors(std::vector<IntVec> vectors, std::size_t n) {
  if (vectors.size() > RaySet::kCapacity) throw std::length_error("too many rays");
  PolyCone c;
  c.n_ = n;
  for (auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("ray vector has wrong dimension");
    v = canonical_sign(std::move(v));
  }
  std::sort(vectors.begin(), vectors.end());
  if (std::adjacent_find(vectors.begin(), vectors.end()) != vectors.end())
    throw std::invalid_argument("rays must be pairwise non-proportional");
  c.vectors_ = std::move(vectors);
  for (const auto& v : c.vectors_) {
    c.rays_.push_back(flatten(rank_one(v)));
    c.pairing_.push_back(pairing_row(v));
  }
  return c;
}

PolyCone PolyCone::build(const MinVecSet& m, std::size_t n) {
  if (m.vectors.empty()) throw NotFullDim("no minimal vectors");
  // Rank-one positive semidefinite matrices span extreme rays of the
  // semidefinite cone, so distinct x x^T are extreme in any cone they generate.
  PolyCone c = from_vectors(m.vectors, n);
  if (ray_rank(c, c.all()) != c.ambient_dim())
    throw NotFullDim("rays span a proper subspace of the form space");
  return c;
}

long PolyCone::find(const IntVec& x) const {
  IntVec y = canonical_sign(x);
  auto it = std::lower_bound(vectors_.begin(), vectors_.end(), y);
  if (it == vectors_.end() || *it != y) return -1;
  return static_cast<long>(it - vectors_.begin());
}

IntMat ray_matrix(const PolyCone& c, const RaySet& s) {
  auto idx = s.indices();
  IntMat m(idx.size(), c.ambient_dim());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t k = 0; k < c.ambient_dim(); ++k) m(r, k) = c.ray(idx[r])[k];
  return m;
}

std::size_t ray_rank(const PolyCone& c, const RaySet& s) { return rank(ray_matrix(c, s)); }

namespace {

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<DualRay> double_description(const IntMat& a) {
  const std::size_t m = a.rows(), d = a.cols();
  if (m > RaySet::kCapacity) throw std::length_error("too many constraints");
  auto basis_rows = independent_rows(a);
  if (basis_rows.size() != d) throw NotFullDim("constraint matrix is not of full rank");

  // Initial simplicial cone: the rays are the columns of the inverse of the
  // selected rows, each tight on all selected constraints but one.
  RatMat sub(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) sub(r, c) = Rat(a(basis_rows[r], c));
  RatMat inv = inverse(sub);
  std::vector<DualRay> rays;
  RaySet processed;
  for (auto r : basis_rows) processed.insert(r);
  for (std::size_t j = 0; j < d; ++j) {
    DualRay ray;
    ray.coords = primitive(inv.col(j));
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) ray.zeros.insert(basis_rows[k]);
    rays.push_back(std::move(ray));
  }

  std::vector<Int> val;
  for (std::size_t i = 0; i < m; ++i) {
    if (processed.contains(i)) continue;
    const IntVec ai = a.row(i);
    val.assign(rays.size(), Int());
    std::vector<std::size_t> pos, neg;
    std::vector<DualRay> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(ai, rays[r].coords);
      int s = sgn(val[r]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
      if (s >= 0) {
        DualRay kept = rays[r];
        if (s == 0) kept.zeros.insert(i);
        next.push_back(std::move(kept));
      }
    }
    for (auto p : pos)
      for (auto q : neg) {
        RaySet common = rays[p].zeros & rays[q].zeros;
        if (common.size() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        DualRay fresh;
        fresh.coords.resize(d);
        for (std::size_t k = 0; k < d; ++k)
          fresh.coords[k] = val[p] * rays[q].coords[k] - val[q] * rays[p].coords[k];
        fresh.coords = primitive(fresh.coords);
        fresh.zeros = common;
        fresh.zeros.insert(i);
        next.push_back(std::move(fresh));
      }
    rays = std::move(next);
    processed.insert(i);
  }
  std::sort(rays.begin(), rays.end(), [](const DualRay& x, const DualRay& y) { return x.zeros < y.zeros; });
  return rays;
}

std::vector<FacetRec> facets(const PolyCone& c) {
  const std::size_t dim = c.ambient_dim();
  IntMat a(c.ray_count(), dim);
  for (std::size_t r = 0; r < c.ray_count(); ++r)
    for (std::size_t k = 0; k < dim; ++k) a(r, k) = c.pairing(r)[k];
  auto dual = double_description(a);
  std::vector<FacetRec> out;
  out.reserve(dual.size());
  for (auto& d : dual) out.push_back(FacetRec{unflatten(d.coords, c.n()), d.zeros});
  // A ray is extreme iff the normals of the facets through it cut out a line.
  for (std::size_t r = 0; r < c.ray_count(); ++r) {
    std::vector<IntVec> normals;
    for (const auto& f : out)
      if (f.incident.contains(r)) normals.push_back(flatten(f.normal));
    if (normals.size() + 1 < dim || rank(IntMat::from_rows(normals, dim)) + 1 != dim)
      throw InvariantViolation("listed ray is not extreme");
  }
  return out;
}

bool meets_boundary(const std::vector<IntVec>& vectors, std::size_t n) {
  if (vectors.empty()) return true;
  return rank(IntMat::from_rows(vectors, n)) < n;
}

bool meets_boundary(const PolyCone& c, const RaySet& face) {
  std::vector<IntVec> vs;
  for (auto i : face.indices()) vs.push_back(c.vector(i));
  return meets_boundary(vs, c.n());
}

std::vector<RaySet> faces_of_codim(const PolyCone& c, const std::vector<FacetRec>& facet_list, std::size_t k) {
  const std::size_t dim = c.ambient_dim();
  if (k > dim) throw std::invalid_argument("codimension exceeds ambient dimension");
  std::vector<RaySet> level{c.all()};
  for (std::size_t step = 1; step <= k; ++step) {
    std::set<RaySet> next;
    const std::size_t target = dim - step;
    for (const auto& face : level)
      for (const auto& f : facet_list) {
        RaySet cut = face & f.incident;
        if (cut == face || next.count(cut)) continue;
        if (ray_rank(c, cut) == target) next.insert(cut);
      }
    level.assign(next.begin(), next.end());
  }
  return level;
}

}  // namespace vorcycle
