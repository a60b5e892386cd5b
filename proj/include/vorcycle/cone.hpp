#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "vorcycle/exact.hpp"
#include "vorcycle/forms.hpp"

namespace vorcycle {

/// Set of ray indices of a cone; at most 128 rays (enough for n <= 8).
class RaySet {
 public:
  static constexpr std::size_t kCapacity = 128;

  RaySet() = default;
  static RaySet first(std::size_t count);

  void insert(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  std::size_t size() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
  bool empty() const { return (w_[0] | w_[1]) == 0; }
  bool subset_of(const RaySet& o) const { return (w_[0] & ~o.w_[0]) == 0 && (w_[1] & ~o.w_[1]) == 0; }
  std::vector<std::size_t> indices() const;

  friend RaySet operator&(const RaySet& a, const RaySet& b) {
    RaySet r;
    r.w_ = {a.w_[0] & b.w_[0], a.w_[1] & b.w_[1]};
    return r;
  }
  friend RaySet operator|(const RaySet& a, const RaySet& b) {
    RaySet r;
    r.w_ = {a.w_[0] | b.w_[0], a.w_[1] | b.w_[1]};
    return r;
  }
  friend bool operator==(const RaySet& a, const RaySet& b) { return a.w_ == b.w_; }
  friend bool operator<(const RaySet& a, const RaySet& b) { return a.w_ < b.w_; }

  std::size_t hash() const { return std::hash<std::uint64_t>{}(w_[0] * 0x9E3779B97F4A7C15ULL ^ w_[1]); }

 private:
  std::array<std::uint64_t, 2> w_{0, 0};
};

struct RaySetHash {
  std::size_t operator()(const RaySet& s) const { return s.hash(); }
};

/// Codimension-one face of a cone.
struct FacetRec {
  /// Primitive symmetric matrix N with N(x) = 0 on incident rays, N(x) > 0 otherwise.
  IntMat normal;
  RaySet incident;
};

/// Cone in form space spanned by rank-one matrices x x^T.
class PolyCone {
 public:
  PolyCone() = default;
  /// Throws NotFullDim unless the rays span the whole form space.
  static PolyCone build(const MinVecSet& m, std::size_t n);
  /// Cone spanned by arbitrary distinct (canonical) vectors; no dimension check.
  static PolyCone from_vectors(std::vector<IntVec> vectors, std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t ambient_dim() const { return form_space_dim(n_); }
  std::size_t ray_count() const { return vectors_.size(); }
  const std::vector<IntVec>& vectors() const { return vectors_; }
  const IntVec& vector(std::size_t i) const { return vectors_[i]; }
  /// Flattened x x^T of ray i.
  const IntVec& ray(std::size_t i) const { return rays_[i]; }
  /// Row c with c . flatten(N) = N(x) for ray i.
  const IntVec& pairing(std::size_t i) const { return pairing_[i]; }

  /// Index of the ray through x x^T, or -1.
  long find(const IntVec& x) const;
  RaySet all() const { return RaySet::first(vectors_.size()); }

 private:
  std::size_t n_ = 0;
  std::vector<IntVec> vectors_;
  std::vector<IntVec> rays_;
  std::vector<IntVec> pairing_;
};

/// Rank of the flattened rays in `s`.
std::size_t ray_rank(const PolyCone& c, const RaySet& s);
/// Matrix whose rows are the flattened rays of `s`, in index order.
IntMat ray_matrix(const PolyCone& c, const RaySet& s);

/// All facets of a full-dimensional pointed cone by the double description
/// method. Sorted by incident set.
std::vector<FacetRec> facets(const PolyCone& c);

/// Extreme rays of {c : a_i . c >= 0} for a full-rank integer matrix with rows a_i.
struct DualRay {
  IntVec coords;
  RaySet zeros;
};
std::vector<DualRay> double_description(const IntMat& a);

/// True iff the relative interior of the face spanned by x x^T, x in `vectors`,
/// meets the boundary of the positive definite cone, i.e. the vectors do not
/// span Q^n.
bool meets_boundary(const std::vector<IntVec>& vectors, std::size_t n);
bool meets_boundary(const PolyCone& c, const RaySet& face);

/// Faces of codimension k as ray sets (k = 0 gives the cone itself).
std::vector<RaySet> faces_of_codim(const PolyCone& c, const std::vector<FacetRec>& facet_list, std::size_t k);

}  // namespace vorcycle
