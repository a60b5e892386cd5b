#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorcycle/forms.hpp"

namespace vorcycle {

enum class GroupKind { GL, SL };

std::string to_string(GroupKind k);
/// Accepts "gl"/"sl" in any case; throws std::invalid_argument otherwise.
GroupKind parse_group_kind(const std::string& s);

/// A set of vectors (one per antipodal pair) together with a positive definite
/// integral form that every sought map has to carry over.
struct MarkedSet {
  std::vector<IntVec> vectors;
  IntMat form;
};

/// Marking of a face by its vectors: the form is adj(sum x x^T) divided by its
/// content, the inverse of the barycenter up to scaling. Throws NotFullDim when
/// the vectors do not span Q^n.
MarkedSet face_marking(const std::vector<IntVec>& vectors);

/// Marking of a positive definite form by its minimal vectors.
MarkedSet form_marking(const QForm& h, const MinVecSet& m);

/// Some g with g.from.vectors = to.vectors (as sets of antipodal pairs) and
/// from.form = g^T to.form g; for SL only det g = 1 is accepted. Deterministic.
std::optional<GroupElement> find_isometry(const MarkedSet& from, const MarkedSet& to, GroupKind kind);

/// Every g with g.s.vectors = s.vectors and s.form = g^T s.form g, sorted.
std::vector<GroupElement> automorphisms(const MarkedSet& s, GroupKind kind);

/// Position of each vector of `vectors` under g, as indices into `vectors`
/// (up to sign); -1 where the image falls outside the set.
std::vector<long> permutation_of(const GroupElement& g, const std::vector<IntVec>& vectors);

}  // namespace vorcycle
