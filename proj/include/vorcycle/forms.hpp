#pragma once

#include <cstddef>
#include <vector>

#include "vorcycle/exact.hpp"

namespace vorcycle {

// ---------------------------------------------------------------------------
// Form space. A symmetric n x n matrix is stored either in full or as its
// upper triangle (i <= j, row major) without doubling the off-diagonal entries.
// The trace pairing tr(AB) is computed explicitly, never as a dot product of
// flattened coordinates.
// ---------------------------------------------------------------------------

constexpr std::size_t form_space_dim(std::size_t n) { return n * (n + 1) / 2; }

IntVec flatten(const IntMat& sym);
IntMat unflatten(const IntVec& coords, std::size_t n);

/// tr(AB) for symmetric A, B.
Int trace_pairing(const IntMat& a, const IntMat& b);

/// x^T Q x.
Int evaluate(const IntMat& q, const IntVec& x);
Rat evaluate(const RatMat& q, const IntVec& x);
/// x^T Q y.
Int bilinear(const IntMat& q, const IntVec& x, const IntVec& y);

/// x x^T; identical for x and -x. Throws ZeroVector for x = 0.
IntMat rank_one(const IntVec& x);

/// Coefficients c with <N, x x^T> = c . flatten(N) for every symmetric N.
IntVec pairing_row(const IntVec& x);

/// Flip x so that its first nonzero coordinate is positive.
IntVec canonical_sign(IntVec x);
bool is_canonical(const IntVec& x);

// ---------------------------------------------------------------------------
// Group elements and the action on form space.
// ---------------------------------------------------------------------------

/// A unimodular integer matrix.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(IntMat m);

  static GroupElement identity(std::size_t n);

  const IntMat& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  int det() const { return det_; }

  GroupElement inverse() const;
  IntVec apply(const IntVec& x) const { return m_ * x; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m_ == b.m_; }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.m_ < b.m_; }

 private:
  IntMat m_;
  int det_ = 1;
};

/// g . Q = g^{-T} Q g^{-1}. Under this convention m(g . h) = g m(h), so the
/// Voronoi domain of g . h is the image of the domain of h under act_on_rays.
IntMat act(const GroupElement& g, const IntMat& q);

/// g . X = g X g^T on the space spanned by the rank-one matrices x x^T.
IntMat act_on_rays(const GroupElement& g, const IntMat& x);

/// The transformation X -> g^T X g.
IntMat congruence(const GroupElement& g, const IntMat& x);

// ---------------------------------------------------------------------------
// Quadratic forms, minima and minimal vectors.
// ---------------------------------------------------------------------------

/// Positive definite integral form, normalised to coprime entries.
class QForm {
 public:
  QForm() = default;
  /// Normalises by the content; throws NotPositiveDefinite.
  explicit QForm(IntMat gram);
  static QForm from_rational(const RatMat& gram);

  std::size_t n() const { return gram_.rows(); }
  const IntMat& gram() const { return gram_; }
  Int operator()(const IntVec& x) const { return evaluate(gram_, x); }

  friend bool operator==(const QForm& a, const QForm& b) { return a.gram_ == b.gram_; }
  friend bool operator<(const QForm& a, const QForm& b) { return a.gram_ < b.gram_; }

 private:
  IntMat gram_;
};

bool is_positive_definite(const IntMat& sym);
bool is_positive_definite(const RatMat& sym);

/// Minimal vectors stored once per antipodal pair (first nonzero entry positive),
/// sorted lexicographically.
struct MinVecSet {
  std::vector<IntVec> vectors;
  Int min_value;
};

/// All nonzero x with q(x) <= bound, one per antipodal pair, via exact
/// Fincke-Pohst enumeration over an LDL^T decomposition.
std::vector<IntVec> short_vectors(const RatMat& q, const Rat& bound);
std::vector<IntVec> short_vectors(const IntMat& q, const Rat& bound);

MinVecSet minimum_and_minimal_vectors(const QForm& h);

bool is_perfect(const MinVecSet& m, std::size_t n);
bool is_perfect(const QForm& h);

/// Gram matrix of the root form A_n (2 on the diagonal, -1 off the diagonal band).
QForm root_form_a(std::size_t n);
/// Gram matrix of D_n in the basis e1+e2, e1-e2, e2-e3, ..., e_{n-1}-e_n.
QForm root_form_d(std::size_t n);

}  // namespace vorcycle
