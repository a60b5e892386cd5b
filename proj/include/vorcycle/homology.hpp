#pragma once

#include <string>
#include <vector>

#include "vorcycle/complex.hpp"

namespace vorcycle {

/// Rational chain on top cells; cells[i] indexes VoronoiComplex::cells.
struct Chain {
  std::vector<std::size_t> cells;
  std::vector<Rat> coefficients;
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// lambda_sigma = 1 / |Gamma_sigma| on every cell of top_sigma.
Chain canonical_cycle(const VoronoiComplex& c);
/// d(x), indexed like facet_sigma.
RatVec boundary(const VoronoiComplex& c, const Chain& x);

/// Products lambda_j * A_ij of one row; they cancel in pairs.
struct RowCertificate {
  std::size_t facet_class = 0;
  std::vector<std::pair<std::size_t, Rat>> terms;
  friend bool operator==(const RowCertificate&, const RowCertificate&) = default;
};

struct TheoremReport {
  std::size_t n = 0;
  GroupKind kind = GroupKind::GL;
  /// "top_cycle" or "no_top_cycle".
  std::string claim;
  std::size_t kernel_dim = 0;
  bool canonical_in_kernel = false;
  bool kernel_spanned_by_canonical = false;
  std::vector<RatVec> kernel_basis;
  Chain canonical;
  std::vector<RowCertificate> certificates;
  std::vector<LemmaCheck> checks;

  bool verified() const;
};

bool operator==(const LemmaCheck& a, const LemmaCheck& b);
bool operator==(const TheoremReport& a, const TheoremReport& b);

/// Requires an orientation preserving group: SL, or GL with n odd.
/// Throws WrongGroupParity otherwise.
TheoremReport verify_top_cycle(const VoronoiComplex& c);
/// Requires GL with n even; throws WrongGroupParity otherwise.
TheoremReport verify_gl_even_vanishing(const VoronoiComplex& c);
/// Dispatches on group and parity.
TheoremReport verify(const VoronoiComplex& c);

}  // namespace vorcycle
