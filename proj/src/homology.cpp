#include "vorcycle/homology.hpp"

#include <algorithm>

#include "vorcycle/errors.hpp"

namespace vorcycle {

Chain canonical_cycle(const VoronoiComplex& c) {
  Chain x;
  for (auto k : c.top_sigma) {
    x.cells.push_back(k);
    x.coefficients.push_back(Rat(1, c.cells[k].stabilizer.size()));
  }
  return x;
}

namespace {

std::vector<Rat> coefficients_on_sigma(const VoronoiComplex& c, const Chain& x) {
  std::vector<Rat> lam(c.top_sigma.size());
  for (std::size_t i = 0; i < x.cells.size(); ++i) {
    auto it = std::find(c.top_sigma.begin(), c.top_sigma.end(), x.cells[i]);
    if (it == c.top_sigma.end()) throw IndexOutOfRange("chain is supported outside top_sigma");
    lam[static_cast<std::size_t>(it - c.top_sigma.begin())] += x.coefficients[i];
  }
  return lam;
}

bool proportional(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return std::any_of(a.begin(), a.end(), [](const Rat& r) { return sgn(r) != 0; }) ==
         std::any_of(b.begin(), b.end(), [](const Rat& r) { return sgn(r) != 0; });
}

bool all_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return sgn(r) == 0; });
}

TheoremReport base_report(const VoronoiComplex& c, std::string claim) {
  TheoremReport r;
  r.n = c.n;
  r.kind = c.kind;
  r.claim = std::move(claim);
  r.kernel_basis = kernel_basis(c.top.dense());
  r.kernel_dim = r.kernel_basis.size();
  r.canonical = canonical_cycle(c);
  const RatVec lam = coefficients_on_sigma(c, r.canonical);
  r.canonical_in_kernel = all_zero(boundary(c, r.canonical));
  r.kernel_spanned_by_canonical =
      r.kernel_dim == (c.top_sigma.empty() ? 0u : 1u) && (r.kernel_dim == 0 || proportional(r.kernel_basis[0], lam));
  const IntMat a = c.top.dense();
  for (std::size_t row = 0; row < a.rows(); ++row) {
    RowCertificate cert;
    cert.facet_class = c.facet_sigma[row];
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(row, j)) != 0) cert.terms.emplace_back(c.top_sigma[j], lam[j] * Rat(a(row, j)));
    r.certificates.push_back(std::move(cert));
  }
  r.checks = check_lemmas(c);
  return r;
}

bool orientation_preserving(const VoronoiComplex& c) { return c.kind == GroupKind::SL || c.n % 2 == 1; }

}  // namespace

RatVec boundary(const VoronoiComplex& c, const Chain& x) {
  const std::vector<Rat> lam = coefficients_on_sigma(c, x);
  RatVec out(c.top.rows);
  for (const auto& [r, col, v] : c.top.entries) out[r] += lam[col] * Rat(v);
  return out;
}

bool TheoremReport::verified() const {
  const bool lemmas = std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& l) { return l.ok; });
  if (claim == "no_top_cycle") return lemmas && kernel_dim == 0;
  return lemmas && kernel_dim == 1 && canonical_in_kernel && kernel_spanned_by_canonical;
}

bool operator==(const LemmaCheck& a, const LemmaCheck& b) {
  return a.name == b.name && a.ok == b.ok && a.detail == b.detail;
}

bool operator==(const TheoremReport& a, const TheoremReport& b) {
  return a.n == b.n && a.kind == b.kind && a.claim == b.claim && a.kernel_dim == b.kernel_dim &&
         a.canonical_in_kernel == b.canonical_in_kernel &&
         a.kernel_spanned_by_canonical == b.kernel_spanned_by_canonical && a.kernel_basis == b.kernel_basis &&
         a.canonical == b.canonical && a.certificates == b.certificates && a.checks == b.checks;
}

TheoremReport verify_top_cycle(const VoronoiComplex& c) {
  if (!orientation_preserving(c))
    throw WrongGroupParity("the top cycle needs SL, or GL in odd dimension");
  TheoremReport r = base_report(c, "top_cycle");

  LemmaCheck telescoping{"rows_cancel_term_by_term", true, {}};
  for (const auto& cert : r.certificates) {
    const FacetClass& cls = c.facet_classes[cert.facet_class];
    const Rat unit(1, cls.stabilizer.size());
    bool ok = cls.kind == FacetKind::SelfIntersecting ? cert.terms.empty() : cert.terms.size() == 2;
    for (const auto& [cell, value] : cert.terms) ok &= abs(value) == unit;
    if (ok && cert.terms.size() == 2) ok = cert.terms[0].second + cert.terms[1].second == 0;
    if (!ok && telescoping.ok) {
      telescoping.ok = false;
      telescoping.detail = "class " + std::to_string(cert.facet_class);
    }
  }
  r.checks.push_back(telescoping);

  // Any kernel vector has lambda_sigma |Gamma_sigma| constant across shared facets.
  LemmaCheck ratio{"kernel_ratio_along_edges", true, {}}, support{"kernel_full_support", true, {}};
  for (const auto& v : r.kernel_basis) {
    for (std::size_t j = 0; j < c.top_sigma.size(); ++j) {
      if (sgn(v[j]) == 0) {
        support.ok = false;
        support.detail = "zero coefficient on " + c.cells[c.top_sigma[j]].name;
      }
      const TopCell& cell = c.cells[c.top_sigma[j]];
      for (auto other : cell.across_cell) {
        auto it = std::find(c.top_sigma.begin(), c.top_sigma.end(), other);
        if (it == c.top_sigma.end()) continue;
        const std::size_t k = static_cast<std::size_t>(it - c.top_sigma.begin());
        if (v[j] * Rat(cell.stabilizer.size()) != v[k] * Rat(c.cells[other].stabilizer.size())) {
          ratio.ok = false;
          ratio.detail = cell.name + " / " + c.cells[other].name;
        }
      }
    }
  }
  r.checks.push_back(ratio);
  r.checks.push_back(support);
  return r;
}

TheoremReport verify_gl_even_vanishing(const VoronoiComplex& c) {
  if (c.kind != GroupKind::GL || c.n % 2 != 0)
    throw WrongGroupParity("vanishing is claimed for GL in even dimension");
  TheoremReport r = base_report(c, "no_top_cycle");
  LemmaCheck mech{"sigma_iff_stabilizer_in_sl", true, {}}, roots{"root_lattices_excluded", true, {}};
  for (const auto& cell : c.cells) {
    const bool in_sl = std::all_of(cell.stabilizer.begin(), cell.stabilizer.end(),
                                   [](const GroupElement& g) { return g.det() == 1; });
    if (cell.in_sigma != in_sl) {
      mech.ok = false;
      mech.detail = cell.name;
    }
    if ((cell.name[0] == 'A' || cell.name[0] == 'D') && cell.in_sigma) {
      roots.ok = false;
      roots.detail = cell.name;
    }
  }
  r.checks.push_back(mech);
  r.checks.push_back(roots);
  return r;
}

TheoremReport verify(const VoronoiComplex& c) {
  return orientation_preserving(c) ? verify_top_cycle(c) : verify_gl_even_vanishing(c);
}

}  // namespace vorcycle
