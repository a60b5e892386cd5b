#include "vorcycle/exact.hpp"

#include <algorithm>
#include <utility>

#include "vorcycle/errors.hpp"

namespace vorcycle {

namespace {

struct Echelon {
  IntMat m;
  std::vector<std::size_t> pivots;
  int swaps = 0;
};

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// One-step Bareiss elimination to row echelon form. Every intermediate entry is
// a minor of the input, so the division by the previous pivot is exact.
Echelon bareiss(IntMat m) {
  Echelon out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Int prev = 1;
  Int t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      swap_rows(m, p, r);
      ++out.swaps;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = m(r, c) * m(i, j);
        t -= m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    // Entries of the pivot row to the right keep their scale; entries to the
    // left of c below row r are zero already.
    prev = m(r, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

void divide_row_by_content(IntMat& m, std::size_t r) {
  Int g = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    g = gcd(g, m(r, c));
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_divexact(m(r, c).get_mpz_t(), m(r, c).get_mpz_t(), g.get_mpz_t());
}

RatVec normalized_integral(IntVec v) {
  IntVec p = primitive(v);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (sgn(*it) != 0) {
      if (sgn(*it) < 0)
        for (auto& x : p) x = -x;
      break;
    }
  }
  RatVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
  return out;
}

}  // namespace

IntMat clear_row_denominators(const RatMat& m) {
  IntMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).get_den());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Int q = m(r, c).get_num() * l;
      mpz_divexact(out(r, c).get_mpz_t(), q.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
  }
  return out;
}

RatMat to_rational(const IntMat& m) {
  RatMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rat(m(r, c));
  return out;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVec primitive(const IntVec& v) {
  Int g = content(v);
  if (g <= 1) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int q = v[i].get_num() * l;
    mpz_divexact(out[i].get_mpz_t(), q.get_mpz_t(), v[i].get_den_mpz_t());
  }
  return primitive(out);
}

std::size_t rank(const IntMat& m) { return bareiss(m).pivots.size(); }
std::size_t rank(const RatMat& m) { return rank(clear_row_denominators(m)); }

std::vector<RatVec> kernel_basis(const IntMat& input) {
  Echelon e = bareiss(input);
  IntMat& m = e.m;
  const std::size_t r = e.pivots.size();
  // Back elimination: clear each pivot column above its pivot.
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(m(i, pc)) == 0) continue;
      Int a = m(k, pc), b = m(i, pc);
      for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = a * m(i, c) - b * m(k, c);
      divide_row_by_content(m, i);
    }
  }
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Int l = 1;
  for (std::size_t k = 0; k < r; ++k) l = lcm(l, m(k, e.pivots[k]));
  l = abs(l);

  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    IntVec v(m.cols());
    v[f] = l;
    for (std::size_t k = 0; k < r; ++k) {
      Int q = m(k, f) * l;
      mpz_divexact(v[e.pivots[k]].get_mpz_t(), q.get_mpz_t(), m(k, e.pivots[k]).get_mpz_t());
      v[e.pivots[k]] = -v[e.pivots[k]];
    }
    basis.push_back(normalized_integral(std::move(v)));
  }
  return basis;
}

std::vector<RatVec> kernel_basis(const RatMat& m) { return kernel_basis(clear_row_denominators(m)); }

Int determinant(const IntMat& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  Echelon e = bareiss(m);
  if (e.pivots.size() < m.rows()) return 0;
  Int d = e.m(m.rows() - 1, m.cols() - 1);
  return (e.swaps % 2) ? Int(-d) : d;
}

Rat determinant(const RatMat& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  Rat scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).get_den());
    scale *= Rat(l);
  }
  Rat d(determinant(clear_row_denominators(m)));
  d /= scale;
  return d;
}

Sign det_sign(const IntMat& m) { return sign_of(determinant(m)); }
Sign det_sign(const RatMat& m) { return det_sign(clear_row_denominators(m)); }

std::vector<std::size_t> independent_rows(const IntMat& m) { return bareiss(m.transpose()).pivots; }

namespace {

IntMat stack(const IntMat& a, const IntMat& b) {
  IntMat out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

}  // namespace

Sign relative_orientation(const IntMat& b1, const IntMat& b2) {
  if (b1.cols() != b2.cols() || b1.rows() != b2.rows())
    throw SpanMismatch("bases have different shapes");
  const std::size_t k = b1.rows(), dim = b1.cols();
  if (rank(b1) != k || rank(b2) != k) throw SpanMismatch("rows are not linearly independent");
  if (rank(stack(b1, b2)) != k) throw SpanMismatch("bases span different subspaces");
  if (k == 0) return Sign::Positive;
  // Complete b1 by standard basis vectors; the same completion works for b2.
  IntMat ext = stack(b1, IntMat::identity(dim));
  std::vector<std::size_t> pick = independent_rows(ext);
  IntMat w(dim - k, dim);
  std::size_t wi = 0;
  for (auto p : pick) {
    if (p < k) continue;
    for (std::size_t c = 0; c < dim; ++c) w(wi, c) = ext(p, c);
    ++wi;
  }
  return det_sign(stack(b1, w)) * det_sign(stack(b2, w));
}

Sign relative_orientation(const RatMat& b1, const RatMat& b2) {
  return relative_orientation(clear_row_denominators(b1), clear_row_denominators(b2));
}

RatMat inverse(const RatMat& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMat m = a;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVec solve(const RatMat& a, const RatVec& b) { return inverse(a) * b; }

std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace vorcycle
