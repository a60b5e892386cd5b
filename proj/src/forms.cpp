#include "vorcycle/forms.hpp"

#include <algorithm>
#include <utility>

#include "vorcycle/errors.hpp"

namespace vorcycle {

IntVec flatten(const IntMat& sym) {
  const std::size_t n = sym.rows();
  IntVec out;
  out.reserve(form_space_dim(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(sym(i, j));
  return out;
}

IntMat unflatten(const IntVec& coords, std::size_t n) {
  if (coords.size() != form_space_dim(n)) throw std::invalid_argument("unflatten: wrong length");
  IntMat m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      m(i, j) = coords[k];
      m(j, i) = coords[k];
    }
  return m;
}

Int trace_pairing(const IntMat& a, const IntMat& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

Int evaluate(const IntMat& q, const IntVec& x) { return bilinear(q, x, x); }

Rat evaluate(const RatMat& q, const IntVec& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) s += q(i, j) * x[i] * x[j];
  return s;
}

Int bilinear(const IntMat& q, const IntVec& x, const IntVec& y) {
  Int s = 0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < q.cols(); ++j) s += q(i, j) * x[i] * y[j];
  }
  return s;
}

IntMat rank_one(const IntVec& x) {
  if (std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; }))
    throw ZeroVector("rank_one of the zero vector");
  IntMat m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * x[j];
  return m;
}

IntVec pairing_row(const IntVec& x) {
  const std::size_t n = x.size();
  IntVec out;
  out.reserve(form_space_dim(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(i == j ? Int(x[i] * x[i]) : Int(2 * x[i] * x[j]));
  return out;
}

bool is_canonical(const IntVec& x) {
  for (const auto& v : x)
    if (sgn(v) != 0) return sgn(v) > 0;
  return false;
}

IntVec canonical_sign(IntVec x) {
  for (const auto& v : x) {
    if (sgn(v) == 0) continue;
    if (sgn(v) < 0)
      for (auto& y : x) y = -y;
    break;
  }
  return x;
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(IntMat m) : m_(std::move(m)) {
  if (!m_.square()) throw std::invalid_argument("group element must be square");
  Int d = determinant(m_);
  if (d == 1)
    det_ = 1;
  else if (d == -1)
    det_ = -1;
  else
    throw std::invalid_argument("group element is not unimodular");
}

GroupElement GroupElement::identity(std::size_t n) { return GroupElement(IntMat::identity(n)); }

GroupElement GroupElement::inverse() const {
  RatMat inv = vorcycle::inverse(to_rational(m_));
  IntMat out(inv.rows(), inv.cols());
  for (std::size_t r = 0; r < inv.rows(); ++r)
    for (std::size_t c = 0; c < inv.cols(); ++c) out(r, c) = inv(r, c).get_num();
  return GroupElement(std::move(out));
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  GroupElement g;
  g.m_ = a.m_ * b.m_;
  g.det_ = a.det_ * b.det_;
  return g;
}

IntMat act(const GroupElement& g, const IntMat& q) {
  const IntMat inv = g.inverse().matrix();
  return inv.transpose() * q * inv;
}

IntMat act_on_rays(const GroupElement& g, const IntMat& x) { return g.matrix() * x * g.matrix().transpose(); }

IntMat congruence(const GroupElement& g, const IntMat& x) { return g.matrix().transpose() * x * g.matrix(); }

// ---------------------------------------------------------------------------

namespace {

// Fincke-Pohst coefficients: q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 with
// d_i stored on the diagonal and u_ij above it. Returns false if some d_i <= 0.
bool ldl_coefficients(const RatMat& a, RatMat& q) {
  const std::size_t n = a.rows();
  q = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(q(i, i)) <= 0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(const RatMat& q, const Rat& bound) : q_(q), n_(q.rows()), x_(n_), bound_(bound) {}

  std::vector<IntVec> run() {
    if (n_ == 0 || sgn(bound_) <= 0) return {};
    recurse(n_ - 1, bound_, true);
    return std::move(out_);
  }

 private:
  void recurse(std::size_t i, const Rat& budget, bool higher_zero) {
    Rat center = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (sgn(x_[j]) != 0) center -= q_(i, j) * x_[j];
    Int lo;
    mpz_fdiv_q(lo.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
    Rat diff, used;
    auto visit = [&](const Int& v) -> bool {
      diff = Rat(v) - center;
      used = q_(i, i) * diff * diff;
      if (used > budget) return false;
      x_[i] = v;
      if (i == 0) {
        if (!(higher_zero && sgn(v) == 0)) out_.push_back(canonical_sign(x_));
      } else {
        Rat rest = budget - used;
        recurse(i - 1, rest, higher_zero && sgn(v) == 0);
      }
      return true;
    };
    // With all higher coordinates zero the center is 0; x and -x are paired, so
    // only the nonnegative half is visited at this level.
    for (Int v = lo + 1;; ++v)
      if (!visit(v)) break;
    for (Int v = lo;; --v) {
      if (higher_zero && sgn(v) < 0) break;
      if (!visit(v)) break;
    }
    x_[i] = 0;
  }

  const RatMat& q_;
  std::size_t n_;
  IntVec x_;
  Rat bound_;
  std::vector<IntVec> out_;
};

}  // namespace

bool is_positive_definite(const RatMat& sym) {
  RatMat q;
  return ldl_coefficients(sym, q);
}

bool is_positive_definite(const IntMat& sym) { return is_positive_definite(to_rational(sym)); }

std::vector<IntVec> short_vectors(const RatMat& a, const Rat& bound) {
  RatMat q;
  if (!ldl_coefficients(a, q)) throw NotPositiveDefinite("form has a nonpositive leading minor");
  auto vs = Enumerator(q, bound).run();
  std::sort(vs.begin(), vs.end());
  return vs;
}

std::vector<IntVec> short_vectors(const IntMat& a, const Rat& bound) { return short_vectors(to_rational(a), bound); }

QForm::QForm(IntMat gram) : gram_(std::move(gram)) {
  if (!gram_.square()) throw std::invalid_argument("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
  if (!is_positive_definite(gram_)) throw NotPositiveDefinite("leading principal minor <= 0");
  Int g = content(gram_.data());
  if (g > 1)
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      for (std::size_t j = 0; j < gram_.cols(); ++j)
        mpz_divexact(gram_(i, j).get_mpz_t(), gram_(i, j).get_mpz_t(), g.get_mpz_t());
}

QForm QForm::from_rational(const RatMat& gram) {
  Int l = 1;
  for (const auto& v : gram.data()) l = lcm(l, v.get_den());
  IntMat m(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      Int q = gram(i, j).get_num() * l;
      mpz_divexact(m(i, j).get_mpz_t(), q.get_mpz_t(), gram(i, j).get_den_mpz_t());
    }
  return QForm(std::move(m));
}

MinVecSet minimum_and_minimal_vectors(const QForm& h) {
  const IntMat& g = h.gram();
  Int bound = g(0, 0);
  for (std::size_t i = 1; i < h.n(); ++i) bound = std::min(bound, Int(g(i, i)));
  // Every x with h(x) <= min_i h(e_i) is enumerated, so the minimum and the full
  // set of minimal vectors are certified.
  auto candidates = short_vectors(g, Rat(bound));
  MinVecSet out;
  out.min_value = bound;
  for (const auto& x : candidates) out.min_value = std::min(out.min_value, h(x));
  for (auto& x : candidates)
    if (h(x) == out.min_value) out.vectors.push_back(std::move(x));
  return out;
}

bool is_perfect(const MinVecSet& m, std::size_t n) {
  if (m.vectors.size() < form_space_dim(n)) return false;
  IntMat rows(m.vectors.size(), form_space_dim(n));
  for (std::size_t r = 0; r < m.vectors.size(); ++r) {
    IntVec f = flatten(rank_one(m.vectors[r]));
    for (std::size_t c = 0; c < f.size(); ++c) rows(r, c) = f[c];
  }
  return rank(rows) == form_space_dim(n);
}

bool is_perfect(const QForm& h) { return is_perfect(minimum_and_minimal_vectors(h), h.n()); }

QForm root_form_a(std::size_t n) {
  IntMat g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return QForm(std::move(g));
}

QForm root_form_d(std::size_t n) {
  // Basis b0 = e1+e2, b1 = e1-e2, b_k = e_k - e_{k+1} for k >= 2 (1-based e).
  std::vector<IntVec> basis;
  IntVec v(n);
  v[0] = 1;
  v[1] = 1;
  basis.push_back(v);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    IntVec w(n);
    w[k] = 1;
    w[k + 1] = -1;
    basis.push_back(w);
  }
  IntMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < n; ++k) s += basis[i][k] * basis[j][k];
      g(i, j) = s;
    }
  return QForm(std::move(g));
}

}  // namespace vorcycle
