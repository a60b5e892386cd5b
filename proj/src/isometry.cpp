#include "vorcycle/isometry.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

#include "vorcycle/errors.hpp"

namespace vorcycle {

std::string to_string(GroupKind k) { return k == GroupKind::GL ? "gl" : "sl"; }

GroupKind parse_group_kind(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "gl") return GroupKind::GL;
  if (t == "sl") return GroupKind::SL;
  throw std::invalid_argument("unknown group kind '" + s + "' (expected gl or sl)");
}

MarkedSet face_marking(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) throw NotFullDim("empty face");
  const std::size_t n = vectors.front().size();
  IntMat b(n, n);
  for (const auto& x : vectors)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) += x[i] * x[j];
  Rat d = determinant(to_rational(b));
  if (sgn(d) == 0) throw NotFullDim("face vectors do not span");
  RatMat inv = inverse(to_rational(b));
  IntMat adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = inv(i, j) * d;
      adj(i, j) = v.get_num();
    }
  Int g = content(adj.data());
  for (auto& v : adj.data()) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return MarkedSet{vectors, std::move(adj)};
}

MarkedSet form_marking(const QForm& h, const MinVecSet& m) { return MarkedSet{m.vectors, h.gram()}; }

std::vector<long> permutation_of(const GroupElement& g, const std::vector<IntVec>& vectors) {
  std::vector<long> out(vectors.size(), -1);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    IntVec y = canonical_sign(g.apply(vectors[i]));
    auto it = std::lower_bound(vectors.begin(), vectors.end(), y);
    if (it != vectors.end() && *it == y) out[i] = it - vectors.begin();
  }
  return out;
}

namespace {

constexpr std::size_t kMaxN = 8;
using I64 = std::int64_t;
using I128 = __int128;
using SVec = std::array<I64, kMaxN>;

I64 narrow(const Int& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("isometry search: entry does not fit in 64 bits");
  return x.get_si();
}

I64 narrow128(I128 x) {
  if (x > std::numeric_limits<I64>::max() || x < std::numeric_limits<I64>::min())
    throw std::overflow_error("isometry search: intermediate value overflow");
  return static_cast<I64>(x);
}

SVec to_small(const IntVec& v) {
  SVec s{};
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = narrow(v[i]);
  return s;
}

SVec negate(SVec s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) s[i] = -s[i];
  return s;
}

SVec canonical(SVec s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) continue;
    return s[i] < 0 ? negate(s, n) : s;
  }
  return s;
}

// Exact determinant of a small integer matrix by Bareiss elimination in 128 bits.
I128 small_det(std::vector<I128> a, std::size_t n) {
  int sign = 1;
  I128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[p * n + c], a[k * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

class Search {
 public:
  Search(const MarkedSet& from, const MarkedSet& to, GroupKind kind) : kind_(kind) {
    n_ = from.form.rows();
    if (n_ == 0 || n_ > kMaxN) throw std::invalid_argument("isometry search: unsupported dimension");
    for (const auto& v : from.vectors) from_.push_back(to_small(v));
    for (const auto& v : to.vectors) {
      SVec s = to_small(v);
      to_sorted_.push_back(canonical(s, n_));
    }
    std::sort(to_sorted_.begin(), to_sorted_.end());
    for (const auto& v : to.vectors) to_all_.push_back(to_small(v));
    const std::size_t m = to_all_.size();
    for (std::size_t i = 0; i < m; ++i) to_all_.push_back(negate(to_all_[i], n_));
    qf_.assign(n_ * n_, 0);
    qt_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        qf_[i * n_ + j] = narrow(from.form(i, j));
        qt_[i * n_ + j] = narrow(to.form(i, j));
      }
    const std::size_t mm = to_all_.size();
    pt_.assign(mm * mm, 0);
    for (std::size_t a = 0; a < mm; ++a)
      for (std::size_t b = a; b < mm; ++b) pt_[a * mm + b] = pt_[b * mm + a] = pair(qt_, to_all_[a], to_all_[b]);
    choose_basis();
  }

  bool feasible() const { return basis_ok_; }

  // Enumerates maps; `visit` returns false to stop. With `positive_first`, the
  // first basis vector is sent only to the listed (canonical) target vectors.
  void run(bool positive_first, const std::function<bool(const std::vector<I64>&)>& visit) {
    if (!basis_ok_) return;
    chosen_.assign(n_, 0);
    visit_ = &visit;
    stop_ = false;
    positive_first_ = positive_first;
    recurse(0);
  }

  std::size_t n() const { return n_; }

 private:
  I64 pair(const std::vector<I64>& q, const SVec& x, const SVec& y) const {
    I128 s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) s += static_cast<I128>(q[i * n_ + j]) * x[i] * y[j];
    }
    return narrow128(s);
  }

  void choose_basis() {
    // Greedy selection of independent vectors; prefer vectors whose norm is
    // rare among the targets, which narrows the first levels of the search.
    std::vector<std::size_t> order(from_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::size_t> freq(from_.size(), 0);
    for (std::size_t i = 0; i < from_.size(); ++i) {
      I64 nf = pair(qf_, from_[i], from_[i]);
      for (const auto& t : to_all_)
        if (pair(qt_, t, t) == nf) ++freq[i];
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return freq[a] < freq[b]; });
    std::vector<IntVec> picked;
    for (auto idx : order) {
      IntVec v(n_);
      for (std::size_t k = 0; k < n_; ++k) v[k] = static_cast<long>(from_[idx][k]);
      picked.push_back(v);
      if (rank(IntMat::from_rows(picked, n_)) == picked.size())
        basis_.push_back(idx);
      else
        picked.pop_back();
      if (basis_.size() == n_) break;
    }
    basis_ok_ = basis_.size() == n_;
    if (!basis_ok_) return;
    // B has the basis vectors as columns; keep adj(B) and det(B).
    std::vector<I128> b(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) b[r * n_ + c] = from_[basis_[c]][r];
    det_b_ = small_det(b, n_);
    adj_b_.assign(n_ * n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        // adj(B)(r, c) = (-1)^{r+c} det of B without row c and column r.
        std::vector<I128> minor;
        for (std::size_t i = 0; i < n_; ++i) {
          if (i == c) continue;
          for (std::size_t j = 0; j < n_; ++j)
            if (j != r) minor.push_back(b[i * n_ + j]);
        }
        I128 d = n_ == 1 ? 1 : small_det(minor, n_ - 1);
        adj_b_[r * n_ + c] = ((r + c) % 2 == 0) ? d : -d;
      }
    gram_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) gram_[i * n_ + j] = pair(qf_, from_[basis_[i]], from_[basis_[j]]);
  }

  void recurse(std::size_t level) {
    if (stop_) return;
    if (level == n_) {
      leaf();
      return;
    }
    const std::size_t mm = to_all_.size();
    const std::size_t limit = (level == 0 && positive_first_) ? mm / 2 : mm;
    const I64 norm = gram_[level * n_ + level];
    for (std::size_t c = 0; c < limit && !stop_; ++c) {
      if (pt_[c * mm + c] != norm) continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = pt_[c * mm + chosen_[j]] == gram_[level * n_ + j];
      if (!ok) continue;
      chosen_[level] = c;
      recurse(level + 1);
    }
  }

  void leaf() {
    // g = C adj(B) / det(B), C with the chosen images as columns.
    std::vector<I64> g(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        I128 s = 0;
        for (std::size_t k = 0; k < n_; ++k) s += static_cast<I128>(to_all_[chosen_[k]][r]) * adj_b_[k * n_ + c];
        if (s % det_b_ != 0) return;
        g[r * n_ + c] = narrow128(s / det_b_);
      }
    std::vector<I128> g128(g.begin(), g.end());
    I128 d = small_det(g128, n_);
    if (d != 1 && d != -1) return;
    if (kind_ == GroupKind::SL && d != 1) return;
    for (const auto& f : from_) {
      SVec y{};
      for (std::size_t r = 0; r < n_; ++r) {
        I128 s = 0;
        for (std::size_t k = 0; k < n_; ++k) s += static_cast<I128>(g[r * n_ + k]) * f[k];
        y[r] = narrow128(s);
      }
      if (!std::binary_search(to_sorted_.begin(), to_sorted_.end(), canonical(y, n_))) return;
    }
    if (!(*visit_)(g)) stop_ = true;
  }

  GroupKind kind_;
  std::size_t n_ = 0;
  std::vector<SVec> from_, to_all_, to_sorted_;
  std::vector<I64> qf_, qt_, pt_, gram_;
  std::vector<std::size_t> basis_;
  std::vector<I128> adj_b_;
  I128 det_b_ = 1;
  bool basis_ok_ = false;
  std::vector<std::size_t> chosen_;
  const std::function<bool(const std::vector<I64>&)>* visit_ = nullptr;
  bool stop_ = false;
  bool positive_first_ = false;
};

GroupElement to_element(const std::vector<I64>& g, std::size_t n) {
  IntMat m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(g[r * n + c]);
  return GroupElement(std::move(m));
}

std::vector<I64> sorted_norms(const std::vector<IntVec>& vs, const IntMat& q) {
  std::vector<I64> out;
  for (const auto& v : vs) out.push_back(narrow(evaluate(q, v)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<GroupElement> find_isometry(const MarkedSet& from, const MarkedSet& to, GroupKind kind) {
  const std::size_t n = from.form.rows();
  if (to.form.rows() != n || from.vectors.size() != to.vectors.size()) return std::nullopt;
  if (determinant(from.form) != determinant(to.form)) return std::nullopt;
  if (sorted_norms(from.vectors, from.form) != sorted_norms(to.vectors, to.form)) return std::nullopt;
  Search s(from, to, kind);
  if (!s.feasible()) throw NotFullDim("vectors do not span");
  // -g has det (-1)^n det g; when that keeps g inside the group the first image
  // can be taken with its canonical sign.
  const bool positive_first = kind == GroupKind::GL || n % 2 == 0;
  std::optional<GroupElement> found;
  s.run(positive_first, [&](const std::vector<I64>& g) {
    found = to_element(g, n);
    return false;
  });
  return found;
}

std::vector<GroupElement> automorphisms(const MarkedSet& s, GroupKind kind) {
  const std::size_t n = s.form.rows();
  Search search(s, s, kind);
  if (!search.feasible()) throw NotFullDim("vectors do not span");
  const bool positive_first = kind == GroupKind::GL || n % 2 == 0;
  std::vector<GroupElement> out;
  search.run(positive_first, [&](const std::vector<I64>& g) {
    out.push_back(to_element(g, n));
    if (positive_first) {
      std::vector<I64> neg(g);
      for (auto& x : neg) x = -x;
      out.push_back(to_element(neg, n));
    }
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace vorcycle
