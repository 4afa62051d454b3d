#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "afrel/lincomb.hpp"

namespace afrel {

/// Divides v by the content of its coefficients so that it becomes a
/// primitive integer vector with a positive leading coefficient.
template <class Key>
void make_primitive(LinComb<Key>& v) {
  if (v.empty()) return;
  Rational g(0);
  for (const auto& t : v) {
    g = content_gcd(g, t.second);
    if (g.is_one()) break;
  }
  if (v.front().second.sign() < 0) g = -g;
  if (!g.is_one()) {
    for (auto& t : v.mutable_terms()) t.second /= g;
  }
}

/// Incrementally maintained row-echelon basis over Q.
///
/// Rows are kept as primitive integer vectors and reduction is fraction-free:
/// eliminating an entry a against a pivot row with leading coefficient L
/// replaces w by (L/g) w - (a/g) p with g = gcd(L, a). The content is divided
/// out periodically and at the end of every reduction. Column order is the key
/// order, so the pivot of a row is its smallest key.
template <class Key>
class Echelon {
 public:
  /// Reduces v against the current pivots; the result is primitive.
  LinComb<Key> reduce(LinComb<Key> w) const {
    make_primitive(w);
    size_t pos = 0;
    int steps = 0;
    while (pos < w.size()) {
      Key c = w.terms()[pos].first;
      auto it = pivot_of_.find(c);
      if (it == pivot_of_.end()) {
        ++pos;
        continue;
      }
      const LinComb<Key>& p = rows_[it->second];
      const Rational& lead = p.front().second;
      Rational a = w.terms()[pos].second;
      if (lead.is_one()) {
        eliminate(w, pos, p, Rational(1), a);
      } else {
        Rational g = content_gcd(lead, a);
        eliminate(w, pos, p, lead / g, a / g);
      }
      if (++steps % 16 == 0) make_primitive(w);
    }
    make_primitive(w);
    return w;
  }

  /// Adds v to the basis; returns true iff it was independent.
  bool insert(LinComb<Key> v) {
    LinComb<Key> r = reduce(std::move(v));
    if (r.empty()) return false;
    pivot_of_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  /// Adds the output of reduce() without reducing again; false for zero.
  bool insert_reduced(LinComb<Key> r) {
    if (r.empty()) return false;
    pivot_of_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const LinComb<Key>& v) const { return reduce(v).empty(); }
  size_t rank() const { return rows_.size(); }
  const std::vector<LinComb<Key>>& rows() const { return rows_; }
  bool has_pivot(Key k) const { return pivot_of_.count(k) != 0; }

  /// Reduced row-echelon form: rows sorted by pivot, each pivot equal to one
  /// and every pivot column zero in all other rows.
  std::vector<LinComb<Key>> rref() const {
    std::vector<LinComb<Key>> rows = rows_;
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
    for (size_t i = rows.size(); i-- > 0;) {
      Key c = rows[i].front().first;
      const Rational& lead = rows[i].front().second;
      for (size_t j = 0; j < i; ++j) {
        Rational a = rows[j].coeff(c);
        if (a.is_zero()) continue;
        Rational g = content_gcd(lead, a);
        LinComb<Key> next = rows[j];
        next *= lead / g;
        next.add_scaled(rows[i], -(a / g));
        make_primitive(next);
        rows[j] = std::move(next);
      }
    }
    for (auto& r : rows) {
      Rational inv = r.front().second.inverse();
      r *= inv;
    }
    return rows;
  }

 private:
  // w := s*w - t*p, where p's leading key sits at w[pos].
  static void eliminate(LinComb<Key>& w, size_t pos, const LinComb<Key>& p, const Rational& s,
                        const Rational& t) {
    auto& wt = w.mutable_terms();
    std::vector<typename LinComb<Key>::Term> out;
    out.reserve(wt.size() + p.size());
    for (size_t i = 0; i < pos; ++i) {
      out.emplace_back(wt[i].first, s.is_one() ? std::move(wt[i].second) : wt[i].second * s);
    }
    auto a = wt.begin() + static_cast<long>(pos);
    auto b = p.begin();
    while (a != wt.end() || b != p.end()) {
      if (b == p.end() || (a != wt.end() && a->first < b->first)) {
        out.emplace_back(a->first, s.is_one() ? std::move(a->second) : a->second * s);
        ++a;
      } else if (a == wt.end() || b->first < a->first) {
        out.emplace_back(b->first, -(b->second * t));
        ++b;
      } else {
        Rational v = s.is_one() ? a->second : a->second * s;
        v -= b->second * t;
        if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    wt = std::move(out);
  }

  std::vector<LinComb<Key>> rows_;
  std::unordered_map<Key, size_t> pivot_of_;
};

/// Sparse vector over Q with an explicit ambient dimension.
struct SparseVectorQ {
  LinComb<uint32_t> entries;
  uint32_t dimension = 0;

  SparseVectorQ() = default;
  SparseVectorQ(uint32_t dim, LinComb<uint32_t> e);
  static SparseVectorQ dense(const std::vector<Rational>& values);
  Rational at(uint32_t i) const { return entries.coeff(i); }
  friend bool operator==(const SparseVectorQ&, const SparseVectorQ&) = default;
};

/// Sparse matrix over Q stored by rows.
struct SparseMatrixQ {
  std::vector<SparseVectorQ> rows;
  uint32_t columns = 0;

  SparseMatrixQ() = default;
  SparseMatrixQ(uint32_t cols, std::vector<SparseVectorQ> r);
  static SparseMatrixQ dense(const std::vector<std::vector<Rational>>& m);
  SparseVectorQ multiply(const SparseVectorQ& v) const;
};

/// Basis of {v : m v = 0}, one vector per free column in increasing order,
/// each equal to one in its free column and zero in the other free columns.
std::vector<SparseVectorQ> kernel_basis(const SparseMatrixQ& m);

size_t rank(const SparseMatrixQ& m);

struct SpanResult {
  bool member = false;
  std::vector<Rational> coefficients;
};

/// Decides v in span(basis); on success the coefficients reproduce v.
SpanResult in_span(const SparseVectorQ& v, const std::vector<SparseVectorQ>& basis);

/// Solves for coordinates of vectors in the span of a fixed family.
///
/// The family is reduced once with tag columns tracking the combination of
/// original vectors behind every pivot row.
template <class Key>
class SpanSolver {
 public:
  static constexpr uint64_t kTagBase = uint64_t{1} << 62;

  explicit SpanSolver(const std::vector<LinComb<Key>>& family) : size_(family.size()) {
    for (size_t i = 0; i < family.size(); ++i) {
      echelon_.insert(augment(family[i], kTagBase + i));
    }
  }

  std::optional<std::vector<Rational>> solve(const LinComb<Key>& v) const {
    const uint64_t self = kTagBase + size_;
    LinComb<uint64_t> r = echelon_.reduce(augment(v, self));
    if (!r.empty() && r.front().first < kTagBase) return std::nullopt;
    std::vector<Rational> coeffs(size_, Rational(0));
    Rational scale = r.coeff(self);
    if (scale.is_zero()) {
      // v reduced to a pure dependency relation: only possible when v == 0.
      return coeffs;
    }
    for (const auto& [k, c] : r) {
      if (k < self) coeffs[k - kTagBase] = -c / scale;
    }
    return coeffs;
  }

  size_t family_size() const { return size_; }

 private:
  static LinComb<uint64_t> augment(const LinComb<Key>& v, uint64_t tag) {
    std::vector<LinComb<uint64_t>::Term> t;
    t.reserve(v.size() + 1);
    for (const auto& [k, c] : v) {
      if (static_cast<uint64_t>(k) >= kTagBase) throw std::out_of_range("SpanSolver: key too large");
      t.emplace_back(static_cast<uint64_t>(k), c);
    }
    t.emplace_back(tag, Rational(1));
    return LinComb<uint64_t>::from_sorted(std::move(t));
  }

  size_t size_;
  Echelon<uint64_t> echelon_;
};

}  // namespace afrel
