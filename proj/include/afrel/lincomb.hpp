#pragma once

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "afrel/rational.hpp"

namespace afrel {

/// Sparse rational linear combination of keys. Terms are kept sorted by key
/// and never store a zero coefficient.
template <class Key>
class LinComb {
 public:
  using Term = std::pair<Key, Rational>;

  LinComb() = default;
  static LinComb single(Key k, Rational c = Rational(1)) {
    LinComb r;
    if (!c.is_zero()) r.terms_.emplace_back(k, std::move(c));
    return r;
  }
  /// Builds from terms in any order; duplicates are summed.
  static LinComb from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    LinComb r;
    for (auto& [k, c] : t) {
      if (!r.terms_.empty() && r.terms_.back().first == k) {
        r.terms_.back().second += c;
        if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
      } else if (!c.is_zero()) {
        r.terms_.emplace_back(k, std::move(c));
      }
    }
    return r;
  }
  /// Adopts terms that are already sorted, unique and nonzero.
  static LinComb from_sorted(std::vector<Term> t) {
    LinComb r;
    r.terms_ = std::move(t);
    return r;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& mutable_terms() { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Term& front() const { return terms_.front(); }

  Rational coeff(Key k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Key& key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return Rational(0);
  }

  /// this += c * other
  void add_scaled(const LinComb& other, const Rational& c) {
    if (c.is_zero() || other.empty()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
      if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.emplace_back(b->first, b->second * c);
        ++b;
      } else {
        Rational v = a->second + b->second * c;
        if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
  }

  LinComb& operator+=(const LinComb& o) {
    add_scaled(o, Rational(1));
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add_scaled(o, Rational(-1));
    return *this;
  }
  LinComb& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else if (!c.is_one()) {
      for (auto& t : terms_) t.second *= c;
    }
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
  LinComb operator-() const {
    LinComb r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

  /// Re-keys every term; the map need not preserve order.
  template <class Key2, class F>
  LinComb<Key2> map_keys(F&& f) const {
    std::vector<typename LinComb<Key2>::Term> t;
    t.reserve(terms_.size());
    for (const auto& [k, c] : terms_) t.emplace_back(f(k), c);
    return LinComb<Key2>::from_terms(std::move(t));
  }

 private:
  std::vector<Term> terms_;
};

/// Hash-based accumulator for building a LinComb from many contributions.
template <class Key>
class Accumulator {
 public:
  void add(Key k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = map_.try_emplace(k, c);
    if (!inserted) it->second += c;
  }
  void add(const LinComb<Key>& v, const Rational& c = Rational(1)) {
    if (c.is_zero()) return;
    if (c.is_one()) {
      for (const auto& [k, x] : v) add(k, x);
    } else {
      for (const auto& [k, x] : v) add(k, x * c);
    }
  }
  bool empty() const { return map_.empty(); }
  LinComb<Key> take() {
    std::vector<typename LinComb<Key>::Term> t;
    t.reserve(map_.size());
    for (auto& [k, c] : map_) {
      if (!c.is_zero()) t.emplace_back(k, std::move(c));
    }
    map_.clear();
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return LinComb<Key>::from_sorted(std::move(t));
  }

 private:
  std::unordered_map<Key, Rational> map_;
};

}  // namespace afrel
