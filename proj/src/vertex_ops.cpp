#include "afrel/vertex_ops.hpp"

#include <stdexcept>
#include <string>

namespace afrel {

const State& VertexOps::field_coeff(Mono v, int n, Mono w) {
  Key key{(static_cast<uint64_t>(v) << 32) | w, n};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  State r = compute_field(v, n, w);
  return memo_.try_emplace(key, std::move(r)).first->second;
}

State VertexOps::compute_field(Mono v, int n, Mono w) {
  if (v == VacuumModule::kVacuum) return n == -1 ? State::single(w) : State();
  const int out_degree = v_.degree(v) + v_.degree(w) - n - 1;
  if (out_degree < 0) return {};
  const Word word = v_.word(v);
  const int a = FactorKey::basis(word[0]);
  const int m = FactorKey::depth(word[0]);
  const Mono rest = v_.intern(word.substr(1));
  const int rest_degree = v_.degree(rest);
  const int wdeg = v_.degree(w);
  Accumulator<Mono> acc;
  // sum_j binom(j+m-1, m-1) x(-m-j) (rest_{n+j} w)
  for (int j = 0; n + j <= rest_degree + wdeg - 1; ++j) {
    State inner = field_coeff(rest, n + j, w);
    if (inner.empty()) continue;
    acc.add(v_.act(a, -m - j, inner, k_), binomial(j + m - 1, m - 1));
  }
  // - (-1)^m sum_j binom(j+m-1, m-1) rest_{n-m-j} (x(j) w)
  const Rational sign(m % 2 == 0 ? -1 : 1);
  for (int j = 0; j <= wdeg; ++j) {
    State xw = v_.act(a, j, w, k_);  // copy: field_coeff below may grow the module
    if (xw.empty()) continue;
    Rational c = sign * binomial(j + m - 1, m - 1);
    for (const auto& [mono, x] : xw) acc.add(field_coeff(rest, n - m - j, mono), c * x);
  }
  return acc.take();
}

State VertexOps::field_coeff(const State& v, int n, const State& w) {
  Accumulator<Mono> acc;
  for (const auto& [a, ca] : v) {
    for (const auto& [b, cb] : w) acc.add(field_coeff(a, n, b), ca * cb);
  }
  return acc.take();
}

State VertexOps::field_coeff_translation(const ModeWord& v, int n, Mono w) {
  std::string key;
  for (const auto& [b, d] : v) {
    if (d < 1) throw std::invalid_argument("field_coeff_translation: depth must be positive");
    key += std::to_string(b) + ":" + std::to_string(d) + ",";
  }
  key += "|" + std::to_string(n) + "|" + std::to_string(w);
  auto it = word_memo_.find(key);
  if (it != word_memo_.end()) return it->second;
  State r = translation_word(v, n, w);
  word_memo_.emplace(key, r);
  return r;
}

State VertexOps::translation_word(const ModeWord& v, int n, Mono w) {
  if (v.empty()) return n == -1 ? State::single(w) : State();
  int vdeg = 0;
  for (const auto& f : v) vdeg += f.second;
  const int wdeg = v_.degree(w);
  if (vdeg + wdeg - n - 1 < 0) return {};
  const int a = v.front().first;
  const int m = v.front().second;
  ModeWord rest(v.begin() + 1, v.end());
  Accumulator<Mono> acc;
  if (m == 1) {
    // (x(-1) u)_n = sum_j x(-1-j) u_{n+j} + sum_j u_{n-1-j} x(j)
    for (int j = 0; n + j <= vdeg - 1 + wdeg - 1; ++j) {
      State inner = field_coeff_translation(rest, n + j, w);
      if (!inner.empty()) acc.add(v_.act(a, -1 - j, inner, k_));
    }
    for (int j = 0; j <= wdeg; ++j) {
      State xw = v_.act(a, j, w, k_);
      for (const auto& [mono, c] : xw) acc.add(field_coeff_translation(rest, n - 1 - j, mono), c);
    }
    return acc.take();
  }
  // x(-m) u = (D (x(-m+1) u) - x(-m+1) D u) / (m-1), and (D s)_n = -n s_{n-1}
  ModeWord lowered = v;
  lowered.front().second = m - 1;
  const Rational inv(1, m - 1);
  if (n != 0) acc.add(field_coeff_translation(lowered, n - 1, w), Rational(-n) * inv);
  for (size_t i = 1; i < lowered.size(); ++i) {
    ModeWord shifted = lowered;
    const int d = shifted[i].second;
    shifted[i].second = d + 1;
    acc.add(field_coeff_translation(shifted, n, w), Rational(-d) * inv);
  }
  return acc.take();
}

State VertexOps::field_coeff_translation(const State& v, int n, const State& w) {
  Accumulator<Mono> acc;
  for (const auto& [a, ca] : v) {
    ModeWord word;
    for (char16_t key : v_.word(a)) word.emplace_back(FactorKey::basis(key), FactorKey::depth(key));
    for (const auto& [b, cb] : w) acc.add(field_coeff_translation(word, n, b), ca * cb);
  }
  return acc.take();
}

State VertexOps::adjoint_bracket(const State& u, const State& v) {
  int maxn = -1;
  for (const auto& [a, c] : u) {
    for (const auto& [b, d] : v) maxn = std::max(maxn, v_.degree(a) + v_.degree(b) - 1);
  }
  Accumulator<Mono> acc;
  for (int n = 0; n <= maxn; ++n) {
    State un = field_coeff(u, n, v);
    if (un.empty()) continue;
    acc.add(v_.divided_derivation(un, n + 1), Rational(n % 2 == 0 ? 1 : -1));
  }
  return acc.take();
}

State VertexOps::skew_product_difference(const State& u, const State& v) {
  return field_coeff(u, -1, v) - field_coeff(v, -1, u);
}

bool VertexOps::commutator_formula_check(int x, int m, const State& r, int n, int cutoff) {
  int rdeg = -1;
  for (const auto& [mono, c] : r) rdeg = std::max(rdeg, v_.degree(mono));
  std::vector<State> xr;  // x(i) r
  for (int i = 0; i <= std::max(rdeg, 0); ++i) xr.push_back(v_.act(x, i, r, k_));
  for (int d = 0; d <= cutoff; ++d) {
    const GradedSlice& sl = v_.slice(d);
    for (Mono b : sl.basis) {
      State bs = State::single(b);
      State lhs = v_.act(x, m, field_coeff(r, n, bs), k_) - field_coeff(r, n, v_.act(x, m, bs, k_));
      Accumulator<Mono> rhs;
      for (int i = 0; i < static_cast<int>(xr.size()); ++i) {
        if (xr[i].empty()) continue;
        Rational c = binomial(m, i);
        if (c.is_zero()) continue;
        rhs.add(field_coeff(xr[i], m + n - i, bs), c);
      }
      if (lhs != rhs.take()) return false;
    }
  }
  return true;
}

SparseMatrixQ VertexOps::field_matrix(const State& v, int n, const GradedSlice& from, const GradedSlice& to) {
  std::vector<Accumulator<uint32_t>> rows(to.size());
  for (uint32_t col = 0; col < from.size(); ++col) {
    State img = field_coeff(v, n, State::single(from.basis[col]));
    for (const auto& [mono, c] : img) {
      auto it = to.index.find(mono);
      if (it == to.index.end()) throw std::logic_error("field_matrix: image outside target slice");
      rows[it->second].add(col, c);
    }
  }
  SparseMatrixQ out;
  out.columns = static_cast<uint32_t>(from.size());
  for (auto& r : rows) out.rows.emplace_back(out.columns, r.take());
  return out;
}

}  // namespace afrel
