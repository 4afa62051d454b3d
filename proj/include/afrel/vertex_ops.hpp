#pragma once

#include <unordered_map>
#include <vector>

#include "afrel/linalg.hpp"
#include "afrel/vacuum_module.hpp"

namespace afrel {

/// Unsorted product of modes x_a(-depth) acting on the vacuum.
using ModeWord = std::vector<std::pair<int, int>>;  // (basis, depth)

/// Vertex-operator coefficients v_n of states of the vacuum module at a
/// fixed level, acting on states of the same module.
class VertexOps {
 public:
  VertexOps(VacuumModule& v, int level) : v_(v), k_(level) {}

  VacuumModule& module() { return v_; }
  int level() const { return k_; }

  /// v_n w by the generalized iterate formula on the leading PBW factor of v.
  const State& field_coeff(Mono v, int n, Mono w);
  State field_coeff(const State& v, int n, const State& w);

  /// v_n w for v given as an unsorted word, computed independently of
  /// field_coeff: only the x(-1) iterate formula and the translation
  /// identity (Du)_n = -n u_{n-1} are used.
  State field_coeff_translation(const ModeWord& v, int n, Mono w);
  State field_coeff_translation(const State& v, int n, const State& w);

  /// sum_{n>=0} (-1)^n D^{(n+1)} (u_n v)
  State adjoint_bracket(const State& u, const State& v);
  /// u_{-1} v - v_{-1} u
  State skew_product_difference(const State& u, const State& v);

  /// Checks [x(m), r_n] = sum_i binom(m, i) (x(i) r)_{m+n-i} on every basis
  /// state of degree <= cutoff.
  bool commutator_formula_check(int x, int m, const State& r, int n, int cutoff);

  /// Matrix of b -> v_n b from one slice to another, assembled column by column;
  /// row index is the position in `to`, column index the position in `from`.
  SparseMatrixQ field_matrix(const State& v, int n, const GradedSlice& from, const GradedSlice& to);

 private:
  struct Key {
    uint64_t vw;
    int n;
    bool operator==(const Key& o) const { return vw == o.vw && n == o.n; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const { return std::hash<uint64_t>()(k.vw * 1000003ULL + static_cast<uint64_t>(k.n + 4096)); }
  };
  State compute_field(Mono v, int n, Mono w);
  State translation_word(const ModeWord& v, int n, Mono w);

  VacuumModule& v_;
  int k_;
  std::unordered_map<Key, State, KeyHash> memo_;
  std::unordered_map<std::string, State> word_memo_;
};

}  // namespace afrel
