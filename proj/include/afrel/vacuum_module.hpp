#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "afrel/lie_algebra.hpp"
#include "afrel/lincomb.hpp"

namespace afrel {

/// Index of a PBW monomial in a VacuumModule's monomial table.
using Mono = uint32_t;
/// Element of the vacuum module: rational combination of PBW monomials.
using State = LinComb<Mono>;
/// Finite weight of a monomial in simple-root coordinates.
using WeightKey = std::array<int16_t, 8>;

/// One factor x_a(-m), m >= 1, of a PBW monomial. Keys sort in PBW order:
/// deeper modes first, ties broken by basis index.
struct FactorKey {
  static uint16_t make(int basis, int depth) {
    return static_cast<uint16_t>(((255 - depth) << 8) | basis);
  }
  static int basis(uint16_t key) { return key & 0xff; }
  static int depth(uint16_t key) { return 255 - (key >> 8); }
};

/// A PBW word: factor keys in nondecreasing order, acting on the vacuum.
using Word = std::u16string;

/// Complete basis of one degree of the vacuum module.
struct GradedSlice {
  int degree = 0;
  std::vector<Mono> basis;
  std::unordered_map<Mono, uint32_t> index;
  /// Positions in `basis` grouped by finite weight.
  std::map<WeightKey, std::vector<uint32_t>> blocks;
  size_t size() const { return basis.size(); }
};

/// The vacuum module of the affine algebra attached to a finite simple Lie
/// algebra, realized on the PBW basis of U(g tensor t^{-1} C[t^{-1}]).
///
/// The basis is level-independent; the level enters only through the action
/// of nonnegative modes. Instances are not thread-safe: the straightening
/// memo tables are mutated by every query.
class VacuumModule {
 public:
  explicit VacuumModule(std::shared_ptr<const LieAlgebra> g);

  const LieAlgebra& algebra() const { return *g_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return g_; }

  static constexpr Mono kVacuum = 0;
  static State vacuum_state() { return State::single(kVacuum); }

  /// Interns a sorted word.
  Mono intern(const Word& w);
  const Word& word(Mono m) const { return words_[m]; }
  int degree(Mono m) const { return info_[m].degree; }
  const WeightKey& weight(Mono m) const { return info_[m].weight; }
  size_t num_monomials() const { return words_.size(); }
  WeightKey basis_weight(int a) const;
  WeightQ to_weightq(const WeightKey& w) const;

  /// x_a(n) applied to a monomial at level k.
  const State& act(int a, int n, Mono m, int k);
  State act(int a, int n, const State& v, int k);
  State act(const LieElem& x, int n, const State& v, int k);
  /// The central element acts by k.
  static State act_central(const State& v, int k) { return Rational(k) * v; }

  /// Translation operator D = L_{-1}.
  const State& derivation(Mono m);
  State derivation(const State& v);
  /// D^j / j!
  State divided_derivation(const State& v, int j);
  /// Degree operator L_0.
  State degree_L0(const State& v) const;

  /// x_1(n_1) ... x_r(n_r) applied to v (rightmost factor acts first).
  State apply_modes(const std::vector<std::pair<LieElem, int>>& ops, const State& v, int k);
  /// Monomial state for an unsorted list of (basis, depth) factors.
  State product_state(const std::vector<std::pair<int, int>>& factors, int k);

  /// Deterministically ordered basis of degree d.
  const GradedSlice& slice(int d);
  /// Directory for the advisory slice cache; empty disables it.
  void set_cache_dir(std::string dir) { cache_dir_ = std::move(dir); }

  /// Weight of a homogeneous state (of its first monomial); zero for 0.
  WeightKey state_weight(const State& v) const;
  /// Degree of a homogeneous state; -1 for zero.
  int state_degree(const State& v) const;
  bool is_homogeneous(const State& v) const;

  std::string monomial_string(Mono m) const;
  std::string to_string(const State& v) const;

  /// Tag of the monomial ordering, recorded in reports and cache keys.
  static const char* order_tag();

 private:
  struct Info {
    int degree = 0;
    WeightKey weight{};
  };
  static uint64_t memo_key(int a, int n, Mono m) {
    return (static_cast<uint64_t>(m) << 17) | (static_cast<uint64_t>(n + 256) << 8) | static_cast<uint64_t>(a);
  }
  State compute_act(int a, int n, Mono m, int k);
  bool load_slice(int d, GradedSlice& s);
  void store_slice(const GradedSlice& s) const;

  std::shared_ptr<const LieAlgebra> g_;
  std::vector<Word> words_;
  std::vector<Info> info_;
  std::unordered_map<Word, Mono> ids_;
  std::vector<WeightKey> basis_weight_;
  std::unordered_map<uint64_t, State> neg_memo_;
  std::map<int, std::unordered_map<uint64_t, State>> pos_memo_;
  std::unordered_map<Mono, State> d_memo_;
  std::vector<std::unique_ptr<GradedSlice>> slices_;
  std::string cache_dir_;
};

}  // namespace afrel
