#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "afrel/linalg.hpp"
#include "afrel/vertex_ops.hpp"

namespace afrel {

/// Index of a basis element D^i r_j of W: i * dim R + j.
using WId = uint32_t;
/// Element of W in the basis D^i r_j.
using WVec = LinComb<WId>;
/// Element u (x) w of U(g_<0) (x) W, keyed by (u << 32) | w.
using InducedVector = LinComb<uint64_t>;
/// Element w (x) v of W (x) V, keyed by (w << 32) | v.
using TensorWV = LinComb<uint64_t>;

inline uint64_t pack(uint32_t hi, uint32_t lo) { return (static_cast<uint64_t>(hi) << 32) | lo; }
inline uint32_t high(uint64_t key) { return static_cast<uint32_t>(key >> 32); }
inline uint32_t low(uint64_t key) { return static_cast<uint32_t>(key); }

/// Operator sets used for submodule closures.
enum class OperatorSet {
  NonPositive,          // g~_{<=0}
  NonPositiveWithL,     // C L_{-1} + g~_{<=0}
  AllWithL,             // C L_{-1} + g~
  NonNegative,          // g~_{>=0}
};

/// Dimension of every (degree, weight) block that was computed, plus per
/// degree totals. When only dominant blocks are computed the totals are
/// obtained from Weyl orbit sizes.
struct GradedDims {
  std::map<std::pair<int, WeightKey>, size_t> blocks;
  std::vector<long long> per_degree;
};

/// The finite-degree model of the relation spaces for one algebra and level.
///
/// R = U(g) x_theta(-1)^{k+1} 1, W = sum_i D^i R truncated at height H,
/// N = U(g_<0) (x) W and W (x) V, with the maps Phi, Xi, Psi between them.
/// Everything is exact and deterministic; an engine is single-threaded.
class RelationEngine {
 public:
  /// cutoff is the largest degree examined; H = max(0, cutoff - (k+1)).
  RelationEngine(const CartanType& type, int level, int cutoff, SignConvention sign = SignConvention::Standard);

  const LieAlgebra& algebra() const { return *g_; }
  VacuumModule& vacuum() { return *v_; }
  VertexOps& vertex() { return *ops_; }
  int level() const { return k_; }
  int cutoff() const { return cutoff_; }
  int height() const { return height_; }

  // ---- R -------------------------------------------------------------
  size_t dim_r() const { return r_states_.size(); }
  /// Basis element r_j; r_0 = x_theta(-1)^{k+1} 1.
  const State& r_state(uint32_t j) const { return r_states_[j]; }
  const WeightKey& r_weight(uint32_t j) const { return r_weights_[j]; }
  /// Coordinates of x_a(0) r_j in the basis of R.
  const LinComb<uint32_t>& r_action(int a, uint32_t j) const { return r_action_[a * dim_r() + j]; }
  LinComb<uint32_t> r_action(const LieElem& x, const LinComb<uint32_t>& r) const;
  LinComb<uint32_t> r_casimir(const LinComb<uint32_t>& r) const;

  // ---- W -------------------------------------------------------------
  WId w_id(int i, uint32_t j) const { return static_cast<WId>(i * dim_r() + j); }
  int w_layer(WId w) const { return static_cast<int>(w / dim_r()); }
  uint32_t w_base(WId w) const { return static_cast<uint32_t>(w % dim_r()); }
  int w_degree(WId w) const { return k_ + 1 + w_layer(w); }
  const WeightKey& w_weight(WId w) const { return r_weights_[w_base(w)]; }
  size_t num_w() const { return dim_r() * (height_ + 1); }
  /// The state D^i r_j.
  const State& w_state(WId w);
  State w_to_state(const WVec& w);
  /// x_a(n) on a basis element of W, n >= 0.
  const WVec& w_act(int a, int n, WId w);
  WVec w_act(int a, int n, const WVec& w);
  /// D on W; throws if the result leaves the truncation.
  WVec w_derivation(const WVec& w) const;
  /// [x_a(-m) 1, w] in W.
  WVec w_bracket(int a, int m, const WVec& w);
  /// Coordinates of a state lying in W; nullopt when it does not.
  std::optional<WVec> w_coords(const State& s);

  // ---- N = U(g_<0) (x) W ---------------------------------------------
  int n_degree(uint64_t key) const { return v_->degree(high(key)) + w_degree(low(key)); }
  WeightKey n_weight(uint64_t key) const;
  int n_length(uint64_t key) const { return static_cast<int>(v_->word(high(key)).size()); }
  /// x_a(n) acting on N.
  InducedVector n_act(int a, int n, const InducedVector& x);
  InducedVector n_act(const LieElem& y, int n, const InducedVector& x);
  /// L_{-1} acting on N.
  InducedVector n_translation(const InducedVector& x);
  /// Casimir sum_i x^i(0) y^i(0) acting on N.
  InducedVector n_casimir(const InducedVector& x);
  /// Product of modes u (a PBW monomial) acting on N.
  InducedVector n_apply_monomial(Mono u, const InducedVector& x);
  /// Largest height i of a basis element D^i r occurring in x; -1 for zero.
  int n_height(const InducedVector& x) const;

  // ---- W (x) V ---------------------------------------------------------
  int t_degree(uint64_t key) const { return w_degree(high(key)) + v_->degree(low(key)); }
  /// y(-m) acting on W (x) V through the bracket on W and the left action on V.
  TensorWV t_act_negative(int a, int m, const TensorWV& t);
  /// x_a(0) and L_{-1} acting diagonally on W (x) V.
  TensorWV t_act_zero(int a, const TensorWV& t);
  TensorWV t_translation(const TensorWV& t);

  // ---- diagram automorphism (type A, rank >= 2) ------------------------
  State v_sigma(const State& s);
  WVec w_sigma(const WVec& w);
  InducedVector n_sigma(const InducedVector& x);

  // ---- maps ------------------------------------------------------------
  /// Phi(w (x) v) = w_{-1} v
  State phi(const TensorWV& t);
  /// Psi(u (x) w) = u w
  State psi(const InducedVector& x);
  /// Psi on a basis element; with store = false the top result is not memoized.
  State psi_basis(uint64_t key, bool store = true);
  /// The isomorphism W (x) V -> N and its inverse.
  InducedVector xi(const TensorWV& t);
  TensorWV xi_inverse(const InducedVector& x);
  void clear_caches();

  // ---- relation vectors -------------------------------------------------
  /// Sugawara relation q_r for r given in R-coordinates.
  InducedVector sugawara_q(const LinComb<uint32_t>& r);
  /// Closed form of the inverse image of q_r under Xi.
  TensorWV sugawara_q_preimage_closed_form(const LinComb<uint32_t>& r);
  /// x_theta(-2) (x) r_0 - 1/(k+1) x_theta(-1) (x) D r_0
  InducedVector q_obvious();
  /// x_{theta-alpha_s}(-1) (x) r_0 - x_theta(-1) (x) x_{theta-alpha_s}(-1) x_theta(-1)^k 1
  InducedVector q_star_closed_form(int s);
  /// x_{-alpha_s}(1) q_obvious
  InducedVector q_star(int s);
  /// x_theta(-1)^{k+1} 1 (x) x_theta(-2) 1 - x_theta(-2) x_theta(-1)^k 1 (x) x_theta(-1) 1
  TensorWV q_obvious_preimage_closed_form();
  /// The root vector [x_{-alpha_s}, x_theta] of theta - alpha_s.
  LieElem theta_minus(int s) const;
  /// (k+1) q_obvious - x_theta(-1) q_{(k+1)theta}; A1 only.
  InducedVector sl2_singular();
  /// The explicit level-one sl2 vector built by applying the displayed operators.
  InducedVector sl2_level_one_vector();
  /// Annihilated by e_i(0), i = 1..l, and by x_{-theta}(1).
  bool is_singular(const InducedVector& x);
  /// Annihilated by x(i) for every basis x and 1 <= i <= maxmode.
  bool killed_by_positive_modes(const InducedVector& x, int maxmode);
  /// Affine weight of a homogeneous vector of N.
  AffineWeight n_affine_weight(const InducedVector& x);
  /// Normalizes so that the first coefficient is one.
  static InducedVector normalized(const InducedVector& x);
  /// Scalar c with a = c b, if any.
  static std::optional<Rational> proportionality(const InducedVector& a, const InducedVector& b);

  /// Lowers the height by adding sum u D^{n-1} q_r until it is zero.
  /// Returns the number of steps taken.
  int reduce_height(InducedVector& x);

  // ---- bases, kernels, closures ---------------------------------------
  bool is_dominant(const WeightKey& w) const;
  size_t orbit_size(const WeightKey& w);
  /// Dominant weights occurring in N at degree d.
  std::vector<WeightKey> n_dominant_weights(int d, int max_height);
  /// Basis of N in block (d, mu) with heights <= max_height and U-length <= max_length.
  std::vector<uint64_t> n_block_basis(int d, const WeightKey& mu, int max_height, int max_length = 1 << 20);
  std::vector<uint64_t> t_block_basis(int d, const WeightKey& mu);

  /// Kernel of Psi on the block (d, mu) as explicit vectors.
  std::vector<InducedVector> kernel_psi_block(int d, const WeightKey& mu, int max_height, int max_length = 1 << 20);
  /// Kernel dimensions of Psi on dominant blocks, totals through orbit sizes.
  GradedDims kernel_psi_dims(int max_height, int max_length = 1 << 20, bool dominant_only = true);
  /// Kernel dimensions of Phi.
  GradedDims kernel_phi_dims(bool dominant_only = true);
  /// Dimensions of the submodule generated by homogeneous generators.
  /// Blocks reaching `caps` stop early; those blocks must contain the closure.
  GradedDims closure_dims(const std::vector<InducedVector>& generators, OperatorSet ops,
                          const GradedDims* caps = nullptr, bool dominant_only = true,
                          int max_height = -1);
  /// Basis (per block) of the closure under operators that do not raise degree.
  std::map<std::pair<int, WeightKey>, std::vector<InducedVector>> closure_nonraising(
      const std::vector<InducedVector>& generators, OperatorSet ops);
  /// Basis of the singular vectors of ker Psi_0 at degree d, dominant blocks only.
  std::vector<InducedVector> singular_vectors(int d);
  size_t singular_dimension(int d) { return singular_vectors(d).size(); }

  std::string to_string(const InducedVector& x);
  std::string tensor_to_string(const TensorWV& t);

 private:
  void build_r();
  /// Throws unless gen is homogeneous of degree <= cutoff.
  void check_generator(const InducedVector& gen) const;
  const LinComb<uint64_t>& decompose(int a, int n, Mono u);
  const State& psi_ref(uint64_t key);
  State psi_compute(uint64_t key);
  const InducedVector& xi_basis(uint64_t key);
  const TensorWV& xi_inverse_basis(uint64_t key);

  std::shared_ptr<const LieAlgebra> g_;
  std::unique_ptr<VacuumModule> v_;
  std::unique_ptr<VertexOps> ops_;
  int k_;
  int cutoff_;
  int height_;

  std::vector<State> r_states_;
  std::vector<WeightKey> r_weights_;
  std::vector<LinComb<uint32_t>> r_action_;
  std::vector<std::optional<State>> w_states_;
  std::unordered_map<uint64_t, WVec> w_act_memo_;
  std::vector<std::unique_ptr<SpanSolver<Mono>>> layer_solvers_;
  std::unordered_map<uint64_t, LinComb<uint64_t>> decomp_memo_;
  std::unordered_map<uint64_t, State> psi_memo_;
  std::unordered_map<uint64_t, InducedVector> xi_memo_;
  std::unordered_map<uint64_t, TensorWV> xi_inv_memo_;
  std::map<WeightKey, size_t> orbit_memo_;
  std::optional<LieAlgebra::SignedPermutation> sigma_;
};

}  // namespace afrel
