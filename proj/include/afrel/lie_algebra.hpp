#pragma once

#include <map>
#include <string>
#include <vector>

#include "afrel/lincomb.hpp"
#include "afrel/rational.hpp"

namespace afrel {

enum class Family { A, B, C, D, E, F, G };

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  /// Parses names such as "A1", "c2", "G2", "E8"; throws on inadmissible input.
  static CartanType parse(const std::string& s);
  std::string name() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Throws std::invalid_argument unless the rank is admissible for the family.
void check_admissible(const CartanType& t);

/// Integral vector in simple-root coordinates.
using RootVec = std::vector<int>;
/// Rational vector in simple-root coordinates.
using WeightQ = std::vector<Rational>;

WeightQ to_weight(const RootVec& v);

/// Root datum of a finite simple Lie algebra. Simple roots follow the
/// Bourbaki numbering; the form is scaled so that long roots have square
/// length two.
class RootSystem {
 public:
  explicit RootSystem(const CartanType& t);

  const CartanType& type() const { return type_; }
  int rank() const { return type_.rank; }

  /// (alpha_i, alpha_j)
  const Rational& gram(int i, int j) const { return gram_[i][j]; }
  /// a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i) = <alpha_j, alpha_i^vee>
  int cartan(int i, int j) const { return cartan_[i][j]; }

  /// Positive roots ordered by height, ties broken by descending
  /// lexicographic order of coordinates; simple roots come first.
  const std::vector<RootVec>& positive_roots() const { return positive_; }
  /// Index of a root among positive roots followed by their negatives, or -1.
  int root_index(const RootVec& r) const;
  bool is_root(const RootVec& r) const { return root_index(r) >= 0; }
  int num_positive() const { return static_cast<int>(positive_.size()); }

  Rational inner(const WeightQ& a, const WeightQ& b) const;
  Rational inner(const RootVec& a, const RootVec& b) const;
  /// <mu, alpha_i^vee>
  Rational pairing_coroot(const WeightQ& mu, int i) const;
  /// Coordinates in the basis of fundamental weights.
  WeightQ to_fundamental(const WeightQ& mu) const;
  WeightQ from_fundamental(const WeightQ& labels) const;

  const RootVec& theta() const { return theta_; }
  const WeightQ& rho() const { return rho_; }
  int dual_coxeter() const { return dual_coxeter_; }
  /// Indices i (0-based) with (theta, alpha_i) != 0.
  const std::vector<int>& distinguished() const { return distinguished_; }

  static int height(const RootVec& r);

  bool is_dominant(const WeightQ& mu) const;
  /// Dominant element of the Weyl orbit of mu.
  WeightQ dominant_conjugate(const WeightQ& mu) const;
  /// Size of the Weyl group orbit of an integral weight.
  size_t orbit_size(const WeightQ& mu) const;
  /// Dimension of the irreducible module with dominant highest weight lambda.
  Rational weyl_dimension(const WeightQ& lambda) const;
  /// Reflection in the simple root alpha_i.
  WeightQ reflect(const WeightQ& mu, int i) const;

 private:
  CartanType type_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<RootVec> positive_;
  std::map<RootVec, int> index_;
  RootVec theta_;
  WeightQ rho_;
  int dual_coxeter_ = 0;
  std::vector<int> distinguished_;
};

/// (lambda + 2 rho, lambda)
Rational casimir_eigenvalue(const RootSystem& rs, const WeightQ& lambda);

/// theta - alpha_* is a root and 2 theta - alpha_* is not, for every
/// distinguished index. Works for every family; rejects A1.
bool check_lemma_5_2(const CartanType& t);

/// Weight level * Lambda_0 + sum finite_i alpha_i + alpha0 * alpha_0.
struct AffineWeight {
  Rational level;
  WeightQ finite;
  Rational alpha0;

  AffineWeight operator+(const AffineWeight& o) const;
  AffineWeight operator-(const AffineWeight& o) const;
  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
  std::string str() const;
};

/// Affine weight of a homogeneous vector of degree d and finite weight mu in a
/// level-k module generated by a vector of weight k Lambda_0.
AffineWeight affine_weight(int k, const WeightQ& mu, int degree, const RootSystem& rs);

/// k Lambda_0 - alpha_* - (k + 1 - <alpha_*, alpha_0^vee>) alpha_0, one entry
/// per distinguished index.
std::vector<AffineWeight> dot_action_weight(const RootSystem& rs, int k);

/// Element of the finite-dimensional algebra as a combination of basis indices.
using LieElem = LinComb<int>;

/// Sign convention for the structure constants on extraspecial pairs.
enum class SignConvention { Standard, Flipped };

/// Chevalley basis: e_alpha for positive roots (in RootSystem order), then
/// the coroots h_1..h_l, then e_{-alpha} in the same order as the positives.
class LieAlgebra {
 public:
  explicit LieAlgebra(const CartanType& t, SignConvention sign = SignConvention::Standard);

  const RootSystem& roots() const { return roots_; }
  const CartanType& type() const { return roots_.type(); }
  SignConvention sign_convention() const { return sign_; }
  int dim() const { return dim_; }
  int rank() const { return roots_.rank(); }

  int root_vector(const RootVec& r) const;  // basis index of e_r
  int cartan_index(int i) const { return roots_.num_positive() + i; }
  bool is_cartan(int a) const { return a >= roots_.num_positive() && a < roots_.num_positive() + rank(); }
  /// Root (simple-root coordinates) carried by a basis element; zero for h_i.
  const RootVec& weight(int a) const { return weights_[a]; }
  std::string basis_name(int a) const;

  /// [x_a, x_b] as a combination of basis indices.
  const std::vector<std::pair<int, Rational>>& bracket(int a, int b) const { return table_[a * dim_ + b]; }
  LieElem bracket(const LieElem& x, const LieElem& y) const;
  /// Invariant form <x_a, x_b>, normalized by <theta, theta> = 2.
  const Rational& form(int a, int b) const { return form_[a * dim_ + b]; }
  Rational form(const LieElem& x, const LieElem& y) const;
  /// y^a: the element with <x_b, y^a> = delta_ab.
  const LieElem& dual(int a) const { return dual_[a]; }

  /// Structure constant N_{r,s} on roots (zero when r+s is not a root).
  Rational structure_constant(const RootVec& r, const RootVec& s) const;

  int x_theta() const { return root_vector(roots_.theta()); }
  int x_minus_theta() const;
  /// theta^vee = [x_theta, x_{-theta}] expressed in the h_i.
  LieElem theta_coroot() const;
  /// Indices of e_{alpha_i}, the raising generators of the finite part.
  std::vector<int> raising_simple() const;

  /// Diagram automorphism of A_l (l >= 2): basis permutation with signs.
  struct SignedPermutation {
    std::vector<int> target;
    std::vector<int> sign;
    LieElem apply(const LieElem& x) const;
  };
  SignedPermutation diagram_automorphism() const;

 private:
  void build_structure_constants();
  Rational n_positive(int i, int j) const;

  RootSystem roots_;
  SignConvention sign_;
  int dim_ = 0;
  std::vector<RootVec> weights_;
  std::vector<std::vector<std::pair<int, Rational>>> table_;
  std::vector<Rational> form_;
  std::vector<LieElem> dual_;
  std::vector<Rational> npos_;  // N on ordered pairs of positive roots
};

}  // namespace afrel
