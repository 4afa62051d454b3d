#include "afrel/relations.hpp"

#include <sstream>
#include <stdexcept>

namespace afrel {
namespace {

constexpr uint32_t kIdentityOp = 0xffffffffu;

uint32_t mode_op(int b, int p) { return (static_cast<uint32_t>(b) << 8) | static_cast<uint32_t>(p); }

WeightKey add_weights(const WeightKey& a, const WeightKey& b) {
  WeightKey r{};
  for (int i = 0; i < 8; ++i) r[i] = static_cast<int16_t>(a[i] + b[i]);
  return r;
}

}  // namespace

RelationEngine::RelationEngine(const CartanType& type, int level, int cutoff, SignConvention sign)
    : k_(level), cutoff_(cutoff) {
  if (level < 1) throw std::invalid_argument("RelationEngine: level must be at least 1");
  if (cutoff < 0) throw std::invalid_argument("RelationEngine: negative cutoff");
  if (cutoff > 200) throw std::invalid_argument("RelationEngine: cutoff above 200");
  g_ = std::make_shared<const LieAlgebra>(type, sign);
  v_ = std::make_unique<VacuumModule>(g_);
  ops_ = std::make_unique<VertexOps>(*v_, level);
  height_ = std::max(0, cutoff - (level + 1));
  build_r();
}

// ---- R ------------------------------------------------------------------

void RelationEngine::build_r() {
  const int xt = g_->x_theta();
  State top = VacuumModule::vacuum_state();
  for (int i = 0; i <= k_; ++i) top = v_->act(xt, -1, top, k_);
  Echelon<Mono> ech;
  ech.insert(top);
  r_states_.push_back(top);
  for (size_t j = 0; j < r_states_.size(); ++j) {
    for (int a = 0; a < g_->dim(); ++a) {
      State s = v_->act(a, 0, r_states_[j], k_);
      if (!s.empty() && ech.insert(s)) r_states_.push_back(std::move(s));
    }
  }
  for (const State& s : r_states_) r_weights_.push_back(v_->state_weight(s));

  const RootSystem& rs = g_->roots();
  WeightQ hw = to_weight(rs.theta());
  for (auto& c : hw) c *= Rational(k_ + 1);
  if (rs.weyl_dimension(hw) != Rational(static_cast<long long>(r_states_.size()))) {
    throw std::logic_error("build_r: dimension differs from the Weyl dimension");
  }
  for (int a = 0; a < g_->dim(); ++a) {
    for (int n = 1; n <= k_ + 1; ++n) {
      if (!v_->act(a, n, top, k_).empty()) throw std::logic_error("build_r: positive mode does not annihilate R");
    }
  }
  SpanSolver<Mono> solver(r_states_);
  r_action_.resize(static_cast<size_t>(g_->dim()) * r_states_.size());
  for (int a = 0; a < g_->dim(); ++a) {
    for (uint32_t j = 0; j < r_states_.size(); ++j) {
      auto c = solver.solve(v_->act(a, 0, r_states_[j], k_));
      if (!c) throw std::logic_error("build_r: R is not stable under g");
      std::vector<LinComb<uint32_t>::Term> t;
      for (uint32_t i = 0; i < c->size(); ++i) {
        if (!(*c)[i].is_zero()) t.emplace_back(i, (*c)[i]);
      }
      r_action_[a * r_states_.size() + j] = LinComb<uint32_t>::from_sorted(std::move(t));
    }
  }
  w_states_.resize(num_w());
  layer_solvers_.resize(height_ + 1);
}

LinComb<uint32_t> RelationEngine::r_action(const LieElem& x, const LinComb<uint32_t>& r) const {
  Accumulator<uint32_t> acc;
  for (const auto& [a, ca] : x) {
    for (const auto& [j, cj] : r) acc.add(r_action(a, j), ca * cj);
  }
  return acc.take();
}

LinComb<uint32_t> RelationEngine::r_casimir(const LinComb<uint32_t>& r) const {
  Accumulator<uint32_t> acc;
  for (int a = 0; a < g_->dim(); ++a) {
    LinComb<uint32_t> y = r_action(g_->dual(a), r);
    acc.add(r_action(LieElem::single(a), y));
  }
  return acc.take();
}

// ---- W ------------------------------------------------------------------

const State& RelationEngine::w_state(WId w) {
  if (w >= num_w()) throw std::out_of_range("w_state: index beyond the truncation");
  if (!w_states_[w]) {
    if (w_layer(w) == 0) {
      w_states_[w] = r_states_[w];
    } else {
      State prev = w_state(static_cast<WId>(w - dim_r()));
      w_states_[w] = v_->derivation(prev);
    }
  }
  return *w_states_[w];
}

State RelationEngine::w_to_state(const WVec& w) {
  Accumulator<Mono> acc;
  for (const auto& [id, c] : w) acc.add(w_state(id), c);
  return acc.take();
}

const WVec& RelationEngine::w_act(int a, int n, WId w) {
  if (n < 0) throw std::invalid_argument("w_act: negative mode");
  const uint64_t key = (static_cast<uint64_t>(w) << 20) | (static_cast<uint64_t>(n) << 8) | static_cast<uint64_t>(a);
  auto it = w_act_memo_.find(key);
  if (it != w_act_memo_.end()) return it->second;
  const int i = w_layer(w);
  WVec out;
  if (i == 0) {
    if (n == 0) out = r_action(a, w_base(w));
  } else if (n <= i) {
    // x(n) D w' = D x(n) w' + n x(n-1) w'
    const WId prev = static_cast<WId>(w - dim_r());
    out = w_derivation(w_act(a, n, prev));
    if (n > 0) out.add_scaled(w_act(a, n - 1, prev), Rational(n));
  }
  return w_act_memo_.try_emplace(key, std::move(out)).first->second;
}

WVec RelationEngine::w_act(int a, int n, const WVec& w) {
  Accumulator<WId> acc;
  for (const auto& [id, c] : w) acc.add(w_act(a, n, id), c);
  return acc.take();
}

WVec RelationEngine::w_derivation(const WVec& w) const {
  std::vector<WVec::Term> t;
  t.reserve(w.size());
  for (const auto& [id, c] : w) {
    if (w_layer(id) + 1 > height_) throw std::out_of_range("w_derivation: result exceeds the truncation height");
    t.emplace_back(static_cast<WId>(id + dim_r()), c);
  }
  return WVec::from_sorted(std::move(t));
}

WVec RelationEngine::w_bracket(int a, int m, const WVec& w) {
  if (m < 1) throw std::invalid_argument("w_bracket: depth must be positive");
  int maxdeg = 0;
  for (const auto& [id, c] : w) maxdeg = std::max(maxdeg, w_degree(id));
  // sum_{j >= m-1} (-1)^{j+m-1} binom(j, m-1) D^{(j+1)} (y(j-m+1) w)
  Accumulator<WId> acc;
  for (int j = m - 1; j - m + 1 <= maxdeg; ++j) {
    WVec yw = w_act(a, j - m + 1, w);
    if (yw.empty()) continue;
    Rational c = binomial(j, m - 1) * Rational((j + m - 1) % 2 == 0 ? 1 : -1);
    for (int i = 1; i <= j + 1; ++i) {
      yw = w_derivation(yw);
      yw *= Rational(1, i);
    }
    acc.add(yw, c);
  }
  return acc.take();
}

std::optional<WVec> RelationEngine::w_coords(const State& s) {
  std::map<int, std::vector<State::Term>> by_degree;
  for (const auto& t : s) by_degree[v_->degree(t.first)].push_back(t);
  Accumulator<WId> acc;
  for (auto& [d, terms] : by_degree) {
    const int i = d - (k_ + 1);
    if (i < 0 || i > height_) return std::nullopt;
    if (!layer_solvers_[i]) {
      std::vector<State> family;
      for (uint32_t j = 0; j < dim_r(); ++j) family.push_back(w_state(w_id(i, j)));
      layer_solvers_[i] = std::make_unique<SpanSolver<Mono>>(family);
    }
    auto c = layer_solvers_[i]->solve(State::from_sorted(std::move(terms)));
    if (!c) return std::nullopt;
    for (uint32_t j = 0; j < c->size(); ++j) acc.add(w_id(i, j), (*c)[j]);
  }
  return acc.take();
}

// ---- N ------------------------------------------------------------------

WeightKey RelationEngine::n_weight(uint64_t key) const { return add_weights(v_->weight(high(key)), w_weight(low(key))); }

const LinComb<uint64_t>& RelationEngine::decompose(int a, int n, Mono u) {
  const uint64_t key = (static_cast<uint64_t>(u) << 17) | (static_cast<uint64_t>(n) << 8) | static_cast<uint64_t>(a);
  auto it = decomp_memo_.find(key);
  if (it != decomp_memo_.end()) return it->second;
  LinComb<uint64_t> out;
  if (u == VacuumModule::kVacuum) {
    out = LinComb<uint64_t>::single(pack(VacuumModule::kVacuum, mode_op(a, n)));
  } else {
    // x(n) f u' = f (x(n) u') + [x, f](n - m) u' + n <x, f> k u' [n = m]
    const Word w = v_->word(u);
    const int fb = FactorKey::basis(w[0]);
    const int depth = FactorKey::depth(w[0]);
    const Mono rest = v_->intern(w.substr(1));
    Accumulator<uint64_t> acc;
    const LinComb<uint64_t> inner = decompose(a, n, rest);
    for (const auto& [dk, c] : inner) {
      for (const auto& [m2, c2] : v_->act(fb, -depth, high(dk), k_)) acc.add(pack(m2, low(dk)), c * c2);
    }
    const int sum = n - depth;
    for (const auto& [b, c] : g_->bracket(a, fb)) {
      if (sum < 0) {
        for (const auto& [m2, c2] : v_->act(b, sum, rest, k_)) acc.add(pack(m2, kIdentityOp), c * c2);
      } else {
        const LinComb<uint64_t> sub = decompose(b, sum, rest);
        acc.add(sub, c);
      }
    }
    if (sum == 0) acc.add(pack(rest, kIdentityOp), Rational(n) * g_->form(a, fb) * Rational(k_));
    out = acc.take();
  }
  return decomp_memo_.try_emplace(key, std::move(out)).first->second;
}

InducedVector RelationEngine::n_act(int a, int n, const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : x) {
    const Mono u = high(key);
    const WId w = low(key);
    if (n < 0) {
      for (const auto& [m2, c2] : v_->act(a, n, u, k_)) acc.add(pack(m2, w), c * c2);
      continue;
    }
    if (n > n_degree(key) - (k_ + 1)) continue;
    const LinComb<uint64_t> parts = decompose(a, n, u);
    for (const auto& [dk, c2] : parts) {
      const uint32_t op = low(dk);
      if (op == kIdentityOp) {
        acc.add(pack(high(dk), w), c * c2);
        continue;
      }
      const Rational cc = c * c2;
      for (const auto& [w2, c3] : w_act(static_cast<int>(op >> 8), static_cast<int>(op & 0xff), w)) {
        acc.add(pack(high(dk), w2), cc * c3);
      }
    }
  }
  return acc.take();
}

InducedVector RelationEngine::n_act(const LieElem& y, int n, const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (const auto& [a, c] : y) acc.add(n_act(a, n, x), c);
  return acc.take();
}

InducedVector RelationEngine::n_translation(const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : x) {
    for (const auto& [m2, c2] : v_->derivation(high(key))) acc.add(pack(m2, low(key)), c * c2);
    for (const auto& [w2, c2] : w_derivation(WVec::single(low(key)))) acc.add(pack(high(key), w2), c * c2);
  }
  return acc.take();
}

InducedVector RelationEngine::n_casimir(const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (int a = 0; a < g_->dim(); ++a) acc.add(n_act(a, 0, n_act(g_->dual(a), 0, x)));
  return acc.take();
}

InducedVector RelationEngine::n_apply_monomial(Mono u, const InducedVector& x) {
  const Word w = v_->word(u);
  InducedVector r = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = n_act(FactorKey::basis(*it), -FactorKey::depth(*it), r);
  return r;
}

int RelationEngine::n_height(const InducedVector& x) const {
  int h = -1;
  for (const auto& [key, c] : x) h = std::max(h, w_layer(low(key)));
  return h;
}

// ---- W (x) V ------------------------------------------------------------

TensorWV RelationEngine::t_act_negative(int a, int m, const TensorWV& t) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : t) {
    for (const auto& [w2, c2] : w_bracket(a, m, WVec::single(high(key)))) acc.add(pack(w2, low(key)), c * c2);
    for (const auto& [v2, c2] : v_->act(a, -m, low(key), k_)) acc.add(pack(high(key), v2), c * c2);
  }
  return acc.take();
}

TensorWV RelationEngine::t_act_zero(int a, const TensorWV& t) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : t) {
    for (const auto& [w2, c2] : w_act(a, 0, high(key))) acc.add(pack(w2, low(key)), c * c2);
    for (const auto& [v2, c2] : v_->act(a, 0, low(key), k_)) acc.add(pack(high(key), v2), c * c2);
  }
  return acc.take();
}

TensorWV RelationEngine::t_translation(const TensorWV& t) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : t) {
    for (const auto& [w2, c2] : w_derivation(WVec::single(high(key)))) acc.add(pack(w2, low(key)), c * c2);
    for (const auto& [v2, c2] : v_->derivation(low(key))) acc.add(pack(high(key), v2), c * c2);
  }
  return acc.take();
}

// ---- maps ---------------------------------------------------------------

State RelationEngine::phi(const TensorWV& t) {
  Accumulator<Mono> acc;
  for (const auto& [key, c] : t) {
    const State& w = w_state(high(key));
    for (const auto& [m, cm] : w) acc.add(ops_->field_coeff(m, -1, low(key)), c * cm);
  }
  return acc.take();
}

State RelationEngine::psi_compute(uint64_t key) {
  const Mono u = high(key);
  if (u == VacuumModule::kVacuum) return w_state(low(key));
  const Word& w = v_->word(u);
  const int fb = FactorKey::basis(w[0]);
  const int depth = FactorKey::depth(w[0]);
  const Mono rest = v_->intern(v_->word(u).substr(1));
  return v_->act(fb, -depth, psi_ref(pack(rest, low(key))), k_);
}

const State& RelationEngine::psi_ref(uint64_t key) {
  auto it = psi_memo_.find(key);
  if (it != psi_memo_.end()) return it->second;
  State s = psi_compute(key);
  return psi_memo_.try_emplace(key, std::move(s)).first->second;
}

State RelationEngine::psi_basis(uint64_t key, bool store) {
  if (store) return psi_ref(key);
  auto it = psi_memo_.find(key);
  if (it != psi_memo_.end()) return it->second;
  return psi_compute(key);
}

State RelationEngine::psi(const InducedVector& x) {
  Accumulator<Mono> acc;
  for (const auto& [key, c] : x) acc.add(psi_ref(key), c);
  return acc.take();
}

const InducedVector& RelationEngine::xi_basis(uint64_t key) {
  auto it = xi_memo_.find(key);
  if (it != xi_memo_.end()) return it->second;
  const WId w = high(key);
  const Mono v = low(key);
  InducedVector out;
  if (v == VacuumModule::kVacuum) {
    out = InducedVector::single(pack(VacuumModule::kVacuum, w));
  } else {
    // Xi(w (x) y(-m) v') = y(-m) Xi(w (x) v') - Xi([y(-m) 1, w] (x) v')
    const Word word = v_->word(v);
    const int fb = FactorKey::basis(word[0]);
    const int depth = FactorKey::depth(word[0]);
    const Mono rest = v_->intern(word.substr(1));
    const InducedVector inner = xi_basis(pack(w, rest));
    out = n_act(fb, -depth, inner);
    for (const auto& [w2, c] : w_bracket(fb, depth, WVec::single(w))) {
      const InducedVector sub = xi_basis(pack(w2, rest));
      out.add_scaled(sub, -c);
    }
  }
  return xi_memo_.try_emplace(key, std::move(out)).first->second;
}

InducedVector RelationEngine::xi(const TensorWV& t) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : t) acc.add(xi_basis(key), c);
  return acc.take();
}

const TensorWV& RelationEngine::xi_inverse_basis(uint64_t key) {
  auto it = xi_inv_memo_.find(key);
  if (it != xi_inv_memo_.end()) return it->second;
  const Mono u = high(key);
  const WId w = low(key);
  TensorWV out;
  if (u == VacuumModule::kVacuum) {
    out = TensorWV::single(pack(w, VacuumModule::kVacuum));
  } else {
    const Word word = v_->word(u);
    const Mono rest = v_->intern(word.substr(1));
    const TensorWV inner = xi_inverse_basis(pack(rest, w));
    out = t_act_negative(FactorKey::basis(word[0]), FactorKey::depth(word[0]), inner);
  }
  return xi_inv_memo_.try_emplace(key, std::move(out)).first->second;
}

TensorWV RelationEngine::xi_inverse(const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : x) acc.add(xi_inverse_basis(key), c);
  return acc.take();
}

void RelationEngine::clear_caches() {
  psi_memo_.clear();
  xi_memo_.clear();
  xi_inv_memo_.clear();
}

// ---- diagram automorphism -------------------------------------------------

State RelationEngine::v_sigma(const State& s) {
  if (!sigma_) sigma_ = g_->diagram_automorphism();
  Accumulator<Mono> acc;
  for (const auto& [m, c] : s) {
    State r = VacuumModule::vacuum_state();
    Rational sign(1);
    const Word w = v_->word(m);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const int b = FactorKey::basis(*it);
      sign *= Rational(sigma_->sign[b]);
      r = v_->act(sigma_->target[b], -FactorKey::depth(*it), r, k_);
    }
    acc.add(r, c * sign);
  }
  return acc.take();
}

WVec RelationEngine::w_sigma(const WVec& w) {
  Accumulator<WId> acc;
  for (const auto& [id, c] : w) {
    WVec base = *w_coords(v_sigma(r_states_[w_base(id)]));
    for (int i = 0; i < w_layer(id); ++i) base = w_derivation(base);
    acc.add(base, c);
  }
  return acc.take();
}

InducedVector RelationEngine::n_sigma(const InducedVector& x) {
  Accumulator<uint64_t> acc;
  for (const auto& [key, c] : x) {
    State u = v_sigma(State::single(high(key)));
    WVec w = w_sigma(WVec::single(low(key)));
    for (const auto& [m, cm] : u) {
      for (const auto& [id, cw] : w) acc.add(pack(m, id), c * cm * cw);
    }
  }
  return acc.take();
}

// ---- relation vectors -----------------------------------------------------

InducedVector RelationEngine::sugawara_q(const LinComb<uint32_t>& r) {
  const Rational inv(1, k_ + g_->roots().dual_coxeter());
  Accumulator<uint64_t> acc;
  for (int a = 0; a < g_->dim(); ++a) {
    LinComb<uint32_t> yr = r_action(g_->dual(a), r);
    if (yr.empty()) continue;
    const Mono u = v_->act(a, -1, VacuumModule::kVacuum, k_).front().first;
    for (const auto& [j, c] : yr) acc.add(pack(u, j), c * inv);
  }
  WVec rw = r.map_keys<WId>([](uint32_t j) { return static_cast<WId>(j); });
  for (const auto& [w, c] : w_derivation(rw)) acc.add(pack(VacuumModule::kVacuum, w), -c);
  return acc.take();
}

TensorWV RelationEngine::sugawara_q_preimage_closed_form(const LinComb<uint32_t>& r) {
  const Rational inv(1, k_ + g_->roots().dual_coxeter());
  Accumulator<uint64_t> acc;
  for (int a = 0; a < g_->dim(); ++a) {
    LinComb<uint32_t> yr = r_action(g_->dual(a), r);
    if (yr.empty()) continue;
    const Mono v = v_->act(a, -1, VacuumModule::kVacuum, k_).front().first;
    for (const auto& [j, c] : yr) acc.add(pack(j, v), c * inv);
  }
  WVec omega = r_casimir(r).map_keys<WId>([](uint32_t j) { return static_cast<WId>(j); });
  WVec rw = r.map_keys<WId>([](uint32_t j) { return static_cast<WId>(j); });
  for (const auto& [w, c] : w_derivation(omega)) acc.add(pack(w, VacuumModule::kVacuum), c * inv);
  for (const auto& [w, c] : w_derivation(rw)) acc.add(pack(w, VacuumModule::kVacuum), -c);
  return acc.take();
}

InducedVector RelationEngine::q_obvious() {
  const int xt = g_->x_theta();
  const Mono u2 = v_->act(xt, -2, VacuumModule::kVacuum, k_).front().first;
  const Mono u1 = v_->act(xt, -1, VacuumModule::kVacuum, k_).front().first;
  std::vector<InducedVector::Term> t;
  t.emplace_back(pack(u2, w_id(0, 0)), Rational(1));
  t.emplace_back(pack(u1, w_id(1, 0)), Rational(-1, k_ + 1));
  return InducedVector::from_terms(std::move(t));
}

TensorWV RelationEngine::q_obvious_preimage_closed_form() {
  const int xt = g_->x_theta();
  const Mono v2 = v_->act(xt, -2, VacuumModule::kVacuum, k_).front().first;
  const Mono v1 = v_->act(xt, -1, VacuumModule::kVacuum, k_).front().first;
  std::vector<TensorWV::Term> t;
  t.emplace_back(pack(w_id(0, 0), v2), Rational(1));
  t.emplace_back(pack(w_id(1, 0), v1), Rational(-1, k_ + 1));
  return TensorWV::from_terms(std::move(t));
}

LieElem RelationEngine::theta_minus(int s) const {
  RootVec r = g_->roots().theta();
  r.at(s) -= 1;
  if (!g_->roots().is_root(r)) throw std::invalid_argument("theta_minus: not a root");
  RootVec neg(g_->rank(), 0);
  neg.at(s) = -1;
  return g_->bracket(LieElem::single(g_->root_vector(neg)), LieElem::single(g_->x_theta()));
}

InducedVector RelationEngine::q_star_closed_form(int s) {
  if (g_->type().family == Family::A && g_->rank() == 1) throw std::invalid_argument("q_star: undefined for A1");
  const LieElem y = theta_minus(s);
  const int xt = g_->x_theta();
  State yx = VacuumModule::vacuum_state();
  for (int i = 0; i < k_; ++i) yx = v_->act(xt, -1, yx, k_);
  yx = v_->act(y, -1, yx, k_);
  auto coords = w_coords(yx);
  if (!coords) throw std::logic_error("q_star_closed_form: vector outside R");
  const InducedVector top = InducedVector::single(pack(VacuumModule::kVacuum, w_id(0, 0)));
  InducedVector out = n_act(y, -1, top);
  Accumulator<uint64_t> acc;
  for (const auto& [w, c] : *coords) acc.add(pack(VacuumModule::kVacuum, w), c);
  out -= n_act(xt, -1, acc.take());
  return out;
}

InducedVector RelationEngine::q_star(int s) {
  if (g_->type().family == Family::A && g_->rank() == 1) throw std::invalid_argument("q_star: undefined for A1");
  const auto& dist = g_->roots().distinguished();
  if (std::find(dist.begin(), dist.end(), s) == dist.end()) {
    throw std::invalid_argument("q_star: index is not distinguished");
  }
  RootVec neg(g_->rank(), 0);
  neg.at(s) = -1;
  return n_act(g_->root_vector(neg), 1, q_obvious());
}

InducedVector RelationEngine::sl2_singular() {
  if (!(g_->type().family == Family::A && g_->rank() == 1)) throw std::invalid_argument("sl2_singular: type A1 only");
  InducedVector out = Rational(k_ + 1) * q_obvious();
  out -= n_act(g_->x_theta(), -1, sugawara_q(LinComb<uint32_t>::single(0)));
  return out;
}

InducedVector RelationEngine::sl2_level_one_vector() {
  if (!(g_->type().family == Family::A && g_->rank() == 1) || k_ != 1) {
    throw std::invalid_argument("sl2_level_one_vector: type A1 at level 1 only");
  }
  const int xt = g_->x_theta();
  const InducedVector top = InducedVector::single(pack(VacuumModule::kVacuum, w_id(0, 0)));
  // (2 x_theta(-1) theta^vee(-1) - 6 x_theta(-2)) (x) r
  InducedVector out = Rational(2) * n_act(xt, -1, n_act(g_->theta_coroot(), -1, top));
  out.add_scaled(n_act(xt, -2, top), Rational(-6));
  // x_theta(-1)^2 (x) x_{-theta}(0) r
  LinComb<uint32_t> fr = r_action(g_->x_minus_theta(), 0);
  InducedVector second;
  for (const auto& [j, c] : fr) second.add_scaled(InducedVector::single(pack(VacuumModule::kVacuum, j)), c);
  second = n_act(xt, -1, n_act(xt, -1, second));
  return out + second;
}

bool RelationEngine::is_singular(const InducedVector& x) {
  for (int e : g_->raising_simple()) {
    if (!n_act(e, 0, x).empty()) return false;
  }
  return n_act(g_->x_minus_theta(), 1, x).empty();
}

bool RelationEngine::killed_by_positive_modes(const InducedVector& x, int maxmode) {
  for (int a = 0; a < g_->dim(); ++a) {
    for (int n = 1; n <= maxmode; ++n) {
      if (!n_act(a, n, x).empty()) return false;
    }
  }
  return true;
}

AffineWeight RelationEngine::n_affine_weight(const InducedVector& x) {
  if (x.empty()) throw std::invalid_argument("n_affine_weight: zero vector");
  const uint64_t key = x.front().first;
  for (const auto& [k2, c] : x) {
    if (n_degree(k2) != n_degree(key) || n_weight(k2) != n_weight(key)) {
      throw std::invalid_argument("n_affine_weight: vector is not homogeneous");
    }
  }
  return affine_weight(k_, v_->to_weightq(n_weight(key)), n_degree(key), g_->roots());
}

InducedVector RelationEngine::normalized(const InducedVector& x) {
  if (x.empty()) return x;
  return x.front().second.inverse() * x;
}

std::optional<Rational> RelationEngine::proportionality(const InducedVector& a, const InducedVector& b) {
  if (b.empty()) return a.empty() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  Rational c = a.coeff(b.front().first) / b.front().second;
  if (a == c * b) return c;
  return std::nullopt;
}

int RelationEngine::reduce_height(InducedVector& x) {
  std::map<std::pair<int, uint32_t>, InducedVector> translated;  // (n, j) -> L^{n-1} q_{r_j}
  int steps = 0;
  for (int n = n_height(x); n > 0; n = n_height(x)) {
    Accumulator<uint64_t> acc;
    for (const auto& [key, c] : x) {
      if (w_layer(low(key)) != n) continue;
      const uint32_t j = w_base(low(key));
      auto it = translated.find({n, j});
      if (it == translated.end()) {
        InducedVector q = sugawara_q(LinComb<uint32_t>::single(j));
        for (int i = 1; i < n; ++i) q = n_translation(q);
        it = translated.emplace(std::make_pair(n, j), std::move(q)).first;
      }
      acc.add(n_apply_monomial(high(key), it->second), c);
    }
    x += acc.take();
    if (n_height(x) >= n) throw std::logic_error("reduce_height: height did not decrease");
    ++steps;
  }
  return steps;
}

std::string RelationEngine::to_string(const InducedVector& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : x) {
    os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    first = false;
    os << c.abs() << "*[" << v_->monomial_string(high(key)) << "](x)D^" << w_layer(low(key)) << " r" << w_base(low(key));
  }
  return os.str();
}

std::string RelationEngine::tensor_to_string(const TensorWV& t) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : t) {
    os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    first = false;
    os << c.abs() << "*D^" << w_layer(high(key)) << " r" << w_base(high(key)) << "(x)[" << v_->monomial_string(low(key)) << "]";
  }
  return os.str();
}

}  // namespace afrel
