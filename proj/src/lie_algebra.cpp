#include "afrel/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace afrel {
namespace {

const char* family_letter(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
  }
  return "?";
}

using EpsVec = std::vector<Rational>;

EpsVec eps(int dim, std::initializer_list<std::pair<int, Rational>> entries) {
  EpsVec v(dim, Rational(0));
  for (const auto& [i, c] : entries) v[i] = c;
  return v;
}

// Simple roots in orthonormal coordinates, Bourbaki numbering.
std::vector<EpsVec> simple_roots_eps(const CartanType& t) {
  const int n = t.rank;
  std::vector<EpsVec> out;
  const Rational half(1, 2);
  switch (t.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) out.push_back(eps(n + 1, {{i, 1}, {i + 1, -1}}));
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      for (int i = 0; i + 1 < n; ++i) out.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
      if (t.family == Family::B) out.push_back(eps(n, {{n - 1, 1}}));
      if (t.family == Family::C) out.push_back(eps(n, {{n - 1, 2}}));
      if (t.family == Family::D) out.push_back(eps(n, {{n - 2, 1}, {n - 1, 1}}));
      break;
    case Family::E: {
      EpsVec a1(8, -half);
      a1[0] = half;
      a1[7] = half;
      out.push_back(a1);
      out.push_back(eps(8, {{0, 1}, {1, 1}}));
      for (int i = 3; i <= n; ++i) out.push_back(eps(8, {{i - 2, 1}, {i - 3, -1}}));
      break;
    }
    case Family::F:
      out.push_back(eps(4, {{1, 1}, {2, -1}}));
      out.push_back(eps(4, {{2, 1}, {3, -1}}));
      out.push_back(eps(4, {{3, 1}}));
      out.push_back(eps(4, {{0, half}, {1, -half}, {2, -half}, {3, -half}}));
      break;
    case Family::G:
      out.push_back(eps(3, {{0, 1}, {1, -1}}));
      out.push_back(eps(3, {{0, -2}, {1, 1}, {2, 1}}));
      break;
  }
  return out;
}

Rational dot(const EpsVec& a, const EpsVec& b) {
  Rational s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RootVec add(const RootVec& a, const RootVec& b, int sb = 1) {
  RootVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
  return r;
}

RootVec neg(const RootVec& a) {
  RootVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero_vec(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

bool is_positive_vec(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; }) && !is_zero_vec(a);
}

// Solves A x = b over Q for square invertible A.
std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::logic_error("solve_square: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    Rational inv = a[c][c].inverse();
    for (size_t j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

}  // namespace

CartanType CartanType::parse(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("unrecognized Cartan type '" + s + "'");
  CartanType t;
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    case 'E': t.family = Family::E; break;
    case 'F': t.family = Family::F; break;
    case 'G': t.family = Family::G; break;
    default: throw std::invalid_argument("unrecognized Cartan type '" + s + "'");
  }
  std::string digits = s.substr(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }) ||
      digits.size() > 3) {
    throw std::invalid_argument("unrecognized Cartan type '" + s + "'");
  }
  t.rank = std::stoi(digits);
  check_admissible(t);
  return t;
}

std::string CartanType::name() const { return family_letter(family) + std::to_string(rank); }

void check_admissible(const CartanType& t) {
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = t.rank >= 1; break;
    case Family::B:
    case Family::C: ok = t.rank >= 2; break;
    case Family::D: ok = t.rank >= 4; break;
    case Family::E: ok = t.rank >= 6 && t.rank <= 8; break;
    case Family::F: ok = t.rank == 4; break;
    case Family::G: ok = t.rank == 2; break;
  }
  if (!ok) throw std::invalid_argument("inadmissible rank for Cartan type " + t.name());
}

WeightQ to_weight(const RootVec& v) {
  WeightQ w;
  w.reserve(v.size());
  for (int x : v) w.emplace_back(x);
  return w;
}

RootSystem::RootSystem(const CartanType& t) : type_(t) {
  check_admissible(t);
  const int n = t.rank;
  auto simple = simple_roots_eps(t);
  gram_.assign(n, std::vector<Rational>(n));
  Rational longest(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram_[i][j] = dot(simple[i], simple[j]);
    if (gram_[i][i] > longest) longest = gram_[i][i];
  }
  Rational scale = Rational(2) / longest;
  for (auto& row : gram_) {
    for (auto& x : row) x *= scale;
  }
  cartan_.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational a = Rational(2) * gram_[i][j] / gram_[i][i];
      if (!a.is_integer()) throw std::logic_error("non-integral Cartan entry");
      cartan_[i][j] = static_cast<int>(a.numerator().get_si());
    }
  }

  // Root strings, one height at a time.
  std::set<RootVec> known;
  std::vector<RootVec> layer;
  for (int i = 0; i < n; ++i) {
    RootVec e(n, 0);
    e[i] = 1;
    layer.push_back(e);
  }
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    for (const auto& r : layer) {
      known.insert(r);
      positive_.push_back(r);
    }
    std::set<RootVec> next;
    for (const auto& b : layer) {
      for (int i = 0; i < n; ++i) {
        RootVec ai(n, 0);
        ai[i] = 1;
        if (b == ai) continue;
        int p = 0;
        RootVec down = add(b, ai, -1);
        while (known.count(down)) {
          ++p;
          down = add(down, ai, -1);
        }
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += b[j] * cartan_[i][j];
        if (p - pairing > 0) next.insert(add(b, ai));
      }
    }
    layer.assign(next.begin(), next.end());
  }
  const int np = num_positive();
  for (int i = 0; i < np; ++i) {
    index_.emplace(positive_[i], i);
    index_.emplace(neg(positive_[i]), np + i);
  }

  theta_ = positive_.back();
  rho_.assign(n, Rational(0));
  for (const auto& r : positive_) {
    for (int i = 0; i < n; ++i) rho_[i] += Rational(r[i], 2);
  }
  Rational gv = Rational(1) + Rational(2) * inner(rho_, to_weight(theta_)) / inner(theta_, theta_);
  if (!gv.is_integer()) throw std::logic_error("non-integral dual Coxeter number");
  dual_coxeter_ = static_cast<int>(gv.numerator().get_si());
  for (int i = 0; i < n; ++i) {
    RootVec e(n, 0);
    e[i] = 1;
    if (!inner(theta_, e).is_zero()) distinguished_.push_back(i);
  }
}

int RootSystem::root_index(const RootVec& r) const {
  auto it = index_.find(r);
  return it == index_.end() ? -1 : it->second;
}

Rational RootSystem::inner(const WeightQ& a, const WeightQ& b) const {
  Rational s(0);
  for (int i = 0; i < rank(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < rank(); ++j) {
      if (!b[j].is_zero()) s += a[i] * gram_[i][j] * b[j];
    }
  }
  return s;
}

Rational RootSystem::inner(const RootVec& a, const RootVec& b) const { return inner(to_weight(a), to_weight(b)); }

Rational RootSystem::pairing_coroot(const WeightQ& mu, int i) const {
  Rational s(0);
  for (int j = 0; j < rank(); ++j) s += mu[j] * gram_[j][i];
  return Rational(2) * s / gram_[i][i];
}

WeightQ RootSystem::to_fundamental(const WeightQ& mu) const {
  WeightQ out;
  for (int i = 0; i < rank(); ++i) out.push_back(pairing_coroot(mu, i));
  return out;
}

WeightQ RootSystem::from_fundamental(const WeightQ& labels) const {
  std::vector<std::vector<Rational>> a(rank(), std::vector<Rational>(rank()));
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) a[i][j] = Rational(cartan_[i][j]);
  }
  return solve_square(a, labels);
}

int RootSystem::height(const RootVec& r) {
  int h = 0;
  for (int x : r) h += x;
  return h;
}

bool RootSystem::is_dominant(const WeightQ& mu) const {
  for (int i = 0; i < rank(); ++i) {
    if (pairing_coroot(mu, i).sign() < 0) return false;
  }
  return true;
}

WeightQ RootSystem::reflect(const WeightQ& mu, int i) const {
  WeightQ r = mu;
  r[i] -= pairing_coroot(mu, i);
  return r;
}

WeightQ RootSystem::dominant_conjugate(const WeightQ& mu) const {
  WeightQ cur = mu;
  for (;;) {
    int bad = -1;
    for (int i = 0; i < rank(); ++i) {
      if (pairing_coroot(cur, i).sign() < 0) {
        bad = i;
        break;
      }
    }
    if (bad < 0) return cur;
    cur = reflect(cur, bad);
  }
}

size_t RootSystem::orbit_size(const WeightQ& mu) const {
  std::set<WeightQ> seen{mu};
  std::deque<WeightQ> todo{mu};
  while (!todo.empty()) {
    WeightQ cur = std::move(todo.front());
    todo.pop_front();
    for (int i = 0; i < rank(); ++i) {
      WeightQ r = reflect(cur, i);
      if (seen.insert(r).second) todo.push_back(std::move(r));
    }
  }
  return seen.size();
}

Rational RootSystem::weyl_dimension(const WeightQ& lambda) const {
  WeightQ lr = lambda;
  for (int i = 0; i < rank(); ++i) lr[i] += rho_[i];
  Rational d(1);
  for (const auto& a : positive_) {
    WeightQ aw = to_weight(a);
    d *= inner(lr, aw) / inner(rho_, aw);
  }
  return d;
}

Rational casimir_eigenvalue(const RootSystem& rs, const WeightQ& lambda) {
  WeightQ l2 = lambda;
  for (int i = 0; i < rs.rank(); ++i) l2[i] += Rational(2) * rs.rho()[i];
  return rs.inner(l2, lambda);
}

bool check_lemma_5_2(const CartanType& t) {
  if (t.family == Family::A && t.rank == 1) throw std::invalid_argument("check_lemma_5_2: not defined for A1");
  RootSystem rs(t);
  for (int s : rs.distinguished()) {
    RootVec a = rs.theta();
    a[s] -= 1;
    RootVec b = add(rs.theta(), rs.theta());
    b[s] -= 1;
    if (!rs.is_root(a) || rs.is_root(b)) return false;
  }
  return true;
}

AffineWeight AffineWeight::operator+(const AffineWeight& o) const {
  AffineWeight r{level + o.level, finite, alpha0 + o.alpha0};
  for (size_t i = 0; i < r.finite.size(); ++i) r.finite[i] += o.finite[i];
  return r;
}

AffineWeight AffineWeight::operator-(const AffineWeight& o) const {
  AffineWeight r{level - o.level, finite, alpha0 - o.alpha0};
  for (size_t i = 0; i < r.finite.size(); ++i) r.finite[i] -= o.finite[i];
  return r;
}

std::string AffineWeight::str() const {
  std::ostringstream os;
  os << level << "*L0";
  for (size_t i = 0; i < finite.size(); ++i) {
    if (finite[i].is_zero()) continue;
    os << (finite[i].sign() < 0 ? " - " : " + ") << finite[i].abs() << "*a" << (i + 1);
  }
  if (!alpha0.is_zero()) os << (alpha0.sign() < 0 ? " - " : " + ") << alpha0.abs() << "*a0";
  return os.str();
}

AffineWeight affine_weight(int k, const WeightQ& mu, int degree, const RootSystem& rs) {
  AffineWeight w{Rational(k), mu, Rational(-degree)};
  for (int i = 0; i < rs.rank(); ++i) w.finite[i] -= Rational(degree) * Rational(rs.theta()[i]);
  return w;
}

std::vector<AffineWeight> dot_action_weight(const RootSystem& rs, int k) {
  std::vector<AffineWeight> out;
  const WeightQ theta = to_weight(rs.theta());
  for (int s : rs.distinguished()) {
    WeightQ as(rs.rank(), Rational(0));
    as[s] = Rational(1);
    Rational pairing = Rational(-2) * rs.inner(as, theta) / rs.inner(theta, theta);  // <alpha_*, alpha_0^vee>
    WeightQ fin(rs.rank(), Rational(0));
    fin[s] = Rational(-1);
    out.push_back({Rational(k), fin, -(Rational(k + 1) - pairing)});
  }
  return out;
}

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(const CartanType& t, SignConvention sign) : roots_(t), sign_(sign) {
  const int np = roots_.num_positive();
  const int l = rank();
  dim_ = 2 * np + l;
  weights_.resize(dim_);
  for (int i = 0; i < np; ++i) {
    weights_[i] = roots_.positive_roots()[i];
    weights_[np + l + i] = neg(roots_.positive_roots()[i]);
  }
  for (int i = 0; i < l; ++i) weights_[np + i] = RootVec(l, 0);
  build_structure_constants();
}

int LieAlgebra::root_vector(const RootVec& r) const {
  int idx = roots_.root_index(r);
  if (idx < 0) throw std::invalid_argument("root_vector: not a root");
  const int np = roots_.num_positive();
  return idx < np ? idx : idx + rank();
}

int LieAlgebra::x_minus_theta() const { return root_vector(neg(roots_.theta())); }

Rational LieAlgebra::n_positive(int i, int j) const { return npos_[i * roots_.num_positive() + j]; }

Rational LieAlgebra::structure_constant(const RootVec& r, const RootVec& s) const {
  RootVec sum = add(r, s);
  if (is_zero_vec(sum) || !roots_.is_root(sum)) return Rational(0);
  const bool rp = is_positive_vec(r);
  const bool sp = is_positive_vec(s);
  if (rp && sp) return n_positive(roots_.root_index(r), roots_.root_index(s));
  if (!rp && !sp) return -n_positive(roots_.root_index(neg(r)), roots_.root_index(neg(s)));
  // N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s) with r + s + t = 0.
  RootVec t = neg(sum);
  const bool tp = is_positive_vec(t);
  if (tp == rp) return roots_.inner(t, t) / roots_.inner(s, s) * structure_constant(t, r);
  return roots_.inner(t, t) / roots_.inner(r, r) * structure_constant(s, t);
}

void LieAlgebra::build_structure_constants() {
  const auto& pos = roots_.positive_roots();
  const int np = roots_.num_positive();
  const int l = rank();
  npos_.assign(static_cast<size_t>(np) * np, Rational(0));
  const Rational eps(sign_ == SignConvention::Standard ? 1 : -1);

  for (int x = 0; x < np; ++x) {
    const RootVec& xi = pos[x];
    if (RootSystem::height(xi) < 2) continue;
    // Extraspecial pair: smallest alpha with xi - alpha a positive root.
    int a = -1, b = -1;
    for (int i = 0; i < np && a < 0; ++i) {
      RootVec d = add(xi, pos[i], -1);
      if (is_positive_vec(d) && roots_.is_root(d)) {
        a = i;
        b = roots_.root_index(d);
      }
    }
    int p = 0;
    RootVec down = add(pos[b], pos[a], -1);
    while (roots_.is_root(down)) {
      ++p;
      down = add(down, pos[a], -1);
    }
    const Rational nab = eps * Rational(p + 1);
    npos_[a * np + b] = nab;
    npos_[b * np + a] = -nab;
    const RootVec& alpha = pos[a];
    const RootVec& beta = pos[b];
    const Rational xixi = roots_.inner(xi, xi);
    for (int z1 = 0; z1 < np; ++z1) {
      RootVec d = add(xi, pos[z1], -1);
      if (!is_positive_vec(d) || !roots_.is_root(d)) continue;
      int z2 = roots_.root_index(d);
      if (z1 >= z2 || z1 == a) continue;
      const RootVec& zeta1 = pos[z1];
      const RootVec& zeta2 = pos[z2];
      Rational acc(0);
      RootVec s2 = add(zeta2, alpha, -1);
      if (roots_.is_root(s2)) {
        acc += structure_constant(zeta2, neg(alpha)) * structure_constant(zeta1, neg(beta)) / roots_.inner(s2, s2);
      }
      RootVec s1 = add(zeta1, alpha, -1);
      if (roots_.is_root(s1)) {
        acc += structure_constant(neg(alpha), zeta1) * structure_constant(zeta2, neg(beta)) / roots_.inner(s1, s1);
      }
      Rational n = xixi / nab * acc;
      npos_[z1 * np + z2] = n;
      npos_[z2 * np + z1] = -n;
    }
  }

  // Bracket and form tables.
  table_.assign(static_cast<size_t>(dim_) * dim_, {});
  form_.assign(static_cast<size_t>(dim_) * dim_, Rational(0));
  auto is_root_index = [&](int i) { return !is_cartan(i); };
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      auto& out = table_[i * dim_ + j];
      const bool ri = is_root_index(i), rj = is_root_index(j);
      if (ri && rj) {
        const RootVec& r = weights_[i];
        const RootVec& s = weights_[j];
        RootVec sum = add(r, s);
        if (is_zero_vec(sum)) {
          // h_r = sum m_i (alpha_i, alpha_i)/(r, r) h_i
          Rational rr = roots_.inner(r, r);
          for (int c = 0; c < l; ++c) {
            if (r[c] == 0) continue;
            out.emplace_back(cartan_index(c), Rational(r[c]) * roots_.gram(c, c) / rr);
          }
          form_[i * dim_ + j] = Rational(2) / rr;
        } else if (roots_.is_root(sum)) {
          out.emplace_back(root_vector(sum), structure_constant(r, s));
        }
      } else if (!ri && !rj) {
        int a = i - np, b = j - np;
        form_[i * dim_ + j] = Rational(4) * roots_.gram(a, b) / (roots_.gram(a, a) * roots_.gram(b, b));
      } else {
        const int h = ri ? j - np : i - np;
        const RootVec& r = ri ? weights_[i] : weights_[j];
        int pairing = 0;
        for (int c = 0; c < l; ++c) pairing += r[c] * roots_.cartan(h, c);
        if (pairing != 0) out.emplace_back(ri ? i : j, Rational(ri ? -pairing : pairing));
      }
    }
  }

  // Dual basis.
  dual_.assign(dim_, LieElem());
  std::vector<std::vector<Rational>> g(l, std::vector<Rational>(l));
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) g[a][b] = form(cartan_index(a), cartan_index(b));
  }
  for (int a = 0; a < l; ++a) {
    std::vector<Rational> e(l, Rational(0));
    e[a] = Rational(1);
    auto c = solve_square(g, e);
    std::vector<LieElem::Term> t;
    for (int j = 0; j < l; ++j) {
      if (!c[j].is_zero()) t.emplace_back(cartan_index(j), c[j]);
    }
    dual_[cartan_index(a)] = LieElem::from_terms(std::move(t));
  }
  for (int i = 0; i < dim_; ++i) {
    if (is_cartan(i)) continue;
    int j = root_vector(neg(weights_[i]));
    dual_[i] = LieElem::single(j, form(i, j).inverse());
  }
}

LieElem LieAlgebra::bracket(const LieElem& x, const LieElem& y) const {
  Accumulator<int> acc;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      Rational c = ca * cb;
      for (const auto& [k, v] : bracket(a, b)) acc.add(k, c * v);
    }
  }
  return acc.take();
}

Rational LieAlgebra::form(const LieElem& x, const LieElem& y) const {
  Rational s(0);
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      const Rational& f = form(a, b);
      if (!f.is_zero()) s += ca * cb * f;
    }
  }
  return s;
}

LieElem LieAlgebra::theta_coroot() const { return bracket(LieElem::single(x_theta()), LieElem::single(x_minus_theta())); }

std::vector<int> LieAlgebra::raising_simple() const {
  std::vector<int> out;
  for (int i = 0; i < rank(); ++i) {
    RootVec e(rank(), 0);
    e[i] = 1;
    out.push_back(root_vector(e));
  }
  return out;
}

std::string LieAlgebra::basis_name(int a) const {
  if (is_cartan(a)) return "h" + std::to_string(a - roots_.num_positive() + 1);
  const RootVec& r = weights_[a];
  const bool positive = is_positive_vec(r);
  std::string s = positive ? "e" : "f";
  s += "(";
  for (int i = 0; i < rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(positive ? r[i] : -r[i]);
  }
  return s + ")";
}

LieElem LieAlgebra::SignedPermutation::apply(const LieElem& x) const {
  std::vector<LieElem::Term> t;
  for (const auto& [a, c] : x) t.emplace_back(target[a], sign[a] > 0 ? c : -c);
  return LieElem::from_terms(std::move(t));
}

LieAlgebra::SignedPermutation LieAlgebra::diagram_automorphism() const {
  if (type().family != Family::A || rank() < 2) {
    throw std::invalid_argument("diagram_automorphism: supported for A_l with l >= 2 only");
  }
  const int l = rank();
  const int np = roots_.num_positive();
  const auto& pos = roots_.positive_roots();
  auto flip = [&](const RootVec& r) { return RootVec(r.rbegin(), r.rend()); };
  SignedPermutation s;
  s.target.assign(dim_, -1);
  s.sign.assign(dim_, 0);
  for (int i = 0; i < l; ++i) {
    s.target[cartan_index(i)] = cartan_index(l - 1 - i);
    s.sign[cartan_index(i)] = 1;
  }
  for (int x = 0; x < np; ++x) {
    const RootVec& xi = pos[x];
    for (int side : {1, -1}) {
      RootVec r = side > 0 ? xi : neg(xi);
      int idx = root_vector(r);
      s.target[idx] = root_vector(flip(r));
      if (RootSystem::height(xi) == 1) {
        s.sign[idx] = 1;
        continue;
      }
      // e_r = [e_a, e_b] / N_{a,b} with a simple
      int ai = 0;
      while (true) {
        RootVec d = add(xi, pos[ai], -1);
        if (is_positive_vec(d) && roots_.is_root(d)) break;
        ++ai;
      }
      RootVec a = side > 0 ? pos[ai] : neg(pos[ai]);
      RootVec b = add(r, a, -1);
      Rational f = structure_constant(flip(a), flip(b)) / structure_constant(a, b);
      int sb = s.sign[root_vector(b)];
      Rational sg = f * Rational(sb);
      if (sg != Rational(1) && sg != Rational(-1)) throw std::logic_error("diagram_automorphism: non-unit sign");
      s.sign[idx] = sg.sign();
    }
  }
  return s;
}

}  // namespace afrel
