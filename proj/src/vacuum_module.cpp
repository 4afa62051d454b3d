#include "afrel/vacuum_module.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace afrel {
namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

const char* VacuumModule::order_tag() { return "pbw-v1:depth-desc,basis-asc;basis:pos-roots,coroots,neg-roots"; }

VacuumModule::VacuumModule(std::shared_ptr<const LieAlgebra> g) : g_(std::move(g)) {
  if (g_->dim() > 255) throw std::invalid_argument("VacuumModule: algebra dimension above 255");
  if (g_->rank() > 8) throw std::invalid_argument("VacuumModule: rank above 8");
  for (int a = 0; a < g_->dim(); ++a) {
    WeightKey w{};
    for (int i = 0; i < g_->rank(); ++i) w[i] = static_cast<int16_t>(g_->weight(a)[i]);
    basis_weight_.push_back(w);
  }
  intern(Word());
}

WeightKey VacuumModule::basis_weight(int a) const { return basis_weight_[a]; }

WeightQ VacuumModule::to_weightq(const WeightKey& w) const {
  WeightQ out;
  for (int i = 0; i < g_->rank(); ++i) out.emplace_back(w[i]);
  return out;
}

Mono VacuumModule::intern(const Word& w) {
  auto it = ids_.find(w);
  if (it != ids_.end()) return it->second;
  Info info;
  for (char16_t key : w) {
    int depth = FactorKey::depth(key);
    if (depth < 1) throw std::invalid_argument("intern: nonnegative mode in PBW word");
    info.degree += depth;
    const WeightKey& bw = basis_weight_[FactorKey::basis(key)];
    for (int i = 0; i < 8; ++i) info.weight[i] = static_cast<int16_t>(info.weight[i] + bw[i]);
  }
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1] > w[i]) throw std::invalid_argument("intern: word not in PBW order");
  }
  Mono id = static_cast<Mono>(words_.size());
  words_.push_back(w);
  info_.push_back(info);
  ids_.emplace(w, id);
  return id;
}

const State& VacuumModule::act(int a, int n, Mono m, int k) {
  if (n < -255 || n > 255) throw std::out_of_range("act: mode out of supported range");
  const uint64_t key = memo_key(a, n, m);
  if (n < 0) {
    auto it = neg_memo_.find(key);
    if (it != neg_memo_.end()) return it->second;
    State r = compute_act(a, n, m, k);
    return neg_memo_.try_emplace(key, std::move(r)).first->second;
  }
  auto& memo = pos_memo_[k];
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  State r = compute_act(a, n, m, k);
  return memo.try_emplace(key, std::move(r)).first->second;
}

State VacuumModule::compute_act(int a, int n, Mono m, int k) {
  if (n >= 0 && n > info_[m].degree) return {};
  if (m == kVacuum) {
    if (n >= 0) return {};
    return State::single(intern(Word(1, static_cast<char16_t>(FactorKey::make(a, -n)))));
  }
  const Word w = words_[m];  // copy: interning may reallocate
  if (n < 0) {
    uint16_t key = FactorKey::make(a, -n);
    if (key <= w[0]) {
      Word out;
      out.reserve(w.size() + 1);
      out.push_back(static_cast<char16_t>(key));
      out.append(w);
      return State::single(intern(out));
    }
  }
  // x(n) f R = f (x(n) R) + [x(n), f] R
  const int fb = FactorKey::basis(w[0]);
  const int fn = -FactorKey::depth(w[0]);
  const Mono rest = intern(w.substr(1));
  Accumulator<Mono> acc;
  {
    State inner = act(a, n, rest, k);  // copy: the reference may not survive further inserts
    for (const auto& [mono, c] : inner) acc.add(act(fb, fn, mono, k), c);
  }
  const int sum = n + fn;
  for (const auto& [b, c] : g_->bracket(a, fb)) acc.add(act(b, sum, rest, k), c);
  if (sum == 0 && n != 0) {
    Rational central = Rational(n) * g_->form(a, fb) * Rational(k);
    acc.add(rest, central);
  }
  return acc.take();
}

State VacuumModule::act(int a, int n, const State& v, int k) {
  Accumulator<Mono> acc;
  for (const auto& [m, c] : v) acc.add(act(a, n, m, k), c);
  return acc.take();
}

State VacuumModule::act(const LieElem& x, int n, const State& v, int k) {
  Accumulator<Mono> acc;
  for (const auto& [a, ca] : x) {
    for (const auto& [m, c] : v) acc.add(act(a, n, m, k), ca * c);
  }
  return acc.take();
}

const State& VacuumModule::derivation(Mono m) {
  auto it = d_memo_.find(m);
  if (it != d_memo_.end()) return it->second;
  State r;
  if (m != kVacuum) {
    const Word w = words_[m];
    const int fb = FactorKey::basis(w[0]);
    const int depth = FactorKey::depth(w[0]);
    const Mono rest = intern(w.substr(1));
    // D(x(-m) R) = m x(-m-1) R + x(-m) D R; level plays no role for negative modes
    Accumulator<Mono> acc;
    acc.add(act(fb, -depth - 1, rest, 0), Rational(depth));
    State dr = derivation(rest);
    for (const auto& [mono, c] : dr) acc.add(act(fb, -depth, mono, 0), c);
    r = acc.take();
  }
  return d_memo_.try_emplace(m, std::move(r)).first->second;
}

State VacuumModule::derivation(const State& v) {
  Accumulator<Mono> acc;
  for (const auto& [m, c] : v) acc.add(derivation(m), c);
  return acc.take();
}

State VacuumModule::divided_derivation(const State& v, int j) {
  State r = v;
  for (int i = 1; i <= j; ++i) {
    r = derivation(r);
    r *= Rational(1, i);
  }
  return r;
}

State VacuumModule::degree_L0(const State& v) const {
  std::vector<State::Term> t;
  for (const auto& [m, c] : v) {
    if (info_[m].degree != 0) t.emplace_back(m, c * Rational(info_[m].degree));
  }
  return State::from_sorted(std::move(t));
}

State VacuumModule::apply_modes(const std::vector<std::pair<LieElem, int>>& ops, const State& v, int k) {
  State r = v;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) r = act(it->first, it->second, r, k);
  return r;
}

State VacuumModule::product_state(const std::vector<std::pair<int, int>>& factors, int k) {
  State r = vacuum_state();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (it->second < 1) throw std::invalid_argument("product_state: depth must be positive");
    r = act(it->first, -it->second, r, k);
  }
  return r;
}

const GradedSlice& VacuumModule::slice(int d) {
  if (d < 0) throw std::invalid_argument("slice: negative degree");
  if (static_cast<int>(slices_.size()) <= d) slices_.resize(d + 1);
  if (slices_[d]) return *slices_[d];
  auto s = std::make_unique<GradedSlice>();
  s->degree = d;
  if (!load_slice(d, *s)) {
    std::vector<uint16_t> keys;
    for (int depth = d; depth >= 1; --depth) {
      for (int a = 0; a < g_->dim(); ++a) keys.push_back(FactorKey::make(a, depth));
    }
    Word cur;
    auto rec = [&](auto&& self, size_t from, int remaining) -> void {
      if (remaining == 0) {
        s->basis.push_back(intern(cur));
        return;
      }
      for (size_t i = from; i < keys.size(); ++i) {
        int depth = FactorKey::depth(keys[i]);
        if (depth > remaining) continue;
        cur.push_back(static_cast<char16_t>(keys[i]));
        self(self, i, remaining - depth);
        cur.pop_back();
      }
    };
    rec(rec, 0, d);
    store_slice(*s);
  }
  for (uint32_t i = 0; i < s->basis.size(); ++i) {
    s->index.emplace(s->basis[i], i);
    s->blocks[info_[s->basis[i]].weight].push_back(i);
  }
  slices_[d] = std::move(s);
  return *slices_[d];
}

namespace {

std::string cache_file(const std::string& dir, const std::string& type, int d) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(VacuumModule::order_tag())));
  return dir + "/slice-" + type + "-d" + std::to_string(d) + "-" + hash + ".txt";
}

}  // namespace

bool VacuumModule::load_slice(int d, GradedSlice& s) {
  if (cache_dir_.empty()) return false;
  std::ifstream in(cache_file(cache_dir_, g_->type().name(), d));
  if (!in) return false;
  std::string magic, type;
  int deg = -1;
  size_t count = 0;
  if (!(in >> magic >> type >> deg >> count) || magic != "afrel-slice-1" || type != g_->type().name() || deg != d) {
    return false;
  }
  std::vector<Mono> basis;
  basis.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    size_t len = 0;
    if (!(in >> len)) return false;
    Word w;
    for (size_t j = 0; j < len; ++j) {
      unsigned key = 0;
      if (!(in >> std::hex >> key >> std::dec)) return false;
      w.push_back(static_cast<char16_t>(key));
    }
    try {
      Mono m = intern(w);
      if (info_[m].degree != d) return false;
      basis.push_back(m);
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  s.basis = std::move(basis);
  return true;
}

void VacuumModule::store_slice(const GradedSlice& s) const {
  if (cache_dir_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cache_dir_, ec);
  const std::string path = cache_file(cache_dir_, g_->type().name(), s.degree);
  const std::string tmp = path + ".tmp" + std::to_string(reinterpret_cast<uintptr_t>(&s));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << "afrel-slice-1 " << g_->type().name() << ' ' << s.degree << ' ' << s.basis.size() << '\n';
    for (Mono m : s.basis) {
      const Word& w = words_[m];
      out << w.size();
      for (char16_t key : w) out << ' ' << std::hex << static_cast<unsigned>(key) << std::dec;
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

WeightKey VacuumModule::state_weight(const State& v) const {
  if (v.empty()) return WeightKey{};
  return info_[v.front().first].weight;
}

int VacuumModule::state_degree(const State& v) const {
  if (v.empty()) return -1;
  return info_[v.front().first].degree;
}

bool VacuumModule::is_homogeneous(const State& v) const {
  for (const auto& [m, c] : v) {
    if (info_[m].degree != info_[v.front().first].degree || info_[m].weight != info_[v.front().first].weight) {
      return false;
    }
  }
  return true;
}

std::string VacuumModule::monomial_string(Mono m) const {
  const Word& w = words_[m];
  if (w.empty()) return "1";
  std::string s;
  for (char16_t key : w) {
    if (!s.empty()) s += ' ';
    s += g_->basis_name(FactorKey::basis(key)) + "(" + std::to_string(-FactorKey::depth(key)) + ")";
  }
  return s;
}

std::string VacuumModule::to_string(const State& v) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v) {
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rational a = c.abs();
    if (!a.is_one() || m == kVacuum) os << a << (m == kVacuum ? "" : "*");
    if (m != kVacuum) os << monomial_string(m);
  }
  return os.str();
}

}  // namespace afrel
