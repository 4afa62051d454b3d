#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "afrel/relations.hpp"

namespace afrel {
namespace {

WeightKey sub_weights(const WeightKey& a, const WeightKey& b) {
  WeightKey r{};
  for (int i = 0; i < 8; ++i) r[i] = static_cast<int16_t>(a[i] - b[i]);
  return r;
}

WeightKey add_weights(const WeightKey& a, const WeightKey& b) {
  WeightKey r{};
  for (int i = 0; i < 8; ++i) r[i] = static_cast<int16_t>(a[i] + b[i]);
  return r;
}

}  // namespace

bool RelationEngine::is_dominant(const WeightKey& w) const { return g_->roots().is_dominant(v_->to_weightq(w)); }

size_t RelationEngine::orbit_size(const WeightKey& w) {
  auto it = orbit_memo_.find(w);
  if (it != orbit_memo_.end()) return it->second;
  size_t n = g_->roots().orbit_size(v_->to_weightq(w));
  orbit_memo_.emplace(w, n);
  return n;
}

std::vector<WeightKey> RelationEngine::n_dominant_weights(int d, int max_height) {
  std::set<WeightKey> out;
  for (WId w = 0; w < num_w(); ++w) {
    if (w_layer(w) > max_height || w_degree(w) > d) continue;
    for (const auto& [mu, pos] : v_->slice(d - w_degree(w)).blocks) {
      WeightKey total = add_weights(mu, w_weight(w));
      if (is_dominant(total)) out.insert(total);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<uint64_t> RelationEngine::n_block_basis(int d, const WeightKey& mu, int max_height, int max_length) {
  std::vector<uint64_t> out;
  for (WId w = 0; w < num_w(); ++w) {
    if (w_layer(w) > max_height || w_degree(w) > d) continue;
    const GradedSlice& sl = v_->slice(d - w_degree(w));
    auto it = sl.blocks.find(sub_weights(mu, w_weight(w)));
    if (it == sl.blocks.end()) continue;
    for (uint32_t pos : it->second) {
      const Mono u = sl.basis[pos];
      if (static_cast<int>(v_->word(u).size()) <= max_length) out.push_back(pack(u, w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> RelationEngine::t_block_basis(int d, const WeightKey& mu) {
  std::vector<uint64_t> out;
  for (WId w = 0; w < num_w(); ++w) {
    if (w_degree(w) > d) continue;
    const GradedSlice& sl = v_->slice(d - w_degree(w));
    auto it = sl.blocks.find(sub_weights(mu, w_weight(w)));
    if (it == sl.blocks.end()) continue;
    for (uint32_t pos : it->second) out.push_back(pack(w, sl.basis[pos]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<InducedVector> RelationEngine::kernel_psi_block(int d, const WeightKey& mu, int max_height, int max_length) {
  if (d > cutoff_) throw std::out_of_range("kernel_psi_block: degree above the cutoff");
  const std::vector<uint64_t> cols = n_block_basis(d, mu, max_height, max_length);
  if (cols.empty()) return {};
  // column elimination with one tag per column; a column whose image
  // reduces to zero leaves its dependency in the tag part
  constexpr uint64_t kTag = uint64_t{1} << 62;
  Echelon<uint64_t> ech;
  std::vector<InducedVector> out;
  for (uint32_t c = 0; c < cols.size(); ++c) {
    std::vector<LinComb<uint64_t>::Term> t;
    for (const auto& [m, x] : psi_basis(cols[c], false)) t.emplace_back(m, x);
    t.emplace_back(kTag + c, Rational(1));
    LinComb<uint64_t> r = ech.reduce(LinComb<uint64_t>::from_sorted(std::move(t)));
    if (r.front().first < kTag) {
      ech.insert_reduced(std::move(r));
      continue;
    }
    std::vector<InducedVector::Term> k;
    for (const auto& [tag, x] : r) k.emplace_back(cols[tag - kTag], x);
    out.push_back(InducedVector::from_sorted(std::move(k)));
  }
  return out;
}

GradedDims RelationEngine::kernel_psi_dims(int max_height, int max_length, bool dominant_only) {
  GradedDims out;
  out.per_degree.assign(cutoff_ + 1, 0);
  for (int d = 0; d <= cutoff_; ++d) {
    std::vector<WeightKey> weights;
    if (dominant_only) {
      weights = n_dominant_weights(d, max_height);
    } else {
      std::set<WeightKey> all;
      for (WId w = 0; w < num_w(); ++w) {
        if (w_layer(w) > max_height || w_degree(w) > d) continue;
        for (const auto& [mu, pos] : v_->slice(d - w_degree(w)).blocks) all.insert(add_weights(mu, w_weight(w)));
      }
      weights.assign(all.begin(), all.end());
    }
    for (const WeightKey& mu : weights) {
      const std::vector<uint64_t> cols = n_block_basis(d, mu, max_height, max_length);
      Echelon<Mono> ech;
      for (uint64_t c : cols) ech.insert(psi_basis(c, false));
      const size_t dim = cols.size() - ech.rank();
      out.blocks[{d, mu}] = dim;
      out.per_degree[d] += static_cast<long long>(dim * (dominant_only ? orbit_size(mu) : 1));
    }
  }
  return out;
}

GradedDims RelationEngine::kernel_phi_dims(bool dominant_only) {
  GradedDims out;
  out.per_degree.assign(cutoff_ + 1, 0);
  for (int d = 0; d <= cutoff_; ++d) {
    std::set<WeightKey> weights;
    for (WId w = 0; w < num_w(); ++w) {
      if (w_degree(w) > d) continue;
      for (const auto& [mu, pos] : v_->slice(d - w_degree(w)).blocks) {
        WeightKey total = add_weights(mu, w_weight(w));
        if (!dominant_only || is_dominant(total)) weights.insert(total);
      }
    }
    for (const WeightKey& mu : weights) {
      const std::vector<uint64_t> cols = t_block_basis(d, mu);
      Echelon<Mono> ech;
      for (uint64_t c : cols) ech.insert(phi(TensorWV::single(c)));
      const size_t dim = cols.size() - ech.rank();
      out.blocks[{d, mu}] = dim;
      out.per_degree[d] += static_cast<long long>(dim * (dominant_only ? orbit_size(mu) : 1));
    }
  }
  return out;
}

void RelationEngine::check_generator(const InducedVector& gen) const {
  if (gen.empty()) return;
  const uint64_t k0 = gen.front().first;
  for (const auto& [key, c] : gen) {
    if (n_degree(key) != n_degree(k0) || n_weight(key) != n_weight(k0)) {
      throw std::invalid_argument("closure: generator is not homogeneous");
    }
  }
  if (n_degree(k0) > cutoff_) throw std::invalid_argument("closure: generator degree above the cutoff");
}

std::map<std::pair<int, WeightKey>, std::vector<InducedVector>> RelationEngine::closure_nonraising(
    const std::vector<InducedVector>& generators, OperatorSet ops) {
  const bool positive = ops == OperatorSet::AllWithL || ops == OperatorSet::NonNegative;
  struct Block {
    Echelon<uint64_t> ech;
    std::vector<InducedVector> basis;
  };
  std::map<std::pair<int, WeightKey>, Block> blocks;
  std::deque<InducedVector> queue;
  auto offer = [&](InducedVector v) {
    if (v.empty()) return;
    const uint64_t k0 = v.front().first;
    Block& b = blocks[{n_degree(k0), n_weight(k0)}];
    if (b.ech.insert(v)) {
      b.basis.push_back(v);
      queue.push_back(std::move(v));
    }
  };
  for (const InducedVector& gen : generators) {
    check_generator(gen);
    offer(gen);
  }
  while (!queue.empty()) {
    InducedVector v = std::move(queue.front());
    queue.pop_front();
    const int d = n_degree(v.front().first);
    const int maxmode = positive ? d - (k_ + 1) : 0;
    for (int a = 0; a < g_->dim(); ++a) {
      for (int n = 0; n <= maxmode; ++n) offer(n_act(a, n, v));
    }
  }
  std::map<std::pair<int, WeightKey>, std::vector<InducedVector>> out;
  for (auto& [key, b] : blocks) out.emplace(key, std::move(b.basis));
  return out;
}

GradedDims RelationEngine::closure_dims(const std::vector<InducedVector>& generators, OperatorSet ops,
                                        const GradedDims* caps, bool dominant_only, int max_height) {
  if (max_height < 0) max_height = height_;
  const bool positive = ops == OperatorSet::AllWithL || ops == OperatorSet::NonNegative;
  std::map<std::pair<int, WeightKey>, std::vector<InducedVector>> plus;
  if (positive) plus = closure_nonraising(generators, ops);
  GradedDims out;
  out.per_degree.assign(cutoff_ + 1, 0);
  if (ops == OperatorSet::NonNegative) {
    for (const auto& [key, basis] : plus) {
      if (dominant_only && !is_dominant(key.second)) continue;
      out.blocks[key] = basis.size();
      out.per_degree[key.first] += static_cast<long long>(basis.size() * (dominant_only ? orbit_size(key.second) : 1));
    }
    return out;
  }
  const bool with_l = ops == OperatorSet::NonPositiveWithL || ops == OperatorSet::AllWithL;

  struct Target {
    Echelon<uint64_t> ech;
    size_t cap = SIZE_MAX;
    bool done = false;
  };
  std::map<std::pair<int, WeightKey>, Target> targets;
  for (int d = 0; d <= cutoff_; ++d) {
    std::set<WeightKey> weights;
    for (WId w = 0; w < num_w(); ++w) {
      if (w_layer(w) > max_height || w_degree(w) > d) continue;
      for (const auto& [mu, pos] : v_->slice(d - w_degree(w)).blocks) {
        WeightKey total = add_weights(mu, w_weight(w));
        if (!dominant_only || is_dominant(total)) weights.insert(total);
      }
    }
    for (const WeightKey& mu : weights) {
      Target t;
      if (caps) {
        auto it = caps->blocks.find({d, mu});
        t.cap = it == caps->blocks.end() ? 0 : it->second;
        t.done = t.cap == 0;
      }
      targets.emplace(std::make_pair(d, mu), std::move(t));
    }
  }
  auto all_done = [&] {
    for (const auto& [key, t] : targets) {
      if (!t.done) return false;
    }
    return true;
  };

  // u L^j m over PBW monomials u of U(g_<0), j >= 0 (j = 0 without L), m in M+
  auto expand = [&](const InducedVector& m, const std::pair<int, WeightKey>& mkey) {
    InducedVector lm = m;
    for (int j = 0; mkey.first + j <= cutoff_; ++j) {
      if (j > 0) {
        if (!with_l) break;
        lm = n_translation(lm);
      }
      if (all_done()) break;
      const int e = mkey.first + j;
      std::unordered_map<Mono, InducedVector> memo;
      auto product = [&](auto&& self, Mono u) -> const InducedVector& {
        if (u == VacuumModule::kVacuum) return lm;
        auto it = memo.find(u);
        if (it != memo.end()) return it->second;
        const Word word = v_->word(u);
        const Mono rest = v_->intern(word.substr(1));
        InducedVector r = n_act(FactorKey::basis(word[0]), -FactorKey::depth(word[0]), self(self, rest));
        return memo.emplace(u, std::move(r)).first->second;
      };
      for (auto& [tkey, t] : targets) {
        if (t.done || tkey.first < e) continue;
        const GradedSlice& sl = v_->slice(tkey.first - e);
        auto it = sl.blocks.find(sub_weights(tkey.second, mkey.second));
        if (it == sl.blocks.end()) continue;
        for (uint32_t pos : it->second) {
          if (t.ech.insert(product(product, sl.basis[pos])) && t.ech.rank() >= t.cap) {
            t.done = true;
            break;
          }
        }
      }
    }
  };

  if (positive) {
    for (const auto& [mkey, basis] : plus) {
      for (const InducedVector& m : basis) expand(m, mkey);
    }
  } else {
    // The products of the vectors expanded so far span a submodule, so a
    // vector already in its tracked blocks adds nothing and is skipped.
    std::vector<const InducedVector*> order;
    for (const InducedVector& gen : generators) {
      check_generator(gen);
      if (!gen.empty()) order.push_back(&gen);
    }
    std::stable_sort(order.begin(), order.end(), [&](const InducedVector* a, const InducedVector* b) {
      return n_degree(a->front().first) < n_degree(b->front().first);
    });
    std::map<std::pair<int, WeightKey>, Echelon<uint64_t>> seen;
    std::deque<InducedVector> queue;
    auto offer = [&](InducedVector v) {
      if (v.empty()) return;
      const std::pair<int, WeightKey> key{n_degree(v.front().first), n_weight(v.front().first)};
      auto it = targets.find(key);
      if (it != targets.end() && (it->second.done || it->second.ech.contains(v))) return;
      if (!seen[key].insert(v)) return;
      expand(v, key);
      queue.push_back(std::move(v));
    };
    for (const InducedVector* gen : order) {
      offer(*gen);
      while (!queue.empty()) {
        InducedVector v = std::move(queue.front());
        queue.pop_front();
        for (int a = 0; a < g_->dim(); ++a) offer(n_act(a, 0, v));
      }
    }
  }
  for (const auto& [key, t] : targets) {
    out.blocks[key] = t.ech.rank();
    out.per_degree[key.first] += static_cast<long long>(t.ech.rank() * (dominant_only ? orbit_size(key.second) : 1));
  }
  return out;
}

std::vector<InducedVector> RelationEngine::singular_vectors(int d) {
  std::vector<InducedVector> out;
  const std::vector<int> raising = g_->raising_simple();
  for (const WeightKey& mu : n_dominant_weights(d, 0)) {
    const std::vector<InducedVector> kernel = kernel_psi_block(d, mu, 0);
    if (kernel.empty()) continue;
    // stack e_1(0), ..., e_l(0), x_{-theta}(1) into one map on span(kernel)
    std::map<std::pair<int, uint64_t>, uint32_t> row_of;
    std::vector<std::vector<std::pair<uint32_t, Rational>>> entries;
    for (uint32_t c = 0; c < kernel.size(); ++c) {
      std::vector<InducedVector> images;
      for (int e : raising) images.push_back(n_act(e, 0, kernel[c]));
      images.push_back(n_act(g_->x_minus_theta(), 1, kernel[c]));
      for (int op = 0; op < static_cast<int>(images.size()); ++op) {
        for (const auto& [key, x] : images[op]) {
          auto [it, inserted] = row_of.try_emplace({op, key}, static_cast<uint32_t>(row_of.size()));
          if (inserted) entries.emplace_back();
          entries[it->second].emplace_back(c, x);
        }
      }
    }
    SparseMatrixQ mat;
    mat.columns = static_cast<uint32_t>(kernel.size());
    for (auto& e : entries) mat.rows.emplace_back(mat.columns, LinComb<uint32_t>::from_sorted(std::move(e)));
    for (const SparseVectorQ& kv : kernel_basis(mat)) {
      Accumulator<uint64_t> acc;
      for (const auto& [c, x] : kv.entries) acc.add(kernel[c], x);
      out.push_back(normalized(acc.take()));
    }
  }
  return out;
}

}  // namespace afrel
