#include <random>

#include "afrel/linalg.hpp"
#include "doctest.h"

using afrel::LinComb;
using afrel::Rational;
using afrel::SparseMatrixQ;
using afrel::SparseVectorQ;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Textbook Gauss-Jordan over Q: first nonzero column, smallest row index.
Dense naive_rref(Dense m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

Dense naive_kernel(const Dense& m, size_t cols) {
  Dense rr = naive_rref(m);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : rr) {
    size_t c = 0;
    while (row[c].is_zero()) ++c;
    pivot_col.push_back(static_cast<int>(c));
    is_pivot[c] = true;
  }
  Dense out;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = Rational(1);
    for (size_t i = 0; i < rr.size(); ++i) v[pivot_col[i]] = -rr[i][f];
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> to_dense(const SparseVectorQ& v) {
  std::vector<Rational> d(v.dimension, Rational(0));
  for (const auto& [i, c] : v.entries) d[i] = c;
  return d;
}

Dense ints(std::initializer_list<std::initializer_list<int>> rows) {
  Dense m;
  for (auto r : rows) {
    std::vector<Rational> row;
    for (int x : r) row.emplace_back(x);
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("kernel of proportional rows") {
  auto m = SparseMatrixQ::dense(ints({{1, 1}, {2, 2}}));
  auto k = afrel::kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(to_dense(k[0]) == std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(afrel::rank(m) == 1);
}

TEST_CASE("kernel of identity is empty") {
  auto m = SparseMatrixQ::dense(ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(afrel::kernel_basis(m).empty());
  CHECK(afrel::rank(m) == 3);
}

TEST_CASE("kernel of a single row") {
  auto m = SparseMatrixQ::dense(ints({{1, 2, 3}}));
  auto k = afrel::kernel_basis(m);
  REQUIRE(k.size() == 2);
  CHECK(to_dense(k[0]) == std::vector<Rational>{Rational(-2), Rational(1), Rational(0)});
  CHECK(to_dense(k[1]) == std::vector<Rational>{Rational(-3), Rational(0), Rational(1)});
}

TEST_CASE("empty matrix has the full standard basis as kernel") {
  SparseMatrixQ m(3, {});
  auto k = afrel::kernel_basis(m);
  REQUIRE(k.size() == 3);
  for (uint32_t i = 0; i < 3; ++i) CHECK(k[i].at(i) == Rational(1));
}

TEST_CASE("rank examples") {
  CHECK(afrel::rank(SparseMatrixQ::dense(ints({{0, 0}, {0, 0}}))) == 0);
  CHECK(afrel::rank(SparseMatrixQ::dense(ints({{1, 2}, {2, 4}, {1, 0}}))) == 2);
}

TEST_CASE("span membership") {
  SparseVectorQ zero(2, {});
  auto r0 = afrel::in_span(zero, {SparseVectorQ::dense({Rational(1), Rational(1)})});
  CHECK(r0.member);
  CHECK(r0.coefficients == std::vector<Rational>{Rational(0)});

  auto e1 = SparseVectorQ::dense({Rational(1), Rational(0)});
  auto e2 = SparseVectorQ::dense({Rational(0), Rational(1)});
  auto r1 = afrel::in_span(SparseVectorQ::dense({Rational(1), Rational(1)}), {e1, e2});
  CHECK(r1.member);
  CHECK(r1.coefficients == std::vector<Rational>{Rational(1), Rational(1)});

  auto b1 = SparseVectorQ::dense({Rational(1), Rational(1), Rational(0)});
  auto b2 = SparseVectorQ::dense({Rational(0), Rational(1), Rational(0)});
  auto r2 = afrel::in_span(SparseVectorQ::dense({Rational(1), Rational(0), Rational(0)}), {b1, b2});
  CHECK(r2.member);
  CHECK(r2.coefficients == std::vector<Rational>{Rational(1), Rational(-1)});

  auto r3 = afrel::in_span(SparseVectorQ::dense({Rational(0), Rational(0), Rational(1)}), {b1, b2});
  CHECK(!r3.member);
  CHECK_THROWS(afrel::in_span(e1, {b1}));
}

TEST_CASE("sparse vector rejects out-of-range indices") {
  CHECK_THROWS(SparseVectorQ(2, LinComb<uint32_t>::single(2)));
}

TEST_CASE("elimination matches naive Gaussian elimination on random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<int> sparsity(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    Dense m(6, std::vector<Rational>(6));
    int mode = trial % 3;
    for (auto& row : m) {
      for (auto& x : row) x = (mode == 0 || sparsity(rng) == 0) ? Rational(entry(rng)) : Rational(0);
    }
    if (mode == 2) m[5] = m[0], m[4] = m[1];  // force rank deficiency
    auto sm = SparseMatrixQ::dense(m);
    auto kernel = afrel::kernel_basis(sm);
    Dense oracle = naive_kernel(m, 6);
    REQUIRE(kernel.size() == oracle.size());
    for (size_t i = 0; i < kernel.size(); ++i) {
      CHECK(to_dense(kernel[i]) == oracle[i]);
      CHECK(sm.multiply(kernel[i]).entries.empty());
    }
    CHECK(afrel::rank(sm) + kernel.size() == 6);
    CHECK(afrel::rank(sm) == naive_rref(m).size());

    // span membership agrees with the rank test and the certificate reproduces v
    std::vector<SparseVectorQ> basis(sm.rows.begin(), sm.rows.begin() + 3);
    std::vector<Rational> target(6);
    for (auto& x : target) x = Rational(entry(rng));
    if (trial % 2 == 0) {
      for (size_t j = 0; j < 6; ++j) target[j] = m[0][j] * Rational(2) - m[2][j];
    }
    auto v = SparseVectorQ::dense(target);
    auto res = afrel::in_span(v, basis);
    Dense stacked(m.begin(), m.begin() + 3);
    size_t r0 = naive_rref(stacked).size();
    stacked.push_back(target);
    CHECK(res.member == (naive_rref(stacked).size() == r0));
    if (res.member) {
      std::vector<Rational> recon(6, Rational(0));
      for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 6; ++j) recon[j] += res.coefficients[i] * m[i][j];
      }
      CHECK(recon == target);
    }
  }
}

TEST_CASE("echelon handles large intermediate values exactly") {
  // Hilbert-like matrix: full rank with big denominators.
  const int n = 12;
  afrel::Echelon<uint32_t> ech;
  for (int i = 0; i < n; ++i) {
    std::vector<LinComb<uint32_t>::Term> t;
    for (int j = 0; j < n; ++j) t.emplace_back(j, Rational(1, i + j + 1));
    CHECK(ech.insert(LinComb<uint32_t>::from_sorted(std::move(t))));
  }
  CHECK(ech.rank() == n);
  auto rr = ech.rref();
  for (int i = 0; i < n; ++i) {
    CHECK(rr[i].size() == 1);
    CHECK(rr[i].front().second == Rational(1));
  }
}
