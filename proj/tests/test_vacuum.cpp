#include <filesystem>
#include <random>

#include "afrel/vacuum_module.hpp"
#include "doctest.h"

using namespace afrel;

namespace {

// Coefficients of prod_{n>=1} (1 - q^n)^{-dim} up to q^max, by repeated
// multiplication with geometric series.
std::vector<long long> pbw_generating_function(int dim, int max) {
  std::vector<long long> c(max + 1, 0);
  c[0] = 1;
  for (int n = 1; n <= max; ++n) {
    for (int copy = 0; copy < dim; ++copy) {
      for (int d = n; d <= max; ++d) c[d] += c[d - n];
    }
  }
  return c;
}

std::shared_ptr<const LieAlgebra> algebra(const char* name) {
  return std::make_shared<const LieAlgebra>(CartanType::parse(name));
}

}  // namespace

TEST_CASE("generating function oracle") {
  auto c = pbw_generating_function(3, 8);
  CHECK(c == std::vector<long long>{1, 3, 9, 22, 51, 108, 221, 429, 810});
}

TEST_CASE("slice sizes match the PBW generating function") {
  VacuumModule a1(algebra("A1"));
  auto c1 = pbw_generating_function(3, 8);
  for (int d = 0; d <= 8; ++d) CHECK(a1.slice(d).size() == static_cast<size_t>(c1[d]));
  VacuumModule a2(algebra("A2"));
  auto c2 = pbw_generating_function(8, 6);
  for (int d = 0; d <= 6; ++d) CHECK(a2.slice(d).size() == static_cast<size_t>(c2[d]));
  CHECK(a1.slice(0).basis == std::vector<Mono>{VacuumModule::kVacuum});
}

TEST_CASE("mode action examples in sl2") {
  VacuumModule v(algebra("A1"));
  const int e = 0, h = 1, f = 2;
  for (int k : {1, 2, 5}) {
    State fm1 = v.product_state({{f, 1}}, k);
    CHECK(v.act(e, 1, fm1, k) == State::single(VacuumModule::kVacuum, k));
  }
  State em2 = v.product_state({{e, 2}}, 1);
  CHECK(v.act(h, 0, em2, 1) == Rational(2) * em2);
  for (int n = 0; n < 4; ++n) CHECK(v.act(e, n, VacuumModule::vacuum_state(), 1).empty());
}

TEST_CASE("translation operator") {
  VacuumModule v(algebra("A2"));
  const int xt = v.algebra().x_theta();
  CHECK(v.derivation(VacuumModule::vacuum_state()).empty());
  CHECK(v.derivation(v.product_state({{xt, 1}}, 1)) == v.product_state({{xt, 2}}, 1));
  CHECK(v.derivation(v.product_state({{xt, 1}, {xt, 1}}, 1)) == Rational(2) * v.product_state({{xt, 2}, {xt, 1}}, 1));
}

TEST_CASE("degree operator") {
  VacuumModule v(algebra("A1"));
  CHECK(v.degree_L0(VacuumModule::vacuum_state()).empty());
  State s = v.product_state({{0, 1}, {0, 1}}, 1);
  CHECK(v.degree_L0(s) == Rational(2) * s);
  State t = v.product_state({{0, 3}, {2, 1}}, 1);
  CHECK(v.degree_L0(t) == Rational(4) * t);
}

TEST_CASE("commutation relations hold on random states") {
  for (const char* name : {"A1", "A2"}) {
    VacuumModule v(algebra(name));
    const LieAlgebra& g = v.algebra();
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> basis(0, g.dim() - 1), mode(-4, 4), deg(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
      int k = 1 + trial % 2;
      int a = basis(rng), b = basis(rng), i = mode(rng), j = mode(rng);
      const auto& sl = v.slice(deg(rng));
      Mono m = sl.basis[rng() % sl.size()];
      State s = State::single(m);
      State lhs = v.act(a, i, v.act(b, j, s, k), k) - v.act(b, j, v.act(a, i, s, k), k);
      Accumulator<Mono> rhs;
      for (const auto& [c, x] : g.bracket(a, b)) rhs.add(v.act(c, i + j, s, k), x);
      if (i + j == 0) rhs.add(s, Rational(i) * g.form(a, b) * Rational(k));
      CHECK(lhs == rhs.take());
    }
  }
}

TEST_CASE("translation commutes with modes as [D, x(n)] = -n x(n-1)") {
  for (const char* name : {"A1", "A2"}) {
    VacuumModule v(algebra(name));
    const int maxdeg = std::string(name) == "A1" ? 6 : 4;
    for (int d = 0; d <= maxdeg; ++d) {
      for (Mono m : v.slice(d).basis) {
        State s = State::single(m);
        for (int a = 0; a < v.algebra().dim(); ++a) {
          for (int n = -2; n <= d + 1; ++n) {
            State lhs = v.derivation(v.act(a, n, s, 1)) - v.act(a, n, v.derivation(s), 1);
            State rhs = Rational(-n) * v.act(a, n - 1, s, 1);
            REQUIRE(lhs == rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("straightening is independent of the order factors are supplied") {
  VacuumModule v(algebra("A2"));
  const LieAlgebra& g = v.algebra();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> basis(0, g.dim() - 1), depth(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    int a = basis(rng), b = basis(rng), c = basis(rng);
    int i = depth(rng), j = depth(rng), l = depth(rng);
    // x y z 1 versus y x z 1 + [x, y] z 1
    State lhs = v.product_state({{a, i}, {b, j}, {c, l}}, 1);
    State zs = v.product_state({{c, l}}, 1);
    State rhs = v.product_state({{b, j}, {a, i}, {c, l}}, 1);
    for (const auto& [e, x] : g.bracket(a, b)) rhs += x * v.act(e, -i - j, zs, 1);
    CHECK(lhs == rhs);
    // x (y z) 1 versus (x y z) computed by acting on a precomputed y z 1
    State yz = v.product_state({{b, j}, {c, l}}, 1);
    CHECK(v.act(a, -i, yz, 1) == lhs);
  }
}

TEST_CASE("slice cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "afrel-slice-test";
  std::filesystem::remove_all(dir);
  std::vector<std::string> first;
  {
    VacuumModule v(algebra("A2"));
    v.set_cache_dir(dir.string());
    for (Mono m : v.slice(3).basis) first.push_back(v.monomial_string(m));
  }
  CHECK(std::filesystem::exists(dir));
  {
    VacuumModule v(algebra("A2"));
    v.set_cache_dir(dir.string());
    std::vector<std::string> second;
    for (Mono m : v.slice(3).basis) second.push_back(v.monomial_string(m));
    CHECK(first == second);
  }
  std::filesystem::remove_all(dir);
}
