#include <random>

#include "afrel/vertex_ops.hpp"
#include "doctest.h"

using namespace afrel;

namespace {

std::shared_ptr<const LieAlgebra> algebra(const char* name) {
  return std::make_shared<const LieAlgebra>(CartanType::parse(name));
}

std::vector<Mono> basis_upto(VacuumModule& v, int maxdeg) {
  std::vector<Mono> out;
  for (int d = 0; d <= maxdeg; ++d) {
    for (Mono m : v.slice(d).basis) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("vacuum field is the identity") {
  VacuumModule v(algebra("A1"));
  VertexOps ops(v, 1);
  for (Mono w : basis_upto(v, 3)) {
    CHECK(ops.field_coeff(VacuumModule::kVacuum, -1, w) == State::single(w));
    CHECK(ops.field_coeff(VacuumModule::kVacuum, 0, w).empty());
  }
}

TEST_CASE("fields of x(-1)1 are the modes x(n)") {
  for (const char* name : {"A1", "A2"}) {
    VacuumModule v(algebra(name));
    VertexOps ops(v, 2);
    for (int a = 0; a < v.algebra().dim(); ++a) {
      State x = v.product_state({{a, 1}}, 2);
      for (Mono w : basis_upto(v, 2)) {
        for (int n = -3; n <= 3; ++n) CHECK(ops.field_coeff(x, n, State::single(w)) == v.act(a, n, State::single(w), 2));
      }
    }
  }
}

TEST_CASE("translation covariance of fields") {
  VacuumModule v(algebra("A1"));
  VertexOps ops(v, 1);
  const int xt = v.algebra().x_theta();
  State r = v.product_state({{xt, 1}, {xt, 1}}, 1);
  State dr = v.derivation(r);
  for (Mono w : basis_upto(v, 3)) {
    State ws = State::single(w);
    for (int n = -3; n <= 2; ++n) CHECK(ops.field_coeff(dr, n, ws) == Rational(-n) * ops.field_coeff(r, n - 1, ws));
  }
  for (Mono u : basis_upto(v, 3)) {
    State us = State::single(u);
    State du = v.derivation(us);
    for (Mono w : basis_upto(v, 2)) {
      State ws = State::single(w);
      for (int n = -2; n <= 3; ++n) {
        REQUIRE(ops.field_coeff(du, n, ws) == Rational(-n) * ops.field_coeff(us, n - 1, ws));
      }
    }
  }
}

TEST_CASE("the two evaluation paths for fields agree") {
  for (const char* name : {"A1", "A2"}) {
    VacuumModule v(algebra(name));
    VertexOps ops(v, 1);
    const int udeg = std::string(name) == "A1" ? 4 : 3;
    for (Mono u : basis_upto(v, udeg)) {
      for (Mono w : basis_upto(v, 2)) {
        for (int n = -2; n <= 2; ++n) {
          State us = State::single(u), ws = State::single(w);
          REQUIRE(ops.field_coeff(us, n, ws) == ops.field_coeff_translation(us, n, ws));
        }
      }
    }
  }
}

TEST_CASE("normally ordered square of a field") {
  VacuumModule v(algebra("A1"));
  VertexOps ops(v, 1);
  const int e = 0, f = 2;
  State ee = v.product_state({{e, 1}, {e, 1}}, 1);
  for (Mono w : basis_upto(v, 3)) {
    State ws = State::single(w);
    // :e(z)e(z): coefficient of z^0 = sum_{i<0} e(i) e(-2-i) + sum_{i>=0} e(-2-i) e(i)
    State direct;
    for (int i = -8; i <= -1; ++i) direct += v.act(e, i, v.act(e, -2 - i, ws, 1), 1);
    for (int i = 0; i <= 8; ++i) direct += v.act(e, -2 - i, v.act(e, i, ws, 1), 1);
    CHECK(ops.field_coeff(ee, -1, ws) == direct);
  }
  State fm1 = v.product_state({{f, 1}}, 1);
  CHECK(!ops.field_coeff(ee, -1, fm1).empty());
}

TEST_CASE("adjoint bracket examples") {
  VacuumModule v(algebra("A2"));
  const LieAlgebra& g = v.algebra();
  for (int k : {1, 2}) {
    VertexOps ops(v, k);
    for (int a = 0; a < g.dim(); ++a) {
      for (int b = 0; b < g.dim(); ++b) {
        State u = v.product_state({{a, 1}}, k), w = v.product_state({{b, 1}}, k);
        State expect = v.act(g.bracket(LieElem::single(a), LieElem::single(b)), -2, VacuumModule::vacuum_state(), k);
        CHECK(ops.adjoint_bracket(u, w) == expect);
      }
    }
    State u = v.product_state({{0, 1}, {3, 2}}, k);
    CHECK(ops.adjoint_bracket(u, u).empty());
  }
  VacuumModule v1(algebra("A1"));
  VertexOps o1(v1, 3);
  State e1 = v1.product_state({{0, 1}}, 3), f2 = v1.product_state({{2, 2}}, 3);
  State br = o1.adjoint_bracket(e1, f2);
  CHECK(br == o1.skew_product_difference(e1, f2));
  CHECK(br == v1.product_state({{1, 3}}, 3));
}

TEST_CASE("adjoint bracket is skew and matches the product difference") {
  for (const char* name : {"A1", "A2"}) {
    VacuumModule v(algebra(name));
    VertexOps ops(v, 1);
    std::mt19937 rng(3);
    auto pool = basis_upto(v, std::string(name) == "A1" ? 4 : 3);
    for (int t = 0; t < 60; ++t) {
      State u = State::single(pool[rng() % pool.size()]) + Rational(2) * State::single(pool[rng() % pool.size()]);
      State w = State::single(pool[rng() % pool.size()]);
      State b = ops.adjoint_bracket(u, w);
      CHECK(b == -ops.adjoint_bracket(w, u));
      CHECK(b == ops.skew_product_difference(u, w));
    }
  }
}

TEST_CASE("translation, degree and zero modes are derivations of the -1 product") {
  VacuumModule v(algebra("A2"));
  VertexOps ops(v, 1);
  std::mt19937 rng(9);
  auto pool = basis_upto(v, 3);
  for (int t = 0; t < 40; ++t) {
    State u = State::single(pool[rng() % pool.size()]);
    State w = State::single(pool[rng() % pool.size()]);
    State prod = ops.field_coeff(u, -1, w);
    CHECK(v.derivation(prod) == ops.field_coeff(v.derivation(u), -1, w) + ops.field_coeff(u, -1, v.derivation(w)));
    CHECK(v.degree_L0(prod) == ops.field_coeff(v.degree_L0(u), -1, w) + ops.field_coeff(u, -1, v.degree_L0(w)));
    int y = static_cast<int>(rng() % v.algebra().dim());
    CHECK(v.act(y, 0, prod, 1) == ops.field_coeff(v.act(y, 0, u, 1), -1, w) + ops.field_coeff(u, -1, v.act(y, 0, w, 1)));
  }
}

TEST_CASE("commutator formula") {
  {
    VacuumModule v(algebra("A1"));
    VertexOps ops(v, 1);
    State r = v.product_state({{0, 1}, {0, 1}}, 1);
    CHECK(ops.commutator_formula_check(0, 1, r, 0, 3));
    for (int n = -2; n <= 2; ++n) CHECK(ops.commutator_formula_check(2, 0, r, n, 3));
    CHECK(ops.commutator_formula_check(2, -2, r, 1, 3));
    State deeper = v.product_state({{0, 2}}, 1);
    CHECK(ops.commutator_formula_check(2, 1, deeper, 0, 3));
  }
  {
    VacuumModule v(algebra("A2"));
    VertexOps ops(v, 1);
    const int xt = v.algebra().x_theta();
    State r = v.product_state({{xt, 1}, {xt, 1}}, 1);
    CHECK(ops.commutator_formula_check(v.algebra().x_minus_theta(), 1, r, -2, 3));
  }
}
