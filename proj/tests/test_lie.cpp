#include "afrel/lie_algebra.hpp"
#include "doctest.h"

using namespace afrel;

namespace {

bool jacobi_and_invariance(const LieAlgebra& g) {
  const int n = g.dim();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      LieElem ab = g.bracket(LieElem::single(a), LieElem::single(b));
      LieElem ba = g.bracket(LieElem::single(b), LieElem::single(a));
      if (!(ab + ba).empty()) return false;
      for (int c = b; c < n; ++c) {
        LieElem x = LieElem::single(a), y = LieElem::single(b), z = LieElem::single(c);
        LieElem j = g.bracket(ab, z) + g.bracket(g.bracket(y, z), x) + g.bracket(g.bracket(z, x), y);
        if (!j.empty()) return false;
        if (g.form(ab, z) != g.form(x, g.bracket(y, z))) return false;
      }
    }
  }
  return true;
}

int expected_dual_coxeter(const CartanType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::B: return 2 * t.rank - 1;
    case Family::C: return t.rank + 1;
    case Family::D: return 2 * t.rank - 2;
    case Family::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
    case Family::F: return 9;
    case Family::G: return 4;
  }
  return 0;
}

int expected_positive_roots(const CartanType& t) {
  const int n = t.rank;
  switch (t.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

}  // namespace

TEST_CASE("Cartan type parsing") {
  CHECK(CartanType::parse("A2").name() == "A2");
  CHECK(CartanType::parse("g2").family == Family::G);
  CHECK_THROWS(CartanType::parse("D3"));
  CHECK_THROWS(CartanType::parse("E9"));
  CHECK_THROWS(CartanType::parse("A0"));
  CHECK_THROWS(CartanType::parse("X2"));
  CHECK_THROWS(CartanType::parse("A"));
}

TEST_CASE("root systems of every family") {
  for (const char* name : {"A1", "A2", "A5", "B2", "B4", "C2", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
    CAPTURE(name);
    RootSystem rs(CartanType::parse(name));
    CHECK(rs.num_positive() == expected_positive_roots(rs.type()));
    CHECK(rs.dual_coxeter() == expected_dual_coxeter(rs.type()));
    CHECK(rs.inner(rs.theta(), rs.theta()) == Rational(2));
    for (const auto& r : rs.positive_roots()) {
      RootVec m(r);
      for (int& x : m) x = -x;
      CHECK(rs.is_root(m));
    }
    int expect_dist = (rs.type().family == Family::A && rs.rank() >= 2) ? 2 : 1;
    CHECK(static_cast<int>(rs.distinguished().size()) == expect_dist);
  }
}

TEST_CASE("structure constants satisfy Jacobi and invariance") {
  for (const char* name : {"A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "D4"}) {
    CAPTURE(name);
    LieAlgebra g(CartanType::parse(name));
    CHECK(jacobi_and_invariance(g));
    for (int a = 0; a < g.dim(); ++a) {
      for (int b = 0; b < g.dim(); ++b) {
        for (const auto& [k, c] : g.bracket(a, b)) CHECK(c.is_integer());
      }
    }
  }
  LieAlgebra flipped(CartanType::parse("A2"), SignConvention::Flipped);
  CHECK(jacobi_and_invariance(flipped));
  CHECK(flipped.structure_constant({1, 0}, {0, 1}) == Rational(-1));
}

TEST_CASE("structure constants for the exceptional families") {
  for (const char* name : {"F4", "E6"}) {
    CAPTURE(name);
    LieAlgebra g(CartanType::parse(name));
    // Jacobi on triples of root vectors through the simple generators
    bool ok = true;
    for (int a = 0; a < g.dim() && ok; ++a) {
      for (int b = 0; b < g.dim() && ok; ++b) {
        for (int c : g.raising_simple()) {
          LieElem x = LieElem::single(a), y = LieElem::single(b), z = LieElem::single(c);
          LieElem j = g.bracket(g.bracket(x, y), z) + g.bracket(g.bracket(y, z), x) + g.bracket(g.bracket(z, x), y);
          ok = ok && j.empty();
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("sl2 normalization") {
  LieAlgebra g(CartanType::parse("A1"));
  REQUIRE(g.dim() == 3);
  const int e = 0, h = 1, f = 2;
  CHECK(g.bracket(LieElem::single(e), LieElem::single(f)) == LieElem::single(h));
  CHECK(g.bracket(LieElem::single(h), LieElem::single(e)) == LieElem::single(e, 2));
  CHECK(g.form(e, f) == Rational(1));
  CHECK(g.form(h, h) == Rational(2));
  CHECK(g.x_theta() == e);
  CHECK(g.x_minus_theta() == f);
  CHECK(g.theta_coroot() == LieElem::single(h));
}

TEST_CASE("dual bases resolve every basis element") {
  for (const char* name : {"A1", "A2", "C2", "G2"}) {
    LieAlgebra g(CartanType::parse(name));
    for (int a = 0; a < g.dim(); ++a) {
      for (int b = 0; b < g.dim(); ++b) {
        CHECK(g.form(LieElem::single(b), g.dual(a)) == Rational(a == b ? 1 : 0));
      }
      Accumulator<int> acc;
      for (int i = 0; i < g.dim(); ++i) acc.add(i, g.form(LieElem::single(a), g.dual(i)));
      CHECK(acc.take() == LieElem::single(a));
    }
  }
}

TEST_CASE("named root data") {
  RootSystem a2(CartanType::parse("A2"));
  CHECK(a2.theta() == RootVec{1, 1});
  CHECK(a2.dual_coxeter() == 3);
  CHECK(a2.distinguished() == std::vector<int>{0, 1});
  RootSystem c2(CartanType::parse("C2"));
  CHECK(c2.theta() == RootVec{2, 1});
  CHECK(c2.distinguished() == std::vector<int>{0});
  CHECK(c2.gram(0, 0) == Rational(1));
  RootSystem g2(CartanType::parse("G2"));
  CHECK(g2.dual_coxeter() == 4);
  CHECK(g2.num_positive() == 6);
}

TEST_CASE("Casimir eigenvalues") {
  RootSystem a1(CartanType::parse("A1"));
  CHECK(casimir_eigenvalue(a1, to_weight({1})) == Rational(4));
  CHECK(casimir_eigenvalue(a1, to_weight({0})) == Rational(0));
  RootSystem a2(CartanType::parse("A2"));
  CHECK(casimir_eigenvalue(a2, to_weight({2, 3})) == Rational(24));
  CHECK(casimir_eigenvalue(a2, to_weight({2, 2})) == Rational(16));
}

TEST_CASE("dot action weights") {
  RootSystem a1(CartanType::parse("A1"));
  auto w = dot_action_weight(a1, 1);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == AffineWeight{Rational(1), to_weight({-1}), Rational(-4)});
  RootSystem a2(CartanType::parse("A2"));
  auto w2 = dot_action_weight(a2, 1);
  REQUIRE(w2.size() == 2);
  CHECK(w2[0] == AffineWeight{Rational(1), to_weight({-1, 0}), Rational(-3)});
  CHECK(w2[1] == AffineWeight{Rational(1), to_weight({0, -1}), Rational(-3)});
  auto w0 = dot_action_weight(a2, 0);
  CHECK(w0[0].alpha0 == Rational(-2));
}

TEST_CASE("theta minus alpha_* is a root, twice theta minus alpha_* is not") {
  for (const char* name : {"A2", "A4", "B3", "C2", "C3", "D4", "D6", "E6", "E7", "E8", "F4", "G2"}) {
    CAPTURE(name);
    CHECK(check_lemma_5_2(CartanType::parse(name)));
  }
  CHECK_THROWS(check_lemma_5_2(CartanType::parse("A1")));
}

TEST_CASE("Weyl group data") {
  RootSystem a1(CartanType::parse("A1"));
  for (int k = 1; k <= 4; ++k) CHECK(a1.weyl_dimension(to_weight({k + 1})) == Rational(2 * k + 3));
  RootSystem a2(CartanType::parse("A2"));
  CHECK(a2.weyl_dimension(to_weight({2, 2})) == Rational(27));
  CHECK(a2.weyl_dimension(to_weight({1, 1})) == Rational(8));
  CHECK(a2.orbit_size(to_weight({1, 1})) == 6);
  CHECK(a2.orbit_size(to_weight({0, 0})) == 1);
  CHECK(a2.dominant_conjugate(to_weight({-1, -1})) == to_weight({1, 1}));
  CHECK(a2.to_fundamental(to_weight({1, 1})) == to_weight({1, 1}));
  CHECK(a2.from_fundamental(to_weight({1, 0})) == WeightQ{Rational(2, 3), Rational(1, 3)});
}

TEST_CASE("diagram automorphism of A_l") {
  for (const char* name : {"A2", "A3", "A4"}) {
    CAPTURE(name);
    LieAlgebra g(CartanType::parse(name));
    auto s = g.diagram_automorphism();
    const int n = g.dim();
    bool hom = true, isom = true;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        LieElem x = LieElem::single(a), y = LieElem::single(b);
        hom = hom && s.apply(g.bracket(x, y)) == g.bracket(s.apply(x), s.apply(y));
        isom = isom && g.form(s.apply(x), s.apply(y)) == g.form(x, y);
      }
    }
    CHECK(hom);
    CHECK(isom);
    for (int i = 0; i < g.rank(); ++i) {
      LieElem h = LieElem::single(g.cartan_index(i));
      CHECK(s.apply(s.apply(h)) == h);
    }
  }
  LieAlgebra a2(CartanType::parse("A2"));
  auto s = a2.diagram_automorphism();
  CHECK(s.target[a2.root_vector({1, 0})] == a2.root_vector({0, 1}));
  CHECK(s.target[a2.x_theta()] == a2.x_theta());
  CHECK_THROWS(LieAlgebra(CartanType::parse("A1")).diagram_automorphism());
  CHECK_THROWS(LieAlgebra(CartanType::parse("C2")).diagram_automorphism());
}
