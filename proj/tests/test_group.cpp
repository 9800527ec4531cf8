#include "doctest.h"

#include <cmath>

#include "cencon/group.hpp"

using namespace cencon;

namespace {
Mat rot2(double t) {
  Mat m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}
}  // namespace

TEST_CASE("generate_group: cyclic closure of a 2pi/3 rotation") {
  FiniteGroup G = generate_group({rot2(2 * M_PI / 3)});
  CHECK(G.order() == 3);
  CHECK(G.index_of(Mat::Identity(2, 2)) == 0);
}

TEST_CASE("generate_group: dihedral presentation gives D_4") {
  Mat refl(2, 2);
  refl << 1, 0, 0, -1;
  FiniteGroup G = generate_group({rot2(M_PI / 2), refl});
  CHECK(G.order() == 8);
}

TEST_CASE("generate_group: irrational rotation overflows") {
  CHECK_THROWS_AS(generate_group({rot2(1.0)}, 1000), Error);
}

TEST_CASE("generate_group: rejects non-orthogonal input") {
  Mat bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(generate_group({bad}), Error);
}

TEST_CASE("catalog orders match known values") {
  CHECK(catalog_group("C", 5).order() == 5);
  CHECK(catalog_group("D", 3).order() == 6);
  CHECK(catalog_group("D_4").order() == 8);
  CHECK(catalog_group("C_2h").order() == 4);
  CHECK(catalog_group("D_3h").order() == 12);
  CHECK(catalog_group("D_2rot").order() == 4);
  CHECK(catalog_group("T_d").order() == 24);
  CHECK(catalog_group("O_h").order() == 48);
  CHECK(catalog_group("I_h").order() == 120);
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog_group("Q_8"), Error);
  CHECK_THROWS_AS(catalog_group("D", 0), Error);
}

TEST_CASE("cayley table is a Latin square consistent with the matrices") {
  for (const char* name : {"D_4", "T_d"}) {
    FiniteGroup G = catalog_group(name);
    const int n = G.order();
    for (int a = 0; a < n; ++a) {
      std::vector<char> seen(n, 0);
      CHECK(G.cayley[0][a] == a);
      for (int b = 0; b < n; ++b) {
        int c = G.mul(a, b);
        CHECK(!seen[c]);
        seen[c] = 1;
        CHECK((G.mat(a) * G.mat(b) - G.mat(c)).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("determinants are +-1 and multiplicative") {
  FiniteGroup G = catalog_group("I_h");
  for (int a = 0; a < G.order(); ++a) {
    double det = G.mat(a).determinant();
    CHECK(std::abs(std::abs(det) - 1.0) < 1e-9);
  }
  for (int a = 0; a < G.order(); a += 17)
    for (int b = 0; b < G.order(); b += 13) {
      double lhs = G.mat(G.mul(a, b)).determinant();
      double rhs = G.mat(a).determinant() * G.mat(b).determinant();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("normalizer of a reflection subgroup in D_3 is itself") {
  FiniteGroup G = catalog_group("D", 3);
  Mat kappa(2, 2);
  kappa << 1, 0, 0, -1;
  int ki = G.index_of(kappa);
  REQUIRE(ki >= 0);
  Subgroup H = subgroup_closure(G, {ki});
  CHECK(H.order() == 2);
  Subgroup N = normalizer(G, H);
  CHECK(N.order() == 2);
  CHECK(N == H);

  CHECK(normalizer(G, trivial_subgroup(G)).order() == G.order());
  CHECK(normalizer(G, full_subgroup(G)).order() == G.order());
}

TEST_CASE("conjugacy of reflections: D_4 splits, D_3 does not") {
  FiniteGroup D4 = catalog_group("D", 4);
  Mat kappa(2, 2), kprime(2, 2);
  kappa << 1, 0, 0, -1;      // x-axis reflection
  kprime << 0, 1, 1, 0;      // diagonal reflection
  Subgroup a = subgroup_closure(D4, {D4.index_of(kappa)});
  Subgroup b = subgroup_closure(D4, {D4.index_of(kprime)});
  CHECK_FALSE(are_conjugate(D4, a, b).conjugate);

  FiniteGroup D3 = catalog_group("D", 3);
  std::vector<Subgroup> refls;
  for (int g = 1; g < D3.order(); ++g)
    if (D3.mat(g).determinant() < 0) refls.push_back(subgroup_closure(D3, {g}));
  REQUIRE(refls.size() == 3);
  for (std::size_t i = 1; i < refls.size(); ++i) {
    auto w = are_conjugate(D3, refls[0], refls[i]);
    CHECK(w.conjugate);
    CHECK(conjugate_subgroup(D3, refls[0], w.witness) == refls[i]);
  }
  auto self = are_conjugate(D3, refls[0], refls[0]);
  CHECK(self.conjugate);
  CHECK(self.witness == 0);
}

TEST_CASE("are_conjugate is an equivalence relation on D_4 subgroups") {
  FiniteGroup G = catalog_group("D", 4);
  std::vector<Subgroup> subs;
  for (int g = 0; g < G.order(); ++g) subs.push_back(subgroup_closure(G, {g}));
  for (const auto& a : subs) CHECK(are_conjugate(G, a, a).conjugate);
  for (const auto& a : subs)
    for (const auto& b : subs) {
      bool ab = are_conjugate(G, a, b).conjugate;
      bool ba = are_conjugate(G, b, a).conjugate;
      CHECK(ab == ba);
      if (!ab) continue;
      for (const auto& c : subs)
        if (are_conjugate(G, b, c).conjugate)
          CHECK(are_conjugate(G, a, c).conjugate);
    }
}

TEST_CASE("embed_group block embeddings") {
  FiniteGroup D3 = catalog_group("D", 3);
  FiniteGroup lifted = embed_group(D3, 3, true);
  CHECK(lifted.order() == 12);
  CHECK(lifted.dim == 3);

  FiniteGroup flip_only = embed_group(generate_group({Mat::Identity(2, 2)}), 3,
                                      true);
  CHECK(flip_only.order() == 2);
  Mat fix = fixed_space(flip_only, full_subgroup(flip_only));
  REQUIRE(fix.cols() == 2);
  for (int c = 0; c < 2; ++c) CHECK(std::abs(fix(2, c)) < 1e-12);

  FiniteGroup td4 = embed_group(catalog_group("T_d"), 4, false);
  CHECK(td4.order() == 24);
  CHECK(td4.dim == 4);
}

TEST_CASE("fixed_space of dihedral subgroups") {
  FiniteGroup G = catalog_group("D", 3);
  Mat kappa(2, 2);
  kappa << 1, 0, 0, -1;
  Subgroup H = subgroup_closure(G, {G.index_of(kappa)});
  Mat fix = fixed_space(G, H);
  REQUIRE(fix.cols() == 1);
  CHECK(std::abs(fix(1, 0)) < 1e-12);  // the x-axis
  CHECK(fixed_space(G, full_subgroup(G)).cols() == 0);
}
