#include "doctest.h"

#include <cmath>
#include <set>

#include "cencon/strata.hpp"

using namespace cencon;

TEST_CASE("isotropy subgroups in D_3") {
  FiniteGroup G = catalog_group("D", 3);
  Vec origin = Vec::Zero(2);
  CHECK(isotropy_subgroup(G, origin).order() == 6);

  Vec vertex(2);
  vertex << 1, 0;
  CHECK(isotropy_subgroup(G, vertex).order() == 2);

  Vec generic(2);
  generic << std::cos(10 * M_PI / 180), std::sin(10 * M_PI / 180);
  CHECK(isotropy_subgroup(G, generic).order() == 1);
}

TEST_CASE("orbits in D_3: triangle, semiregular hexagon, origin") {
  FiniteGroup G = catalog_group("D", 3);
  Vec vertex(2);
  vertex << 1, 0;
  auto tri = orbit(G, vertex);
  CHECK(tri.size() == 3);
  // equilateral: all pairwise distances equal
  double d01 = (tri[0] - tri[1]).norm();
  CHECK((tri[0] - tri[2]).norm() == doctest::Approx(d01));
  CHECK((tri[1] - tri[2]).norm() == doctest::Approx(d01));

  Vec generic(2);
  generic << std::cos(0.2), std::sin(0.2);
  CHECK(orbit(G, generic).size() == 6);

  CHECK(orbit(G, Vec::Zero(2)).size() == 1);
}

TEST_CASE("orbit-stabilizer relation on sampled points") {
  for (const char* name : {"D_4", "T_d", "C_2h"}) {
    FiniteGroup G = catalog_group(name);
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      Vec x(G.dim);
      for (int k = 0; k < G.dim; ++k) x(k) = rng.uniform(-1, 1);
      CHECK(int(orbit(G, x).size()) * isotropy_subgroup(G, x).order() ==
            G.order());
    }
  }
}

TEST_CASE("conjugate points have conjugate isotropy") {
  FiniteGroup G = catalog_group("D_3h");
  Vec x(3);
  x << 1, 0, 0;  // in-plane mirror point
  Subgroup Hx = isotropy_subgroup(G, x);
  for (int g = 0; g < G.order(); ++g) {
    Subgroup Hy = isotropy_subgroup(G, Vec(G.mat(g) * x));
    CHECK(conjugate_subgroup(G, Hx, g) == Hy);
  }
}

TEST_CASE("isotropy class counts match the worked examples") {
  CHECK(enumerate_isotropy_classes(catalog_group("D", 3)).size() == 3);
  CHECK(enumerate_isotropy_classes(catalog_group("D_3h")).size() == 6);
  CHECK(enumerate_isotropy_classes(catalog_group("T_d")).size() == 5);
  CHECK(enumerate_isotropy_classes(catalog_group("D_2rot")).size() == 5);
}

TEST_CASE("T_d classes: orders and orbit sizes") {
  auto classes = enumerate_isotropy_classes(catalog_group("T_d"));
  std::multiset<int> orders, sizes;
  for (const auto& t : classes) {
    orders.insert(t.representative.order());
    sizes.insert(t.orbit_size);
  }
  CHECK(orders == std::multiset<int>({24, 6, 4, 2, 1}));
  CHECK(sizes == std::multiset<int>({1, 4, 6, 12, 24}));
}

TEST_CASE("planar catalogs: C_k has two classes, D_k has four topo types") {
  for (int k : {2, 3, 4, 5, 6}) {
    auto table = analyze_group(catalog_group("C", k));
    CHECK(table->classes.size() == 2);
  }
  for (int k : {3, 4, 5, 6}) {
    auto table = analyze_group(catalog_group("D", k));
    REQUIRE(table->classes.size() == 3 + (k % 2 == 0 ? 1 : 0));
    int topo_total = 0;
    for (const auto& comps : table->components) topo_total += comps.size();
    CHECK(topo_total == 4);  // Dk, two reflection strata, generic
    if (k % 2 == 1) {
      // one reflection class with two components
      int cls = table->class_by_label("Z2^k");
      REQUIRE(cls >= 0);
      CHECK(table->components[cls].size() == 2);
    } else {
      int a = table->class_by_label("Z2^k");
      int b = table->class_by_label("Z2^k'");
      REQUIRE(a >= 0);
      REQUIRE(b >= 0);
      CHECK(table->components[a].size() == 1);
      CHECK(table->components[b].size() == 1);
    }
  }
}

TEST_CASE("topological components: D_3 reflection splits, D_4 does not") {
  {
    auto table = analyze_group(catalog_group("D", 3));
    int cls = table->class_by_label("Z2^k");
    auto comps = topological_components(*table, cls);
    CHECK(comps.size() == 2);
    for (const auto& c : comps) {
      Subgroup H = isotropy_subgroup(table->G(), c.representative);
      CHECK(H == table->classes[cls].representative);
    }
  }
  {
    auto table = analyze_group(catalog_group("D", 4));
    int cls = table->class_by_label("Z2^k");
    CHECK(topological_components(*table, cls).size() == 1);
  }
}

TEST_CASE("origin stratum has one component") {
  auto table = analyze_group(catalog_group("T_d"));
  int cls = table->class_by_label("Td");
  REQUIRE(cls >= 0);
  auto comps = topological_components(*table, cls);
  CHECK(comps.size() == 1);
  CHECK(comps[0].representative.norm() == 0.0);
}

TEST_CASE("T_d vertex-axis stratum has two components (duals)") {
  auto table = analyze_group(catalog_group("T_d"));
  int cls = table->class_by_label("S3");
  REQUIRE(cls >= 0);
  CHECK(table->classes[cls].fixed_dim == 1);
  CHECK(table->components[cls].size() == 2);
}

TEST_CASE("O_h edge-midpoint stratum is a single component") {
  auto table = analyze_group(catalog_group("O_h"));
  int cls = table->class_by_label("Z2xZ2");
  REQUIRE(cls >= 0);
  CHECK(table->classes[cls].orbit_size == 12);  // the cuboctahedron
  CHECK(table->components[cls].size() == 1);
}

TEST_CASE("burnside type of hand-built symmetric configurations") {
  FiniteGroup G = catalog_group("D", 3);
  auto table = analyze_group(G);

  // Figure-1 style configuration: two dual triangles plus a generic hexagon.
  Configuration C;
  C.dim = 2;
  auto add_orbit = [&](const Vec& x, double m) {
    for (const Vec& p : orbit(G, x)) {
      C.points.push_back(p);
      C.masses.push_back(m);
    }
  };
  Vec v1(2), v2(2), v3(2);
  v1 << 1.6, 0;
  v2 << -0.7, 0;
  v3 << 0.4 * std::cos(0.3), 0.4 * std::sin(0.3);
  add_orbit(v1, 1.0);
  add_orbit(v2, 1.0);
  add_orbit(v3, 2.0);
  REQUIRE(C.size() == 12);

  BurnsideType type = burnside_type_of(*table, C);
  int z2 = table->class_by_label("Z2^k");
  int triv = table->class_by_label("1");
  CHECK(type.counts.at({z2, 0}) == 1);
  CHECK(type.counts.at({z2, 1}) == 1);
  CHECK(type.counts.at({triv, 0}) == 1);
  CHECK(type.body_count(*table) == 12);

  // invariance under the group action
  for (int g = 0; g < G.order(); ++g)
    CHECK(burnside_type_of(*table, act(G.mat(g), C)) == type);

  // single point at the origin
  Configuration O;
  O.dim = 2;
  O.points.push_back(Vec::Zero(2));
  O.masses.push_back(3.0);
  BurnsideType ot = burnside_type_of(*table, O);
  CHECK(ot.counts.size() == 1);
  CHECK(ot.counts.begin()->first.first == table->class_by_label("D3"));
}

TEST_CASE("burnside type of the D_4 nine-body figure") {
  FiniteGroup G = catalog_group("D", 4);
  auto table = analyze_group(G);
  Configuration C;
  C.dim = 2;
  C.points.push_back(Vec::Zero(2));
  C.masses.push_back(1.0);
  auto add_orbit = [&](const Vec& x, double m) {
    for (const Vec& p : orbit(G, x)) {
      C.points.push_back(p);
      C.masses.push_back(m);
    }
  };
  Vec a(2), b(2);
  a << 0.8, 0;
  b << 1.2, 1.2;
  add_orbit(a, 1.0);
  add_orbit(b, 1.0);
  REQUIRE(C.size() == 9);
  BurnsideType t = burnside_type_of(*table, C);
  CHECK(t.counts.at({table->class_by_label("D4"), 0}) == 1);
  CHECK(t.counts.at({table->class_by_label("Z2^k"), 0}) == 1);
  CHECK(t.counts.at({table->class_by_label("Z2^k'"), 0}) == 1);
}

TEST_CASE("burnside_type_of rejects broken symmetry") {
  FiniteGroup G = catalog_group("D", 3);
  auto table = analyze_group(G);
  Configuration C;
  C.dim = 2;
  Vec v(2);
  v << 1, 0;
  for (const Vec& p : orbit(G, v)) {
    C.points.push_back(p);
    C.masses.push_back(1.0);
  }
  C.masses[0] = 2.0;  // mass perturbation on one vertex
  CHECK_THROWS_AS(burnside_type_of(*table, C), Error);

  Configuration D = C;
  D.masses[0] = 1.0;
  D.points[0](0) += 0.3;  // geometric perturbation
  CHECK_THROWS_AS(burnside_type_of(*table, D), Error);
}

TEST_CASE("random representatives respect component and isotropy") {
  auto table = analyze_group(catalog_group("D", 3));
  int cls = table->class_by_label("Z2^k");
  Rng rng(123);
  for (int comp = 0; comp < 2; ++comp) {
    for (int i = 0; i < 20; ++i) {
      Vec x = random_representative(*table, cls, comp, {0.5, 2.0}, rng);
      CHECK(x.norm() >= 0.5);
      CHECK(x.norm() <= 2.0);
      CHECK(isotropy_subgroup(table->G(), x) ==
            table->classes[cls].representative);
      CHECK(table->component_of(cls, x) == comp);
    }
  }
  // deterministic given the seed
  Rng r1(77), r2(77);
  Vec a = random_representative(*table, cls, 1, {0.5, 2.0}, r1);
  Vec b = random_representative(*table, cls, 1, {0.5, 2.0}, r2);
  CHECK((a - b).norm() == 0.0);

  int origin_cls = table->class_by_label("D3");
  Vec o = random_representative(*table, origin_cls, 0, {0.5, 2.0}, rng);
  CHECK(o.norm() == 0.0);
}

TEST_CASE("D_2rot generic stratum: no walls, one component") {
  auto table = analyze_group(catalog_group("D_2rot"));
  int cls = table->class_by_label("1");
  REQUIRE(cls >= 0);
  CHECK(table->geometry[cls].wall_normals.empty());
  CHECK(table->components[cls].size() == 1);
}
