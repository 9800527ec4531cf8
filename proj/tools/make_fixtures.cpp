// Regenerates the fixture corpus under fixtures/. Config fixtures are exact
// orbit constructions scaled to I = 1; ansatz fixtures pin the stratum
// components by a witness point so the files stay valid if component
// numbering ever changes.
#include <cmath>
#include <iostream>
#include <string>

#include "cencon/io.hpp"

using namespace cencon;

namespace {

std::string out_dir = "fixtures";

void write(const std::string& name, const json& j) {
  save_text_file(out_dir + "/" + name, j.dump(2) + "\n");
  std::cout << "wrote " << out_dir << "/" << name << "\n";
}

Configuration scaled_to_unit_inertia(Configuration C) {
  double I = moment_of_inertia(C);
  for (Vec& p : C.points) p /= std::sqrt(I);
  return C;
}

Configuration orbit_config(const FiniteGroup& G, const Vec& seed_point,
                           double mass) {
  Configuration C;
  C.dim = G.dim;
  for (const Vec& p : orbit(G, seed_point)) {
    C.points.push_back(p);
    C.masses.push_back(mass);
  }
  return C;
}

json ansatz_json(const std::string& group,
                 const std::vector<std::pair<std::string, double>>& slots,
                 double exponent = 1.0) {
  json j;
  j["group"] = group;
  json arr = json::array();
  for (const auto& [type, mass] : slots) {
    json s;
    s["type"] = type;
    s["mass"] = mass;
    arr.push_back(s);
  }
  j["slots"] = arr;
  j["exponent"] = exponent;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) out_dir = argv[1];

  // --- config fixtures -------------------------------------------------------
  {
    Configuration C;  // Lagrange equilateral triangle at I = 1
    C.dim = 2;
    double r = 1.0 / std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
      Vec p(2);
      p << r * std::cos(2 * M_PI * k / 3), r * std::sin(2 * M_PI * k / 3);
      C.points.push_back(p);
      C.masses.push_back(1.0);
    }
    write("lagrange_triangle.json", config_to_json(C));
  }
  {
    Configuration C;  // unit-mass square at I = 1
    C.dim = 2;
    for (auto [x, y] :
         {std::pair{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}}) {
      Vec p(2);
      p << x, y;
      C.points.push_back(p);
      C.masses.push_back(1.0);
    }
    write("square.json", config_to_json(C));
  }
  {
    // cuboctahedron: O_h orbit of (1,1,0), 12 bodies, I = 1
    FiniteGroup G = catalog_group("O_h");
    Vec p(3);
    p << 1, 1, 0;
    write("cuboctahedron.json",
          config_to_json(scaled_to_unit_inertia(orbit_config(G, p, 1.0))));
  }
  {
    // icosidodecahedron: I_h orbit of an icosahedron edge midpoint, 30 bodies
    FiniteGroup G = catalog_group("I_h");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Vec p(3);
    p << 0, 0, phi;  // midpoint of the edge (0,1,phi)-(0,-1,phi)
    Configuration C = scaled_to_unit_inertia(orbit_config(G, p, 1.0));
    if (C.size() != 30) {
      std::cerr << "icosidodecahedron orbit has " << C.size() << " points\n";
      return 1;
    }
    write("icosidodecahedron.json", config_to_json(C));
  }

  // --- ansatz fixtures ---------------------------------------------------------
  {
    // Figure 1: two dual triangles and a semiregular hexagon under D_3
    write("figure1_d3.json", ansatz_json("D_3", {{"(Z2^k)", 1.0},
                                                 {"(Z2^k)'", 1.0},
                                                 {"(1)", 1.0}}));
  }
  {
    // Figure 2(b): 1(D4) + 2(Z2^k) + 1(Z2^k') under D_4
    write("figure2b_d4.json", ansatz_json("D_4", {{"(D4)", 1.0},
                                                  {"(Z2^k)", 1.0},
                                                  {"(Z2^k)", 1.0},
                                                  {"(Z2^k')", 1.0}}));
  }
  {
    // C_2h: axis pair + planar pair + generic rectangle
    write("c2h.json", ansatz_json("C_2h", {{"(Z2^r)", 1.0},
                                           {"(Z2^t)", 1.0},
                                           {"(1)", 1.0}}));
  }
  {
    // D_3h double antiprism: prism orbit plus the staggered in-plane
    // triangle (9 bodies). The staggered combination puts the two slots at
    // opposite azimuths inside the same vertical mirror.
    auto table = analyze_group(catalog_group("D_3h"));
    int prism = table->class_by_label("Z2^k");
    int vertex = table->class_by_label("C2v");
    Vec prism_pt(3), tri_pt(3);
    prism_pt << 1, 0, 0.7;
    tri_pt << -1, 0, 0;
    int pc = table->component_of(prism, prism_pt);
    int vc = table->component_of(vertex, tri_pt);
    write("dnh_double_antiprism.json",
          ansatz_json("D_3h", {{type_token(*table, prism, pc), 1.0},
                               {type_token(*table, vertex, vc), 1.0}}));
  }
  {
    // nested tetrahedra: both S3 components of T_d
    write("nested_tetrahedra.json", ansatz_json("T_d", {{"(S3)", 1.0},
                                                        {"(S3)'", 1.0}}));
  }
  {
    // truncated tetrahedron: the T_d (Z2) component of the tetrahedron-edge
    // family, witnessed by the Archimedean vertex (1/3, 1/3, 1)
    auto table = analyze_group(catalog_group("T_d"));
    int cls = table->class_by_label("Z2");
    Vec witness(3);
    witness << 1.0 / 3, 1.0 / 3, 1.0;
    int comp = table->component_of(cls, witness);
    if (comp < 0) {
      std::cerr << "truncated-tetra witness is not interior\n";
      return 1;
    }
    write("truncated_tetrahedron.json",
          ansatz_json("T_d", {{type_token(*table, cls, comp), 1.0}}));
  }
  {
    // cuboctahedron as a rigid O_h ansatz (single C_2v-type orbit)
    write("cuboctahedron_ansatz.json",
          ansatz_json("O_h", {{"(Z2xZ2)", 1.0}}));
    write("icosidodecahedron_ansatz.json",
          ansatz_json("I_h", {{"(Z2xZ2)", 1.0}}));
  }
  {
    // D_2 census: four unit masses in a single generic orbit
    write("d2_census.json", ansatz_json("D_2rot", {{"(1)", 1.0}}));
  }
  {
    // collinear three-body ansatz on the reflection line of D_1
    write("collinear3_distinct.json", ansatz_json("D_1", {{"(D1)", 1.0},
                                                          {"(D1)", 2.0},
                                                          {"(D1)", 3.0}}));
    write("collinear3_equal.json", ansatz_json("D_1", {{"(D1)", 1.0},
                                                       {"(D1)", 1.0},
                                                       {"(D1)", 1.0}}));
  }
  return 0;
}
