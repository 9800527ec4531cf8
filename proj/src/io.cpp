#include "cencon/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cencon {

json group_to_json(const FiniteGroup& G) {
  json j;
  j["name"] = G.name;
  j["dim"] = G.dim;
  j["order"] = G.order();
  json els = json::array();
  for (const Mat& m : G.elements) {
    json row = json::array();
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    els.push_back(row);
  }
  j["elements"] = els;
  j["generators"] = G.generators;
  return j;
}

FiniteGroup group_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<Mat> gens;
  const json& els = j.at("elements");
  std::vector<int> gen_idx =
      j.value("generators", std::vector<int>{});
  auto unpack = [dim](const json& row) {
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        m(r, c) = row.at(r * dim + c).get<double>();
    return m;
  };
  if (gen_idx.empty()) {
    for (const json& row : els) gens.push_back(unpack(row));
  } else {
    for (int gi : gen_idx) gens.push_back(unpack(els.at(gi)));
  }
  int bound = 4 * int(els.size()) + 16;
  FiniteGroup G = generate_group(gens, bound, j.value("name", "custom"));
  if (G.order() != int(els.size()))
    throw Error(ErrorCode::InvalidInput,
                "group file: generators do not regenerate the stored order");
  return G;
}

json config_to_json(const Configuration& C) {
  json j;
  j["dim"] = C.dim;
  json bodies = json::array();
  for (int i = 0; i < C.size(); ++i) {
    json b;
    json x = json::array();
    for (int k = 0; k < C.dim; ++k) x.push_back(C.points[i](k));
    b["x"] = x;
    b["m"] = C.masses[i];
    bodies.push_back(b);
  }
  j["bodies"] = bodies;
  if (!C.labels.empty()) j["labels"] = C.labels;
  return j;
}

Configuration config_from_json(const json& j) {
  Configuration C;
  C.dim = j.at("dim").get<int>();
  if (C.dim < 1)
    throw Error(ErrorCode::InvalidInput, "configuration: dim must be >= 1");
  for (const json& b : j.at("bodies")) {
    const json& x = b.at("x");
    if (int(x.size()) != C.dim)
      throw Error(ErrorCode::InvalidInput,
                  "configuration: body coordinate size mismatch");
    Vec p(C.dim);
    for (int k = 0; k < C.dim; ++k) p(k) = x.at(k).get<double>();
    double m = b.at("m").get<double>();
    if (!(m > 0))
      throw Error(ErrorCode::InvalidInput,
                  "configuration: masses must be positive");
    C.points.push_back(p);
    C.masses.push_back(m);
  }
  if (j.contains("labels"))
    C.labels = j.at("labels").get<std::vector<std::string>>();
  return C;
}

namespace {

std::shared_ptr<const TypeTable> table_from_group_field(const json& g) {
  FiniteGroup group;
  if (g.is_string()) {
    group = catalog_group(g.get<std::string>());
  } else if (g.is_object() && g.contains("elements")) {
    group = group_from_json(g);
  } else if (g.is_object()) {
    group = catalog_group(g.at("name").get<std::string>(),
                          g.value("param", 0));
  } else {
    throw Error(ErrorCode::InvalidInput, "ansatz: unrecognized group field");
  }
  return analyze_group(group);
}

}  // namespace

std::pair<int, int> parse_type_token(const TypeTable& table,
                                     const std::string& raw) {
  std::string token;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) token.push_back(c);
  if (token.empty())
    throw Error(ErrorCode::InvalidInput, "empty orbit-type token");

  std::string label = token;
  int primes = 0;
  if (token.front() == '(') {
    auto close = token.find(')');
    if (close == std::string::npos)
      throw Error(ErrorCode::InvalidInput, "unbalanced '(' in type token");
    label = token.substr(1, close - 1);
    primes = int(token.size() - close - 1);
    for (std::size_t i = close + 1; i < token.size(); ++i)
      if (token[i] != '\'')
        throw Error(ErrorCode::InvalidInput,
                    "unexpected characters after ')' in type token");
  } else {
    // Shorthand: exact class label wins; otherwise trailing primes select
    // the component.
    if (table.class_by_label(label) < 0) {
      std::size_t end = token.size();
      while (end > 0 && token[end - 1] == '\'') --end;
      label = token.substr(0, end);
      primes = int(token.size() - end);
    }
  }
  int cls = table.class_by_label(label);
  if (cls < 0)
    throw Error(ErrorCode::InvalidInput,
                "unknown orbit-type label '" + label + "'");
  if (primes >= int(table.components[cls].size()))
    throw Error(ErrorCode::InvalidInput,
                "component index out of range in '" + raw + "'");
  return {cls, primes};
}

std::string type_token(const TypeTable& table, int class_id, int component) {
  std::string s = "(" + table.classes[class_id].label + ")";
  for (int i = 0; i < component; ++i) s.push_back('\'');
  return s;
}

SymmetricAnsatz ansatz_from_json(const json& j) {
  auto table = table_from_group_field(j.at("group"));
  std::vector<Slot> slots;
  for (const json& s : j.at("slots")) {
    auto [cls, comp] = parse_type_token(*table, s.at("type").get<std::string>());
    double mass = s.value("mass", 1.0);
    slots.push_back({cls, comp, mass});
  }
  double exponent = j.value("exponent", 1.0);
  return make_ansatz(table, slots, exponent);
}

json ansatz_to_json(const SymmetricAnsatz& A) {
  json j;
  const FiniteGroup& G = A.G();
  j["group"] = G.name;
  json slots = json::array();
  for (const Slot& s : A.slots) {
    json slot;
    slot["type"] = type_token(*A.types, s.class_id, s.component);
    slot["mass"] = s.mass;
    slots.push_back(slot);
  }
  j["slots"] = slots;
  j["exponent"] = A.exponent;
  return j;
}

std::string burnside_to_string(const TypeTable& table, const BurnsideType& t) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, count] : t.counts) {
    if (count == 0) continue;
    if (!first) out << " + ";
    first = false;
    const OrbitType& cls = table.classes[key.first];
    if (cls.fixed_dim == 0 && count == 1)
      out << "eps";
    else
      out << count;
    out << type_token(table, key.first, key.second);
  }
  if (first) out << "0";
  return out.str();
}

BurnsideType burnside_from_string(const TypeTable& table,
                                  const std::string& text) {
  BurnsideType t;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty() || s == "0") return t;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t open = s.find('(', pos);
    if (open == std::string::npos)
      throw Error(ErrorCode::InvalidInput, "burnside type: missing '('");
    std::string count_str = s.substr(pos, open - pos);
    int count = 0;
    if (count_str == "eps" || count_str == "e") {
      count = 1;
    } else if (!count_str.empty() &&
               std::all_of(count_str.begin(), count_str.end(), [](char c) {
                 return std::isdigit(static_cast<unsigned char>(c));
               })) {
      count = std::stoi(count_str);
    } else {
      throw Error(ErrorCode::InvalidInput,
                  "burnside type: bad count '" + count_str + "'");
    }
    std::size_t close = s.find(')', open);
    if (close == std::string::npos)
      throw Error(ErrorCode::InvalidInput, "burnside type: missing ')'");
    std::size_t end = close + 1;
    while (end < s.size() && s[end] == '\'') ++end;
    auto [cls, comp] =
        parse_type_token(table, s.substr(open, end - open));
    if (count > 0) t.counts[{cls, comp}] += count;
    if (end == s.size()) break;
    if (s[end] != '+')
      throw Error(ErrorCode::InvalidInput, "burnside type: expected '+'");
    pos = end + 1;
  }
  return t;
}

json critical_point_to_json(const CriticalPoint& cp) {
  json j = config_to_json(cp.configuration);
  j["U"] = cp.U_value;
  j["lambda"] = cp.lambda;
  j["residual"] = cp.residual;
  j["morse_index"] = cp.morse_index;
  j["null_count"] = cp.null_count;
  j["kind"] = cp.kind == CriticalKind::Minimum
                  ? "minimum"
                  : (cp.kind == CriticalKind::Saddle ? "saddle" : "degenerate");
  return j;
}

json census_to_json(const Census& census) {
  json j;
  j["starts_used"] = census.starts_used;
  j["converged_count"] = census.converged_count;
  j["failures"] = census.failures;
  json sols = json::array();
  for (const CriticalPoint& cp : census.distinct)
    sols.push_back(critical_point_to_json(cp));
  j["solutions"] = sols;
  j["distinct_count"] = int(census.distinct.size());
  return j;
}

json balanced_to_json(const BalancedResult& r) {
  json j = config_to_json(r.configuration);
  json B = json::array();
  for (int a = 0; a < r.B.rows(); ++a)
    for (int b = 0; b < r.B.cols(); ++b) B.push_back(r.B(a, b));
  j["B"] = B;
  j["residual"] = r.residual;
  j["spectrum_error"] = r.spectrum_error;
  j["commutation"] = r.commutation;
  j["is_central"] = r.is_central;
  j["degenerate"] = r.degenerate;
  return j;
}

json inertia_to_json(const InertiaData& data) {
  json j;
  json S = json::array();
  for (int a = 0; a < data.S.rows(); ++a)
    for (int b = 0; b < data.S.cols(); ++b) S.push_back(data.S(a, b));
  j["S"] = S;
  json spec = json::array();
  for (int i = 0; i < data.spectrum.size(); ++i)
    spec.push_back(data.spectrum(i));
  j["spectrum"] = spec;
  j["multiplicities"] = data.multiplicities;
  j["trace"] = data.S.trace();
  return j;
}

std::string points_csv(const Configuration& C) {
  std::ostringstream out;
  out.precision(17);
  out << "body,mass";
  for (int k = 0; k < C.dim; ++k) out << ",x" << k;
  out << "\n";
  for (int i = 0; i < C.size(); ++i) {
    out << i << "," << C.masses[i];
    for (int k = 0; k < C.dim; ++k) out << "," << C.points[i](k);
    out << "\n";
  }
  return out.str();
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream out;
  out.precision(17);
  const int n = tr.positions.empty() ? 0 : int(tr.positions[0].size());
  const int d = n > 0 ? int(tr.positions[0][0].size()) : 0;
  out << "t";
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) out << ",x" << i << "_" << k;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) out << ",v" << i << "_" << k;
  out << ",E\n";
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    out << tr.times[s];
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) out << "," << tr.positions[s][i](k);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) out << "," << tr.velocities[s][i](k);
    out << "," << tr.energy[s] << "\n";
  }
  return out.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::InvalidInput, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidInput,
                "malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::InvalidInput, "cannot write file: " + path);
  out << text;
}

}  // namespace cencon
