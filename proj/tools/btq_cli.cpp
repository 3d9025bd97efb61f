// btq: command-line front end for the library.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "btq/bundles.h"
#include "btq/equivariant.h"
#include "btq/model.h"
#include "btq/points_p1.h"
#include "btq/tree.h"
#include "btq/verify.h"

using namespace btq;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0, kExitVerifyFail = 1, kExitInvalid = 2, kExitCap = 3, kExitUnsupported = 4;
constexpr const char* kVersion = "0.1.0";

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "json", output, config_path;
  bool dry_run = false;
  uint64_t seed = 12345;
  int threads = 0;

  std::string curve = "p1", punctures, a = "0,0,0,-1,0", place = "inf";
  int q = 2, s = 0, radius = 2;
  std::string group = "gl2";
  std::string flavor = "T", phi, moduli;
  int window = -1;
  std::string exponents = "0,0", part = "full";
  std::string coeff = "Z";
  int qmax = 2;
  std::string source = "points", input;
  int N = 2;
  std::string variant = "alternating";
  int max_degree = -1;
  bool de = false, rp1 = false;
  std::vector<std::string> suites;
};

std::vector<std::string> split_top(const std::string& s) {
  // commas inside parentheses belong to a point; ';' always separates
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == ',' && depth == 0) || ch == ';') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<long long> parse_ints(const std::string& s) {
  std::vector<long long> v;
  for (auto& t : split_top(s)) {
    size_t pos = 0;
    long long x = std::stoll(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("not an integer: " + t);
    v.push_back(x);
  }
  return v;
}

CurveConfig make_curve(const RunConfig& R) {
  auto punct = split_top(R.punctures);
  if (R.curve == "p1") {
    if (punct.empty()) {
      int s = R.s > 0 ? R.s : 1;
      if (s > R.q + 1) throw std::invalid_argument("--s exceeds the number of rational points");
      punct.push_back("inf");
      const Fq& F = Fq::get(R.q);
      for (int i = 0; static_cast<int>(punct.size()) < s; ++i)
        punct.push_back(i == 0 ? "t" : "t+" + F.str(i));
    }
    if (R.s > 0 && static_cast<int>(punct.size()) != R.s) throw std::invalid_argument("--s disagrees with --punctures");
    return p1_config(R.q, punct);
  }
  if (R.curve == "elliptic") {
    auto a = parse_ints(R.a);
    if (a.size() != 5) throw std::invalid_argument("--a needs five coefficients a1,a2,a3,a4,a6");
    if (punct.empty()) {
      int s = R.s > 0 ? R.s : 1;
      punct.push_back("O");
      for (int k = 1; static_cast<int>(punct.size()) < s; ++k) punct.push_back("1:" + std::to_string(k));
    }
    std::vector<int> ai(a.begin(), a.end());
    return elliptic_config(R.q, ai, punct);
  }
  throw std::invalid_argument("--curve must be p1 or elliptic");
}

void require_p1(const CurveConfig& c, const std::string& what) {
  if (c.kind != CurveConfig::P1) throw Unsupported(what + " is built only over the projective line");
}

GroupFlavor parse_group(const std::string& g) {
  if (g == "gl2") return GroupFlavor::GL2;
  if (g == "sl2") return GroupFlavor::SL2;
  if (g == "pgl2") return GroupFlavor::PGL2;
  if (g == "psl2") return GroupFlavor::PSL2;
  throw std::invalid_argument("--group must be gl2, sl2, pgl2 or psl2");
}

Json group_json(const FgAbGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank;
  j["torsion"] = g.torsion;
  j["str"] = g.str();
  return j;
}

Json groups_json(const std::vector<FgAbGroup>& gs) {
  Json a = Json::array();
  for (auto& g : gs) a.push_back(group_json(g));
  return a;
}

Json matrix_json(const IntMatrix& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols; ++j) row.push_back(M(i, j).get_si());
    a.push_back(row);
  }
  return a;
}

std::string homology_csv(const std::vector<FgAbGroup>& H) {
  std::ostringstream o;
  o << "degree,free_rank,torsion\n";
  for (size_t n = 0; n < H.size(); ++n) {
    o << n << "," << H[n].free_rank << ",";
    for (size_t i = 0; i < H[n].torsion.size(); ++i) o << (i ? " " : "") << H[n].torsion[i];
    o << "\n";
  }
  return o.str();
}

Json chain_complex_json(const ChainComplex& C) {
  Json j;
  j["dims"] = C.dims;
  Json d = Json::array();
  for (int n = 1; n <= C.top(); ++n) {
    Json m;
    m["degree"] = n;
    Json e = Json::array();
    const auto& M = C.d[n];
    for (int c = 0; c < M.cols; ++c)
      for (auto& [r, v] : M.col[c]) e.push_back({r, c, v});
    m["entries"] = e;
    d.push_back(m);
  }
  j["boundaries"] = d;
  return j;
}

ChainComplex chain_complex_from_json(const nlohmann::json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) throw std::invalid_argument("chain complex needs a dims array");
  std::vector<int> dims = j["dims"].get<std::vector<int>>();
  for (int d : dims)
    if (d < 0) throw std::invalid_argument("negative dimension");
  ChainComplex C(dims);
  if (j.contains("boundaries"))
    for (auto& m : j["boundaries"]) {
      int n = m.at("degree").get<int>();
      if (n < 1 || n > C.top()) throw std::invalid_argument("boundary degree out of range");
      for (auto& e : m.at("entries")) {
        int r = e.at(0).get<int>(), c = e.at(1).get<int>();
        if (r < 0 || r >= dims[n - 1] || c < 0 || c >= dims[n]) throw std::invalid_argument("entry out of range");
        C.d[n].add(r, c, e.at(2).get<long long>());
      }
      C.d[n].finalize();
    }
  if (!C.is_complex()) throw std::invalid_argument("boundaries do not square to zero");
  return C;
}

// ---------------------------------------------------------------- commands

struct Output {
  std::string text;
};

Output cmd_tree_ball(const RunConfig& R) {
  if (R.radius < 0) throw std::invalid_argument("--radius must be >= 0");
  const Fq& F = Fq::get(R.q);
  Place P = parse_place(F, R.place);
  auto ball = tree_ball(TreeVertex{}, P, R.radius);
  std::map<TreeVertex, int> idx;
  for (size_t i = 0; i < ball.size(); ++i) idx[ball[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < ball.size(); ++i)
    for (auto& w : link(ball[i], P)) {
      auto it = idx.find(w);
      if (it != idx.end() && static_cast<int>(i) < it->second) edges.push_back({static_cast<int>(i), it->second});
    }
  if (R.format == "dot") {
    std::ostringstream o;
    o << "graph tree {\n";
    for (size_t i = 0; i < ball.size(); ++i) o << "  v" << i << " [label=\"" << ball[i].str(P) << "\"];\n";
    for (auto& [a, b] : edges) o << "  v" << a << " -- v" << b << ";\n";
    o << "}\n";
    return {o.str()};
  }
  if (R.format == "csv") {
    std::ostringstream o;
    o << "index,label,distance\n";
    for (size_t i = 0; i < ball.size(); ++i) o << i << ",\"" << ball[i].str(P) << "\"," << distance(TreeVertex{}, ball[i]) << "\n";
    return {o.str()};
  }
  Json j;
  j["q"] = R.q;
  j["place"] = P.str();
  j["radius"] = R.radius;
  Json vs = Json::array();
  for (auto& v : ball) vs.push_back(v.str(P));
  j["vertices"] = vs;
  j["edges"] = edges;
  return {j.dump(2) + "\n"};
}

Output cmd_building_ball(const RunConfig& R) {
  auto c = make_curve(R);
  require_p1(c, "the building");
  if (R.radius < 0) throw std::invalid_argument("--radius must be >= 0");
  Building B = building_of(c);
  auto K = building_ball(B, B.base(), R.radius);
  std::map<BuildingVertex, int> vidx;
  for (size_t i = 0; i < K.cubes[0].size(); ++i) vidx[K.cubes[0][i].base] = static_cast<int>(i);
  if (R.format == "dot") {
    std::ostringstream o;
    o << "graph building {\n";
    for (size_t i = 0; i < K.cubes[0].size(); ++i) o << "  v" << i << " [label=\"" << B.str(K.cubes[0][i].base) << "\"];\n";
    if (K.cubes.size() > 1)
      for (auto& e : K.cubes[1]) {
        auto cs = e.corners();
        o << "  v" << vidx.at(cs[0]) << " -- v" << vidx.at(cs[1]) << ";\n";
      }
    o << "}\n";
    return {o.str()};
  }
  auto H = K.chain_complex().homology_all();
  if (R.format == "csv") {
    std::ostringstream o;
    o << "dimension,cells\n";
    auto n = K.counts();
    for (size_t d = 0; d < n.size(); ++d) o << d << "," << n[d] << "\n";
    return {o.str()};
  }
  Json j;
  j["curve"] = c.str();
  j["radius"] = R.radius;
  j["counts"] = K.counts();
  Json vs = Json::array();
  for (auto& v : K.cubes[0]) vs.push_back(B.str(v.base));
  j["vertices"] = vs;
  Json cubes = Json::array();
  for (size_t d = 1; d < K.cubes.size(); ++d)
    for (auto& cube : K.cubes[d]) {
      Json cj;
      cj["base"] = vidx.at(cube.base);
      cj["dirs"] = cube.dirs;
      Json ch = Json::array();
      for (size_t k = 0; k < cube.other.size(); ++k) ch.push_back(cube.other[k].str(B.places[cube.dirs[k]]));
      cj["choices"] = ch;
      cubes.push_back(cj);
    }
  j["cubes"] = cubes;
  j["homology"] = groups_json(H);
  return {j.dump(2) + "\n"};
}

Output cmd_pic(const RunConfig& R) {
  auto c = make_curve(R);
  auto p = nagata(c);
  if (R.format == "csv") {
    std::ostringstream o;
    o << "curve,unit_rank,pic,pic0,degree_gcd,exact\n";
    o << "\"" << c.str() << "\"," << p.unit_rank << ",\"" << p.pic.str() << "\",\"" << p.pic0.str() << "\"," << p.degree_gcd
      << "," << (p.exact ? "true" : "false") << "\n";
    return {o.str()};
  }
  Json j;
  j["curve"] = c.str();
  j["unit_rank"] = p.unit_rank;
  j["pic"] = p.pic.str();
  j["pic0"] = p.pic0.str();
  j["degree_gcd"] = p.degree_gcd;
  j["pic_generators"] = p.pic_generators;
  j["phi"] = matrix_json(p.phi);
  j["ker_phi"] = matrix_json(p.ker_phi);
  j["im_phi_pic0_order"] = p.im_phi_pic0_order;
  j["exact"] = p.exact;
  j["exactness_report"] = p.exactness_report;
  return {j.dump(2) + "\n"};
}

Output cmd_kummer(const RunConfig& R) {
  auto c = make_curve(R);
  auto p = nagata(c);
  auto K = kummer(p);
  if (R.format == "csv") {
    std::ostringstream o;
    o << "orbit,elements\n";
    for (size_t i = 0; i < K.orbits.size(); ++i) {
      o << i << ",\"";
      for (size_t k = 0; k < K.orbits[i].size(); ++k) {
        o << (k ? " " : "") << "(";
        for (size_t m = 0; m < K.orbits[i][k].size(); ++m) o << (m ? "," : "") << K.orbits[i][k][m];
        o << ")";
      }
      o << "\"\n";
    }
    return {o.str()};
  }
  Json j;
  j["curve"] = c.str();
  j["pic"] = p.pic.str();
  j["invariants"] = K.invariants;
  j["size"] = K.orbits.size();
  j["fixed_points"] = K.fixed_points();
  j["orbits"] = K.orbits;
  return {j.dump(2) + "\n"};
}

Output cmd_classify(const RunConfig& R) {
  auto c = make_curve(R);
  require_p1(c, "vertex classification");
  std::vector<int> a;
  for (auto x : parse_ints(R.exponents)) a.push_back(static_cast<int>(x));
  if (static_cast<int>(a.size()) != c.s()) throw std::invalid_argument("--exponents needs one entry per puncture");
  auto v = a0_vertex(c, a);
  auto st = split_type(c, v);
  auto b = classify_vertex(c, v);
  auto g = parse_group(R.group);
  auto d = stabilizer_descriptor(b, c, g);
  Json j;
  j["curve"] = c.str();
  j["vertex"] = building_of(c).str(v);
  j["split_type"] = {st.a, st.b};
  j["bundle_class"] = b.str();
  j["kclass"] = b.kclass();
  j["stabilizer"] = d.str();
  j["group"] = flavor_str(g);
  if (R.format == "csv") {
    std::ostringstream o;
    o << "vertex,a,b,class,stabilizer\n\"" << j["vertex"].get<std::string>() << "\"," << st.a << "," << st.b << ",\"" << b.str()
      << "\",\"" << d.str() << "\"\n";
    return {o.str()};
  }
  return {j.dump(2) + "\n"};
}

Output cmd_quotient(const RunConfig& R) {
  auto c = make_curve(R);
  require_p1(c, "the quotient");
  if (R.radius < 0) throw std::invalid_argument("--radius must be >= 0");
  auto Q = quotient_ball(c, R.radius, parse_group(R.group));
  if (R.format == "dot") {
    std::ostringstream o;
    o << "graph quotient {\n";
    for (size_t i = 0; i < Q.cells[0].size(); ++i) {
      auto& v = Q.cells[0][i];
      o << "  v" << i << " [label=\"" << v.bundle.str() << "\\n" << v.stab.str() << "\"" << (v.parabolic ? "" : ",style=dashed")
        << "];\n";
    }
    if (Q.cells.size() > 1)
      for (auto& e : Q.cells[1]) {
        std::vector<int> ends;
        for (auto& f : e.faces) ends.push_back(f.first);
        if (ends.size() == 1) ends.push_back(ends[0]);
        if (ends.size() == 2) o << "  v" << ends[0] << " -- v" << ends[1] << ";\n";
      }
    o << "}\n";
    return {o.str()};
  }
  if (R.format == "csv") {
    std::ostringstream o;
    o << "dim,orbit,bundle,stabilizer,parabolic,members\n";
    for (size_t d = 0; d < Q.cells.size(); ++d)
      for (size_t i = 0; i < Q.cells[d].size(); ++i) {
        auto& x = Q.cells[d][i];
        o << d << "," << i << ",\"" << x.bundle.str() << "\",\"" << (d == 0 ? x.stab.str() : "") << "\","
          << (x.parabolic ? "true" : "false") << "," << x.members << "\n";
      }
    return {o.str()};
  }
  Json j;
  j["curve"] = c.str();
  j["group"] = flavor_str(Q.group);
  j["radius"] = Q.radius;
  j["election"] = Q.election;
  j["counts"] = Q.counts();
  j["vertex_orbits"] = Q.cells[0].size();
  Json cells = Json::array();
  for (size_t d = 0; d < Q.cells.size(); ++d)
    for (auto& x : Q.cells[d]) {
      Json cj;
      cj["dim"] = d;
      cj["bundle"] = x.bundle.str();
      if (d == 0) cj["stabilizer"] = x.stab.str();
      cj["parabolic"] = x.parabolic;
      cj["members"] = x.members;
      cj["ambiguous"] = x.ambiguous;
      cj["reversed"] = x.reversed;
      cj["faces"] = x.faces;
      cells.push_back(cj);
    }
  j["cells"] = cells;
  j["parabolic_components"] = Q.parabolic_components();
  return {j.dump(2) + "\n"};
}

Output cmd_model(const RunConfig& R) {
  auto f = parse_cryst(R.flavor);
  CrystGroup g;
  std::string source;
  if (!R.phi.empty()) {
    std::vector<std::vector<long long>> rows;
    std::string row;
    std::stringstream ss(R.phi);
    while (std::getline(ss, row, '/')) rows.push_back(parse_ints(row));
    auto mods = R.moduli.empty() ? std::vector<long long>(rows.size(), 0) : parse_ints(R.moduli);
    g = synthetic_cryst(IntMatrix::from(rows), mods, f);
    source = "synthetic " + R.phi;
  } else {
    auto c = make_curve(R);
    g = build_cryst(nagata(c), f);
    source = c.str();
  }
  int w = R.window >= 0 ? R.window : min_window(g);
  auto coeff = Coeff::parse(R.coeff);
  auto H = quotient_homology(g, w, coeff);
  if (R.format == "csv") return {homology_csv(H)};
  auto M = model_quotient(g, w);
  Json j;
  j["source"] = source;
  j["flavor"] = cryst_str(f);
  j["rank"] = g.rank();
  j["window"] = w;
  j["counts"] = M.counts();
  j["coeff"] = coeff.str();
  j["homology"] = groups_json(H);
  if (g.inversions()) j["special_vertices"] = special_vertices(g).count;
  return {j.dump(2) + "\n"};
}

Output cmd_e1_page(const RunConfig& R) {
  auto coeff = Coeff::parse(R.coeff);
  if (R.qmax < 0) throw std::invalid_argument("--qmax must be >= 0");
  E1Page page;
  std::string source;
  if (R.source == "points") {
    auto X = sl2_points_simplex(R.q);
    page = e1_page(X, R.qmax, coeff);
    source = "SL2(F_" + std::to_string(R.q) + ") on the simplex of P^1(F_" + std::to_string(R.q) + ")";
  } else if (R.source == "sn-model") {
    auto c = make_curve(R);
    auto g = build_cryst(nagata(c), CrystFlavor::SN);
    int w = R.window >= 0 ? R.window : min_window(g);
    page = e1_page(sn_orbit_complex(g, w, R.q), R.qmax, coeff);
    source = "SN model of " + c.str();
  } else {
    throw std::invalid_argument("--source must be points or sn-model");
  }
  auto E2 = e2_and_total(page);
  if (R.format == "csv") return {page.csv() + E2.csv()};
  Json j;
  j["source"] = source;
  j["coeff"] = coeff.str();
  Json e1 = Json::array();
  for (int p = 0; p <= page.pmax; ++p) {
    Json col = Json::array();
    for (int q = 0; q <= page.qmax; ++q) col.push_back(page.group(p, q).str());
    e1.push_back(col);
  }
  j["e1"] = e1;
  j["d1_squares_to_zero"] = page.d1_squares_to_zero();
  Json e2 = Json::array();
  for (auto& col : E2.e2) {
    Json cj = Json::array();
    for (auto& g : col) cj.push_back(g.str());
    e2.push_back(cj);
  }
  j["e2"] = e2;
  j["degenerate"] = E2.degenerate;
  if (E2.degenerate) j["total"] = groups_json(E2.total);
  j["notes"] = E2.notes;
  return {j.dump(2) + "\n"};
}

Output cmd_homology(const RunConfig& R) {
  if (R.input.empty()) throw std::invalid_argument("--input chain complex JSON is required");
  std::ifstream in(R.input);
  if (!in) throw std::invalid_argument("cannot read " + R.input);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
  auto C = chain_complex_from_json(j);
  auto coeff = Coeff::parse(R.coeff);
  auto H = C.homology_all(coeff);
  if (R.format == "csv") return {homology_csv(H)};
  Json o;
  o["coeff"] = coeff.str();
  o["dims"] = C.dims;
  o["homology"] = groups_json(H);
  return {o.dump(2) + "\n"};
}

Output cmd_points(const RunConfig& R) {
  auto v = parse_variant(R.variant);
  auto C = build_points_complex(R.q, R.N, v);
  auto coeff = Coeff::parse(R.coeff);
  if (R.format == "csv") {
    std::ostringstream o;
    o << "degree,generators\n";
    auto n = C.counts();
    for (size_t d = 0; d < n.size(); ++d) o << d << "," << n[d] << "\n";
    return {o.str()};
  }
  Json j;
  j["q"] = R.q;
  j["N"] = R.N;
  j["variant"] = variant_str(v);
  j["counts"] = C.counts();
  j["d_squared_zero"] = C.chains.is_complex();
  int md = R.max_degree >= 0 ? R.max_degree : std::min(R.N - 1, R.q - 2);
  if (md >= 0) {
    auto A = acyclicity_check(C, md, coeff);
    j["acyclicity"] = {{"coeff", coeff.str()}, {"degrees", A.degrees}, {"acyclic", A.acyclic}, {"lines", A.lines}};
  }
  if (R.de) {
    auto D = de_exactness(R.q);
    j["de_sequence"] = {{"chain_maps", D.chain_maps},
                        {"composite_zero", D.composite_zero},
                        {"exact", D.exact()},
                        {"lines", D.lines}};
  }
  if (R.rp1) {
    auto P = rp1_low_degree(R.q, 1, coeff);
    j["rp1"] = {{"groups", groups_json(P.rp1)},
                {"pair_stabilizer", P.pair_stabilizer},
                {"pairs_transitive", P.pairs_transitive},
                {"lines", P.lines}};
  }
  j["chain_complex"] = chain_complex_json(C.chains);
  return {j.dump(2) + "\n"};
}

// ---------------------------------------------------------------- plumbing

std::string cache_key(const std::string& cmd, const std::vector<std::string>& args) {
  std::string s = cmd;
  for (auto& a : args) s += '\x1f' + a;
  std::ostringstream o;
  o << std::hex << std::hash<std::string>{}(s);
  return cmd + "-" + o.str();
}

void emit(const RunConfig& R, const std::string& text) {
  if (R.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(R.output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + R.output);
  f << text;
}

void apply_config_file(CLI::App& sub, RunConfig& R) {
  if (R.config_path.empty()) return;
  std::ifstream in(R.config_path);
  if (!in) throw std::invalid_argument("cannot read config " + R.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  // command-line values win over the file
  for (auto& [key, val] : j.items()) {
    if (key == "subcommand") continue;
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      try {
        opt = sub.get_parent()->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        // keys meant for another subcommand are ignored; unknown ones are errors
        bool elsewhere = false;
        for (auto* other : sub.get_parent()->get_subcommands({}))
          elsewhere = elsewhere || other->get_option_no_throw("--" + key) != nullptr;
        if (!elsewhere) throw std::invalid_argument("unknown config key: " + key);
        continue;
      }
    }
    if (opt->count() > 0) continue;
    std::string s;
    if (val.is_string())
      s = val.get<std::string>();
    else if (val.is_boolean())
      s = val.get<bool>() ? "true" : "false";
    else if (val.is_array()) {
      for (auto& x : val) s += (s.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
    } else
      s = val.dump();
    opt->clear();
    opt->add_result(s);
    opt->run_callback();
  }
}

void validate_ranges(const RunConfig& R) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  need(R.q >= 2 && R.q <= 64, "--q must be a prime power in [2, 64]");
  Fq::get(R.q);  // rejects non prime powers
  need(R.radius >= 0 && R.radius <= 12, "--radius must lie in [0, 12]");
  need(R.s >= 0 && R.s <= 8, "--s must lie in [0, 8]");
  need(R.window >= -1 && R.window <= 64, "--window must lie in [0, 64]");
  need(R.qmax >= 0 && R.qmax <= 4, "--qmax must lie in [0, 4]");
  need(R.N >= 0 && R.N <= R.q, "--N must lie in [0, q]");
  need(R.max_degree >= -1 && R.max_degree <= R.q, "--max-degree must lie in [0, q]");
  Coeff::parse(R.coeff);
}

int run_verify(const RunConfig& R) {
  auto names = suite_names();
  std::vector<std::string> chosen = R.suites;
  if (chosen.empty() || (chosen.size() == 1 && chosen[0] == "all")) chosen = names;
  for (auto& c : chosen)
    if (std::find(names.begin(), names.end(), c) == names.end()) throw std::invalid_argument("unknown suite: " + c);
  std::ostringstream o;
  if (R.dry_run) {
    for (auto& c : chosen) o << "# would run " << c << "\n";
    emit(R, o.str());
    return kExitOk;
  }
  o << "TAP version 13\n1.." << chosen.size() << "\n";
  bool all = true;
  int n = 0;
  for (auto& c : chosen) {
    auto S = run_suite(c, R.seed);
    all = all && S.pass();
    o << (S.pass() ? "ok " : "not ok ") << ++n << " - " << S.name << ": " << S.title << "\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "  # %zu checks, %.2f s of %.0f s budget\n", S.checks.size(), S.seconds, S.budget_seconds);
    o << buf;
    for (auto& ch : S.checks)
      if (!ch.pass || R.format == "verbose")
        o << "  # " << (ch.pass ? "pass" : "FAIL") << ": " << ch.what << (ch.detail.empty() ? "" : " (" + ch.detail + ")") << "\n";
    if (R.output.empty()) {
      std::cout << o.str() << std::flush;
      o.str("");
    }
  }
  if (!R.output.empty()) emit(R, o.str());
  return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"btq: Bruhat-Tits quotients, model complexes and equivariant homology over finite fields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig R;
  app.add_option("--format", R.format, "json | dot | csv")->check(CLI::IsMember({"json", "dot", "csv", "verbose"}));
  app.add_option("--output,-o", R.output, "write to a file instead of stdout");
  app.add_option("--config", R.config_path, "JSON config file (see schema/config.schema.json)");
  app.add_flag("--dry-run", R.dry_run, "validate the configuration and stop");
  app.add_option("--seed", R.seed, "seed for randomized checks");
  app.add_option("--threads", R.threads, "worker threads (0 = available parallelism)")->check(CLI::NonNegativeNumber);

  auto curve_opts = [&](CLI::App* s) {
    s->add_option("--curve", R.curve, "p1 | elliptic")->check(CLI::IsMember({"p1", "elliptic"}));
    s->add_option("--q", R.q, "field size");
    s->add_option("--punctures", R.punctures, "comma list: inf, t, t^2+1 (P^1); O, (x,y), d:k (elliptic)");
    s->add_option("--s", R.s, "number of punctures when --punctures is omitted");
    s->add_option("--a", R.a, "Weierstrass coefficients a1,a2,a3,a4,a6");
  };
  std::map<std::string, std::function<Output(const RunConfig&)>> handlers;
  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help, std::function<Output(const RunConfig&)> h) {
    auto s = app.add_subcommand(name, help);
    handlers[name] = std::move(h);
    subs[name] = s;
    return s;
  };

  auto tb = add("tree-ball", "ball in the Bruhat-Tits tree at one place", cmd_tree_ball);
  tb->add_option("--q", R.q, "field size");
  tb->add_option("--place", R.place, "inf or a monic irreducible polynomial");
  tb->add_option("--radius", R.radius);

  auto bb = add("building-ball", "ball in the product of trees at the punctures", cmd_building_ball);
  curve_opts(bb);
  bb->add_option("--radius", R.radius);

  curve_opts(add("pic", "Nagata sequence, units and Picard group", cmd_pic));
  curve_opts(add("kummer", "the set Pic(C) modulo inversion", cmd_kummer));

  auto cl = add("classify", "split type, bundle class and stabilizer of diag(pi^a, 1)", cmd_classify);
  curve_opts(cl);
  cl->add_option("--exponents", R.exponents, "one exponent per puncture");
  cl->add_option("--group", R.group)->check(CLI::IsMember({"gl2", "sl2", "pgl2", "psl2"}));

  auto qu = add("quotient", "orbit representatives of the ball and their stabilizers", cmd_quotient);
  curve_opts(qu);
  qu->add_option("--radius", R.radius);
  qu->add_option("--group", R.group)->check(CLI::IsMember({"gl2", "sl2", "pgl2", "psl2"}));

  auto mo = add("model", "model complex homology for T, ST, N or SN", cmd_model);
  curve_opts(mo);
  mo->add_option("--flavor", R.flavor)->check(CLI::IsMember({"T", "ST", "N", "SN"}));
  mo->add_option("--window", R.window, "window half-width (default: smallest stable)");
  mo->add_option("--phi", R.phi, "synthetic phi, rows separated by '/', e.g. 1,1,1");
  mo->add_option("--moduli", R.moduli, "row moduli of the synthetic phi (0 = Z)");
  mo->add_option("--coeff", R.coeff, "Z | Z[1/2] | Z/l");

  auto e1 = add("e1-page", "isotropy spectral sequence E1 and E2", cmd_e1_page);
  curve_opts(e1);
  e1->add_option("--source", R.source, "points | sn-model")->check(CLI::IsMember({"points", "sn-model"}));
  e1->add_option("--qmax", R.qmax, "top row");
  e1->add_option("--window", R.window);
  e1->add_option("--coeff", R.coeff, "Z | Z[1/2] | Z/l");

  auto ho = add("homology", "homology of a chain complex given as JSON", cmd_homology);
  ho->add_option("--input", R.input, "file following schema/chain_complex.schema.json");
  ho->add_option("--coeff", R.coeff, "Z | Z[1/2] | Z/l");

  auto pc = add("points-complex", "complexes of points on P^1(F_q)", cmd_points);
  pc->add_option("--q", R.q, "field size");
  pc->add_option("--N", R.N, "top degree");
  pc->add_option("--variant", R.variant)->check(CLI::IsMember({"plain", "alternating"}));
  pc->add_option("--max-degree", R.max_degree, "degrees for the acyclicity check");
  pc->add_option("--coeff", R.coeff, "Z | Z[1/2] | Z/l");
  pc->add_flag("--de", R.de, "check the D/E sequence");
  pc->add_flag("--rp1", R.rp1, "low-degree RP^1");

  auto ve = app.add_subcommand("verify", "run acceptance suites (TAP output)");
  ve->add_option("suites", R.suites, "suite names or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config_file(*sub, R);
    if (R.threads == 0) R.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (sub->get_name() == "verify") return run_verify(R);

    std::string name = sub->get_name();
    if (name == "tree-ball" && R.format == "dot") {
    } else if (R.format == "dot" && name != "building-ball" && name != "quotient") {
      throw Unsupported("--format dot is available for tree-ball, building-ball and quotient");
    }
    if (R.format == "verbose") throw std::invalid_argument("--format verbose applies to verify only");
    validate_ranges(R);
    if (R.dry_run) {
      Json j;
      j["subcommand"] = name;
      j["valid"] = true;
      emit(R, j.dump(2) + "\n");
      return kExitOk;
    }

    // memoize whole results by the normalized option list
    std::string cache_file;
    if (const char* dir = std::getenv("BTQ_CACHE_DIR"); dir && *dir) {
      std::vector<std::string> args;
      for (auto* o : sub->get_options())
        if (o->count()) args.push_back(o->get_name() + "=" + o->as<std::string>());
      args.push_back("format=" + R.format);
      args.push_back(std::string("version=") + kVersion);
      std::filesystem::create_directories(dir);
      cache_file = (std::filesystem::path(dir) / (cache_key(name, args) + ".out")).string();
      std::ifstream hit(cache_file, std::ios::binary);
      if (hit) {
        std::ostringstream ss;
        ss << hit.rdbuf();
        emit(R, ss.str());
        return kExitOk;
      }
    }
    auto out = handlers.at(name)(R);
    if (!cache_file.empty()) std::ofstream(cache_file, std::ios::binary) << out.text;
    emit(R, out.text);
    return kExitOk;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::length_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::overflow_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    if (std::string_view(e.what()).starts_with("unsupported")) {
      std::cerr << e.what() << "\n";
      return kExitUnsupported;
    }
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::runtime_error& e) {
    // search bounds and window limits
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::logic_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  }
}
