// Python bindings: thin wrappers returning plain Python values.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btq/building.h"
#include "btq/bundles.h"
#include "btq/equivariant.h"
#include "btq/model.h"
#include "btq/points_p1.h"
#include "btq/tree.h"
#include "btq/verify.h"

namespace py = pybind11;
using namespace btq;

namespace {

py::dict group_dict(const FgAbGroup& g) {
  py::dict d;
  d["free_rank"] = g.free_rank;
  d["torsion"] = g.torsion;
  d["str"] = g.str();
  return d;
}

py::list groups_list(const std::vector<FgAbGroup>& gs) {
  py::list out;
  for (auto& g : gs) out.append(group_dict(g));
  return out;
}

CurveConfig curve_of(const std::string& kind, int q, const std::vector<std::string>& punctures, const std::vector<int>& a) {
  if (kind == "p1") return p1_config(q, punctures);
  if (kind == "elliptic") return elliptic_config(q, a, punctures);
  throw std::invalid_argument("curve must be 'p1' or 'elliptic'");
}

ChainComplex complex_of(const std::vector<int>& dims, const std::vector<std::vector<std::array<long long, 3>>>& boundaries) {
  ChainComplex C(dims);
  if (boundaries.size() + 1 > dims.size() && !boundaries.empty())
    throw std::invalid_argument("more boundary maps than degrees");
  for (size_t n = 0; n < boundaries.size(); ++n) {
    int deg = static_cast<int>(n) + 1;
    for (auto& [r, c, v] : boundaries[n]) {
      if (r < 0 || r >= dims[deg - 1] || c < 0 || c >= dims[deg]) throw std::invalid_argument("entry out of range");
      C.d[deg].add(static_cast<int>(r), static_cast<int>(c), v);
    }
    C.d[deg].finalize();
  }
  if (!C.is_complex()) throw std::invalid_argument("boundaries do not square to zero");
  return C;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bruhat-Tits quotients, model complexes and equivariant homology over finite fields";

  m.def(
      "homology",
      [](const std::vector<int>& dims, const std::vector<std::vector<std::array<long long, 3>>>& boundaries,
         const std::string& coeff) { return groups_list(complex_of(dims, boundaries).homology_all(Coeff::parse(coeff))); },
      py::arg("dims"), py::arg("boundaries"), py::arg("coeff") = "Z",
      "Homology of C_0 <- C_1 <- ...; boundaries[n-1] lists (row, col, value) of d_n.");

  m.def(
      "tree_ball",
      [](int q, const std::string& place, int radius) {
        Place P = parse_place(Fq::get(q), place);
        std::vector<std::string> out;
        for (auto& v : tree_ball(TreeVertex{}, P, radius)) out.push_back(v.str(P));
        return out;
      },
      py::arg("q"), py::arg("place") = "inf", py::arg("radius") = 2);

  m.def(
      "apartment_link_homology", [](int s) { return groups_list(apartment_link(s).chain_complex().homology_all()); },
      py::arg("s"));

  m.def(
      "pic",
      [](int q, const std::vector<std::string>& punctures, const std::string& curve, const std::vector<int>& a) {
        auto c = curve_of(curve, q, punctures, a);
        auto p = nagata(c);
        py::dict d;
        d["curve"] = c.str();
        d["unit_rank"] = p.unit_rank;
        d["pic"] = p.pic.str();
        d["pic0"] = p.pic0.str();
        d["degree_gcd"] = p.degree_gcd;
        d["exact"] = p.exact;
        d["kummer_size"] = kummer(p).orbits.size();
        return d;
      },
      py::arg("q"), py::arg("punctures"), py::arg("curve") = "p1", py::arg("a") = std::vector<int>{0, 0, 0, -1, 0});

  m.def(
      "quotient",
      [](int q, const std::vector<std::string>& punctures, int radius, const std::string& group) {
        GroupFlavor g = group == "sl2" ? GroupFlavor::SL2 : group == "gl2" ? GroupFlavor::GL2 : group == "pgl2" ? GroupFlavor::PGL2
                        : group == "psl2" ? GroupFlavor::PSL2
                                          : throw std::invalid_argument("unknown group " + group);
        auto Q = quotient_ball(p1_config(q, punctures), radius, g);
        py::dict d;
        d["counts"] = Q.counts();
        py::list vs;
        for (auto& v : Q.cells[0]) vs.append(py::make_tuple(v.bundle.str(), v.stab.str(), v.parabolic));
        d["vertices"] = vs;
        d["parabolic_components"] = Q.parabolic_components();
        return d;
      },
      py::arg("q"), py::arg("punctures"), py::arg("radius") = 2, py::arg("group") = "gl2");

  m.def(
      "model_homology",
      [](int q, const std::vector<std::string>& punctures, const std::string& flavor, const std::string& coeff) {
        auto g = build_cryst(nagata(p1_config(q, punctures)), parse_cryst(flavor));
        return groups_list(quotient_homology(g, min_window(g), Coeff::parse(coeff)));
      },
      py::arg("q"), py::arg("punctures"), py::arg("flavor") = "T", py::arg("coeff") = "Z");

  m.def(
      "group_homology",
      [](const std::string& group, int n, const std::string& coeff) {
        return group_dict(group_homology(FiniteGroup::parse(group), n, Coeff::parse(coeff)));
      },
      py::arg("group"), py::arg("n"), py::arg("coeff") = "Z");

  m.def(
      "points_complex_counts",
      [](int q, int N, const std::string& variant) { return build_points_complex(q, N, parse_variant(variant)).counts(); },
      py::arg("q"), py::arg("N"), py::arg("variant") = "alternating");

  m.def(
      "points_acyclic",
      [](int q, int max_degree, const std::string& variant) {
        return acyclicity_check(build_points_complex(q, std::min(q, max_degree + 1), parse_variant(variant)), max_degree)
            .acyclic;
      },
      py::arg("q"), py::arg("max_degree"), py::arg("variant") = "alternating");

  m.def(
      "rp1_low_degree", [](int q, const std::string& coeff) { return groups_list(rp1_low_degree(q, 1, Coeff::parse(coeff)).rp1); },
      py::arg("q"), py::arg("coeff") = "Z");

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, uint64_t seed) {
        auto R = run_suite(name, seed);
        py::dict d;
        d["name"] = R.name;
        d["pass"] = R.pass();
        d["seconds"] = R.seconds;
        py::list checks;
        for (auto& c : R.checks) checks.append(py::make_tuple(c.what, c.pass, c.detail));
        d["checks"] = checks;
        return d;
      },
      py::arg("name"), py::arg("seed") = 12345);

  // library errors surface as ValueError (bad input) or RuntimeError
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::length_error& e) {
      PyErr_SetString(PyExc_MemoryError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
