#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afrel/relations.hpp"
#include "afrel/verify.hpp"

namespace py = pybind11;
using namespace afrel;

namespace {

SignConvention parse_sign(const std::string& s) {
  if (s == "standard") return SignConvention::Standard;
  if (s == "flipped") return SignConvention::Flipped;
  throw ConfigError("sign convention must be standard or flipped");
}

std::vector<long long> to_list(const GradedDims& d) { return d.per_degree; }

}  // namespace

PYBIND11_MODULE(_afrel, m) {
  m.doc() = "Exact relations among annihilating fields of affine vacuum modules";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("claims_json", &claims_json, "Claim registry as a JSON array");
  m.def(
      "verify_json",
      [](const std::string& claim, const std::string& type, int level, int degree, const std::string& sign,
         bool with_timing) {
        const CartanType t = CartanType::parse(type);
        check_claim_config(find_claim(claim), t, level, degree);
        py::gil_scoped_release release;
        return verify(claim, t, level, degree, parse_sign(sign)).to_json(with_timing);
      },
      py::arg("claim"), py::arg("type"), py::arg("level"), py::arg("degree"), py::arg("sign") = "standard",
      py::arg("with_timing") = true);

  m.def(
      "pbw_dimensions",
      [](const std::string& type, int max_degree) {
        VacuumModule v(std::make_shared<const LieAlgebra>(CartanType::parse(type)));
        std::vector<size_t> out;
        for (int d = 0; d <= max_degree; ++d) out.push_back(v.slice(d).size());
        return out;
      },
      py::arg("type"), py::arg("max_degree"));

  m.def(
      "dual_coxeter",
      [](const std::string& type) { return RootSystem(CartanType::parse(type)).dual_coxeter(); }, py::arg("type"));

  py::class_<RelationEngine>(m, "Engine")
      .def(py::init([](const std::string& type, int level, int cutoff, const std::string& sign) {
             return std::make_unique<RelationEngine>(CartanType::parse(type), level, cutoff, parse_sign(sign));
           }),
           py::arg("type"), py::arg("level"), py::arg("cutoff"), py::arg("sign") = "standard")
      .def_property_readonly("level", &RelationEngine::level)
      .def_property_readonly("cutoff", &RelationEngine::cutoff)
      .def_property_readonly("height", &RelationEngine::height)
      .def_property_readonly("dim_r", &RelationEngine::dim_r)
      .def(
          "kernel_dimensions",
          [](RelationEngine& e, bool base) { return to_list(e.kernel_psi_dims(base ? 0 : e.height())); },
          py::arg("base") = false, "Per-degree dimensions of ker Psi (base: height 0 only)")
      .def(
          "phi_kernel_dimensions", [](RelationEngine& e) { return to_list(e.kernel_phi_dims()); },
          "Per-degree dimensions of ker Phi")
      .def(
          "obvious_closure_dimensions",
          [](RelationEngine& e) { return to_list(e.closure_dims({e.q_obvious()}, OperatorSet::AllWithL)); },
          "Per-degree dimensions of the submodule generated by the lowest relation")
      .def(
          "sugawara_relations_vanish",
          [](RelationEngine& e) {
            for (uint32_t j = 0; j < e.dim_r(); ++j) {
              if (!e.psi(e.sugawara_q(LinComb<uint32_t>::single(j))).empty()) return false;
            }
            return true;
          },
          "True when Psi kills q_r for every basis element r")
      .def("obvious_relation", [](RelationEngine& e) { return e.to_string(e.q_obvious()); })
      .def("singular_dimension", &RelationEngine::singular_dimension, py::arg("degree"));
}
