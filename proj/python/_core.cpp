#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vorcycle/errors.hpp"
#include "vorcycle/io.hpp"

namespace py = pybind11;
using namespace vorcycle;

namespace {

VoronoiComplex complex_for(std::size_t n, const std::string& group, std::uint64_t seed) {
  return build_complex(enumerate_perfect_forms(n, EnumerationOptions{seed}), parse_group_kind(group));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Voronoi complex engine";

  auto base = py::register_exception<Error>(m, "VorcycleError", PyExc_RuntimeError);
  py::register_exception<WrongGroupParity>(m, "WrongGroupParity", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CacheCorruption>(m, "CacheCorruption", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());

  m.def("graph_json", [](std::size_t n, std::uint64_t seed) { return to_json(enumerate_perfect_forms(n, EnumerationOptions{seed})).dump(); },
        py::arg("n"), py::arg("seed_perm") = 0);
  m.def("class_count",
        [](std::size_t n, const std::string& group) {
          return class_count(enumerate_perfect_forms(n), parse_group_kind(group));
        },
        py::arg("n"), py::arg("group"));
  m.def("complex_json",
        [](std::size_t n, const std::string& group, std::uint64_t seed) {
          return to_json(complex_for(n, group, seed)).dump();
        },
        py::arg("n"), py::arg("group"), py::arg("seed_perm") = 0);
  m.def("verify_json",
        [](std::size_t n, const std::string& group, std::uint64_t seed) {
          return to_json(verify(complex_for(n, group, seed))).dump();
        },
        py::arg("n"), py::arg("group"), py::arg("seed_perm") = 0);
  m.def("verify_top_cycle_json",
        [](std::size_t n, const std::string& group) { return to_json(verify_top_cycle(complex_for(n, group, 0))).dump(); },
        py::arg("n"), py::arg("group"));
  m.def("dd_sanity", [](std::size_t n, const std::string& group) { return dd_sanity(complex_for(n, group, 0)); },
        py::arg("n"), py::arg("group"));
  m.def("sector_fan_json", [](std::size_t k) { return to_json(sector_fan(k)).dump(); }, py::arg("k"));
  m.def("voronoi_instance_json",
        [](std::size_t n, const std::string& group) { return to_json(from_voronoi(complex_for(n, group, 0))).dump(); },
        py::arg("n"), py::arg("group"));
  m.def("check_tess_json",
        [](const std::string& text) { return to_json(check_general_theorem(tess_from_json(parse_text(text)))).dump(); },
        py::arg("instance"));
}
