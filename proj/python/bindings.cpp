#include <optional>
#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "index3d/cli.hpp"
#include "index3d/errors.hpp"
#include "index3d/expr.hpp"
#include "index3d/fixtures.hpp"
#include "index3d/indexer.hpp"
#include "index3d/pachner.hpp"
#include "index3d/tetindex.hpp"

namespace py = pybind11;
using namespace index3d;

namespace {

py::int_ to_python(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class from_python(const py::int_& v) { return mpz_class(py::str(v).cast<std::string>()); }

SummationOptions options(std::int64_t order, std::int64_t shell_window, std::int64_t max_radius, unsigned threads) {
  SummationOptions o;
  o.order = HalfExp(order);
  o.shell_window = shell_window;
  o.max_radius = max_radius;
  o.threads = threads;
  return o;
}

py::dict result_dict(const IndexResult& r) {
  py::dict d;
  d["series"] = r.series;
  d["radius"] = r.radius;
  d["contributing"] = r.contributing;
  d["termination"] = r.termination;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact 3d-index computations for ideally triangulated cusped 3-manifolds";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() {
    return py::object(py::reinterpret_steal<py::object>(
        PyErr_NewException("index3d._core.Index3dError", PyExc_RuntimeError, nullptr)));
  });
  m.attr("Index3dError") = error_type.get_stored();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("kind") = std::string(e.name());
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  py::class_<QSeries>(m, "Series")
      .def_static("parse", &QSeries::parse, py::arg("text"))
      .def_static("from_coefficients",
                  [](std::int64_t min_exp, const std::vector<py::int_>& coeffs, std::optional<std::int64_t> order) {
                    std::vector<mpz_class> c;
                    for (const auto& x : coeffs) c.push_back(from_python(x));
                    return QSeries::from_coefficients(HalfExp(min_exp), std::move(c),
                                                      order ? HalfExp(*order) : HalfExp::exact());
                  },
                  py::arg("min_exp"), py::arg("coefficients"), py::arg("order") = py::none())
      .def_property_readonly("min_exp", [](const QSeries& s) -> std::optional<std::int64_t> {
        if (s.is_zero()) return std::nullopt;
        return s.min_exp().value;
      })
      .def_property_readonly("order", [](const QSeries& s) -> std::optional<std::int64_t> {
        if (s.is_exact()) return std::nullopt;
        return s.order().value;
      })
      .def_property_readonly("coefficients", [](const QSeries& s) {
        py::list out;
        for (const auto& c : s.coefficients()) out.append(to_python(c));
        return out;
      })
      .def("coefficient", [](const QSeries& s, std::int64_t e) { return to_python(s.coefficient(HalfExp(e))); },
           py::arg("half_exponent"))
      .def("truncated", [](const QSeries& s, std::int64_t o) { return s.truncated(HalfExp(o)); }, py::arg("order"))
      .def("shifted", [](const QSeries& s, std::int64_t by) { return s.shifted(HalfExp(by)); }, py::arg("by"))
      .def("evaluate", &QSeries::evaluate, py::arg("q"))
      .def("pretty", &QSeries::pretty)
      .def("is_zero", &QSeries::is_zero)
      .def("__str__", &QSeries::to_string)
      .def("__repr__", [](const QSeries& s) { return "Series('" + s.to_string() + "')"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self);

  py::class_<Triangulation>(m, "Triangulation")
      .def_readonly("name", &Triangulation::name)
      .def_readonly("num_tetrahedra", &Triangulation::num_tetrahedra)
      .def_readonly("num_cusps", &Triangulation::num_cusps)
      .def_readonly("independent_edges", &Triangulation::independent_edges)
      .def_property_readonly("edge_rows", [](const Triangulation& t) {
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& r : t.edge_rows) rows.push_back(r.entries());
        return rows;
      })
      .def("to_json", &triangulation_to_json);

  m.def("load_triangulation", &load_and_validate, py::arg("path"), "Read and validate a triangulation file.");
  m.def("figure_eight", &fixtures::figure_eight, "The bundled two-tetrahedron figure-eight triangulation.");
  m.def(
      "validation_report",
      [](const std::string& path) {
        ValidationReport rep = validate_report(read_triangulation(path));
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : rep.checks) out.emplace_back(c.name, c.passed, c.detail);
        return out;
      },
      py::arg("path"));

  m.def("tet_index", [](std::int64_t me, std::int64_t e, std::int64_t order) {
        return tet_index({me, e}, HalfExp(order));
      },
      py::arg("m"), py::arg("e"), py::arg("order"));
  m.def("tet_index_numeric", [](std::int64_t me, std::int64_t e, double q, double tol) {
        return tet_index_numeric({me, e}, q, tol);
      },
      py::arg("m"), py::arg("e"), py::arg("q"), py::arg("tol") = 1e-14);
  m.def("j_index", [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t order) {
        return j_index({a, b, c}, HalfExp(order));
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("order"));
  m.def("j_degree", [](std::int64_t a, std::int64_t b, std::int64_t c) { return j_degree({a, b, c}).value; },
        py::arg("a"), py::arg("b"), py::arg("c"));

  m.def(
      "index",
      [](const Triangulation& t, const std::string& element, std::int64_t order, std::int64_t shell_window,
         std::int64_t max_radius, unsigned threads) {
        TorusElement u = parse_element(element, t.num_tetrahedra);
        return result_dict(index_element(t, u, options(order, shell_window, max_radius, threads)));
      },
      py::arg("triangulation"), py::arg("element") = "1", py::arg("order") = 20, py::arg("shell_window") = 3,
      py::arg("max_radius") = 200, py::arg("threads") = 1);
  m.def(
      "mirror_index",
      [](const Triangulation& t, const std::string& element, std::int64_t order) {
        TorusElement u = iota_element(parse_element(element, t.num_tetrahedra));
        return result_dict(index_element(t, u, options(order, 3, 200, 1)));
      },
      py::arg("triangulation"), py::arg("element"), py::arg("order") = 20);
  m.def(
      "dgg",
      [](const Triangulation& t, std::int64_t twice_m, std::int64_t e, std::int64_t order, std::size_t cusp) {
        return result_dict(dgg_index(t, cusp, twice_m, e, options(order, 3, 200, 1)));
      },
      py::arg("triangulation"), py::arg("twice_m"), py::arg("e"), py::arg("order") = 20, py::arg("cusp") = 0);
  m.def(
      "check_relations",
      [](const Triangulation& t, const std::string& monomial, std::int64_t order) {
        TorusElement u = parse_element(monomial, t.num_tetrahedra);
        if (u.terms().size() != 1) throw Error(ErrorKind::InvalidArgument, "expected a single monomial");
        RelationReport rep = check_quotient_relations(t, u.terms().begin()->first, options(order, 3, 200, 1));
        std::vector<std::tuple<std::string, std::size_t, bool>> out;
        for (const auto& c : rep.checks) out.emplace_back(c.relation, c.index, c.passed);
        return out;
      },
      py::arg("triangulation"), py::arg("monomial") = "1", py::arg("order") = 12);
  m.def(
      "pachner_check",
      [](const std::string& move_path, const std::vector<std::string>& elements, std::int64_t order) {
        MoveDescriptor desc = read_move_descriptor(move_path);
        Triangulation source = load_and_validate(desc.source_path);
        Triangulation target = load_and_validate(desc.target_path);
        MoveMap map = build_move_map(desc, source.num_tetrahedra, target.num_tetrahedra);
        std::vector<TorusElement> samples{TorusElement::unit(source.num_tetrahedra)};
        for (const auto& text : elements) samples.push_back(parse_element(text, source.num_tetrahedra));
        CompatibilityReport rep = verify_index_compatibility(source, target, map, samples, options(order, 3, 200, 1));
        std::vector<std::tuple<std::string, bool>> out;
        for (const auto& s : rep.samples) out.emplace_back(s.label, s.passed);
        return out;
      },
      py::arg("move"), py::arg("elements") = std::vector<std::string>{}, py::arg("order") = 10);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int status = run_cli(args, out, err);
        return std::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process; returns (status, stdout, stderr).");

  m.attr("KB_ELEMENT") = std::string(fixtures::kKbElement);
  m.attr("KB2_ELEMENT") = std::string(fixtures::kKb2Element);
}
