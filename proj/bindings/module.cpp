#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "steinhaus/engine.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/parse.hpp"
#include "steinhaus/product.hpp"
#include "steinhaus/report.hpp"

namespace py = pybind11;
using namespace steinhaus;

namespace {

py::int_ to_py_int(const Integer& value) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(value.get_str().c_str(), nullptr, 10));
}

Integer from_py_int(const py::int_& value) {
  return Integer(value.attr("__str__")().cast<std::string>());
}

py::dict coeffs_dict(const GroupElement& g) {
  py::dict out;
  for (const auto& [index, m] : g.coeffs()) {
    out[py::int_(index)] = to_py_int(m);
  }
  return out;
}

GroupElement element_from_dict(const py::dict& d) {
  GroupElement g;
  for (const auto& item : d) {
    g.set_coeff(item.first.cast<unsigned>(),
                from_py_int(py::reinterpret_borrow<py::int_>(item.second)));
  }
  return g;
}

int cmp_to_int(std::strong_ordering c) {
  if (c == std::strong_ordering::less) return -1;
  if (c == std::strong_ordering::greater) return 1;
  return 0;
}

RationalMatrix matrix_from_rows(
    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> parsed;
  for (const auto& row : rows) {
    std::vector<Rational> out_row;
    for (const auto& entry : row) out_row.push_back(parse_rational(entry));
    parsed.push_back(std::move(out_row));
  }
  return RationalMatrix::make(std::move(parsed));
}

std::pair<std::string, std::string> enclosure_pair(const RealEnclosure& e) {
  return {to_string(e.lo), to_string(e.hi)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact interval decompositions into congruent translates";

  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted",
                                             base.ptr());
  py::register_exception<UnknownBasisIndex>(m, "UnknownBasisIndex",
                                            base.ptr());
  py::register_exception<InvalidEpsilon>(m, "InvalidEpsilon", base.ptr());
  py::register_exception<IntervalTooShort>(m, "IntervalTooShort", base.ptr());
  py::register_exception<HeightCapExceeded>(m, "HeightCapExceeded",
                                            base.ptr());
  py::register_exception<CandidateBoundExceeded>(m, "CandidateBoundExceeded",
                                                 base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation",
                                             base.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch",
                                            base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<GroupElement>(m, "GroupElement")
      .def(py::init([](const py::dict& coeffs) {
             return element_from_dict(coeffs);
           }),
           py::arg("coeffs") = py::dict())
      .def_static("unit", &GroupElement::unit, py::arg("n"))
      .def_property_readonly("coeffs", &coeffs_dict)
      .def("is_zero", &GroupElement::is_zero)
      .def("max_index", &GroupElement::max_index)
      .def("__add__", &GroupElement::operator+)
      .def("__sub__",
           [](const GroupElement& a, const GroupElement& b) { return a - b; })
      .def("__neg__", [](const GroupElement& a) { return -a; })
      .def("__eq__", [](const GroupElement& a,
                        const GroupElement& b) { return a == b; })
      .def("__hash__",
           [](const GroupElement& g) {
             return py::hash(py::str(group_element_to_json(g)));
           })
      .def("__repr__", [](const GroupElement& g) {
        std::string out = "GroupElement({";
        bool first = true;
        for (const auto& [index, c] : g.coeffs()) {
          if (!first) out += ", ";
          out += std::to_string(index) + ": " + to_string(c);
          first = false;
        }
        return out + "})";
      });

  py::class_<ExactPoint>(m, "ExactPoint")
      .def(py::init([](const GroupElement& g, const std::string& offset) {
             return ExactPoint{g, parse_rational(offset)};
           }),
           py::arg("group_part") = GroupElement{}, py::arg("offset") = "0")
      .def_property_readonly(
          "group_part", [](const ExactPoint& p) { return p.group_part; })
      .def_property_readonly(
          "offset", [](const ExactPoint& p) { return to_string(p.offset); });

  py::class_<RealInterval>(m, "RealInterval")
      .def_property_readonly("lo",
                             [](const RealInterval& j) { return j.lo; })
      .def_property_readonly("hi",
                             [](const RealInterval& j) { return j.hi; })
      .def_readonly("lo_closed", &RealInterval::lo_closed)
      .def_readonly("hi_closed", &RealInterval::hi_closed);

  py::class_<Translate>(m, "Translate")
      .def(py::init([](const GroupElement& offset) {
             return Translate{offset};
           }),
           py::arg("offset"))
      .def_property_readonly(
          "offset", [](const Translate& t) { return t.offset; })
      .def("__eq__", [](const Translate& a, const Translate& b) {
        return a == b;
      });

  py::class_<BasisSpec>(m, "BasisSpec")
      .def_property_readonly(
          "epsilon", [](const BasisSpec& b) { return to_string(b.epsilon()); })
      .def_property_readonly(
          "beta0", [](const BasisSpec& b) { return to_string(b.beta0()); })
      .def_property_readonly(
          "beta1", [](const BasisSpec& b) { return to_string(b.beta1()); })
      .def_property_readonly("eps_prime",
                             [](const BasisSpec& b) {
                               return to_string(b.eps_prime());
                             })
      .def_property("precision_cap", &BasisSpec::precision_cap,
                    &BasisSpec::set_precision_cap)
      .def_property_readonly("committed", &BasisSpec::committed)
      .def("q", [](const BasisSpec& b,
                   std::size_t n) { return to_string(b.q(n)); })
      .def("extend", [](BasisSpec& b, std::size_t n) { extend_basis(b, n); })
      .def("verify",
           [](const BasisSpec& b, std::size_t n_max) {
             const BasisReport r = verify_basis_properties(b, n_max);
             return std::make_pair(r.pass, r.failure);
           })
      .def("to_json", &basis_to_json)
      .def_static("from_json", &basis_from_json);

  m.def("new_basis",
        [](const std::string& epsilon, unsigned precision_cap) {
          return new_basis(parse_rational(epsilon), ThetaDescriptor{},
                           precision_cap);
        },
        py::arg("epsilon"), py::arg("precision_cap") = kDefaultPrecisionCap);

  m.def("theta_enclosure",
        [](unsigned bits) {
          return enclosure_pair(theta_enclosure(ThetaDescriptor{}, bits));
        },
        py::arg("precision_bits"));
  m.def("power_enclosure",
        [](unsigned n, unsigned bits) {
          return enclosure_pair(power_enclosure(ThetaDescriptor{}, n, bits));
        },
        py::arg("n"), py::arg("precision_bits"));
  m.def("eval_enclosure",
        [](const py::dict& coeffs, const BasisSpec& basis, unsigned bits) {
          return enclosure_pair(
              eval_point(point_from(element_from_dict(coeffs)), basis, bits));
        },
        py::arg("coeffs"), py::arg("basis"), py::arg("precision_bits"));

  m.def("cmp_exact",
        [](const ExactPoint& x, const ExactPoint& y, const BasisSpec& basis) {
          return cmp_to_int(cmp_exact(x, y, basis));
        },
        py::arg("x"), py::arg("y"), py::arg("basis"));
  m.def("cmp_elements",
        [](const GroupElement& x, const GroupElement& y,
           const BasisSpec& basis) {
          return cmp_to_int(cmp_exact(x, y, basis));
        },
        py::arg("x"), py::arg("y"), py::arg("basis"));

  m.def("parse_interval",
        [](const std::string& text, BasisSpec& basis) {
          return parse_interval(text, basis);
        },
        py::arg("text"), py::arg("basis"));
  m.def("point_in_interval",
        [](const GroupElement& x, const RealInterval& interval,
           const BasisSpec& basis) {
          return point_in_interval(x, interval, basis);
        },
        py::arg("x"), py::arg("interval"), py::arg("basis"));
  m.def("translate_contains", &translate_contains, py::arg("translate"),
        py::arg("x"));
  m.def("translates_disjoint", &translates_disjoint, py::arg("t"),
        py::arg("u"));
  m.def("translate_in_interval", &translate_in_interval, py::arg("translate"),
        py::arg("interval"), py::arg("basis"));
  m.def("rational_in_G",
        [](const std::string& r, const BasisSpec& basis) {
          return rational_in_G(parse_rational(r), basis);
        },
        py::arg("r"), py::arg("basis"));
  m.def("find_group_element_in",
        [](const RealInterval& interval, const BasisSpec& basis,
           const py::int_& height_cap) {
          return find_group_element_in(interval, basis,
                                       from_py_int(height_cap));
        },
        py::arg("interval"), py::arg("basis"),
        py::arg("height_cap") = py::int_(py::cast(1ull << 62)));
  m.def("enumerate_C",
        [](const RealInterval& interval, BasisSpec& basis,
           std::size_t count) {
          CEnumeration enumeration = enumerate_C(interval, basis, count);
          std::vector<GroupElement> out(enumeration.emitted().begin(),
                                        enumeration.emitted().begin() + count);
          return out;
        },
        py::arg("interval"), py::arg("basis"), py::arg("count"));

  py::class_<Decomposition>(m, "Decomposition")
      .def_property_readonly(
          "interval", [](const Decomposition& d) { return d.interval; })
      .def_property_readonly(
          "epsilon", [](const Decomposition& d) { return to_string(d.epsilon); })
      .def_property_readonly("basis",
                             [](const Decomposition& d) { return d.basis; })
      .def_property_readonly("translates",
                             [](const Decomposition& d) {
                               return d.translates;
                             })
      .def_property_readonly("coverage_log",
                             [](const Decomposition& d) {
                               return d.coverage_log;
                             })
      .def_property_readonly(
          "stats",
          [](const Decomposition& d) {
            std::vector<std::tuple<std::size_t, unsigned, std::size_t>> out;
            for (const StepStats& s : d.stats) {
              out.emplace_back(s.covered_index, s.candidates_scanned,
                               s.translates_before);
            }
            return out;
          })
      .def("verify",
           [](const Decomposition& d, std::size_t points,
              std::size_t basis_prefix) {
             const VerifyReport r =
                 verify_decomposition(d, points, basis_prefix);
             return std::make_pair(r.pass, r.witness);
           },
           py::arg("points"), py::arg("basis_prefix"))
      .def("uncovered_point",
           [](Decomposition& d, std::optional<std::size_t> prefix) {
             const std::size_t k =
                 prefix.value_or(d.translates.size());
             if (k > d.translates.size()) {
               throw DimensionMismatch("prefix exceeds translate count");
             }
             return find_uncovered_point(
                 std::span<const Translate>(d.translates.data(), k),
                 d.interval, d.basis);
           },
           py::arg("prefix") = std::nullopt)
      .def("to_json", &decomposition_to_json)
      .def_static("from_json", &decomposition_from_json)
      .def("to_csv", &decomposition_to_csv)
      .def("to_svg", &decomposition_to_svg, py::arg("dots_per_translate"));

  m.def("decompose",
        [](const std::string& interval_text, const std::string& epsilon,
           unsigned steps, unsigned precision_cap) {
          const Rational eps = parse_rational(epsilon);
          BasisSpec basis = new_basis(eps, ThetaDescriptor{}, precision_cap);
          const RealInterval interval = parse_interval(interval_text, basis);
          return decompose(interval, eps, steps, basis);
        },
        py::arg("interval"), py::arg("epsilon"), py::arg("steps"),
        py::arg("precision_cap") = kDefaultPrecisionCap);
  m.def("find_covering_translate",
        [](const GroupElement& x, const std::vector<Translate>& existing,
           const RealInterval& interval, BasisSpec& basis) {
          const CoveringResult r = find_covering_translate(
              x, std::span<const Translate>(existing.data(), existing.size()),
              interval, basis);
          return std::make_pair(r.translate, r.candidates_scanned);
        },
        py::arg("x"), py::arg("existing"), py::arg("interval"),
        py::arg("basis"));

  py::class_<RationalMatrix>(m, "RationalMatrix")
      .def(py::init(&matrix_from_rows), py::arg("rows"))
      .def_property_readonly("dimension", &RationalMatrix::dimension)
      .def_property_readonly(
          "determinant",
          [](const RationalMatrix& m_) { return to_string(m_.determinant()); })
      .def("__eq__", [](const RationalMatrix& a, const RationalMatrix& b) {
        return a == b;
      });

  py::class_<TranslateND>(m, "TranslateND")
      .def_property_readonly(
          "offsets", [](const TranslateND& t) { return t.offsets; });

  py::class_<ProductDecomposition>(m, "ProductDecomposition")
      .def_property_readonly(
          "translates",
          [](const ProductDecomposition& p) { return p.translates; })
      .def_property_readonly(
          "prefix", [](const ProductDecomposition& p) { return p.prefix; })
      .def("verify",
           [](const ProductDecomposition& p, std::size_t points,
              std::size_t basis_prefix) {
             const VerifyReport r = verify_product(p, points, basis_prefix);
             return std::make_pair(r.pass, r.witness);
           },
           py::arg("points_per_axis"), py::arg("basis_prefix"))
      .def("to_json",
           [](const ProductDecomposition& p) {
             return product_to_json(p, std::nullopt);
           })
      .def("to_svg", &product_to_svg, py::arg("grid_per_axis"),
           py::arg("map") = std::nullopt);

  m.def("product_decompose", &product_decompose, py::arg("axes"),
        py::arg("prefix"));
  m.def("verify_mapped_product",
        [](const RationalMatrix& map, const ProductDecomposition& product,
           std::size_t points, std::size_t basis_prefix) {
          const VerifyReport r = verify_mapped_product(
              apply_linear_map(map, product), points, basis_prefix);
          return std::make_pair(r.pass, r.witness);
        },
        py::arg("map"), py::arg("product"), py::arg("points_per_axis"),
        py::arg("basis_prefix"));

  m.attr("__version__") = "0.1.0";
}
