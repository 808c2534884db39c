#include "steinhaus/json_io.hpp"

#include <json.hpp>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

using ordered_json = nlohmann::ordered_json;

long coeff_to_long(const Integer& m) {
  if (!m.fits_slong_p()) {
    throw Error("coefficient too large for the JSON form: " + to_string(m));
  }
  return m.get_si();
}

ordered_json element_json(const GroupElement& element) {
  ordered_json coeffs = ordered_json::object();
  for (const auto& [index, m] : element.coeffs()) {
    coeffs[std::to_string(index)] = coeff_to_long(m);
  }
  return ordered_json{{"coeffs", std::move(coeffs)}};
}

GroupElement element_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object()) {
    throw ParseError("group element must be {\"coeffs\": {...}}", 0);
  }
  GroupElement g;
  for (const auto& [key, value] : j["coeffs"].items()) {
    if (!value.is_number_integer()) {
      throw ParseError("coefficient must be an integer", 0);
    }
    if (key.empty() ||
        key.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("basis index key must be a nonnegative integer", 0);
    }
    g.set_coeff(static_cast<unsigned>(std::stoul(key)),
                Integer(value.get<long>()));
  }
  return g;
}

ordered_json point_json(const ExactPoint& point) {
  ordered_json j = element_json(point.group_part);
  j["offset"] = to_string(point.offset);
  return j;
}

ExactPoint point_from_json(const ordered_json& j) {
  ExactPoint p;
  p.group_part = element_from(j);
  if (!j.contains("offset") || !j["offset"].is_string()) {
    throw ParseError("point must carry an \"offset\" string", 0);
  }
  p.offset = parse_rational(j["offset"].get<std::string>());
  return p;
}

ordered_json interval_json(const RealInterval& interval) {
  return ordered_json{{"lo", point_json(interval.lo)},
                      {"hi", point_json(interval.hi)},
                      {"lo_closed", interval.lo_closed},
                      {"hi_closed", interval.hi_closed}};
}

RealInterval interval_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi") ||
      !j.contains("lo_closed") || !j.contains("hi_closed")) {
    throw ParseError("interval must carry lo/hi/lo_closed/hi_closed", 0);
  }
  return RealInterval{point_from_json(j["lo"]), point_from_json(j["hi"]),
                      j["lo_closed"].get<bool>(), j["hi_closed"].get<bool>()};
}

ordered_json basis_json(const BasisSpec& basis) {
  ordered_json q = ordered_json::array();
  for (const Rational& value : basis.q_sequence()) {
    q.push_back(to_string(value));
  }
  return ordered_json{{"epsilon", to_string(basis.epsilon())},
                      {"theta", "e"},
                      {"eps_prime", to_string(basis.eps_prime())},
                      {"q", std::move(q)}};
}

BasisSpec basis_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("theta") ||
      !j.contains("eps_prime") || !j.contains("q")) {
    throw ParseError("basis must carry epsilon/theta/eps_prime/q", 0);
  }
  if (j["theta"].get<std::string>() != "e") {
    throw ParseError("only theta = \"e\" is supported", 0);
  }
  std::vector<Rational> q;
  for (const auto& value : j["q"]) {
    q.push_back(parse_rational(value.get<std::string>()));
  }
  return BasisSpec::restore(parse_rational(j["epsilon"].get<std::string>()),
                            parse_rational(j["eps_prime"].get<std::string>()),
                            ThetaDescriptor{}, std::move(q));
}

ordered_json decomposition_json(const Decomposition& d) {
  ordered_json translates = ordered_json::array();
  for (const Translate& t : d.translates) {
    translates.push_back(element_json(t.offset));
  }
  ordered_json log = ordered_json::array();
  for (const auto& [translate_index, x_index] : d.coverage_log) {
    log.push_back(ordered_json::array({translate_index, x_index}));
  }
  return ordered_json{{"interval", interval_json(d.interval)},
                      {"epsilon", to_string(d.epsilon)},
                      {"basis", basis_json(d.basis)},
                      {"translates", std::move(translates)},
                      {"coverage_log", std::move(log)}};
}

Decomposition decomposition_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("interval") || !j.contains("epsilon") ||
      !j.contains("basis") || !j.contains("translates") ||
      !j.contains("coverage_log")) {
    throw ParseError(
        "decomposition must carry interval/epsilon/basis/translates/"
        "coverage_log",
        0);
  }
  Decomposition d{interval_from_json(j["interval"]),
                  parse_rational(j["epsilon"].get<std::string>()),
                  basis_from(j["basis"]),
                  {},
                  {},
                  {}};
  for (const auto& t : j["translates"]) {
    d.translates.push_back(Translate{element_from(t)});
  }
  for (const auto& entry : j["coverage_log"]) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ParseError("coverage_log entries are [translate, x] pairs", 0);
    }
    d.coverage_log.emplace_back(entry[0].get<std::size_t>(),
                                entry[1].get<std::size_t>());
  }
  return d;
}

ordered_json parse_document(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON document", 0);
  return j;
}

ordered_json matrix_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.dimension(); ++k) {
      row.push_back(to_string(m.at(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix matrix_from(const ordered_json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    std::vector<Rational> out_row;
    for (const auto& value : row) {
      out_row.push_back(parse_rational(value.get<std::string>()));
    }
    rows.push_back(std::move(out_row));
  }
  return RationalMatrix::make(std::move(rows));
}

}  // namespace

namespace {

// nlohmann throws its own exception hierarchy on type mismatches; surface
// every load failure as a ParseError.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace

std::string basis_to_json(const BasisSpec& basis) {
  return basis_json(basis).dump(2) + "\n";
}

BasisSpec basis_from_json(const std::string& text) {
  return guarded([&] { return basis_from(parse_document(text)); });
}

std::string group_element_to_json(const GroupElement& element) {
  return element_json(element).dump(2) + "\n";
}

std::string decomposition_to_json(const Decomposition& decomposition) {
  return decomposition_json(decomposition).dump(2) + "\n";
}

Decomposition decomposition_from_json(const std::string& text) {
  return guarded([&] { return decomposition_from(parse_document(text)); });
}

std::string product_to_json(const ProductDecomposition& product,
                            const std::optional<RationalMatrix>& map) {
  ordered_json axes = ordered_json::array();
  for (const Decomposition& axis : product.axes) {
    axes.push_back(decomposition_json(axis));
  }
  ordered_json j{{"dimension", product.axes.size()},
                 {"axes", std::move(axes)},
                 {"prefix", product.prefix}};
  if (map) j["matrix"] = matrix_json(*map);
  return j.dump(2) + "\n";
}

ProductDecomposition product_from_json(const std::string& text,
                                       std::optional<RationalMatrix>* map) {
  return guarded([&] {
  const ordered_json j = parse_document(text);
  if (!j.is_object() || !j.contains("axes") || !j.contains("prefix")) {
    throw ParseError("product document must carry axes and prefix", 0);
  }
  std::vector<Decomposition> axes;
  for (const auto& axis : j["axes"]) {
    axes.push_back(decomposition_from(axis));
  }
  std::vector<std::size_t> prefix =
      j["prefix"].get<std::vector<std::size_t>>();
  if (map) {
    *map = j.contains("matrix")
               ? std::optional<RationalMatrix>(matrix_from(j["matrix"]))
               : std::nullopt;
  }
  return product_decompose(std::move(axes), std::move(prefix));
  });
}

ParallelepipedSpec parallelepiped_from_json(const std::string& text) {
  return guarded([&] {
  const ordered_json j = parse_document(text);
  if (!j.is_object() || !j.contains("dimension") || !j.contains("axes")) {
    throw ParseError("spec must carry dimension and axes", 0);
  }
  ParallelepipedSpec spec;
  spec.dimension = j["dimension"].get<std::size_t>();
  for (const auto& axis : j["axes"]) {
    AxisSpec out;
    if (axis.is_string()) {
      out.interval_text = axis.get<std::string>();
    } else if (axis.is_object() && axis.contains("interval")) {
      out.interval_text = axis["interval"].get<std::string>();
      if (axis.contains("epsilon")) {
        out.epsilon = parse_rational(axis["epsilon"].get<std::string>());
      }
    } else {
      throw ParseError("axis must be an interval literal or object", 0);
    }
    spec.axes.push_back(std::move(out));
  }
  if (spec.axes.size() != spec.dimension) {
    throw ParseError("axes count does not match dimension", 0);
  }
  if (j.contains("matrix")) spec.matrix = matrix_from(j["matrix"]);
  return spec;
  });
}

}  // namespace steinhaus
