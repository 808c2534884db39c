#include "steinhaus/report.hpp"

#include <array>
#include <sstream>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#4363d8", "#e6194b", "#3cb44b", "#f58231",
    "#911eb4", "#4699c9", "#9a6324", "#808000"};

Rational point_value(const ExactPoint& p, const BasisSpec& basis) {
  return eval_point(p, basis, 200).midpoint();
}

Rational element_value(const GroupElement& g, const BasisSpec& basis) {
  return point_value(point_from(g), basis);
}

std::string coeffs_field(const GroupElement& g) {
  std::string out;
  for (const auto& [index, m] : g.coeffs()) {
    if (!out.empty()) out += ';';
    out += std::to_string(index) + ":" + to_string(m);
  }
  return out;
}

// Pixel coordinate with two decimals, computed in exact arithmetic.
std::string px(const Rational& value) { return decimal_string(value, 2); }

}  // namespace

std::string decomposition_to_csv(const Decomposition& decomposition) {
  BasisSpec basis = decomposition.basis;
  std::ostringstream out;
  out << "translate_index,covered_x_index,offset_coeffs,"
         "value_approx_50digits\n";
  for (std::size_t i = 0; i < decomposition.translates.size(); ++i) {
    std::size_t covered = 0;
    for (const auto& [translate_index, x_index] : decomposition.coverage_log) {
      if (translate_index == i) {
        covered = x_index;
        break;
      }
    }
    const GroupElement& offset = decomposition.translates[i].offset;
    out << i << ',' << covered << ',' << coeffs_field(offset) << ','
        << decimal_string(element_value(offset, basis), 50) << '\n';
  }
  return out.str();
}

std::string decomposition_to_svg(const Decomposition& decomposition,
                                 std::size_t dots_per_translate) {
  BasisSpec basis = decomposition.basis;
  basis.extend(dots_per_translate);
  const Rational lo = point_value(decomposition.interval.lo, basis);
  const Rational hi = point_value(decomposition.interval.hi, basis);
  const Rational span = hi - lo;

  const long width = 840;
  const long margin = 40;
  const long lane_height = 14;
  const std::size_t lanes = decomposition.translates.size();
  const long height = margin * 2 + lane_height * static_cast<long>(lanes);
  const auto x_of = [&](const Rational& v) -> Rational {
    return Rational(margin) + (v - lo) / span * Rational(width - 2 * margin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin - 16 << "\" x2=\""
      << width - margin << "\" y2=\"" << margin - 16
      << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << margin << "\" y=\"" << margin - 22
      << "\" font-size=\"10\" font-family=\"monospace\">"
      << decimal_string(lo, 6) << "</text>\n";
  svg << "<text x=\"" << width - margin << "\" y=\"" << margin - 22
      << "\" font-size=\"10\" font-family=\"monospace\" text-anchor=\"end\">"
      << decimal_string(hi, 6) << "</text>\n";

  for (std::size_t i = 0; i < lanes; ++i) {
    const long y = margin + lane_height * static_cast<long>(i) +
                   lane_height / 2;
    svg << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\""
        << width - margin << "\" y2=\"" << y
        << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"4\" y=\"" << y + 3
        << "\" font-size=\"9\" font-family=\"monospace\">a" << i
        << "</text>\n";
    const char* color = kPalette[i % kPalette.size()];
    for (std::size_t n = 0; n <= dots_per_translate; ++n) {
      const GroupElement point = decomposition.translates[i].offset +
                                 GroupElement::unit(static_cast<unsigned>(n));
      const Rational v = element_value(point, basis);
      svg << "<circle cx=\"" << px(x_of(v)) << "\" cy=\"" << y
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string product_to_svg(const ProductDecomposition& product,
                           std::size_t grid_per_axis,
                           const std::optional<RationalMatrix>& map) {
  if (product.axes.size() != 2) {
    throw DimensionMismatch("the 2-D plot needs exactly two axes");
  }
  std::vector<BasisSpec> bases{product.axes[0].basis, product.axes[1].basis};
  std::vector<std::vector<GroupElement>> grid(2);
  std::vector<std::vector<Rational>> values(2);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    CEnumeration enumeration(product.axes[axis].interval, bases[axis]);
    for (std::size_t i = 0; i < grid_per_axis; ++i) {
      grid[axis].push_back(enumeration.at(i));
      values[axis].push_back(element_value(grid[axis][i], bases[axis]));
    }
  }

  // Mapped coordinates and their bounding box.
  std::vector<std::array<Rational, 2>> coords;
  std::vector<std::size_t> cover_index;
  Rational min_x, max_x, min_y, max_y;
  bool first = true;
  for (std::size_t ix = 0; ix < grid_per_axis; ++ix) {
    for (std::size_t iy = 0; iy < grid_per_axis; ++iy) {
      std::vector<Rational> v{values[0][ix], values[1][iy]};
      if (map) v = map->apply(v);
      const PointND point{{grid[0][ix], grid[1][iy]}};
      std::size_t cover = product.translates.size();
      for (std::size_t t = 0; t < product.translates.size(); ++t) {
        if (product_translate_contains(product.translates[t], point)) {
          cover = t;
          break;
        }
      }
      coords.push_back({v[0], v[1]});
      cover_index.push_back(cover);
      if (first || v[0] < min_x) min_x = v[0];
      if (first || v[0] > max_x) max_x = v[0];
      if (first || v[1] < min_y) min_y = v[1];
      if (first || v[1] > max_y) max_y = v[1];
      first = false;
    }
  }
  Rational span_x = max_x - min_x;
  Rational span_y = max_y - min_y;
  if (span_x == 0) span_x = 1;
  if (span_y == 0) span_y = 1;

  const long size = 720;
  const long margin = 40;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
      << "\">\n";
  svg << "<rect width=\"" << size << "\" height=\"" << size
      << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Rational cx = Rational(margin) + (coords[i][0] - min_x) / span_x *
                                               Rational(size - 2 * margin);
    const Rational cy = Rational(size - margin) -
                        (coords[i][1] - min_y) / span_y *
                            Rational(size - 2 * margin);
    const char* color = cover_index[i] < product.translates.size()
                            ? kPalette[cover_index[i] % kPalette.size()]
                            : "#000000";
    svg << "<rect x=\"" << px(cx - 3) << "\" y=\"" << px(cy - 3)
        << "\" width=\"6\" height=\"6\" fill=\"" << color << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace steinhaus
