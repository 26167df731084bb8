#include "swimlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "swimlab/error.hpp"

namespace swimlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::io: return "io";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Profile::Profile(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw ValidationError("profile needs at least two knots");
  if (knots_.front().x != 0.0 || knots_.back().x != 1.0)
    throw ValidationError("profile knots must span [0, 1]");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x))
      throw ValidationError("profile knots must be strictly increasing");
  }
}

double Profile::operator()(double x) const {
  if (knots_.empty()) return 0.0;
  if (x <= knots_.front().x) return knots_.front().value;
  if (x >= knots_.back().x) return knots_.back().value;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  auto lo = hi - 1;
  double s = (x - lo->x) / (hi->x - lo->x);
  return lo->value + s * (hi->value - lo->value);
}

double Profile::min_value() const {
  return std::min_element(knots_.begin(), knots_.end(),
                          [](const Knot& a, const Knot& b) { return a.value < b.value; })
      ->value;
}

double Profile::max_value() const {
  return std::max_element(knots_.begin(), knots_.end(),
                          [](const Knot& a, const Knot& b) { return a.value < b.value; })
      ->value;
}

GeometryConfig default_geometry_config() { return {}; }
MaterialSpec default_material() { return {}; }

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string("geometry.") + field + " must be positive, got " +
                          std::to_string(v));
}

void require_fraction(double v, const char* field) {
  if (!(v > 0.0 && v < 1.0))
    throw ValidationError(std::string("geometry.") + field + " must lie in (0, 1), got " +
                          std::to_string(v));
}

}  // namespace

BodyGeometry build_geometry(const GeometryConfig& c) {
  require_positive(c.body_length, "body_length");
  require_positive(c.spine_thickness, "spine_thickness");
  require_positive(c.spine_tip_thickness, "spine_tip_thickness");
  require_positive(c.spine_width, "spine_width");
  require_positive(c.spine_peduncle_width, "spine_peduncle_width");
  require_positive(c.spine_tip_width, "spine_tip_width");
  require_positive(c.silicone_head_width, "silicone_head_width");
  require_positive(c.silicone_peduncle_width, "silicone_peduncle_width");
  require_positive(c.silicone_tail_width, "silicone_tail_width");
  require_positive(c.silicone_head_thickness, "silicone_head_thickness");
  require_positive(c.silicone_tail_thickness, "silicone_tail_thickness");
  require_positive(c.gauge_offset_z, "gauge_offset_z");
  require_fraction(c.peduncle_fraction, "peduncle_fraction");
  require_fraction(c.caudal_fin_start_fraction, "caudal_fin_start_fraction");
  if (!(c.caudal_fin_start_fraction < c.peduncle_fraction))
    throw ValidationError(
        "geometry.caudal_fin_start_fraction must be less than geometry.peduncle_fraction");

  const double fin = c.caudal_fin_start_fraction;
  const double ped = c.peduncle_fraction;

  BodyGeometry g;
  g.body_length = c.body_length;
  g.spine_thickness = Profile({{0.0, c.spine_thickness},
                               {fin, c.spine_thickness},
                               {1.0, c.spine_tip_thickness}});
  g.spine_width = Profile({{0.0, c.spine_width},
                           {fin, c.spine_width},
                           {ped, c.spine_peduncle_width},
                           {1.0, c.spine_tip_width}});
  g.silicone_width = Profile({{0.0, c.silicone_head_width},
                              {ped, c.silicone_peduncle_width},
                              {1.0, c.silicone_tail_width}});
  g.silicone_thickness =
      Profile({{0.0, c.silicone_head_thickness}, {1.0, c.silicone_tail_thickness}});
  g.peduncle_fraction = ped;
  g.caudal_fin_start_fraction = fin;
  g.gauge_offset_z = c.gauge_offset_z;
  return g;
}

void validate(const MaterialSpec& m) {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("material.") + field + " must be positive, got " +
                            std::to_string(v));
  };
  positive(m.spine_modulus, "spine_modulus");
  positive(m.spine_density, "spine_density");
  positive(m.silicone_density, "silicone_density");
  positive(m.fluid_density, "fluid_density");
  positive(m.actuated_stiffness_factor, "actuated_stiffness_factor");
  if (!(m.added_mass_coefficient >= 0.0))
    throw ValidationError("material.added_mass_coefficient must be non-negative");
  if (!(m.structural_damping_ratio > 0.0 && m.structural_damping_ratio < 1.0))
    throw ValidationError("material.structural_damping_ratio must lie in (0, 1)");
}

double section_stiffness(const BodyGeometry& g, const MaterialSpec& m, double x) {
  const double w = g.spine_width(x);
  const double t = g.spine_thickness(x);
  return m.spine_modulus * w * t * t * t / 12.0;
}

double effective_stiffness(const BodyGeometry& g, const MaterialSpec& m, double x) {
  const double ei = section_stiffness(g, m, x);
  return x < g.caudal_fin_start_fraction ? ei * m.actuated_stiffness_factor : ei;
}

double structural_mass_per_length(const BodyGeometry& g, const MaterialSpec& m, double x) {
  const double spine_area = g.spine_width(x) * g.spine_thickness(x);
  const double ellipse =
      std::numbers::pi * 0.25 * g.silicone_width(x) * g.silicone_thickness(x);
  const double silicone_area = std::max(0.0, ellipse - spine_area);
  return m.spine_density * spine_area + m.silicone_density * silicone_area;
}

double added_mass_per_length(const BodyGeometry& g, const MaterialSpec& m, double x) {
  const double half = 0.5 * g.silicone_width(x);
  return m.added_mass_coefficient * m.fluid_density * std::numbers::pi * half * half;
}

double ellipse_perimeter(double a, double b) {
  if (a + b <= 0.0) return 0.0;
  const double h = (a - b) * (a - b) / ((a + b) * (a + b));
  return std::numbers::pi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
}

HydroAreas hydro_areas(const BodyGeometry& g) {
  // Composite Simpson over the axial fraction, plus the exact knot values for
  // the cross-section maximum (the section area is piecewise quadratic).
  constexpr int kIntervals = 4000;
  auto perimeter = [&](double x) {
    return ellipse_perimeter(0.5 * g.silicone_width(x), 0.5 * g.silicone_thickness(x));
  };
  auto section = [&](double x) {
    return std::numbers::pi * 0.25 * g.silicone_width(x) * g.silicone_thickness(x);
  };

  double sum = perimeter(0.0) + perimeter(1.0);
  double max_section = std::max(section(0.0), section(1.0));
  const double h = 1.0 / kIntervals;
  for (int i = 1; i < kIntervals; ++i) {
    const double x = i * h;
    sum += (i % 2 == 1 ? 4.0 : 2.0) * perimeter(x);
    max_section = std::max(max_section, section(x));
  }
  for (const auto& k : g.silicone_width.knots()) max_section = std::max(max_section, section(k.x));

  HydroAreas out;
  out.wetted_area = sum * h / 3.0 * g.body_length;
  out.cross_section_area = max_section;
  return out;
}

}  // namespace swimlab
