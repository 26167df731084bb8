#pragma once

#include <utility>
#include <vector>

namespace swimlab {

/// Piecewise-linear function of the axial fraction x in [0, 1].
class Profile {
 public:
  struct Knot {
    double x;
    double value;
  };

  Profile() = default;
  /// Knots must be strictly increasing in x and span exactly [0, 1].
  explicit Profile(std::vector<Knot> knots);

  double operator()(double x) const;
  const std::vector<Knot>& knots() const { return knots_; }
  double min_value() const;
  double max_value() const;

 private:
  std::vector<Knot> knots_;
};

/// Scalar body dimensions in meters. Profiles are generated from these by
/// build_geometry, so every field is a knot value of a linear taper.
struct GeometryConfig {
  double body_length = 0.350;

  // TPU spine. Thickness is the bending (Y) direction.
  double spine_thickness = 0.007;
  double spine_tip_thickness = 0.001;
  double spine_width = 0.070;
  double spine_peduncle_width = 0.026;
  double spine_tip_width = 0.100;

  // Silicone body, elliptical section. Width is the major (Z) axis.
  double silicone_head_width = 0.090;
  double silicone_peduncle_width = 0.040;
  double silicone_tail_width = 0.120;
  double silicone_head_thickness = 0.060;
  double silicone_tail_thickness = 0.005;

  double peduncle_fraction = 0.85;
  double caudal_fin_start_fraction = 0.64;
  double gauge_offset_z = 0.0035;
};

struct BodyGeometry {
  double body_length = 0.0;
  Profile spine_width;
  Profile spine_thickness;
  Profile silicone_width;
  Profile silicone_thickness;
  double peduncle_fraction = 0.0;
  double caudal_fin_start_fraction = 0.0;
  double gauge_offset_z = 0.0;
};

struct MaterialSpec {
  double spine_modulus = 1.944757985e8;  // Pa, calibrated effective modulus (see calibrate)
  double spine_density = 1200.0;    // kg/m^3
  double silicone_density = 910.0;  // kg/m^3
  double fluid_density = 1000.0;    // kg/m^3
  double added_mass_coefficient = 1.0;
  double structural_damping_ratio = 0.15;
  /// EI multiplier over the actuated span [0, caudal_fin_start_fraction].
  double actuated_stiffness_factor = 2.400080486;
};

GeometryConfig default_geometry_config();
MaterialSpec default_material();

/// Throws ValidationError naming the offending field.
BodyGeometry build_geometry(const GeometryConfig& config);
void validate(const MaterialSpec& material);

/// Spine bending stiffness E w t^3 / 12 at axial fraction x, N m^2.
double section_stiffness(const BodyGeometry& g, const MaterialSpec& m, double x);

/// section_stiffness including the actuated-span stiffening used by the beam model.
double effective_stiffness(const BodyGeometry& g, const MaterialSpec& m, double x);

/// Structural mass per unit length (spine + silicone), kg/m.
double structural_mass_per_length(const BodyGeometry& g, const MaterialSpec& m, double x);

/// Transverse added mass per unit length, Ca rho pi (width/2)^2, kg/m.
double added_mass_per_length(const BodyGeometry& g, const MaterialSpec& m, double x);

struct HydroAreas {
  double wetted_area = 0.0;         // m^2
  double cross_section_area = 0.0;  // m^2
};

HydroAreas hydro_areas(const BodyGeometry& g);

/// Ramanujan's second approximation to the perimeter of an ellipse.
double ellipse_perimeter(double semi_a, double semi_b);

}  // namespace swimlab
