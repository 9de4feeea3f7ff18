#ifndef TRAJANON_PROJECTION_HPP
#define TRAJANON_PROJECTION_HPP

#include <utility>

namespace trajanon {

inline constexpr double kAuthalicRadiusM = 6371007.181;

/// Spherical Lambert azimuthal equal-area projection, centered on
/// (center_lat, center_lon). The center maps to (0,0).
struct ProjectionSpec {
    double center_lat = 0.0;  // degrees
    double center_lon = 0.0;  // degrees
    double earth_radius_m = kAuthalicRadiusM;
};

/// Forward transform, degrees in, planar meters out.
/// Throws std::domain_error at (or numerically near) the antipode of the
/// projection center, where the projection is singular.
std::pair<double, double> laea_forward(double lat_deg, double lon_deg,
                                       const ProjectionSpec& spec);

/// Center of the grid cell of side `cell_side` containing (x, y).
/// Floor convention makes boundary points deterministic; idempotent.
std::pair<double, double> snap_to_grid(double x, double y, double cell_side);

}  // namespace trajanon

#endif
