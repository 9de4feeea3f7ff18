#include "trajanon/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace trajanon {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

std::pair<double, double> laea_forward(double lat_deg, double lon_deg,
                                       const ProjectionSpec& spec) {
    const double phi = lat_deg * kDegToRad;
    const double phi1 = spec.center_lat * kDegToRad;
    const double dlam = (lon_deg - spec.center_lon) * kDegToRad;

    const double sin_phi = std::sin(phi), cos_phi = std::cos(phi);
    const double sin_phi1 = std::sin(phi1), cos_phi1 = std::cos(phi1);
    const double cos_dlam = std::cos(dlam);

    const double denom = 1.0 + sin_phi1 * sin_phi + cos_phi1 * cos_phi * cos_dlam;
    if (denom < 1e-12)
        throw std::domain_error("projection singularity: input is antipodal to the center");

    const double kp = std::sqrt(2.0 / denom);
    const double x = spec.earth_radius_m * kp * cos_phi * std::sin(dlam);
    const double y = spec.earth_radius_m * kp *
                     (cos_phi1 * sin_phi - sin_phi1 * cos_phi * cos_dlam);
    return {x, y};
}

std::pair<double, double> snap_to_grid(double x, double y, double cell_side) {
    if (cell_side <= 0.0) throw std::invalid_argument("cell_side must be positive");
    return {(std::floor(x / cell_side) + 0.5) * cell_side,
            (std::floor(y / cell_side) + 0.5) * cell_side};
}

}  // namespace trajanon
