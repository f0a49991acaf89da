#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mandel/angle.hpp"
#include "mandel/surgery.hpp"

namespace mandel {

using Complex = std::complex<double>;

// Knobs for ray tracing and Newton solving.  Values are surfaced in reports.
struct SolverSettings {
    double newton_tolerance = 1e-12;
    int max_newton_steps = 64;
    double ray_start_potential = 1.3862943611198906;   // log 4: start circle radius 4
    double ray_final_potential = 1e-5;
    int steps_per_halving = 16;
    double escape_radius = 1e3;
    int max_iterations = 10000;
};

struct RayPoint {
    Complex z;
    double potential = 0.0;
};

// Traced external ray, ordered by strictly decreasing potential.  ok is
// false when Newton continuation diverged and the polyline is truncated.
struct RayPolyline {
    Angle angle;
    std::vector<RayPoint> points;
    double final_potential = 0.0;
    bool ok = true;
};

// Axis-aligned view: center plus the full width of the view in plane units;
// pixels are square, so the height extent follows from the resolution.
struct Viewport {
    Complex center{0.0, 0.0};
    double scale = 4.0;
};

inline constexpr std::uint32_t kInterior = 0xffffffffu;

struct ImageBuffer {
    int width = 0;
    int height = 0;
    Viewport viewport;
    std::uint32_t cap = 0;
    std::vector<std::uint32_t> data;   // row-major escape counts, kInterior inside

    std::uint32_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

enum class PlaneKind { mandelbrot, julia };

// First iteration n with |orbit_n| > escape_radius per pixel, kInterior when
// none occurs within cap.  param is the Julia parameter (ignored for the
// Mandelbrot plane).  Deterministic for any thread count: rows are assigned
// round-robin and every pixel is an independent computation.
ImageBuffer escape_data(PlaneKind kind, Complex param, const Viewport& viewport, int width,
                        int height, std::uint32_t cap, double escape_radius = 1e3,
                        int threads = 1);

// External parameter ray of theta from the radius-4 circle down to
// settings.ray_final_potential via potential-halving Newton continuation.
RayPolyline trace_parameter_ray(const Angle& theta, const SolverSettings& settings = {});

// Dynamic ray of theta in the z-plane of f_c.
RayPolyline trace_dynamic_ray(Complex c, const Angle& theta, const SolverSettings& settings = {});

// Newton's method on f_c^(l+p)(c) - f_c^l(c), seeded from the traced ray
// endpoint of theta, which selects the combinatorially correct root.
// Throws SolverError on divergence or on a root/seed mismatch.
Complex solve_misiurewicz(const Angle& theta, const SolverSettings& settings = {});

// Newton's method on f_c^period(0), seeded just inside the traced ray
// endpoint of a root angle of the component.  Guards reject convergence to
// a lower-period center or to a center far from the seeding ray.
Complex solve_center(int period, const Angle& seed_angle, const SolverSettings& settings = {});

// One sampled parameter of the numeric landing verification.
struct NumericSample {
    std::string label;
    Complex parameter{0.0, 0.0};
    std::array<Complex, 8> landing{};        // dynamic ray endpoints, theta order
    std::array<double, 4> pair_separation{}; // |landing_i - landing_(7-i)|
    double min_pair_distance = 0.0;          // min distance between the 4 pair midpoints
    bool colanded = false;                   // all four separations < 1e-3
    bool distinct_ok = false;                // min_pair_distance > 1e-3
    bool boundary_case = false;              // colanded but not distinct (vertex behavior)
};

struct NumericReport {
    std::vector<NumericSample> samples;
    std::vector<std::string> issues;
    bool ok = false;    // every sample colanded with distinct landing points
};

// Traces the eight dynamic rays of cfg at sampled parameters inside the edge
// (the solved centers of the two lowest-period ray pairs whose angles lie in
// the E-arcs) and checks pairwise co-landing at four distinct points.  An
// explicit samples_override (label, parameter) list replaces the solved
// samples, e.g. to probe behavior at a vertex.
NumericReport verify_config_numeric(const EdgeConfig& cfg, const SolverSettings& settings = {},
                                    const std::vector<std::pair<std::string, Complex>>&
                                        samples_override = {});

// Identification of a boundary parameter by angle data.
struct ParameterPoint {
    enum class Kind { misiurewicz, center };
    Kind kind = Kind::misiurewicz;
    int period = 0;   // centers only
    Angle angle;
};

// h^n on an angle-identified parameter: maps the identifying angle through
// homeo.map_angle and re-solves.  The angle must lie in the closed E-arcs.
Complex map_parameter_point(const SurgeryHomeo& homeo, const ParameterPoint& point, long long n,
                            const SolverSettings& settings = {});

// Binary PPM (P6) with a fixed integer palette; interior pixels are black.
void to_ppm(const ImageBuffer& image, std::ostream& out);

// SVG overlay of ray polylines in the pixel coordinates of (viewport, width,
// height), one polyline element per ray, fixed 8-color palette.
std::string rays_to_svg(const std::vector<RayPolyline>& rays, const Viewport& viewport,
                        int width, int height);

// Plain text dump: one "re im potential" line per ray point.
std::string ray_to_text(const RayPolyline& ray);

} // namespace mandel
