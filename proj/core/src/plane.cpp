#include "mandel/plane.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "mandel/errors.hpp"
#include "mandel/lamination.hpp"

namespace mandel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

struct Stage {
    double potential;
    int depth;   // doublings applied to the angle at this potential
};

// Potential schedule rho_m = start * 2^(-m / steps_per_halving) down to the
// final potential, which is appended exactly (clamped, never overshot).
std::vector<Stage> continuation_stages(const SolverSettings& s) {
    if (!(s.ray_start_potential > 0.0) || !(s.ray_final_potential > 0.0) ||
        !(s.ray_final_potential < s.ray_start_potential))
        throw DomainError("ray potentials must satisfy 0 < final < start");
    if (s.steps_per_halving <= 0)
        throw DomainError("steps_per_halving must be positive");
    std::vector<Stage> stages;
    for (int m = 0;; ++m) {
        double rho = s.ray_start_potential * std::exp2(-static_cast<double>(m) / s.steps_per_halving);
        if (rho <= s.ray_final_potential)
            break;
        stages.push_back({rho, m / s.steps_per_halving});
    }
    int final_depth = static_cast<int>(std::floor(std::log2(s.ray_start_potential / s.ray_final_potential)));
    stages.push_back({s.ray_final_potential, std::max(final_depth, 0)});
    return stages;
}

// Target value of the Boettcher coordinate raised to 2^depth: the equation
// solved per stage is f^depth(unknown) = target with moderate |target|.
Complex stage_target(const Angle& theta, const Stage& st) {
    double scaled_potential = std::ldexp(st.potential, st.depth);
    double arg = kTwoPi * doubled(theta, st.depth).to_double();
    return std::polar(std::exp(scaled_potential), arg);
}

// One Newton continuation solve for the parameter ray: f_c^depth(c) = target.
// Returns false on divergence (the ray is then truncated).
bool newton_parameter_stage(Complex& c, Complex target, int depth, const SolverSettings& s) {
    for (int it = 0; it < s.max_newton_steps; ++it) {
        Complex z = c, dz = 1.0;
        for (int j = 0; j < depth; ++j) {
            dz = 2.0 * z * dz + 1.0;
            z = z * z + c;
        }
        Complex step = (z - target) / dz;
        c -= step;
        if (!finite(c) || std::abs(c) > 8.0)
            return false;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(c)))
            return true;
    }
    return true;   // continuation tolerates a slow stage; the next target is near
}

// Dynamic-plane version: f_c^depth(z0) = target with c fixed.
bool newton_dynamic_stage(Complex& z0, Complex c, Complex target, int depth,
                          const SolverSettings& s) {
    for (int it = 0; it < s.max_newton_steps; ++it) {
        Complex z = z0, dz = 1.0;
        for (int j = 0; j < depth; ++j) {
            dz = 2.0 * z * dz;
            z = z * z + c;
        }
        Complex step = (z - target) / dz;
        z0 -= step;
        if (!finite(z0) || std::abs(z0) > 8.0)
            return false;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(z0)))
            return true;
    }
    return true;
}

RayPolyline trace_ray_impl(const Angle& theta, const SolverSettings& settings, bool parameter,
                           Complex c) {
    RayPolyline ray;
    ray.angle = theta;
    std::vector<Stage> stages = continuation_stages(settings);
    Complex point = stage_target(theta, stages.front());   // depth 0: exact start
    for (const Stage& st : stages) {
        Complex target = stage_target(theta, st);
        bool ok = parameter ? newton_parameter_stage(point, target, st.depth, settings)
                            : newton_dynamic_stage(point, c, target, st.depth, settings);
        if (!ok) {
            ray.ok = false;
            break;
        }
        ray.points.push_back({point, st.potential});
    }
    ray.final_potential = ray.points.empty() ? 0.0 : ray.points.back().potential;
    return ray;
}

} // namespace

RayPolyline trace_parameter_ray(const Angle& theta, const SolverSettings& settings) {
    return trace_ray_impl(theta, settings, true, Complex{});
}

RayPolyline trace_dynamic_ray(Complex c, const Angle& theta, const SolverSettings& settings) {
    return trace_ray_impl(theta, settings, false, c);
}

Complex solve_misiurewicz(const Angle& theta, const SolverSettings& settings) {
    OrbitClass oc = orbit_classify(theta);
    if (oc.preperiod == 0)
        throw DomainError("solve_misiurewicz needs a strictly preperiodic angle, got " +
                          theta.str());
    SolverSettings seed_settings = settings;
    seed_settings.ray_final_potential = std::min(settings.ray_final_potential, 1e-7);
    RayPolyline ray = trace_parameter_ray(theta, seed_settings);
    if (!ray.ok || ray.points.empty())
        throw SolverError("seeding ray " + theta.str() + " diverged before landing");
    const Complex anchor = ray.points.back().z;

    Complex c = anchor;
    const int l = oc.preperiod, p = oc.period;
    bool converged = false;
    for (int it = 0; it < settings.max_newton_steps; ++it) {
        Complex z = c, dz = 1.0, zl = 0.0, dzl = 0.0;
        for (int j = 0; j < l + p; ++j) {
            if (j == l) {
                zl = z;
                dzl = dz;
            }
            dz = 2.0 * z * dz + 1.0;
            z = z * z + c;
        }
        Complex P = z - zl;
        if (std::abs(P) < settings.newton_tolerance) {
            converged = true;
            break;
        }
        Complex dP = dz - dzl;
        if (dP == 0.0)
            break;
        c -= P / dP;
        if (!finite(c) || std::abs(c) > 8.0)
            throw SolverError("Newton diverged from the " + theta.str() + " ray seed");
    }
    if (!converged)
        throw SolverError("Newton failed to reach the tolerance for " + theta.str());
    if (std::abs(c - anchor) > 1e-3)
        throw SolverError("Newton root for " + theta.str() +
                          " does not match the seeding ray endpoint");
    return c;
}

Complex solve_center(int period, const Angle& seed_angle, const SolverSettings& settings) {
    if (period <= 0)
        throw DomainError("component period must be positive");
    OrbitClass oc = orbit_classify(seed_angle);
    if (oc.preperiod != 0 || oc.period != static_cast<std::uint64_t>(period))
        throw DomainError("seed angle " + seed_angle.str() + " is not periodic with period " +
                          std::to_string(period));
    SolverSettings seed_settings = settings;
    seed_settings.ray_final_potential = std::min(settings.ray_final_potential, 1e-5);
    RayPolyline ray = trace_parameter_ray(seed_angle, seed_settings);
    if (!ray.ok || ray.points.empty())
        throw SolverError("seeding ray " + seed_angle.str() + " diverged before landing");
    const Complex anchor = ray.points.back().z;

    // Nudge past the root into the component along the ray direction.
    Complex c = anchor;
    if (ray.points.size() >= 2) {
        Complex dir = anchor - ray.points[ray.points.size() - 2].z;
        double len = std::abs(dir);
        if (len > 0.0)
            c += dir * (2e-3 / len);
    }

    bool converged = false;
    for (int it = 0; it < settings.max_newton_steps; ++it) {
        Complex z = 0.0, dz = 0.0;
        for (int j = 0; j < period; ++j) {
            dz = 2.0 * z * dz + 1.0;
            z = z * z + c;
        }
        if (std::abs(z) < settings.newton_tolerance) {
            converged = true;
            break;
        }
        if (dz == 0.0)
            break;
        c -= z / dz;
        if (!finite(c) || std::abs(c) > 8.0)
            throw SolverError("Newton diverged from the " + seed_angle.str() + " ray seed");
    }
    if (!converged)
        throw SolverError("Newton failed to reach the tolerance for the period-" +
                          std::to_string(period) + " center at " + seed_angle.str());

    // A lower-period center would have an earlier critical-orbit zero; the
    // multiplier itself is identically 0 at any center and distinguishes
    // nothing.
    if (period > 1) {
        Complex z = 0.0;
        double margin = std::numeric_limits<double>::infinity();
        for (int j = 1; j < period; ++j) {
            z = z * z + c;
            margin = std::min(margin, std::abs(z));
        }
        if (margin < 1e-6)
            throw SolverError("Newton from " + seed_angle.str() +
                              " converged to a center of lower period");
    }
    if (std::abs(c - anchor) > 0.4)
        throw SolverError("center solved from " + seed_angle.str() +
                          " is far from the seeding ray; wrong component");
    return c;
}

NumericReport verify_config_numeric(const EdgeConfig& cfg, const SolverSettings& settings,
                                    const std::vector<std::pair<std::string, Complex>>&
                                        samples_override) {
    NumericReport report;
    std::vector<std::pair<std::string, Complex>> samples = samples_override;
    if (samples.empty()) {
        std::vector<Leaf> chosen;
        for (std::uint64_t q = 2; q <= kDefaultLaminationBound && chosen.size() < 2; ++q) {
            Lamination lam = build_lamination(q);
            for (const Leaf& leaf : lam.leaves) {
                if (leaf.period != q)
                    continue;
                if (cfg.in_e_arcs(leaf.low) && cfg.in_e_arcs(leaf.high)) {
                    chosen.push_back(leaf);
                    if (chosen.size() == 2)
                        break;
                }
            }
        }
        if (chosen.empty())
            throw SolverError("no periodic ray pair inside the E-arcs up to period " +
                              std::to_string(kDefaultLaminationBound));
        for (const Leaf& leaf : chosen) {
            Complex center = solve_center(static_cast<int>(leaf.period), leaf.low, settings);
            samples.emplace_back("center p=" + std::to_string(leaf.period) + " @ " +
                                     leaf.low.str(),
                                 center);
        }
    }

    SolverSettings dyn = settings;
    dyn.ray_final_potential = std::min(settings.ray_final_potential, 1e-7);
    bool all_ok = true;
    for (const auto& [label, c] : samples) {
        NumericSample sample;
        sample.label = label;
        sample.parameter = c;
        bool traced = true;
        for (int i = 0; i < 8; ++i) {
            RayPolyline ray = trace_dynamic_ray(c, cfg.theta[i], dyn);
            if (!ray.ok || ray.points.empty()) {
                report.issues.push_back(label + ": dynamic ray " + cfg.theta[i].str() +
                                        " diverged");
                traced = false;
                break;
            }
            sample.landing[i] = ray.points.back().z;
        }
        if (!traced) {
            all_ok = false;
            report.samples.push_back(std::move(sample));
            continue;
        }

        std::array<Complex, 4> pinch;
        sample.colanded = true;
        for (int i = 0; i < 4; ++i) {
            sample.pair_separation[i] = std::abs(sample.landing[i] - sample.landing[7 - i]);
            pinch[i] = 0.5 * (sample.landing[i] + sample.landing[7 - i]);
            if (sample.pair_separation[i] >= 1e-3) {
                sample.colanded = false;
                report.issues.push_back(label + ": rays " + cfg.theta[i].str() + " and " +
                                        cfg.theta[7 - i].str() + " fail to co-land (separation " +
                                        std::to_string(sample.pair_separation[i]) + ")");
            }
        }
        sample.min_pair_distance = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                sample.min_pair_distance =
                    std::min(sample.min_pair_distance, std::abs(pinch[i] - pinch[j]));
        sample.distinct_ok = sample.min_pair_distance > 1e-3;
        sample.boundary_case = sample.colanded && !sample.distinct_ok;
        if (!sample.distinct_ok)
            report.issues.push_back(label + (sample.boundary_case
                                                 ? ": boundary case, landing points collapse"
                                                 : ": landing points are not distinct"));
        all_ok = all_ok && sample.colanded && sample.distinct_ok;
        report.samples.push_back(std::move(sample));
    }
    report.ok = all_ok;
    return report;
}

Complex map_parameter_point(const SurgeryHomeo& homeo, const ParameterPoint& point, long long n,
                            const SolverSettings& settings) {
    const EdgeConfig& cfg = homeo.config();
    bool in_closed_edge = cfg.in_e_arcs(point.angle) || point.angle == cfg.theta1_minus() ||
                          point.angle == cfg.theta4_minus() || point.angle == cfg.theta4_plus() ||
                          point.angle == cfg.theta1_plus();
    if (!in_closed_edge)
        throw DomainError("angle " + point.angle.str() + " is not in the closed edge arcs");
    OrbitClass oc = orbit_classify(point.angle);
    if (point.kind == ParameterPoint::Kind::misiurewicz) {
        if (oc.preperiod == 0)
            throw DomainError("misiurewicz point needs a strictly preperiodic angle");
        return solve_misiurewicz(homeo.map_angle(point.angle, n), settings);
    }
    if (oc.preperiod != 0 || oc.period != static_cast<std::uint64_t>(point.period))
        throw DomainError("angle " + point.angle.str() + " is not periodic with period " +
                          std::to_string(point.period));
    Angle image = homeo.map_angle(point.angle, n);
    return solve_center(static_cast<int>(orbit_classify(image).period), image, settings);
}

ImageBuffer escape_data(PlaneKind kind, Complex param, const Viewport& viewport, int width,
                        int height, std::uint32_t cap, double escape_radius, int threads) {
    if (width <= 0 || height <= 0)
        throw DomainError("image dimensions must be positive");
    if (!(viewport.scale > 0.0))
        throw DomainError("viewport scale must be positive");
    if (threads < 1)
        threads = 1;

    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.viewport = viewport;
    image.cap = cap;
    image.data.assign(static_cast<std::size_t>(width) * height, kInterior);

    const double delta = viewport.scale / width;
    const double r2 = escape_radius * escape_radius;
    auto worker = [&](int first_row) {
        for (int row = first_row; row < height; row += threads) {
            double im = viewport.center.imag() + (0.5 * height - row - 0.5) * delta;
            std::uint32_t* out = image.data.data() + static_cast<std::size_t>(row) * width;
            for (int col = 0; col < width; ++col) {
                double re = viewport.center.real() + (col + 0.5 - 0.5 * width) * delta;
                double zr, zi, cr, ci;
                if (kind == PlaneKind::mandelbrot) {
                    zr = 0.0;
                    zi = 0.0;
                    cr = re;
                    ci = im;
                } else {
                    zr = re;
                    zi = im;
                    cr = param.real();
                    ci = param.imag();
                }
                std::uint32_t count = kInterior;
                for (std::uint32_t n = 0; n < cap; ++n) {
                    double rr = zr * zr, ii = zi * zi;
                    if (rr + ii > r2) {
                        count = n;
                        break;
                    }
                    zi = 2.0 * zr * zi + ci;
                    zr = rr - ii + cr;
                }
                out[col] = count;
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker, t);
        for (std::thread& th : pool)
            th.join();
    }
    return image;
}

void to_ppm(const ImageBuffer& image, std::ostream& out) {
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    std::string bytes;
    bytes.reserve(static_cast<std::size_t>(image.width) * image.height * 3);
    for (std::uint32_t v : image.data) {
        if (v == kInterior) {
            bytes.append(3, '\0');
        } else {
            // integer-only palette so output is bit-stable across platforms
            bytes.push_back(static_cast<char>((v * 9 + 48) & 0xff));
            bytes.push_back(static_cast<char>((v * 5 + 96) & 0xff));
            bytes.push_back(static_cast<char>((v * 13 + 160) & 0xff));
        }
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string rays_to_svg(const std::vector<RayPolyline>& rays, const Viewport& viewport,
                        int width, int height) {
    static constexpr const char* kColors[8] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                               "#911eb4", "#46f0f0", "#f032e6", "#9a6324"};
    if (width <= 0 || height <= 0)
        throw DomainError("image dimensions must be positive");
    const double delta = viewport.scale / width;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    std::size_t color = 0;
    for (const RayPolyline& ray : rays) {
        svg << "  <polyline fill=\"none\" stroke=\"" << kColors[color++ % 8]
            << "\" stroke-width=\"1\" points=\"";
        bool first = true;
        for (const RayPoint& pt : ray.points) {
            double x = (pt.z.real() - viewport.center.real()) / delta + 0.5 * width;
            double y = 0.5 * height - (pt.z.imag() - viewport.center.imag()) / delta;
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.3f,%.3f", x, y);
            if (!first)
                svg << ' ';
            svg << buf;
            first = false;
        }
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string ray_to_text(const RayPolyline& ray) {
    std::string out;
    out.reserve(ray.points.size() * 64);
    char buf[128];
    for (const RayPoint& pt : ray.points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", pt.z.real(), pt.z.imag(),
                      pt.potential);
        out += buf;
    }
    return out;
}

} // namespace mandel
