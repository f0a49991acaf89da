#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mandel/plane.hpp>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

using namespace mandel;

namespace {

std::array<Angle, 8> fig2_angles() {
    return {Angle(11, 56),  Angle(199, 1008), Angle(103, 504), Angle(23, 112),
            Angle(29, 112), Angle(131, 504),  Angle(269, 1008), Angle(15, 56)};
}

// frozen reference parameters (Newton-solved, cross-checked against rays)
const Complex kVertexA{-0.101096363845622, 0.956286510809142};
const Complex kVertexB{-0.175890705973462, 1.086624831861379};
const Complex kCenter4{-0.156520166833751, 1.032247108922814};
const Complex kCenter7{-0.127499973546383, 0.987460909489461};
const Complex kGammaTheta2{-0.134965283182701, 1.000168994892129};
const Complex kGammaTheta3{-0.173006716092090, 1.062752280849243};

} // namespace

TEST_CASE("escape_data classifies the easy parameters") {
    Viewport tiny{Complex(0.0, 0.0), 1e-9};
    auto inside = escape_data(PlaneKind::mandelbrot, Complex{}, tiny, 3, 3, 200);
    for (auto v : inside.data) CHECK(v == kInterior);

    Viewport at_one{Complex(1.0, 0.0), 1e-9};
    auto outside = escape_data(PlaneKind::mandelbrot, Complex{}, at_one, 3, 3, 200);
    for (auto v : outside.data) {
        CHECK(v != kInterior);
        CHECK(v <= 10);   // orbit 0, 1, 2, 5, 26, 677, ... explodes fast
    }

    // julia(c = -1) at z = 0: the forced 2-cycle 0 <-> -1 never escapes
    auto basilica = escape_data(PlaneKind::julia, Complex(-1.0, 0.0), tiny, 3, 3, 200);
    for (auto v : basilica.data) CHECK(v == kInterior);
}

TEST_CASE("escape_data is deterministic for any thread count") {
    Viewport view{Complex(-0.5, 0.0), 3.0};
    auto one = escape_data(PlaneKind::mandelbrot, Complex{}, view, 64, 48, 500, 1e3, 1);
    auto three = escape_data(PlaneKind::mandelbrot, Complex{}, view, 64, 48, 500, 1e3, 3);
    auto eight = escape_data(PlaneKind::mandelbrot, Complex{}, view, 64, 48, 500, 1e3, 8);
    REQUIRE(one.data.size() == 64u * 48u);
    CHECK(one.data == three.data);
    CHECK(one.data == eight.data);

    auto again = escape_data(PlaneKind::mandelbrot, Complex{}, view, 64, 48, 500, 1e3, 3);
    CHECK(one.data == again.data);

    // both interior and exterior pixels occur in this view
    bool has_interior = false, has_exterior = false;
    for (auto v : one.data) (v == kInterior ? has_interior : has_exterior) = true;
    CHECK(has_interior);
    CHECK(has_exterior);
}

TEST_CASE("parameter rays: start circle, monotone potential, real-axis symmetry") {
    auto ray = trace_parameter_ray(Angle(0, 1));
    REQUIRE(ray.ok);
    REQUIRE(ray.points.size() > 2);
    CHECK(std::abs(std::abs(ray.points.front().z) - 4.0) < 1e-9);   // radius-4 start circle
    for (std::size_t i = 0; i + 1 < ray.points.size(); ++i) {
        CHECK(ray.points[i].potential > ray.points[i + 1].potential);
        CHECK(std::abs(ray.points[i].z) < 4.0 + 1e-9);
    }
    CHECK(ray.final_potential == doctest::Approx(1e-5));
    CHECK(ray.points.back().potential == doctest::Approx(1e-5));

    // the 0-ray is the real segment toward the cusp 1/4 (slow parabolic approach)
    for (const auto& pt : ray.points) CHECK(std::abs(pt.z.imag()) < 1e-12);
    CHECK(std::abs(ray.points.back().z - Complex(0.25, 0.0)) < 0.05);

    auto half = trace_parameter_ray(Angle(1, 2));
    REQUIRE(half.ok);
    for (const auto& pt : half.points) CHECK(std::abs(pt.z.imag()) < 1e-12);
    CHECK(std::abs(half.points.back().z - Complex(-2.0, 0.0)) < 1e-2);
}

TEST_CASE("dynamic rays land on the exactly solvable Julia sets") {
    SolverSettings deep;
    deep.ray_final_potential = 1e-7;   // endpoint error tracks the final potential

    auto r_half = trace_dynamic_ray(Complex{}, Angle(1, 2), deep);
    REQUIRE(r_half.ok);
    CHECK(std::abs(r_half.points.back().z - Complex(-1.0, 0.0)) < 1e-6);

    auto r_third = trace_dynamic_ray(Complex{}, Angle(1, 3), deep);
    REQUIRE(r_third.ok);
    CHECK(std::abs(r_third.points.back().z - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-6);

    // Chebyshev case: gamma_{-2}(theta) = 2 cos(2 pi theta)
    auto cheb = trace_dynamic_ray(Complex(-2.0, 0.0), Angle(1, 3));
    REQUIRE(cheb.ok);
    CHECK(std::abs(cheb.points.back().z - Complex(-1.0, 0.0)) < 1e-4);
}

TEST_CASE("ray functoriality: f_c maps the theta-ray onto the 2 theta-ray") {
    const Complex c = kCenter4;
    auto ray = trace_dynamic_ray(c, Angle(103, 504));
    auto ray2 = trace_dynamic_ray(c, Angle(103, 252));
    REQUIRE(ray.ok);
    REQUIRE(ray2.ok);

    // stage grids are aligned: potential rho on the theta-ray maps to 2 rho
    std::map<long long, Complex> by_potential;
    for (const auto& pt : ray2.points)
        by_potential[llround(pt.potential * 1e12)] = pt.z;
    int compared = 0;
    for (const auto& pt : ray.points) {
        if (pt.potential <= 1e-3) continue;
        auto it = by_potential.find(llround(2.0 * pt.potential * 1e12));
        if (it == by_potential.end()) continue;
        Complex mapped = pt.z * pt.z + c;
        CHECK(std::abs(mapped - it->second) < 1e-6);
        ++compared;
    }
    CHECK(compared >= 20);
}

TEST_CASE("conjugation symmetry of parameter rays") {
    for (const Angle& theta : {Angle(11, 56), Angle(1, 6), Angle(3, 14), Angle(199, 1008)}) {
        auto ray = trace_parameter_ray(theta);
        auto mirror = trace_parameter_ray(Angle() - theta);
        REQUIRE(ray.ok);
        REQUIRE(mirror.ok);
        CHECK(std::abs(mirror.points.back().z - std::conj(ray.points.back().z)) < 1e-9);
    }
}

TEST_CASE("solve_misiurewicz") {
    CHECK(std::abs(solve_misiurewicz(Angle(1, 2)) - Complex(-2.0, 0.0)) < 1e-12);
    CHECK(std::abs(solve_misiurewicz(Angle(1, 4)) - Complex(-0.2281554936539, 1.1151425080399)) <
          1e-9);
    CHECK(std::abs(solve_misiurewicz(Angle(11, 56)) - kVertexA) < 1e-9);
    CHECK(std::abs(solve_misiurewicz(Angle(15, 56)) - kVertexA) < 1e-9);   // co-landing partner
    CHECK(std::abs(solve_misiurewicz(Angle(23, 112)) - kVertexB) < 1e-9);
    CHECK(std::abs(solve_misiurewicz(Angle(199, 1008)) - kGammaTheta2) < 1e-9);
    CHECK_THROWS_AS(solve_misiurewicz(Angle(1, 3)), DomainError);   // periodic input
}

TEST_CASE("solver/ray agreement on random preperiodic angles") {
    // Draw angles from random binary expansions with bounded word lengths, so
    // the doubling orbit stays short and the Newton iterate is well
    // conditioned.  A uniform denominator <= 1024 would admit periods near a
    // hundred, far beyond anything the solver is specified to handle.
    std::mt19937_64 rng(1105);
    std::uniform_int_distribution<int> bit(0, 1);
    SolverSettings settings;
    settings.ray_final_potential = 1e-7;   // ray approach error scales like sqrt(potential)
    int tested = 0;
    while (tested < 20) {
        BinaryExpansion expansion;
        int pre_len = std::uniform_int_distribution<int>(1, 4)(rng);
        int per_len = std::uniform_int_distribution<int>(2, 6)(rng);
        for (int i = 0; i < pre_len; ++i) expansion.preperiod_word.push_back(char('0' + bit(rng)));
        for (int i = 0; i < per_len; ++i) expansion.period_word.push_back(char('0' + bit(rng)));
        Angle theta = from_expansion(expansion);
        auto oc = orbit_classify(theta);
        if (oc.preperiod == 0 || theta == Angle(1, 2)) continue;
        ++tested;
        auto ray = trace_parameter_ray(theta, settings);
        REQUIRE(ray.ok);
        Complex root = solve_misiurewicz(theta, settings);
        CHECK(std::abs(root - ray.points.back().z) < 1e-3);
    }
}

TEST_CASE("solve_center") {
    CHECK(std::abs(solve_center(1, Angle(0, 1))) < 1e-12);
    CHECK(std::abs(solve_center(2, Angle(1, 3)) - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(solve_center(2, Angle(2, 3)) - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(solve_center(4, Angle(1, 5)) - kCenter4) < 1e-9);
    CHECK(std::abs(solve_center(4, Angle(4, 15)) - kCenter4) < 1e-9);
    CHECK(std::abs(solve_center(7, Angle(25, 127)) - kCenter7) < 1e-9);
    CHECK_THROWS_AS(solve_center(3, Angle(1, 5)), DomainError);    // period mismatch
    CHECK_THROWS_AS(solve_center(4, Angle(11, 56)), DomainError);  // preperiodic seed
}

TEST_CASE("verify_config_numeric on the Fig. 2 edge") {
    auto cfg = validate_config(fig2_angles());
    auto report = verify_config_numeric(cfg);
    CHECK(report.ok);
    CHECK(report.issues.empty());
    REQUIRE(report.samples.size() == 2);

    // samples are the solved centers of the two lowest-period E-arc ray pairs
    CHECK(std::abs(report.samples[0].parameter - kCenter4) < 1e-9);
    CHECK(std::abs(report.samples[1].parameter - kCenter7) < 1e-9);
    for (const auto& s : report.samples) {
        CHECK(s.colanded);
        CHECK(s.distinct_ok);
        CHECK_FALSE(s.boundary_case);
        for (double sep : s.pair_separation) CHECK(sep < 1e-3);
        CHECK(s.min_pair_distance > 1e-3);
    }
}

TEST_CASE("verify_config_numeric flags a broken pair") {
    auto cfg = validate_config(fig2_angles());
    // negative control: tear the theta2 pair apart (11/56 co-lands with 15/56,
    // not with 269/1008); build the struct directly since validation would
    // reject these angles.
    EdgeConfig broken = cfg;
    broken.theta[1] = Angle(11, 56) + Angle(1, 100000);
    auto report = verify_config_numeric(broken);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.issues.empty());
    bool pair_failed = false;
    for (const auto& s : report.samples) pair_failed |= !s.colanded;
    CHECK(pair_failed);
}

TEST_CASE("verify_config_numeric sample override probes the vertex") {
    auto cfg = validate_config(fig2_angles());
    auto report = verify_config_numeric(cfg, {}, {{"vertex-a", kVertexA}});
    REQUIRE(report.samples.size() == 1);
    CHECK(report.samples[0].label == "vertex-a");
    CHECK(report.samples[0].parameter == kVertexA);
    // consistency of the boundary flag regardless of the numeric outcome
    const auto& s = report.samples[0];
    CHECK(s.boundary_case == (s.colanded && !s.distinct_ok));
}

TEST_CASE("map_parameter_point realizes h on identified parameters") {
    SurgeryHomeo homeo(validate_config(fig2_angles()));

    ParameterPoint vertex{ParameterPoint::Kind::misiurewicz, 0, Angle(11, 56)};
    CHECK(std::abs(map_parameter_point(homeo, vertex, 1) - kVertexA) < 1e-9);
    CHECK(std::abs(map_parameter_point(homeo, vertex, -3) - kVertexA) < 1e-9);

    ParameterPoint theta2{ParameterPoint::Kind::misiurewicz, 0, Angle(199, 1008)};
    CHECK(std::abs(map_parameter_point(homeo, theta2, 0) - kGammaTheta2) < 1e-9);
    CHECK(std::abs(map_parameter_point(homeo, theta2, 1) - kGammaTheta3) < 1e-9);

    ParameterPoint c7{ParameterPoint::Kind::center, 7, Angle(25, 127)};
    CHECK(std::abs(map_parameter_point(homeo, c7, 1) - kCenter4) < 1e-9);

    ParameterPoint c4{ParameterPoint::Kind::center, 4, Angle(1, 5)};
    CHECK(std::abs(map_parameter_point(homeo, c4, -1) - kCenter7) < 1e-9);

    ParameterPoint outside{ParameterPoint::Kind::misiurewicz, 0, Angle(1, 4)};
    CHECK_THROWS_AS(map_parameter_point(homeo, outside, 1), DomainError);

    ParameterPoint mismatched{ParameterPoint::Kind::center, 4, Angle(199, 1008)};
    CHECK_THROWS_AS(map_parameter_point(homeo, mismatched, 1), DomainError);
}

TEST_CASE("PPM export") {
    Viewport view{Complex(-0.5, 0.0), 3.0};
    auto img = escape_data(PlaneKind::mandelbrot, Complex{}, view, 20, 10, 100);
    std::ostringstream out;
    to_ppm(img, out);
    const std::string& bytes = out.str();
    CHECK(bytes.rfind("P6\n20 10\n255\n", 0) == 0);
    CHECK(bytes.size() == std::string("P6\n20 10\n255\n").size() + 3u * 20u * 10u);

    std::ostringstream again;
    to_ppm(img, again);
    CHECK(bytes == again.str());   // byte determinism
}

TEST_CASE("SVG and text export of rays") {
    auto ray = trace_parameter_ray(Angle(1, 3));
    auto svg = rays_to_svg({ray}, Viewport{Complex(-0.5, 0.0), 3.0}, 200, 100);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("width=\"200\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    auto text = ray_to_text(ray);
    std::istringstream lines(text);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        double re, im, pot;
        REQUIRE(std::sscanf(line.c_str(), "%lf %lf %lf", &re, &im, &pot) == 3);
        ++count;
    }
    CHECK(count == ray.points.size());
}

TEST_CASE("settings validation") {
    SolverSettings bad;
    bad.ray_final_potential = 2.0;   // not below the start potential
    CHECK_THROWS_AS(trace_parameter_ray(Angle(1, 3), bad), DomainError);
    SolverSettings zero;
    zero.steps_per_halving = 0;
    CHECK_THROWS_AS(trace_parameter_ray(Angle(1, 3), zero), DomainError);
}
