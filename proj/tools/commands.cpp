#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "config_io.hpp"
#include "mandel/errors.hpp"
#include "mandel/lamination.hpp"
#include "mandel/plane.hpp"
#include "mandel/surgery.hpp"

namespace medge {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mandel;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

json base_report(const char* command, const GlobalOptions& g) {
    json r;
    r["version"] = kVersion;
    r["command"] = command;
    r["config"] = g.config_path;
    r["errors"] = json::array();
    return r;
}

// nlohmann's object is backed by std::map, so dumped keys are sorted; the
// report contract (byte-identical reruns) additionally requires that the
// volatile timings section stays opt-in.
int emit(json& r, const GlobalOptions& g, const Timer& t, int exit_code) {
    if (g.timings)
        r["timings"] = {{"total_seconds", t.seconds()}};
    std::cout << r.dump(2) << "\n";
    return exit_code;
}

json angle_list(const std::array<Angle, 8>& theta) {
    json a = json::array();
    for (const Angle& t : theta)
        a.push_back(t.str());
    return a;
}

json complex_json(Complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json issues_json(const std::vector<ValidationIssue>& issues) {
    json a = json::array();
    for (const ValidationIssue& i : issues)
        a.push_back(json{{"code", i.code}, {"message", i.message}});
    return a;
}

json validation_json(const Validation& v) {
    json j;
    j["valid"] = v.ok();
    j["ordering_ok"] = v.ordering_ok;
    j["preperiodic_ok"] = v.preperiodic_ok;
    j["colanding_ok"] = v.colanding_ok;
    j["nonreturn_ok"] = v.nonreturn_ok;
    j["k_v"] = v.k_v;
    j["k_w"] = v.k_w;
    j["k_tilde_v"] = v.k_tilde_v;
    j["k_tilde_w"] = v.k_tilde_w;
    j["sigma_v"] = v.sigma_v;
    j["sigma_w"] = v.sigma_w;
    j["alpha_v"] = v.alpha_v.str();
    j["alpha_w"] = v.alpha_w.str();
    j["K_lower"] = v.K_lower.str();
    j["errors"] = issues_json(v.errors);
    j["warnings"] = issues_json(v.warnings);
    return j;
}

json numeric_json(const NumericReport& rep) {
    json j;
    j["ok"] = rep.ok;
    j["issues"] = rep.issues;
    json samples = json::array();
    for (const NumericSample& s : rep.samples) {
        json e;
        e["label"] = s.label;
        e["parameter"] = complex_json(s.parameter);
        e["pair_separation"] = s.pair_separation;
        e["min_pair_distance"] = s.min_pair_distance;
        e["colanded"] = s.colanded;
        e["distinct_ok"] = s.distinct_ok;
        e["boundary_case"] = s.boundary_case;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    return j;
}

void collect_errors(json& report, const Validation& v) {
    for (const ValidationIssue& e : v.errors)
        report["errors"].push_back(e.code + ": " + e.message);
}

SolverSettings settings_from(const GlobalOptions& g) {
    SolverSettings s;
    for (const std::string& kv : g.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw FormatError("--set expects key=value, got \"" + kv + "\"");
        std::string key = kv.substr(0, eq);
        std::string value = kv.substr(eq + 1);
        try {
            if (key == "newton_tolerance")
                s.newton_tolerance = std::stod(value);
            else if (key == "max_newton_steps")
                s.max_newton_steps = std::stoi(value);
            else if (key == "ray_start_potential")
                s.ray_start_potential = std::stod(value);
            else if (key == "ray_final_potential")
                s.ray_final_potential = std::stod(value);
            else if (key == "steps_per_halving")
                s.steps_per_halving = std::stoi(value);
            else if (key == "escape_radius")
                s.escape_radius = std::stod(value);
            else if (key == "max_iterations")
                s.max_iterations = std::stoi(value);
            else
                throw FormatError("unknown settings key \"" + key + "\"");
        } catch (const std::invalid_argument&) {
            throw FormatError("settings key \"" + key + "\" needs a numeric value, got \"" +
                              value + "\"");
        } catch (const std::out_of_range&) {
            throw FormatError("settings value for \"" + key + "\" is out of range");
        }
    }
    return s;
}

Complex parse_complex(const std::string& text) {
    double re = 0.0, im = 0.0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &trailing) == 2)
        return {re, im};
    if (std::sscanf(text.c_str(), "%lf%c", &re, &trailing) == 1)
        return {re, 0.0};
    throw FormatError("expected a complex number as \"re,im\", got \"" + text + "\"");
}

EdgeConfig load_valid_config(const GlobalOptions& g) {
    if (g.config_path.empty())
        throw FormatError("this command needs --config PATH");
    FileConfig fc = load_config_file(g.config_path);
    return validate_config(fc.theta);
}

fs::path output_dir(const GlobalOptions& g) {
    fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory " + dir.string());
    return dir;
}

double polynomial_residual(const ParameterPoint& pt, Complex c) {
    if (pt.kind == ParameterPoint::Kind::misiurewicz) {
        OrbitClass oc = orbit_classify(pt.angle);
        Complex z = c, zl = 0.0;
        for (std::uint64_t j = 0; j < oc.preperiod + oc.period; ++j) {
            if (j == oc.preperiod)
                zl = z;
            z = z * z + c;
        }
        return std::abs(z - zl);
    }
    Complex z = 0.0;
    for (int j = 0; j < pt.period; ++j)
        z = z * z + c;
    return std::abs(z);
}

} // namespace

int cmd_validate(const GlobalOptions& g) {
    Timer t;
    json r = base_report("validate", g);
    if (g.config_path.empty())
        throw FormatError("validate needs --config PATH");
    FileConfig fc = load_config_file(g.config_path);
    Validation v = inspect_config(fc.theta);
    r["results"]["angles"] = angle_list(fc.theta);
    r["results"]["validation"] = validation_json(v);
    collect_errors(r, v);
    bool ok = v.ok();
    if (ok && g.numeric) {
        NumericReport nr = verify_config_numeric(*v.config, settings_from(g));
        r["results"]["numeric"] = numeric_json(nr);
        for (const std::string& issue : nr.issues)
            r["errors"].push_back("numeric: " + issue);
        ok = ok && nr.ok;
    }
    return emit(r, g, t, ok ? 0 : 1);
}

int cmd_map_angle(const GlobalOptions& g, const std::string& theta, long long n) {
    Timer t;
    json r = base_report("map-angle", g);
    Angle input = Angle::parse(theta);
    SurgeryHomeo homeo(load_valid_config(g));
    Angle image = homeo.map_angle(input, n);
    BinaryExpansion e = to_expansion(image);
    OrbitClass oc = orbit_classify(image);
    r["results"]["input"] = input.str();
    r["results"]["n"] = n;
    r["results"]["image"] = image.str();
    r["results"]["image_expansion"] = {{"preperiod_word", e.preperiod_word},
                                       {"period_word", e.period_word}};
    r["results"]["image_orbit"] = {{"preperiod", oc.preperiod}, {"period", oc.period}};
    return emit(r, g, t, 0);
}

int cmd_map_param(const GlobalOptions& g, const std::string& misiurewicz_angle,
                  int center_period, const std::string& center_angle, long long n) {
    Timer t;
    json r = base_report("map-param", g);
    const bool have_mis = !misiurewicz_angle.empty();
    const bool have_center = center_period != 0 || !center_angle.empty();
    if (have_mis == have_center)
        throw FormatError("map-param needs exactly one of --misiurewicz THETA or "
                          "--center PERIOD THETA");

    ParameterPoint pt;
    if (have_mis) {
        pt.kind = ParameterPoint::Kind::misiurewicz;
        pt.angle = Angle::parse(misiurewicz_angle);
    } else {
        if (center_period <= 0 || center_angle.empty())
            throw FormatError("--center needs PERIOD THETA with a positive period");
        pt.kind = ParameterPoint::Kind::center;
        pt.period = center_period;
        pt.angle = Angle::parse(center_angle);
    }

    SurgeryHomeo homeo(load_valid_config(g));
    SolverSettings s = settings_from(g);
    Complex source = pt.kind == ParameterPoint::Kind::misiurewicz
                         ? solve_misiurewicz(pt.angle, s)
                         : solve_center(pt.period, pt.angle, s);
    Angle image_angle = homeo.map_angle(pt.angle, n);
    Complex image = map_parameter_point(homeo, pt, n, s);

    json src;
    src["kind"] = have_mis ? "misiurewicz" : "center";
    src["angle"] = pt.angle.str();
    if (!have_mis)
        src["period"] = pt.period;
    src["parameter"] = complex_json(source);
    r["results"]["source"] = std::move(src);
    r["results"]["n"] = n;

    json dst;
    dst["angle"] = image_angle.str();
    if (!have_mis)
        dst["period"] = orbit_classify(image_angle).period;
    dst["parameter"] = complex_json(image);
    r["results"]["image"] = std::move(dst);

    ParameterPoint image_pt = pt;
    image_pt.angle = image_angle;
    if (!have_mis)
        image_pt.period = static_cast<int>(orbit_classify(image_angle).period);
    r["results"]["residuals"] = {{"displacement", std::abs(image - source)},
                                 {"source_polynomial", polynomial_residual(pt, source)},
                                 {"image_polynomial", polynomial_residual(image_pt, image)}};
    return emit(r, g, t, 0);
}

int cmd_domains(const GlobalOptions& g, int n_max) {
    Timer t;
    json r = base_report("domains", g);
    EdgeConfig cfg = load_valid_config(g);
    SurgeryHomeo homeo(cfg);
    auto pairs = fundamental_domains(homeo, n_max);

    // c_n accumulate monotonically: lower angles increase toward theta4_minus,
    // upper angles decrease toward theta4_plus, all inside the open E-arcs.
    bool monotone_ok = true;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0 && !(pairs[i - 1].first < pairs[i].first && pairs[i].second < pairs[i - 1].second))
            monotone_ok = false;
        if (!(cfg.theta1_minus() < pairs[i].first && pairs[i].first < cfg.theta4_minus()))
            monotone_ok = false;
        if (!(cfg.theta4_plus() < pairs[i].second && pairs[i].second < cfg.theta1_plus()))
            monotone_ok = false;
    }
    if (!monotone_ok)
        r["errors"].push_back("domain endpoints are not monotone inside the edge arcs");

    SolverSettings s = settings_from(g);
    json list = json::array();
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        json e;
        e["n"] = i - n_max;
        e["low"] = pairs[i].first.str();
        e["high"] = pairs[i].second.str();
        if (g.numeric) {
            Complex ca = solve_misiurewicz(pairs[i].first, s);
            Complex cb = solve_misiurewicz(pairs[i].second, s);
            e["parameter"] = complex_json(0.5 * (ca + cb));
            e["landing_separation"] = std::abs(ca - cb);
        }
        list.push_back(std::move(e));
    }
    r["results"]["n_max"] = n_max;
    r["results"]["pairs"] = std::move(list);
    r["results"]["monotone_ok"] = monotone_ok;
    return emit(r, g, t, monotone_ok ? 0 : 1);
}

int cmd_tune(const GlobalOptions& g, const std::string& word0, const std::string& word1) {
    Timer t;
    json r = base_report("tune", g);
    TuningWord word(word0, word1);
    EdgeConfig cfg = load_valid_config(g);
    std::array<Angle, 8> tuned = tune_angles(word, cfg.theta);
    Validation tv = inspect_config(tuned);

    fs::path out = output_dir(g) / (fs::path(g.config_path).stem().string() + "_tuned.json");
    write_config_file(out.string(), tuned);

    r["results"]["word0"] = word.word0();
    r["results"]["word1"] = word.word1();
    r["results"]["tuned_angles"] = angle_list(tuned);
    r["results"]["output_path"] = out.string();
    r["results"]["validation"] = validation_json(tv);
    collect_errors(r, tv);
    return emit(r, g, t, tv.ok() ? 0 : 1);
}

int cmd_render(const GlobalOptions& g, const std::string& plane, const std::string& at,
               const std::string& center, double scale, int width, int height,
               std::uint32_t cap, int threads) {
    Timer t;
    json r = base_report("render", g);
    if (plane != "parameter" && plane != "dynamic")
        throw FormatError("--plane must be parameter or dynamic, got \"" + plane + "\"");
    if (width <= 0 || height <= 0 || !(scale > 0.0))
        throw FormatError("render needs positive --width, --height and --scale");
    EdgeConfig cfg = load_valid_config(g);
    SolverSettings s = settings_from(g);

    const bool parameter_plane = plane == "parameter";
    Complex c{};
    if (!parameter_plane) {
        if (at.empty())
            throw FormatError("dynamic plane render needs --at \"re,im\"");
        c = parse_complex(at);
    }

    Viewport vp{parse_complex(center), scale};
    ImageBuffer img = escape_data(parameter_plane ? PlaneKind::mandelbrot : PlaneKind::julia, c,
                                  vp, width, height, cap, s.escape_radius, threads);

    std::vector<RayPolyline> rays;
    rays.reserve(8);
    for (const Angle& theta : cfg.theta)
        rays.push_back(parameter_plane ? trace_parameter_ray(theta, s)
                                       : trace_dynamic_ray(c, theta, s));

    fs::path dir = output_dir(g);
    fs::path ppm_path = dir / (plane + ".ppm");
    fs::path svg_path = dir / (plane + "_rays.svg");
    {
        std::ofstream ppm(ppm_path, std::ios::binary);
        if (!ppm)
            throw Error("cannot write " + ppm_path.string());
        to_ppm(img, ppm);
    }
    {
        std::ofstream svg(svg_path);
        if (!svg)
            throw Error("cannot write " + svg_path.string());
        svg << rays_to_svg(rays, vp, width, height);
    }

    json ray_list = json::array();
    for (const RayPolyline& ray : rays) {
        json e;
        e["angle"] = ray.angle.str();
        e["ok"] = ray.ok;
        e["final_potential"] = ray.final_potential;
        if (!ray.points.empty())
            e["endpoint"] = complex_json(ray.points.back().z);
        ray_list.push_back(std::move(e));
    }
    r["results"]["plane"] = plane;
    if (!parameter_plane)
        r["results"]["at"] = complex_json(c);
    r["results"]["image"] = ppm_path.string();
    r["results"]["overlay"] = svg_path.string();
    r["results"]["width"] = width;
    r["results"]["height"] = height;
    r["results"]["cap"] = cap;
    r["results"]["viewport"] = {{"center", complex_json(vp.center)}, {"scale", vp.scale}};
    r["results"]["rays"] = std::move(ray_list);
    return emit(r, g, t, 0);
}

int cmd_trace_ray(const GlobalOptions& g, const std::string& theta, const std::string& plane,
                  const std::string& at) {
    if (plane != "parameter" && plane != "dynamic")
        throw FormatError("--plane must be parameter or dynamic, got \"" + plane + "\"");
    Angle input = Angle::parse(theta);
    SolverSettings s = settings_from(g);
    RayPolyline ray;
    if (plane == "parameter") {
        ray = trace_parameter_ray(input, s);
    } else {
        if (at.empty())
            throw FormatError("dynamic ray tracing needs --at \"re,im\"");
        ray = trace_dynamic_ray(parse_complex(at), input, s);
    }
    std::string text = ray_to_text(ray);
    if (!g.out_dir.empty()) {
        fs::path path = output_dir(g) /
                        ("ray_" + input.num().str() + "_" + input.den().str() + ".txt");
        std::ofstream out(path);
        if (!out)
            throw Error("cannot write " + path.string());
        out << text;
    }
    std::cout << text;
    return ray.ok ? 0 : 1;
}

} // namespace medge
