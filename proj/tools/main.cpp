#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mandel/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"medge: combinatorial surgery homeomorphisms on Mandelbrot-set edges"};
    app.set_version_flag("--version", medge::kVersion);
    app.require_subcommand(1);
    app.fallthrough();   // accept the global flags after the subcommand too

    medge::GlobalOptions g;
    app.add_option("--config", g.config_path, "edge configuration JSON file")
        ->envname("MEDGE_CONFIG");
    app.add_option("--out", g.out_dir, "output directory for generated files");
    app.add_flag("--numeric", g.numeric, "add numeric (plane) verification where applicable");
    app.add_flag("--timings", g.timings, "include wall-clock timings in reports");
    app.add_option("--set", g.overrides, "override a solver setting as key=value")
        ->take_all();

    int exit_code = 0;

    app.add_subcommand("validate", "validate an edge configuration")->callback([&] {
        exit_code = medge::cmd_validate(g);
    });

    {
        auto* sub = app.add_subcommand("map-angle", "apply h^n to an angle");
        static std::string theta;
        static long long n = 1;
        sub->add_option("theta", theta, "angle as p/q")->required();
        sub->add_option("-n,--n", n, "iterate count (negative for the inverse)");
        sub->callback([&] { exit_code = medge::cmd_map_angle(g, theta, n); });
    }

    {
        auto* sub = app.add_subcommand("map-param", "apply h^n to an angle-identified parameter");
        static std::string mis;
        static std::vector<std::string> center;
        static long long n = 1;
        sub->add_option("--misiurewicz", mis, "preperiodic angle p/q of a Misiurewicz point");
        sub->add_option("--center", center, "PERIOD and root angle p/q of a center")
            ->expected(2);
        sub->add_option("-n,--n", n, "iterate count (negative for the inverse)");
        sub->callback([&] {
            int period = 0;
            std::string angle;
            if (!center.empty()) {
                try {
                    period = std::stoi(center.at(0));
                } catch (const std::exception&) {
                    throw mandel::FormatError("--center PERIOD must be an integer, got \"" +
                                              center.at(0) + "\"");
                }
                angle = center.at(1);
            }
            exit_code = medge::cmd_map_param(g, mis, period, angle, n);
        });
    }

    {
        auto* sub = app.add_subcommand("domains", "fundamental domain endpoint pairs");
        static int n_max = 6;
        sub->add_option("--n-max", n_max, "largest |n| of the reported c_n")
            ->check(CLI::NonNegativeNumber);
        sub->callback([&] { exit_code = medge::cmd_domains(g, n_max); });
    }

    {
        auto* sub = app.add_subcommand("tune", "tune the configuration by a digit word pair");
        static std::string word0, word1;
        sub->add_option("word0", word0, "substitution word for digit 0")->required();
        sub->add_option("word1", word1, "substitution word for digit 1")->required();
        sub->callback([&] { exit_code = medge::cmd_tune(g, word0, word1); });
    }

    {
        auto* sub = app.add_subcommand("render", "escape-time image plus ray overlay");
        static std::string plane = "parameter";
        static std::string at;
        static std::string center = "-0.5,0";
        static double scale = 3.0;
        static int width = 640, height = 480, threads = 1;
        static std::uint32_t cap = 1000;
        sub->add_option("--plane", plane, "parameter or dynamic");
        sub->add_option("--at", at, "Julia parameter \"re,im\" (dynamic plane only)");
        sub->add_option("--center", center, "viewport center \"re,im\"");
        sub->add_option("--scale", scale, "viewport width in plane units");
        sub->add_option("--width", width, "image width in pixels");
        sub->add_option("--height", height, "image height in pixels");
        sub->add_option("--cap", cap, "iteration cap");
        sub->add_option("--threads", threads, "worker threads (output is thread-invariant)");
        sub->callback([&] {
            exit_code = medge::cmd_render(g, plane, at, center, scale, width, height, cap,
                                          threads);
        });
    }

    {
        auto* sub = app.add_subcommand("trace-ray", "trace one external ray to text");
        static std::string theta;
        static std::string plane = "parameter";
        static std::string at;
        sub->add_option("theta", theta, "angle as p/q")->required();
        sub->add_option("--plane", plane, "parameter or dynamic");
        sub->add_option("--at", at, "Julia parameter \"re,im\" (dynamic plane only)");
        sub->callback([&] { exit_code = medge::cmd_trace_ray(g, theta, plane, at); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;   // parse problems are usage/format errors
    } catch (const mandel::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mandel::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mandel::NoCycleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mandel::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mandel::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mandel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;   // I/O and other environment failures
    }
    return exit_code;
}
