#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace medge {

inline constexpr const char* kVersion = "0.1.0";

// Options shared by every subcommand (CLI global flags).
struct GlobalOptions {
    std::string config_path;
    std::string out_dir;
    bool numeric = false;
    bool timings = false;
    std::vector<std::string> overrides;   // raw --set key=value pairs
};

int cmd_validate(const GlobalOptions& g);
int cmd_map_angle(const GlobalOptions& g, const std::string& theta, long long n);
int cmd_map_param(const GlobalOptions& g, const std::string& misiurewicz_angle,
                  int center_period, const std::string& center_angle, long long n);
int cmd_domains(const GlobalOptions& g, int n_max);
int cmd_tune(const GlobalOptions& g, const std::string& word0, const std::string& word1);
int cmd_render(const GlobalOptions& g, const std::string& plane, const std::string& at,
               const std::string& center, double scale, int width, int height,
               std::uint32_t cap, int threads);
int cmd_trace_ray(const GlobalOptions& g, const std::string& theta, const std::string& plane,
                  const std::string& at);

} // namespace medge
