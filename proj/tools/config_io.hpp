#pragma once

#include <array>
#include <optional>
#include <string>

#include "mandel/angle.hpp"

namespace medge {

// Parsed edge-configuration file: eight exact angles plus an optional
// tuning word pair.
struct FileConfig {
    std::array<mandel::Angle, 8> theta;
    std::optional<std::string> tuning_word0;
    std::optional<std::string> tuning_word1;
};

// Loads a JSON config with keys theta1_minus ... theta1_plus (angle strings
// "p/q") and optional tuning_word0/tuning_word1.  Missing keys, unknown
// keys, or non-string values raise mandel::FormatError; unreadable files
// raise mandel::Error.
FileConfig load_config_file(const std::string& path);

// Serializes the eight angles in the canonical key order.
std::string config_to_json(const std::array<mandel::Angle, 8>& theta);

// Writes config_to_json(theta) to path; raises mandel::Error on I/O failure.
void write_config_file(const std::string& path, const std::array<mandel::Angle, 8>& theta);

} // namespace medge
