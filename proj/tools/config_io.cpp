#include "config_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "mandel/errors.hpp"

namespace medge {

using mandel::Angle;
using nlohmann::json;

namespace {

constexpr const char* kThetaKeys[8] = {
    "theta1_minus", "theta2_minus", "theta3_minus", "theta4_minus",
    "theta4_plus",  "theta3_plus",  "theta2_plus",  "theta1_plus",
};

} // namespace

FileConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw mandel::Error("cannot read config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw mandel::FormatError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw mandel::FormatError("config file " + path + " must hold a JSON object");

    std::set<std::string> known(std::begin(kThetaKeys), std::end(kThetaKeys));
    known.insert("tuning_word0");
    known.insert("tuning_word1");
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key))
            throw mandel::FormatError("config file " + path + " has unknown key \"" + key + "\"");
        if (!value.is_string())
            throw mandel::FormatError("config key \"" + key + "\" must be a string");
    }

    FileConfig cfg;
    for (int i = 0; i < 8; ++i) {
        if (!doc.contains(kThetaKeys[i]))
            throw mandel::FormatError("config file " + path + " is missing key \"" +
                                      kThetaKeys[i] + "\"");
        cfg.theta[i] = Angle::parse(doc[kThetaKeys[i]].get<std::string>());
    }
    if (doc.contains("tuning_word0"))
        cfg.tuning_word0 = doc["tuning_word0"].get<std::string>();
    if (doc.contains("tuning_word1"))
        cfg.tuning_word1 = doc["tuning_word1"].get<std::string>();
    return cfg;
}

std::string config_to_json(const std::array<Angle, 8>& theta) {
    std::string out = "{\n";
    for (int i = 0; i < 8; ++i) {
        out += "  \"";
        out += kThetaKeys[i];
        out += "\": \"";
        out += theta[i].str();
        out += i + 1 < 8 ? "\",\n" : "\"\n";
    }
    out += "}\n";
    return out;
}

void write_config_file(const std::string& path, const std::array<Angle, 8>& theta) {
    std::ofstream out(path);
    if (!out)
        throw mandel::Error("cannot write config file " + path);
    out << config_to_json(theta);
    if (!out)
        throw mandel::Error("failed writing config file " + path);
}

} // namespace medge
