#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mandel/angle.hpp"
#include "mandel/lamination.hpp"

namespace mandel {

// Small exact ratio of machine integers (Hölder exponents, distortion bound).
struct Ratio {
    long long num = 0;
    long long den = 1;
    Ratio() = default;
    Ratio(long long n, long long d);
    std::string str() const;
    double to_double() const;
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// An edge configuration: the eight angles of Eq. (1) together with the
// first-return numbers and signs found during validation.
// theta holds, in order, Θ1-, Θ2-, Θ3-, Θ4-, Θ4+, Θ3+, Θ2+, Θ1+.
struct EdgeConfig {
    std::array<Angle, 8> theta{};
    int k_v = 0, k_w = 0, k_tilde_v = 0, k_tilde_w = 0;
    int sigma_v = +1, sigma_w = +1;

    const Angle& theta1_minus() const { return theta[0]; }
    const Angle& theta2_minus() const { return theta[1]; }
    const Angle& theta3_minus() const { return theta[2]; }
    const Angle& theta4_minus() const { return theta[3]; }
    const Angle& theta4_plus() const { return theta[4]; }
    const Angle& theta3_plus() const { return theta[5]; }
    const Angle& theta2_plus() const { return theta[6]; }
    const Angle& theta1_plus() const { return theta[7]; }

    // Open arc families, minus side first.
    std::array<Arc, 2> v_arcs() const;        // (Θ1-,Θ2-), (Θ2+,Θ1+)
    std::array<Arc, 2> w_arcs() const;        // (Θ2-,Θ4-), (Θ4+,Θ2+)
    std::array<Arc, 2> v_tilde_arcs() const;  // (Θ1-,Θ3-), (Θ3+,Θ1+)
    std::array<Arc, 2> w_tilde_arcs() const;  // (Θ3-,Θ4-), (Θ4+,Θ3+)
    std::array<Arc, 2> e_arcs() const;        // (Θ1-,Θ4-), (Θ4+,Θ1+)

    bool in_e_arcs(const Angle& t) const;     // strictly inside either E-arc
};

struct ValidationIssue {
    std::string code;      // stable identifier: "ordering", "preperiodic", ...
    std::string message;   // names the offending angle(s) and check
};

// Full staged validation result; config is populated iff no errors.
struct Validation {
    bool ordering_ok = false;
    bool preperiodic_ok = false;
    bool colanding_ok = false;
    bool nonreturn_ok = false;
    int k_v = 0, k_w = 0, k_tilde_v = 0, k_tilde_w = 0;
    int sigma_v = 0, sigma_w = 0;
    Ratio alpha_v, alpha_w, K_lower;
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    std::optional<EdgeConfig> config;
    bool ok() const { return config.has_value(); }
};

// Runs every check, collecting all failures with distinct codes.
Validation inspect_config(const std::array<Angle, 8>& theta);

// Returns the populated EdgeConfig or throws ConfigError with the first
// failure's code and message.
EdgeConfig validate_config(const std::array<Angle, 8>& theta);

struct FirstReturnNumbers {
    int k_v = 0, k_w = 0, k_tilde_v = 0, k_tilde_w = 0;
};

// Smallest k > 0 such that the k-fold doubling image of either strip arc
// meets an E-arc (a full-circle cover counts).  Requires ordering to hold.
FirstReturnNumbers first_return_numbers(const std::array<Angle, 8>& theta, int cap = 64);

// One affine piece of a piecewise map: t in [lo, hi) maps to
// image_lo + 2^slope_log2 * (t - lo) mod 1.
struct AffinePiece {
    Angle lo, hi;
    int slope_log2 = 1;
    Angle image_lo;
};

// Continuous degree-2 piecewise-affine circle map with power-of-two slopes
// (F itself, G, or G̃).  Construction verifies continuity across breakpoints
// and total degree exactly 2.
class PiecewiseDoublingMap {
public:
    PiecewiseDoublingMap();   // plain doubling F
    explicit PiecewiseDoublingMap(std::vector<AffinePiece> pieces);

    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    Angle operator()(const Angle& t) const;   // exact evaluation
    const AffinePiece& piece_at(const Angle& t) const;

private:
    std::vector<AffinePiece> pieces_;   // sorted by lo; last wraps to first
};

// The boundary circle map G: doubling outside the V/W arcs, affine with
// slope 2^(k_v - k̃_v + 1) on V-arcs (image (2Θ1, 2Θ3)) and slope
// 2^(k_w - k̃_w + 1) on W-arcs (image (2Θ3, 2Θ4)).  Each strip piece is
// checked against the first-return composition form; a target arc longer
// than 2^-(k̃-1) is a branch-selection ambiguity and is rejected.
PiecewiseDoublingMap build_forward_map(const EdgeConfig& cfg);

// G̃: same construction with (V, W) and (Ṽ, W̃) exchanged.
PiecewiseDoublingMap build_backward_map(const EdgeConfig& cfg);

inline constexpr std::uint64_t kDefaultStateCap = 100000;

// The conjugating homeomorphism value H(t) via the digit algorithm: the n-th
// binary digit of H(t) is [G^(n-1)(t) >= 1/2].  Exact cycle detection; a cap
// hit raises NoCycleError.  Asserts the shift identity H(G t) = 2 H(t) on
// the computed digit stream.
Angle conjugacy_image(const PiecewiseDoublingMap& map, const Angle& t,
                      std::uint64_t state_cap = kDefaultStateCap);

// H with its inverse H̃ and the identity-extension action on angles.
class SurgeryHomeo {
public:
    explicit SurgeryHomeo(EdgeConfig cfg, std::uint64_t state_cap = kDefaultStateCap);

    const EdgeConfig& config() const { return cfg_; }
    const PiecewiseDoublingMap& forward_map() const { return forward_; }
    const PiecewiseDoublingMap& backward_map() const { return backward_; }

    Angle forward(const Angle& t) const;    // H(t), global digit algorithm
    Angle backward(const Angle& t) const;   // H̃(t)

    // h^n on angles: identity outside the open E-arcs, H (n > 0) or H̃
    // (n < 0) applied |n| times inside.
    Angle map_angle(const Angle& t, long long n) const;

private:
    EdgeConfig cfg_;
    PiecewiseDoublingMap forward_, backward_;
    std::uint64_t state_cap_;
    mutable std::mutex memo_mutex_;
    mutable std::map<Angle, Angle> memo_forward_, memo_backward_;
};

// Angle pairs of the pinching points c_n = h^n(γ_M(Θ2±)) for n in
// [-n_max, n_max], in increasing n; monotone toward Θ1± / Θ4±.
std::vector<std::pair<Angle, Angle>> fundamental_domains(const SurgeryHomeo& homeo, int n_max);

// A tuning word pair (digit words of a component root's two angles).
class TuningWord {
public:
    TuningWord(std::string w0, std::string w1);   // throws FormatError
    const std::string& word0() const { return word0_; }
    const std::string& word1() const { return word1_; }

private:
    std::string word0_, word1_;
};

// Digit substitution 0 -> word0, 1 -> word1 on the canonical expansion.
Angle tune_angle(const TuningWord& word, const Angle& x);

// Tunes all eight angles of cfg.
std::array<Angle, 8> tune_angles(const TuningWord& word, const std::array<Angle, 8>& theta);

// Tunes the config and re-runs the full validation on the result.
Validation tune_config(const TuningWord& word, const EdgeConfig& cfg);

struct HolderData {
    Ratio alpha_v, alpha_w, K_lower;
};

// Exact Hölder exponents k̃_v/k_v, k_w/k̃_w and the distortion lower bound
// max(k_v/k̃_v, k̃_w/k_w).
HolderData holder_data(const EdgeConfig& cfg);
HolderData holder_data(const SurgeryHomeo& homeo);

// True when the (open) E-arcs of the two configurations are disjoint, in
// which case the corresponding homeomorphisms commute.
bool supports_disjoint(const EdgeConfig& a, const EdgeConfig& b);

// A word in the group generated by surgery homeomorphisms, evaluated lazily.
class AngleMap {
public:
    AngleMap() = default;   // identity
    AngleMap(std::shared_ptr<const SurgeryHomeo> homeo, long long power = 1);

    bool is_identity() const { return factors_.empty(); }
    Angle operator()(const Angle& t) const;
    AngleMap inverse() const;

    // (f compose g)(t) = f(g(t)).
    friend AngleMap compose(const AngleMap& f, const AngleMap& g);

private:
    struct Factor {
        std::shared_ptr<const SurgeryHomeo> homeo;
        long long power = 1;
    };
    std::vector<Factor> factors_;   // applied back-to-front
};

AngleMap compose(const AngleMap& f, const AngleMap& g);

} // namespace mandel
