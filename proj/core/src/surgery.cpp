#include "mandel/surgery.hpp"

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

namespace mandel {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;

// ---------------------------------------------------------------------------
// Ratio

Ratio::Ratio(long long n, long long d) : num(n), den(d) {
    if (den == 0)
        throw DomainError("ratio with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Ratio::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

double Ratio::to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

bool ratio_less(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Arc open_arc(const Angle& lo, const Angle& hi) {
    return Arc{lo, hi, false, false};
}

// Intersection test for nonempty open arcs.
bool open_arcs_intersect(const Arc& a, const Arc& b) {
    if (a.start == b.start)
        return true;
    return arc_contains(a, b.start) || arc_contains(b, a.start);
}

Angle sign_offset(int sigma) {
    return sigma > 0 ? Angle(0, 1) : Angle(1, 2);
}

Angle scaled_by_power(const Angle& d, int log2_slope) {
    if (log2_slope >= 0)
        return Angle(d.num() << log2_slope, d.den());
    return Angle(d.num(), d.den() << (-log2_slope));
}

Rational to_rational(const Angle& a) {
    return Rational(a.num(), a.den());
}

BigInt ceil_div(const BigInt& n, const BigInt& d) {
    assert(d > 0);
    if (n > 0)
        return (n + d - 1) / d;
    return -((-n) / d);   // cpp_int division truncates toward zero
}

} // namespace

// ---------------------------------------------------------------------------
// EdgeConfig

std::array<Arc, 2> EdgeConfig::v_arcs() const {
    return {open_arc(theta[0], theta[1]), open_arc(theta[6], theta[7])};
}

std::array<Arc, 2> EdgeConfig::w_arcs() const {
    return {open_arc(theta[1], theta[3]), open_arc(theta[4], theta[6])};
}

std::array<Arc, 2> EdgeConfig::v_tilde_arcs() const {
    return {open_arc(theta[0], theta[2]), open_arc(theta[5], theta[7])};
}

std::array<Arc, 2> EdgeConfig::w_tilde_arcs() const {
    return {open_arc(theta[2], theta[3]), open_arc(theta[4], theta[5])};
}

std::array<Arc, 2> EdgeConfig::e_arcs() const {
    return {open_arc(theta[0], theta[3]), open_arc(theta[4], theta[7])};
}

bool EdgeConfig::in_e_arcs(const Angle& t) const {
    auto arcs = e_arcs();
    return arc_contains(arcs[0], t) || arc_contains(arcs[1], t);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

constexpr const char* kThetaNames[8] = {
    "theta1_minus", "theta2_minus", "theta3_minus", "theta4_minus",
    "theta4_plus",  "theta3_plus",  "theta2_plus",  "theta1_plus",
};

// Checks the four congruences 2^(k-1) fix^e + s = 2^(kt-1) fix^e and
// 2^(k-1) src^e + s = 2^(kt-1) dst^e (mod 1) for both sides e.
bool sign_works(const Angle& s, int k, int kt,
                const Angle& fix_m, const Angle& fix_p,
                const Angle& src_m, const Angle& src_p,
                const Angle& dst_m, const Angle& dst_p) {
    return doubled(fix_m, k - 1) + s == doubled(fix_m, kt - 1) &&
           doubled(fix_p, k - 1) + s == doubled(fix_p, kt - 1) &&
           doubled(src_m, k - 1) + s == doubled(dst_m, kt - 1) &&
           doubled(src_p, k - 1) + s == doubled(dst_p, kt - 1);
}

} // namespace

FirstReturnNumbers first_return_numbers(const std::array<Angle, 8>& theta, int cap) {
    std::array<Arc, 2> e = {open_arc(theta[0], theta[3]), open_arc(theta[4], theta[7])};
    auto first_return = [&](Arc lo_arc, Arc hi_arc, const char* strip) -> int {
        std::array<Arc, 2> arcs = {lo_arc, hi_arc};
        for (int k = 1; k <= cap; ++k) {
            bool meets = false;
            for (Arc& arc : arcs) {
                ArcImage img = arc_image_under_doubling(arc);
                if (img.covers_circle) {
                    meets = true;
                    break;
                }
                arc = img.arc;
                if (open_arcs_intersect(arc, e[0]) || open_arcs_intersect(arc, e[1]))
                    meets = true;
            }
            if (meets)
                return k;
        }
        throw ConfigError(std::string("first-return: strip ") + strip + " does not meet the edge arcs within " +
                          std::to_string(cap) + " doublings");
    };
    FirstReturnNumbers out;
    out.k_v = first_return(open_arc(theta[0], theta[1]), open_arc(theta[6], theta[7]), "V");
    out.k_w = first_return(open_arc(theta[1], theta[3]), open_arc(theta[4], theta[6]), "W");
    out.k_tilde_v = first_return(open_arc(theta[0], theta[2]), open_arc(theta[5], theta[7]), "V~");
    out.k_tilde_w = first_return(open_arc(theta[2], theta[3]), open_arc(theta[4], theta[5]), "W~");
    return out;
}

Validation inspect_config(const std::array<Angle, 8>& theta) {
    Validation v;
    auto fail = [&v](const char* code, std::string message) {
        v.errors.push_back({code, std::move(message)});
    };

    // (1) Eq. (1) strict ordering, with theta1_minus > 0.
    bool ordering = true;
    if (theta[0].is_zero()) {
        ordering = false;
        fail("ordering", "theta1_minus must be strictly positive");
    }
    for (int i = 0; i + 1 < 8; ++i) {
        if (!(theta[i] < theta[i + 1])) {
            ordering = false;
            fail("ordering", std::string(kThetaNames[i]) + " = " + theta[i].str() +
                                 " is not strictly below " + kThetaNames[i + 1] + " = " +
                                 theta[i + 1].str());
        }
    }
    v.ordering_ok = ordering;

    // (2) all angles strictly preperiodic.
    std::array<OrbitClass, 8> orbits;
    bool preperiodic = true;
    for (int i = 0; i < 8; ++i) {
        orbits[i] = orbit_classify(theta[i]);
        if (orbits[i].preperiod == 0) {
            preperiodic = false;
            fail("preperiodic", std::string(kThetaNames[i]) + " = " + theta[i].str() +
                                    " is periodic; all eight angles must be strictly preperiodic");
        }
    }
    v.preperiodic_ok = preperiodic;

    // (3) co-landing of each pair.
    static constexpr int kPairs[4][2] = {{0, 7}, {1, 6}, {2, 5}, {3, 4}};
    bool coland = true;
    for (int p = 0; p < 4; ++p) {
        const Angle& lo = theta[kPairs[p][0]];
        const Angle& hi = theta[kPairs[p][1]];
        if (!colanding(lo, hi)) {
            coland = false;
            fail("colanding", "pair theta" + std::to_string(p + 1) + " (" + lo.str() + ", " +
                                  hi.str() + ") does not co-land");
        }
    }
    v.colanding_ok = coland;

    // (4) non-return: forward doubling images must avoid the open arc
    // (theta1_minus, theta1_plus) through theta4.
    bool nonreturn = ordering;
    if (ordering) {
        Arc through = open_arc(theta[0], theta[7]);
        for (int i = 0; i < 8; ++i) {
            for (std::size_t j = 1; j < orbits[i].orbit.size(); ++j) {
                const Angle& img = orbits[i].orbit[j];
                if (img == theta[0] || img == theta[7]) {
                    v.warnings.push_back(
                        {"orbit-hits-vertex",
                         std::string(kThetaNames[i]) + " reaches " + img.str() + " after " +
                             std::to_string(j) + " doublings; the induced map may be undefined "
                             "at the corresponding dynamic configuration"});
                    continue;
                }
                if (arc_contains(through, img)) {
                    nonreturn = false;
                    fail("nonreturn", std::string(kThetaNames[i]) + " returns to (" +
                                          theta[0].str() + ", " + theta[7].str() + ") after " +
                                          std::to_string(j) + " doublings (image " + img.str() + ")");
                    break;
                }
            }
        }
    }
    v.nonreturn_ok = nonreturn;

    if (!v.errors.empty())
        return v;

    // (5) first-return numbers.
    FirstReturnNumbers fr;
    try {
        fr = first_return_numbers(theta);
    } catch (const ConfigError& e) {
        fail("first-return", e.what());
        return v;
    }
    v.k_v = fr.k_v;
    v.k_w = fr.k_w;
    v.k_tilde_v = fr.k_tilde_v;
    v.k_tilde_w = fr.k_tilde_w;

    // (6) sign determination over {0, 1/2}.
    auto find_sigma = [&theta](int k, int kt, int fix_m, int fix_p) -> int {
        for (int sigma : {+1, -1}) {
            if (sign_works(sign_offset(sigma), k, kt, theta[fix_m], theta[fix_p], theta[1],
                           theta[6], theta[2], theta[5]))
                return sigma;
        }
        return 0;
    };
    v.sigma_v = find_sigma(fr.k_v, fr.k_tilde_v, 0, 7);
    if (v.sigma_v == 0)
        fail("signs", "no sign choice in {0, 1/2} satisfies the V-side matching conditions");
    v.sigma_w = find_sigma(fr.k_w, fr.k_tilde_w, 3, 4);
    if (v.sigma_w == 0)
        fail("signs", "no sign choice in {0, 1/2} satisfies the W-side matching conditions");

    v.alpha_v = Ratio(fr.k_tilde_v, fr.k_v);
    v.alpha_w = Ratio(fr.k_w, fr.k_tilde_w);
    Ratio kv_ratio(fr.k_v, fr.k_tilde_v);
    Ratio kw_ratio(fr.k_tilde_w, fr.k_w);
    v.K_lower = ratio_less(kv_ratio, kw_ratio) ? kw_ratio : kv_ratio;

    if (!v.errors.empty())
        return v;

    EdgeConfig cfg;
    cfg.theta = theta;
    cfg.k_v = fr.k_v;
    cfg.k_w = fr.k_w;
    cfg.k_tilde_v = fr.k_tilde_v;
    cfg.k_tilde_w = fr.k_tilde_w;
    cfg.sigma_v = v.sigma_v;
    cfg.sigma_w = v.sigma_w;
    v.config = cfg;
    return v;
}

EdgeConfig validate_config(const std::array<Angle, 8>& theta) {
    Validation v = inspect_config(theta);
    if (!v.ok())
        throw ConfigError(v.errors.front().code + ": " + v.errors.front().message);
    return *v.config;
}

// ---------------------------------------------------------------------------
// PiecewiseDoublingMap

PiecewiseDoublingMap::PiecewiseDoublingMap()
    : pieces_{AffinePiece{Angle(0, 1), Angle(0, 1), 1, Angle(0, 1)}} {}

PiecewiseDoublingMap::PiecewiseDoublingMap(std::vector<AffinePiece> pieces)
    : pieces_(std::move(pieces)) {
    if (pieces_.empty())
        throw ConfigError("piecewise map needs at least one piece");
    if (pieces_.size() == 1)
        return;   // full-circle single piece, nothing to stitch
    Rational degree = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const AffinePiece& p = pieces_[i];
        const AffinePiece& next = pieces_[(i + 1) % pieces_.size()];
        if (p.hi != next.lo)
            throw ConfigError("piecewise map pieces do not tile the circle at " + p.hi.str());
        if (i + 1 < pieces_.size() && !(p.lo < next.lo))
            throw ConfigError("piecewise map breakpoints are not strictly increasing");
        Angle len = p.hi - p.lo;
        Angle image_hi = p.image_lo + scaled_by_power(len, p.slope_log2);
        if (image_hi != next.image_lo)
            throw ConfigError("piecewise map discontinuous at " + p.hi.str() + ": " +
                              image_hi.str() + " vs " + next.image_lo.str());
        Rational slope = p.slope_log2 >= 0 ? Rational(BigInt(1) << p.slope_log2)
                                           : Rational(1, BigInt(1) << (-p.slope_log2));
        degree += slope * to_rational(len);
    }
    if (degree != 2)
        throw ConfigError("piecewise map degree is not 2");
}

const AffinePiece& PiecewiseDoublingMap::piece_at(const Angle& t) const {
    if (pieces_.size() == 1)
        return pieces_.front();
    if (t < pieces_.front().lo)
        return pieces_.back();   // wrap-around piece
    std::size_t idx = 0;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (pieces_[i].lo <= t)
            idx = i;
        else
            break;
    }
    return pieces_[idx];
}

Angle PiecewiseDoublingMap::operator()(const Angle& t) const {
    const AffinePiece& p = piece_at(t);
    Angle offset = t - p.lo;   // mod 1 handles the wrap-around piece
    return p.image_lo + scaled_by_power(offset, p.slope_log2);
}

// ---------------------------------------------------------------------------
// G and G̃

namespace {

// Exact check of the affine piece against the composition form of the
// first-return construction: x = 2^(k-1) t + s, y the branch of x / 2^(kt-1)
// inside the closed target arc, result 2y.
void check_composition_form(const AffinePiece& piece, int k, int kt, int sigma,
                            const Angle& target_lo, const Angle& target_hi) {
    Angle target_len = target_hi - target_lo;
    if ((target_len.num() << (kt - 1)) >= target_len.den())
        throw ConfigError("branch-selection ambiguity: target arc (" + target_lo.str() + ", " +
                          target_hi.str() + ") is not shorter than 2^-(k~-1) with k~ = " +
                          std::to_string(kt));
    Angle len = piece.hi - piece.lo;
    std::array<Angle, 3> samples = {piece.lo, piece.lo + Angle(len.num(), len.den() * 3),
                                    piece.hi};
    BigInt pow = BigInt(1) << (kt - 1);
    for (const Angle& t : samples) {
        Rational x = to_rational(doubled(t, k - 1) + sign_offset(sigma));
        Rational lo_bound = to_rational(target_lo) * pow - x;
        Rational hi_bound = to_rational(target_hi) * pow - x;
        BigInt j = ceil_div(numerator(lo_bound), denominator(lo_bound));
        if (Rational(j) > hi_bound)
            throw ConfigError("internal: no branch of the composition form hits the target arc at " +
                              t.str());
        Rational y = (x + j) / pow;
        Angle comp(numerator(y) * 2, denominator(y));
        Angle direct = piece.image_lo + scaled_by_power(t - piece.lo, piece.slope_log2);
        if (comp != direct)
            throw ConfigError("internal: composition form disagrees with the affine piece at " +
                              t.str() + ": " + comp.str() + " vs " + direct.str());
    }
}

} // namespace

PiecewiseDoublingMap build_forward_map(const EdgeConfig& c) {
    const Angle &t1m = c.theta[0], &t2m = c.theta[1], &t3m = c.theta[2], &t4m = c.theta[3];
    const Angle &t4p = c.theta[4], &t3p = c.theta[5], &t2p = c.theta[6], &t1p = c.theta[7];
    int sv = c.k_v - c.k_tilde_v + 1;
    int sw = c.k_w - c.k_tilde_w + 1;
    std::vector<AffinePiece> pieces = {
        {t1m, t2m, sv, doubled(t1m)},  // V-
        {t2m, t4m, sw, doubled(t3m)},  // W-
        {t4m, t4p, 1, doubled(t4m)},   // between the b-rays: plain doubling
        {t4p, t2p, sw, doubled(t4p)},  // W+
        {t2p, t1p, sv, doubled(t3p)},  // V+
        {t1p, t1m, 1, doubled(t1p)},   // outside the edge: plain doubling
    };
    check_composition_form(pieces[0], c.k_v, c.k_tilde_v, c.sigma_v, t1m, t3m);
    check_composition_form(pieces[1], c.k_w, c.k_tilde_w, c.sigma_w, t3m, t4m);
    check_composition_form(pieces[3], c.k_w, c.k_tilde_w, c.sigma_w, t4p, t3p);
    check_composition_form(pieces[4], c.k_v, c.k_tilde_v, c.sigma_v, t3p, t1p);
    return PiecewiseDoublingMap(std::move(pieces));
}

PiecewiseDoublingMap build_backward_map(const EdgeConfig& c) {
    const Angle &t1m = c.theta[0], &t2m = c.theta[1], &t3m = c.theta[2], &t4m = c.theta[3];
    const Angle &t4p = c.theta[4], &t3p = c.theta[5], &t2p = c.theta[6], &t1p = c.theta[7];
    int sv = c.k_tilde_v - c.k_v + 1;
    int sw = c.k_tilde_w - c.k_w + 1;
    std::vector<AffinePiece> pieces = {
        {t1m, t3m, sv, doubled(t1m)},  // V~-
        {t3m, t4m, sw, doubled(t2m)},  // W~-
        {t4m, t4p, 1, doubled(t4m)},
        {t4p, t3p, sw, doubled(t4p)},  // W~+
        {t3p, t1p, sv, doubled(t2p)},  // V~+
        {t1p, t1m, 1, doubled(t1p)},
    };
    check_composition_form(pieces[0], c.k_tilde_v, c.k_v, c.sigma_v, t1m, t2m);
    check_composition_form(pieces[1], c.k_tilde_w, c.k_w, c.sigma_w, t2m, t4m);
    check_composition_form(pieces[3], c.k_tilde_w, c.k_w, c.sigma_w, t4p, t2p);
    check_composition_form(pieces[4], c.k_tilde_v, c.k_v, c.sigma_v, t2p, t1p);
    return PiecewiseDoublingMap(std::move(pieces));
}

// ---------------------------------------------------------------------------
// Digit algorithm

namespace {

std::uint64_t den_twos(const BigInt& den) {
    return den == 1 ? 0 : mp::lsb(den);
}

BigInt odd_part(const BigInt& den) {
    return den >> den_twos(den);
}

// Orbit state representing the exact value n / (D * 2^e) with D fixed per
// run; canonical form strips common powers of two so equal values collide.
struct DigitState {
    BigInt n;
    std::int64_t e = 0;
    bool operator==(const DigitState& o) const { return e == o.e && n == o.n; }
};

struct DigitStateHash {
    std::size_t operator()(const DigitState& s) const {
        std::size_t seed = boost::hash<BigInt>()(s.n);
        boost::hash_combine(seed, s.e);
        return seed;
    }
};

struct ScaledPiece {
    BigInt lo_num;
    std::int64_t lo_e = 0;
    BigInt img_num;
    std::int64_t img_e = 0;
    int slope = 1;
};

void canonicalize(DigitState& s) {
    if (s.n.is_zero()) {
        s.e = 0;
        return;
    }
    std::int64_t strip = std::min<std::int64_t>(static_cast<std::int64_t>(mp::lsb(s.n)), s.e);
    if (strip > 0) {
        s.n >>= strip;
        s.e -= strip;
    }
}

} // namespace

Angle conjugacy_image(const PiecewiseDoublingMap& map, const Angle& t, std::uint64_t state_cap) {
    const auto& pieces = map.pieces();

    BigInt shared_odd = odd_part(t.den());
    for (const AffinePiece& p : pieces) {
        shared_odd = mp::lcm(shared_odd, odd_part(p.lo.den()));
        shared_odd = mp::lcm(shared_odd, odd_part(p.image_lo.den()));
    }
    const BigInt& D = shared_odd;

    std::vector<ScaledPiece> scaled;
    scaled.reserve(pieces.size());
    for (const AffinePiece& p : pieces) {
        ScaledPiece s;
        s.lo_e = static_cast<std::int64_t>(den_twos(p.lo.den()));
        s.lo_num = p.lo.num() * (D / odd_part(p.lo.den()));
        s.img_e = static_cast<std::int64_t>(den_twos(p.image_lo.den()));
        s.img_num = p.image_lo.num() * (D / odd_part(p.image_lo.den()));
        s.slope = p.slope_log2;
        scaled.push_back(std::move(s));
    }
    const bool single_piece = scaled.size() == 1;

    DigitState state;
    state.e = static_cast<std::int64_t>(den_twos(t.den()));
    state.n = t.num() * (D / odd_part(t.den()));
    canonicalize(state);

    std::unordered_map<DigitState, std::uint32_t, DigitStateHash> seen;
    std::string digits;
    std::uint32_t cycle_start = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(state, static_cast<std::uint32_t>(digits.size()));
        if (!fresh) {
            cycle_start = it->second;
            break;
        }
        if (digits.size() >= state_cap)
            throw NoCycleError("digit orbit of " + t.str() + " exceeded the cap of " +
                               std::to_string(state_cap) + " states without closing up");

        // n-th digit: value >= 1/2  <=>  2n >= D * 2^e.
        digits.push_back((state.n << 1) >= (D << state.e) ? '1' : '0');

        // Locate the affine piece: the last one whose lo is <= value.
        std::size_t idx = scaled.size() - 1;   // wrap-around piece by default
        if (!single_piece) {
            for (std::size_t i = 0; i < scaled.size(); ++i) {
                // lo_i <= value  <=>  lo_num_i << e  <=  n << lo_e_i
                if ((scaled[i].lo_num << state.e) <= (state.n << scaled[i].lo_e))
                    idx = i;
                else
                    break;
            }
        }
        const ScaledPiece& p = scaled[idx];

        // value' = img + 2^slope * (value - lo) mod 1, all over denominator D * 2^E.
        std::int64_t e1 = std::max(state.e, p.lo_e);
        BigInt diff = (state.n << (e1 - state.e)) - (p.lo_num << (e1 - p.lo_e));
        if (diff < 0)
            diff += D << e1;   // wrap-around piece: value - lo taken mod 1
        std::int64_t e2 = e1 - p.slope;
        if (e2 < 0) {
            diff <<= -e2;
            e2 = 0;
        }
        std::int64_t e3 = std::max(e2, p.img_e);
        BigInt u = (diff << (e3 - e2)) + (p.img_num << (e3 - p.img_e));
        u %= (D << e3);
        state.n = std::move(u);
        state.e = e3;
        canonicalize(state);
    }

    BinaryExpansion expansion;
    expansion.preperiod_word = digits.substr(0, cycle_start);
    expansion.period_word = digits.substr(cycle_start);
    Angle result = from_expansion(expansion);

    // Shift identity H(G t) = 2 H(t): dropping the first digit of the stream
    // must double the value exactly.
    BinaryExpansion shifted;
    if (!expansion.preperiod_word.empty()) {
        shifted.preperiod_word = expansion.preperiod_word.substr(1);
        shifted.period_word = expansion.period_word;
    } else {
        shifted.period_word = expansion.period_word.substr(1) + expansion.period_word.front();
    }
    if (from_expansion(shifted) != doubled(result))
        throw ConfigError("internal: digit stream of " + t.str() +
                          " violates the conjugacy shift identity");
    return result;
}

// ---------------------------------------------------------------------------
// SurgeryHomeo

SurgeryHomeo::SurgeryHomeo(EdgeConfig cfg, std::uint64_t state_cap)
    : cfg_(std::move(cfg)),
      forward_(build_forward_map(cfg_)),
      backward_(build_backward_map(cfg_)),
      state_cap_(state_cap) {}

Angle SurgeryHomeo::forward(const Angle& t) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_forward_.find(t);
        if (it != memo_forward_.end())
            return it->second;
    }
    Angle image = conjugacy_image(forward_, t, state_cap_);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_forward_.emplace(t, image);
    return image;
}

Angle SurgeryHomeo::backward(const Angle& t) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_backward_.find(t);
        if (it != memo_backward_.end())
            return it->second;
    }
    Angle image = conjugacy_image(backward_, t, state_cap_);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_backward_.emplace(t, image);
    return image;
}

Angle SurgeryHomeo::map_angle(const Angle& t, long long n) const {
    if (n == 0 || !cfg_.in_e_arcs(t))
        return t;
    Angle x = t;
    for (long long i = 0; i < (n > 0 ? n : -n); ++i)
        x = n > 0 ? forward(x) : backward(x);
    return x;
}

std::vector<std::pair<Angle, Angle>> fundamental_domains(const SurgeryHomeo& homeo, int n_max) {
    if (n_max < 0)
        throw DomainError("fundamental_domains: n_max must be nonnegative");
    std::vector<std::pair<Angle, Angle>> out;
    out.reserve(2 * n_max + 1);
    const Angle& lo = homeo.config().theta2_minus();
    const Angle& hi = homeo.config().theta2_plus();
    for (int n = -n_max; n <= n_max; ++n)
        out.emplace_back(homeo.map_angle(lo, n), homeo.map_angle(hi, n));
    return out;
}

// ---------------------------------------------------------------------------
// Tuning

TuningWord::TuningWord(std::string w0, std::string w1)
    : word0_(std::move(w0)), word1_(std::move(w1)) {
    if (word0_.empty() || word1_.empty())
        throw FormatError("tuning words must be nonempty");
    if (word0_.size() != word1_.size())
        throw FormatError("tuning words must have equal lengths");
    for (const std::string* w : {&word0_, &word1_})
        for (char c : *w)
            if (c != '0' && c != '1')
                throw FormatError("tuning words must be binary digit strings");
    if (!(word0_ < word1_))
        throw FormatError("tuning word0 must be lexicographically below word1");
}

Angle tune_angle(const TuningWord& word, const Angle& x) {
    BinaryExpansion e = to_expansion(x);
    auto substitute = [&word](const std::string& digits) {
        std::string out;
        out.reserve(digits.size() * word.word0().size());
        for (char c : digits)
            out += (c == '0') ? word.word0() : word.word1();
        return out;
    };
    BinaryExpansion tuned;
    tuned.preperiod_word = substitute(e.preperiod_word);
    tuned.period_word = substitute(e.period_word);
    return from_expansion(tuned);
}

std::array<Angle, 8> tune_angles(const TuningWord& word, const std::array<Angle, 8>& theta) {
    std::array<Angle, 8> out;
    for (std::size_t i = 0; i < theta.size(); ++i)
        out[i] = tune_angle(word, theta[i]);
    return out;
}

Validation tune_config(const TuningWord& word, const EdgeConfig& cfg) {
    return inspect_config(tune_angles(word, cfg.theta));
}

// ---------------------------------------------------------------------------
// Hölder data, composition

HolderData holder_data(const EdgeConfig& cfg) {
    HolderData h;
    h.alpha_v = Ratio(cfg.k_tilde_v, cfg.k_v);
    h.alpha_w = Ratio(cfg.k_w, cfg.k_tilde_w);
    Ratio kv(cfg.k_v, cfg.k_tilde_v);
    Ratio kw(cfg.k_tilde_w, cfg.k_w);
    h.K_lower = ratio_less(kv, kw) ? kw : kv;
    return h;
}

HolderData holder_data(const SurgeryHomeo& homeo) {
    return holder_data(homeo.config());
}

bool supports_disjoint(const EdgeConfig& a, const EdgeConfig& b) {
    for (const Arc& ea : a.e_arcs())
        for (const Arc& eb : b.e_arcs())
            if (open_arcs_intersect(ea, eb))
                return false;
    return true;
}

AngleMap::AngleMap(std::shared_ptr<const SurgeryHomeo> homeo, long long power) {
    if (homeo && power != 0)
        factors_.push_back({std::move(homeo), power});
}

Angle AngleMap::operator()(const Angle& t) const {
    Angle x = t;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
        x = it->homeo->map_angle(x, it->power);
    return x;
}

AngleMap AngleMap::inverse() const {
    AngleMap out;
    out.factors_.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
        out.factors_.push_back({it->homeo, -it->power});
    return out;
}

AngleMap compose(const AngleMap& f, const AngleMap& g) {
    AngleMap out;
    out.factors_ = f.factors_;
    out.factors_.insert(out.factors_.end(), g.factors_.begin(), g.factors_.end());
    return out;
}

} // namespace mandel
