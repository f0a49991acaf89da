#include "mandel/lamination.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <vector>

namespace mandel {

namespace {

// Endpoint of a drawn leaf, value num/den with den = 2^period - 1, plus its
// partner.  All values fit in 64 bits thanks to the period ceiling.
struct Endpoint {
    std::uint64_t num, den;
    std::uint64_t partner_num, partner_den;
};

bool value_less(std::uint64_t an, std::uint64_t ad, std::uint64_t bn, std::uint64_t bd) {
    return static_cast<unsigned __int128>(an) * bd < static_cast<unsigned __int128>(bn) * ad;
}

bool value_eq(std::uint64_t an, std::uint64_t ad, std::uint64_t bn, std::uint64_t bd) {
    return static_cast<unsigned __int128>(an) * bd == static_cast<unsigned __int128>(bn) * ad;
}

struct PairingState {
    std::uint64_t built_to = 0;
    std::vector<Endpoint> endpoints;   // sorted by value
    std::vector<Leaf> leaves;          // in construction order
};

PairingState g_state;
std::mutex g_mutex;

// Exact doubling period of j/(2^q - 1): no proper divisor d of q may satisfy
// j * 2^d == j (mod 2^q - 1).
bool has_exact_period(std::uint64_t j, std::uint64_t q, std::uint64_t m) {
    for (std::uint64_t d = 1; d < q; ++d) {
        if (q % d != 0)
            continue;
        if (((j << d) % m) == j)
            return false;
    }
    return true;
}

// Would the chord (a/m, b/m), a < b, cross any already drawn leaf?  It does
// iff some drawn endpoint lies strictly inside (a/m, b/m) while its partner
// lies strictly outside.
bool crosses_drawn(const PairingState& st, std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    auto it = std::upper_bound(
        st.endpoints.begin(), st.endpoints.end(), std::pair<std::uint64_t, std::uint64_t>(a, m),
        [](const std::pair<std::uint64_t, std::uint64_t>& v, const Endpoint& e) {
            return value_less(v.first, v.second, e.num, e.den);
        });
    for (; it != st.endpoints.end(); ++it) {
        if (!value_less(it->num, it->den, b, m))
            break;
        bool partner_inside = value_less(a, m, it->partner_num, it->partner_den) &&
                              value_less(it->partner_num, it->partner_den, b, m);
        if (!partner_inside)
            return true;
    }
    return false;
}

// Lavaurs procedure for one period: sweep the exact-period-q angles in
// increasing order with a stack, closing (top, current) whenever the chord
// would not cross anything drawn at lower periods.  Same-period chords closed
// earlier in the sweep are nested inside by the stack discipline and cannot
// cross.
void extend_state(PairingState& st, std::uint64_t q_target) {
    for (std::uint64_t q = st.built_to + 1; q <= q_target; ++q) {
        const std::uint64_t m = (std::uint64_t(1) << q) - 1;
        std::vector<std::uint64_t> stack;
        std::vector<Endpoint> fresh;
        for (std::uint64_t j = 1; j < m; ++j) {
            if (!has_exact_period(j, q, m))
                continue;
            if (!stack.empty() && !crosses_drawn(st, stack.back(), j, m)) {
                std::uint64_t a = stack.back();
                stack.pop_back();
                st.leaves.push_back(Leaf{Angle(BigInt(a), BigInt(m)), Angle(BigInt(j), BigInt(m)), q});
                fresh.push_back(Endpoint{a, m, j, m});
                fresh.push_back(Endpoint{j, m, a, m});
                continue;
            }
            stack.push_back(j);
        }
        assert(stack.empty() && "every exact-period angle must pair within its period");
        std::sort(fresh.begin(), fresh.end(), [](const Endpoint& x, const Endpoint& y) {
            return value_less(x.num, x.den, y.num, y.den);
        });
        std::size_t mid = st.endpoints.size();
        st.endpoints.insert(st.endpoints.end(), fresh.begin(), fresh.end());
        std::inplace_merge(st.endpoints.begin(), st.endpoints.begin() + mid, st.endpoints.end(),
                           [](const Endpoint& x, const Endpoint& y) {
                               return value_less(x.num, x.den, y.num, y.den);
                           });
        st.built_to = q;
    }
}

// Angle -> (j, 2^p - 1) in the uint64 representation used by the pairing.
std::pair<std::uint64_t, std::uint64_t> to_fixed_den(const Angle& t, std::uint64_t period) {
    std::uint64_t m = (std::uint64_t(1) << period) - 1;
    BigInt scale = BigInt(m) / t.den();
    BigInt j = t.num() * scale;
    return {j.convert_to<std::uint64_t>(), m};
}

std::string itinerary(const Angle& base, const Angle& x, std::uint64_t length) {
    // Symbol '1' on the half-open arc [base/2, base/2 + 1/2) that contains
    // base itself, '0' on the complementary arc.
    Arc one{halved(base, false), halved(base, true), true, false};
    std::string word;
    word.reserve(length);
    Angle t = x;
    for (std::uint64_t i = 0; i < length; ++i) {
        word.push_back(arc_contains(one, t) ? '1' : '0');
        t = doubled(t);
    }
    return word;
}

} // namespace

std::uint64_t component_period(const Angle& t) {
    OrbitClass oc = orbit_classify(t);
    if (oc.preperiod != 0)
        throw DomainError("component_period: angle " + t.str() + " is not periodic under doubling");
    return oc.period;
}

Angle conjugate_periodic_angle(const Angle& t) {
    std::uint64_t p = component_period(t);
    if (t.is_zero())
        throw DomainError("conjugate_periodic_angle: angle 0 has no partner");
    if (p > kLaminationPeriodCeiling)
        throw DomainError("conjugate_periodic_angle: period " + std::to_string(p) +
                          " exceeds the supported ceiling " +
                          std::to_string(kLaminationPeriodCeiling));
    std::lock_guard<std::mutex> lock(g_mutex);
    extend_state(g_state, p);
    auto [j, m] = to_fixed_den(t, p);
    auto it = std::lower_bound(
        g_state.endpoints.begin(), g_state.endpoints.end(), std::pair<std::uint64_t, std::uint64_t>(j, m),
        [](const Endpoint& e, const std::pair<std::uint64_t, std::uint64_t>& v) {
            return value_less(e.num, e.den, v.first, v.second);
        });
    if (it == g_state.endpoints.end() || !value_eq(it->num, it->den, j, m))
        throw DomainError("conjugate_periodic_angle: no leaf endpoint at " + t.str());
    return Angle(BigInt(it->partner_num), BigInt(it->partner_den));
}

bool colanding(const Angle& t1, const Angle& t2) {
    if (t1 == t2)
        return true;
    OrbitClass a = orbit_classify(t1);
    OrbitClass b = orbit_classify(t2);
    if (a.preperiod == 0 && b.preperiod == 0) {
        if (t1.is_zero() || t2.is_zero())
            return false;
        if (a.period != b.period)
            return false;
        return conjugate_periodic_angle(t1) == t2;
    }
    if (a.preperiod == 0 || b.preperiod == 0)
        return false;   // mixed periodic/preperiodic never co-land
    if (a.preperiod != b.preperiod || a.period != b.period)
        return false;
    // Symmetric itinerary criterion: each angle's kneading of the other, with
    // respect to the diameter through its own halves, must match its own.
    std::uint64_t len = a.preperiod + a.period;
    return itinerary(t1, t1, len) == itinerary(t1, t2, len) &&
           itinerary(t2, t2, len) == itinerary(t2, t1, len);
}

Lamination build_lamination(std::uint64_t max_period, std::uint64_t bound) {
    if (max_period > bound)
        throw DomainError("build_lamination: max_period " + std::to_string(max_period) +
                          " exceeds the bound " + std::to_string(bound) +
                          " (combinatorial explosion guard)");
    if (max_period > kLaminationPeriodCeiling)
        throw DomainError("build_lamination: max_period exceeds the hard ceiling " +
                          std::to_string(kLaminationPeriodCeiling));
    Lamination lam;
    lam.max_period = max_period;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        extend_state(g_state, max_period);
        for (const Leaf& leaf : g_state.leaves)
            if (leaf.period <= max_period)
                lam.leaves.push_back(leaf);
    }
    std::sort(lam.leaves.begin(), lam.leaves.end(), [](const Leaf& x, const Leaf& y) {
        if (x.period != y.period)
            return x.period < y.period;
        return x.low < y.low;
    });
    return lam;
}

bool leaves_link(const Leaf& a, const Leaf& b) {
    if (a.low == b.low || a.low == b.high || a.high == b.low || a.high == b.high)
        return false;
    int inside = 0;
    if (a.low < b.low && b.low < a.high)
        ++inside;
    if (a.low < b.high && b.high < a.high)
        ++inside;
    return inside == 1;
}

std::string lamination_text(const Lamination& lam) {
    std::string out;
    for (const Leaf& leaf : lam.leaves) {
        out += leaf.low.str();
        out += ' ';
        out += leaf.high.str();
        out += '\n';
    }
    return out;
}

} // namespace mandel
