#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mandel/angle.hpp"

namespace mandel {

// A leaf of the (parameter) lamination: an unordered pair of periodic angles
// whose parameter rays land at the same root, stored with low < high.
struct Leaf {
    Angle low, high;
    std::uint64_t period = 0;
    friend bool operator==(const Leaf&, const Leaf&) = default;
};

struct Lamination {
    std::uint64_t max_period = 0;
    std::vector<Leaf> leaves;   // sorted by (period, low)
};

inline constexpr std::uint64_t kDefaultLaminationBound = 16;
// Absolute ceiling on periods the pairing machinery will touch; beyond this
// the sweep over 2^p angles stops being desk scale.
inline constexpr std::uint64_t kLaminationPeriodCeiling = 22;

// Doubling period of a periodic angle (= period of the hyperbolic component
// whose root its parameter ray lands at).  Throws DomainError when t is
// strictly preperiodic.
std::uint64_t component_period(const Angle& t);

// The partner angle co-landing with t (Lavaurs pairing).  Throws DomainError
// for non-periodic t, for t = 0 (the cusp angle has no partner), and for
// periods beyond the ceiling.
Angle conjugate_periodic_angle(const Angle& t);

// Whether the parameter rays at t1 and t2 land at the same point.  Mixed
// periodic/preperiodic inputs never co-land.
bool colanding(const Angle& t1, const Angle& t2);

// All leaves of period <= max_period via the Lavaurs pairing procedure.
// Throws DomainError when max_period exceeds the bound.
Lamination build_lamination(std::uint64_t max_period,
                            std::uint64_t bound = kDefaultLaminationBound);

// True when the leaves cross (exactly one endpoint of b lies strictly inside
// the arc spanned by a).  Leaves sharing an endpoint do not link.
bool leaves_link(const Leaf& a, const Leaf& b);

// One leaf per line as "p1/q1 p2/q2", sorted by (period, low endpoint).
std::string lamination_text(const Lamination& lam);

} // namespace mandel
