#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mandel/errors.hpp"

namespace mandel {

using BigInt = boost::multiprecision::cpp_int;

// An external angle: a rational number taken mod 1, kept in lowest terms with
// denominator > 0 and value in [0,1).  All arithmetic is exact.
class Angle {
public:
    Angle() : num_(0), den_(1) {}
    Angle(BigInt num, BigInt den);
    Angle(long long num, long long den) : Angle(BigInt(num), BigInt(den)) {}

    // Parses "p/q" or a bare integer "p".  Throws FormatError.
    static Angle parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    std::string str() const;       // canonical "p/q", e.g. "0/1", "11/56"
    double to_double() const;

    friend bool operator==(const Angle& a, const Angle& b) = default;
    std::strong_ordering operator<=>(const Angle& other) const;

    Angle operator+(const Angle& other) const;   // mod 1
    Angle operator-(const Angle& other) const;   // mod 1

private:
    BigInt num_, den_;
};

// make_angle(p, q) == Angle(p, q); named per the public API.
inline Angle make_angle(BigInt num, BigInt den) { return Angle(std::move(num), std::move(den)); }

// Angle doubling map t -> 2^k t mod 1.
Angle doubled(const Angle& a, std::uint64_t k = 1);

// a/2 (+ 1/2 when plus_half): the two preimages of a under doubling.
Angle halved(const Angle& a, bool plus_half = false);

// Classification of an angle under doubling: eventually periodic with
// preperiod l >= 0 and exact period p >= 1.  orbit holds
// a, 2a, ..., 2^(l+p) a  (length l+p+1, last entry equals entry l).
struct OrbitClass {
    std::uint64_t preperiod = 0;
    std::uint64_t period = 1;
    std::vector<Angle> orbit;
    bool periodic() const { return preperiod == 0; }
};

OrbitClass orbit_classify(const Angle& a);

// Binary expansion 0.w0 \overline{w1}: preperiod word w0 (possibly empty) and
// repeating word w1 (never empty), both over {'0','1'}.
struct BinaryExpansion {
    std::string preperiod_word;
    std::string period_word;
    friend bool operator==(const BinaryExpansion&, const BinaryExpansion&) = default;
};

// Canonical expansion with |w0| = preperiod, |w1| = exact period of the angle.
BinaryExpansion to_expansion(const Angle& a);

// Value of a (not necessarily canonical) expansion.  Throws DomainError when
// the period word is empty.
Angle from_expansion(const BinaryExpansion& e);

// Circular arc swept counterclockwise from start to end; each endpoint is
// included or not.  start == end denotes the degenerate point arc.
struct Arc {
    Angle start, end;
    bool includes_start = false;
    bool includes_end = false;
};

bool arc_contains(const Arc& arc, const Angle& t);

// Length end - start taken mod 1 (a point arc has length 0).
Angle arc_length(const Arc& arc);

// Image of an arc under doubling.  Arcs of length >= 1/2 double onto the
// whole circle; that case is reported instead of returning a bogus arc.
struct ArcImage {
    bool covers_circle = false;
    Arc arc;
};

ArcImage arc_image_under_doubling(const Arc& arc);

// True when t lies strictly between lo and hi counterclockwise.
inline bool in_open_arc(const Angle& lo, const Angle& hi, const Angle& t) {
    return arc_contains(Arc{lo, hi, false, false}, t);
}

} // namespace mandel
