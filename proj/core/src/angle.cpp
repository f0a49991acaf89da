#include "mandel/angle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <charconv>
#include <utility>

namespace mandel {

namespace mp = boost::multiprecision;

Angle::Angle(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw DomainError("angle with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    num_ %= den_;
    if (num_ < 0)
        num_ += den_;
    BigInt g = mp::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Angle Angle::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> BigInt {
        if (s.empty())
            throw FormatError("empty integer in angle");
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size())
            throw FormatError("sign without digits in angle");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw FormatError("invalid character in angle: '" + std::string(s) + "'");
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Angle(parse_int(text), BigInt(1));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den.is_zero())
        throw FormatError("zero denominator in angle: '" + std::string(text) + "'");
    return Angle(std::move(num), std::move(den));
}

std::string Angle::str() const {
    return num_.str() + "/" + den_.str();
}

double Angle::to_double() const {
    return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>();
}

std::strong_ordering Angle::operator<=>(const Angle& other) const {
    BigInt lhs = num_ * other.den_;
    BigInt rhs = other.num_ * den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Angle Angle::operator+(const Angle& other) const {
    return Angle(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

Angle Angle::operator-(const Angle& other) const {
    return Angle(num_ * other.den_ - other.num_ * den_, den_ * other.den_);
}

Angle doubled(const Angle& a, std::uint64_t k) {
    return Angle(a.num() << k, a.den());
}

Angle halved(const Angle& a, bool plus_half) {
    BigInt num = plus_half ? a.num() + a.den() : a.num();
    return Angle(std::move(num), a.den() << 1);
}

namespace {

// v2(n) for n > 0.
std::uint64_t two_adic_valuation(const BigInt& n) {
    assert(!n.is_zero());
    return mp::lsb(n);
}

// Multiplicative order of 2 modulo odd m >= 1.
std::uint64_t order_of_two(const BigInt& m) {
    if (m == 1)
        return 1;
    BigInt r = 2 % m;
    std::uint64_t p = 1;
    while (r != 1) {
        r <<= 1;
        if (r >= m)
            r %= m;
        ++p;
    }
    return p;
}

} // namespace

OrbitClass orbit_classify(const Angle& a) {
    OrbitClass oc;
    const BigInt& den = a.den();
    std::uint64_t l = (den == 1) ? 0 : two_adic_valuation(den);
    BigInt odd = den >> l;
    std::uint64_t p = order_of_two(odd);
    oc.preperiod = l;
    oc.period = p;
    oc.orbit.reserve(l + p + 1);
    Angle t = a;
    for (std::uint64_t i = 0; i < l + p; ++i) {
        oc.orbit.push_back(t);
        t = doubled(t);
    }
    oc.orbit.push_back(t);
    assert(oc.orbit[l + p] == oc.orbit[l]);
    return oc;
}

BinaryExpansion to_expansion(const Angle& a) {
    OrbitClass oc = orbit_classify(a);
    std::string digits;
    digits.reserve(oc.preperiod + oc.period);
    for (std::uint64_t i = 0; i < oc.preperiod + oc.period; ++i) {
        const Angle& t = oc.orbit[i];
        digits.push_back((t.num() * 2 >= t.den()) ? '1' : '0');
    }
    BinaryExpansion e;
    e.preperiod_word = digits.substr(0, oc.preperiod);
    e.period_word = digits.substr(oc.preperiod);
    // Minimality of (l, p) forces canonicity: with a nonempty preperiod word
    // its last digit must differ from the last period digit, and the period
    // word must be primitive.  This is a theorem, not a normalization step.
    assert(e.preperiod_word.empty() ||
           e.preperiod_word.back() != e.period_word.back());
    return e;
}

Angle from_expansion(const BinaryExpansion& e) {
    if (e.period_word.empty())
        throw DomainError("binary expansion with empty period word");
    auto bits_value = [](const std::string& w) {
        BigInt v = 0;
        for (char c : w) {
            if (c != '0' && c != '1')
                throw FormatError("binary expansion contains non-binary digit");
            v <<= 1;
            if (c == '1')
                v += 1;
        }
        return v;
    };
    BigInt pre = bits_value(e.preperiod_word);
    BigInt per = bits_value(e.period_word);
    std::uint64_t l = e.preperiod_word.size();
    std::uint64_t p = e.period_word.size();
    BigInt full = (BigInt(1) << p) - 1;          // 2^p - 1
    BigInt num = pre * full + per;
    BigInt den = full << l;
    return Angle(std::move(num), std::move(den));
}

bool arc_contains(const Arc& arc, const Angle& t) {
    if (arc.start == arc.end)
        return (arc.includes_start || arc.includes_end) && t == arc.start;
    if (t == arc.start)
        return arc.includes_start;
    if (t == arc.end)
        return arc.includes_end;
    if (arc.start < arc.end)
        return arc.start < t && t < arc.end;
    return t > arc.start || t < arc.end;   // arc wraps through 0
}

Angle arc_length(const Arc& arc) {
    return arc.end - arc.start;
}

ArcImage arc_image_under_doubling(const Arc& arc) {
    ArcImage out;
    if (arc.start != arc.end) {
        Angle len = arc_length(arc);
        // length >= 1/2  <=>  2*num >= den
        if (len.num() * 2 >= len.den()) {
            out.covers_circle = true;
            return out;
        }
    }
    out.arc = Arc{doubled(arc.start), doubled(arc.end), arc.includes_start, arc.includes_end};
    return out;
}

} // namespace mandel
