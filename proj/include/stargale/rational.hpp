#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stargale {

using Integer = boost::multiprecision::cpp_int;

// Exact arbitrary-precision fraction. cpp_rational keeps the canonical form
// (denominator > 0, gcd = 1) after every operation.
using Rational = boost::multiprecision::cpp_rational;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when two independently implemented routes to the same predicate
/// disagree; always a bug, never a caller error.
struct TheoremViolation : std::logic_error {
    using std::logic_error::logic_error;
};

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

inline int sign_of(const Rational& q) {
    return q > 0 ? 1 : (q < 0 ? -1 : 0);
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Parses "a", "a/b" or a decimal string like "-1.25" (read exactly as
/// -125/100). No binary floating point is ever involved.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw InputError("bad rational literal: '" + std::string(text) + "'"); };

    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) fail();

    auto is_digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!is_digits(a) || !is_digits(b)) fail();
        Integer nu{std::string(a)};
        Integer de{std::string(b)};
        if (de == 0) fail();
        value = Rational(nu, de);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (!is_digits(frac) || (!whole.empty() && !is_digits(whole))) fail();
        Integer nu = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer scale = 1;
        for (char c : frac) {
            nu = nu * 10 + (c - '0');
            scale *= 10;
        }
        value = Rational(nu, scale);
    } else {
        if (!is_digits(s)) fail();
        value = Rational(Integer(std::string(s)));
    }
    return negative ? Rational(-value) : value;
}

/// "a/b" when the denominator is not 1, plain "a" otherwise.
inline std::string format_rational(const Rational& q) {
    std::string out = num(q).str();
    if (den(q) != 1) {
        out += '/';
        out += den(q).str();
    }
    return out;
}

/// Fixed-point decimal with `digits` fractional digits, truncated toward
/// zero. Deterministic; used only for SVG output, never re-parsed.
inline std::string decimal_string(const Rational& q, int digits = 6) {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Integer scaled = (num(q) * scale) / den(q);  // truncates toward zero
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string raw = scaled.str();
    if (static_cast<int>(raw.size()) <= digits)
        raw.insert(0, digits + 1 - raw.size(), '0');
    std::string out = raw.substr(0, raw.size() - digits) + "." + raw.substr(raw.size() - digits);
    // trim trailing zeros but keep at least one fractional digit
    while (out.size() > 2 && out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
    return neg ? "-" + out : out;
}

inline Integer floor_of(const Rational& q) {
    Integer d = num(q) / den(q);
    if (num(q) < 0 && d * den(q) != num(q)) d -= 1;
    return d;
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

inline Integer lcm_of(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

/// Best rational approximation of x with denominator <= max_den, via
/// continued-fraction convergents and the closing semiconvergent. Returns x
/// itself when its denominator already fits.
inline Rational best_rational_within(const Rational& x, const Integer& max_den) {
    if (max_den < 1) throw InputError("best_rational_within: bound must be >= 1");
    if (den(x) <= max_den) return x;

    Integer p_prev = 0, q_prev = 1;  // h_{-2}/k_{-2}
    Integer p_cur = 1, q_cur = 0;    // h_{-1}/k_{-1} seeded so the first step gives floor
    Integer a = num(x), b = den(x);
    // run the Euclidean expansion until the next convergent would overflow the bound
    while (b != 0) {
        Integer digit = a / b;  // floor for a >= 0; adjust for negatives
        if (a < 0 && digit * b != a) digit -= 1;
        Integer p_next = digit * p_cur + p_prev;
        Integer q_next = digit * q_cur + q_prev;
        if (q_next > max_den) {
            // closing semiconvergent with the largest admissible partial digit;
            // the first iteration always fits (q_next = 1), so q_cur >= 1 here
            Integer t = (max_den - q_prev) / q_cur;
            Rational semi(t * p_cur + p_prev, t * q_cur + q_prev);
            Rational conv(p_cur, q_cur);
            return abs_of(x - semi) < abs_of(x - conv) ? semi : conv;
        }
        Integer r = a - digit * b;
        a = b;
        b = r;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return Rational(p_cur, q_cur);  // exact expansion terminated within bound
}

using RationalVector = std::vector<Rational>;

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw InputError("dot: size mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline int env_int(const char* name, int fallback) {
    if (const char* v = std::getenv(name)) {
        try {
            return std::stoi(v);
        } catch (...) {
            return fallback;
        }
    }
    return fallback;
}

}  // namespace stargale
