#ifndef MGS_RATIONAL_HPP
#define MGS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mgs {

/// Exact rational scalar. Backed by GMP; always canonical (lowest terms,
/// positive denominator), so equality is structural.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline int sgn(const Rat& q) { return ::sgn(q); }

inline Rat abs(const Rat& q) { return ::abs(q); }

inline Rat pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = e > 0 ? base : Rat(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rat out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(b.get_mpq_t()), n);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(b.get_mpq_t()), n);
    out.canonicalize();
    return out;
}

/// Parses "p", "p/q", or "-p/q". Whitespace is not tolerated.
inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Decimal expansion when the denominator is of the form 2^a 5^b, else empty.
inline std::optional<std::string> terminating_decimal(const Rat& q) {
    Int den = q.get_den();
    unsigned long twos = 0, fives = 0;
    while (mpz_even_p(den.get_mpz_t())) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    unsigned long digits = twos > fives ? twos : fives;
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Int scaled = q.get_num() * scale / q.get_den();
    bool neg = scaled < 0;
    std::string s = mgs::abs(Rat(scaled)).get_str();
    if (digits > 0) {
        while (s.size() <= digits) s.insert(0, "0");
        s.insert(s.size() - digits, ".");
    }
    return (neg ? "-" : "") + s;
}

/// Serialization used by all file formats: integers plain, otherwise "p/q".
inline std::string rat_repr(const Rat& q) { return q.get_str(); }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact square root when it exists.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_den().get_mpz_t())) return std::nullopt;
    Rat r(isqrt(q.get_num()), isqrt(q.get_den()));
    r.canonicalize();
    return r;
}

inline Int floor_div(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// c + m*v for a named parameter v. The degenerate slope = 0 case doubles as a
/// plain constant; such values are compatible with any variable.
struct LinScalar {
    Rat constant{0};
    Rat slope{0};
    std::string variable;

    LinScalar() = default;
    LinScalar(Rat c) : constant(std::move(c)) {}
    LinScalar(Rat c, Rat m, std::string var)
        : constant(std::move(c)), slope(std::move(m)), variable(std::move(var)) {}

    bool is_constant() const { return slope == 0; }
    Rat at(const Rat& v) const { return constant + slope * v; }
    bool nonnegative_on_unit_interval() const { return at(0) >= 0 && at(1) >= 0; }

    friend bool operator==(const LinScalar& a, const LinScalar& b) {
        return a.constant == b.constant && a.slope == b.slope &&
               (a.is_constant() || b.is_constant() || a.variable == b.variable);
    }
};

}  // namespace mgs

#endif
