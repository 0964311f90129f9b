#ifndef MGS_LEX_HPP
#define MGS_LEX_HPP

#include <string>
#include <vector>

#include "mgs/polynomial.hpp"

namespace mgs {

/// Coefficient vector <<p1||...||pd>> of a polynomial
/// p(k) = sum_i p_i k^{d-i}/(d-i)!, compared lexicographically. Entries may
/// depend on a segment parameter.
struct CoefficientVector {
    std::vector<UniPoly> entries;  // p_1 first

    std::size_t size() const { return entries.size(); }
    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }

    CoefficientVector at(const Rat& v) const {
        CoefficientVector out;
        for (const auto& e : entries) out.entries.push_back(UniPoly(e.at(v)));
        return out;
    }

    std::string str() const {
        std::string out = "<<";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) out += " || ";
            out += entries[i].str();
        }
        return out + ">>";
    }
};

/// Sign of the first nonzero entry; 0 for the zero vector. Entries must be
/// constants.
inline int lex_sign(const CoefficientVector& v) {
    for (const auto& e : v.entries) {
        if (!e.is_constant()) throw std::invalid_argument("lex_sign on parameter-dependent vector");
        int s = sgn(e.constant_term());
        if (s != 0) return s;
    }
    return 0;
}

/// Lexicographic sign with parameter entries evaluated at x.
inline int lex_sign_at(const CoefficientVector& v, const Rat& x) {
    for (const auto& e : v.entries) {
        int s = sign_at(e, x);
        if (s != 0) return s;
    }
    return 0;
}

/// Lexicographic sign on an interval immediately right of x.
inline int lex_sign_right_of(const CoefficientVector& v, const Rat& x) {
    for (const auto& e : v.entries) {
        int s = sign_right_of(e, x);
        if (s != 0) return s;
    }
    return 0;
}

/// Lexicographic sign on an interval immediately left of x.
inline int lex_sign_left_of(const CoefficientVector& v, const Rat& x) {
    for (const auto& e : v.entries) {
        int s = sign_left_of(e, x);
        if (s != 0) return s;
    }
    return 0;
}

/// A bound beyond which the polynomial sum_i v_i k^{d-i}/(d-i)! has the sign
/// of its leading nonzero coefficient (Cauchy-style).
inline UniPoly lex_polynomial(const CoefficientVector& v, const std::string& kvar = "k") {
    const int d = static_cast<int>(v.size());
    std::vector<Rat> coeffs(static_cast<std::size_t>(d), Rat(0));  // degree d-1 polynomial in k
    Rat fact(1);
    for (int i = d; i >= 1; --i) {
        // entry p_i carries k^{d-i}/(d-i)!
        if (!v.entries[static_cast<std::size_t>(i - 1)].is_constant())
            throw std::invalid_argument("lex_polynomial needs constant entries");
        coeffs[static_cast<std::size_t>(d - i)] =
            v.entries[static_cast<std::size_t>(i - 1)].constant_term() / fact;
        fact *= (d - i + 1);
    }
    return UniPoly(std::move(coeffs), kvar);
}

inline Rat lex_cauchy_bound(const CoefficientVector& v) {
    UniPoly q = lex_polynomial(v);
    if (q.is_zero()) return Rat(1);
    Rat lead = q.leading(), bound(1);
    for (int i = 0; i < q.degree(); ++i) {
        Rat r = Rat(1) + mgs::abs(q.coeff(static_cast<std::size_t>(i)) / lead);
        if (r > bound) bound = r;
    }
    return bound + 1;
}

}  // namespace mgs

#endif
