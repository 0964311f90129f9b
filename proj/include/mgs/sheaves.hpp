#ifndef MGS_SHEAVES_HPP
#define MGS_SHEAVES_HPP

#include <string>
#include <vector>

#include "mgs/chow.hpp"

namespace mgs {

/// Polynomial in the Riemann-Roch twist exponent k, coefficients ascending.
using KPoly = std::vector<UniPoly>;

inline KPoly kpoly_zero(int dim) { return KPoly(static_cast<std::size_t>(dim) + 1, UniPoly()); }

inline KPoly& kpoly_add(KPoly& a, const KPoly& b, const UniPoly& scale = UniPoly(Rat(1))) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i] * scale;
    return a;
}

inline Rat kpoly_at(const KPoly& p, const Rat& k, const Rat& param) {
    Rat acc(0), kp(1);
    for (const auto& c : p) {
        acc += c.at(param) * kp;
        kp *= k;
    }
    return acc;
}

inline std::string kpoly_str(const KPoly& p) {
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + p[i].str() + ")";
        if (i >= 1) out += "*k";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

/// Topological type of a sheaf, given by its Chern character.
struct SheafType {
    std::string name;
    GradedClass ch;  // ch0 = rank in degree 0

    Rat rank() const {
        const UniPoly& r = ch.coord(0, 0);
        if (!r.is_constant()) throw std::logic_error("parameter-dependent rank");
        return r.constant_term();
    }
};

inline SheafType make_sheaf(const NumericalModel& m, std::string name, const Rat& rank,
                            const GradedClass& c1, const GradedClass& ch2 = {},
                            const GradedClass& ch3 = {}) {
    GradedClass ch(m);
    ch.coord(0, 0) = UniPoly(rank);
    if (!c1.empty()) ch += c1;
    if (!ch2.empty()) ch += ch2;
    if (!ch3.empty()) ch += ch3;
    return SheafType{std::move(name), std::move(ch)};
}

inline SheafType structure_sheaf(const NumericalModel& m) {
    return SheafType{"O", m.one()};
}

/// Hilb_i(E) = (ch(E) Todd(X))_i.
inline GradedClass Hilb(const SheafType& E, int i) {
    return multiply(E.ch, E.ch.model().todd()).component(i);
}

/// hilb_i(E) = Hilb_i(E) / rank(E).
inline GradedClass hilb(const SheafType& E, int i) {
    return UniPoly(Rat(1) / E.rank()) * Hilb(E, i);
}

/// hilb_i(F, E) = hilb_i(F) - hilb_i(E).
inline GradedClass hilb_diff(const SheafType& F, const SheafType& E, int i) {
    return hilb(F, i) - hilb(E, i);
}

/// One term of a formal sum of line bundles: coefficient (possibly linear in
/// the segment parameter) times a declared power of a base divisor class, so
/// ch = exp(power * c1(base)) is exact. Arbitrary divisor classes enter with
/// power 1.
struct BundleTerm {
    UniPoly coeff;
    GradedClass base_c1;  // degree-1 class of the base bundle
    long power = 1;

    GradedClass c1() const { return UniPoly(Rat(power)) * base_c1; }
};

/// Non-negative formal combination of line bundles; carrier of all twists.
struct FormalBundleSum {
    std::vector<BundleTerm> terms;

    const NumericalModel& model() const {
        if (terms.empty()) throw std::logic_error("empty formal sum");
        return terms.front().base_c1.model();
    }

    UniPoly rank() const {
        UniPoly r;
        for (const auto& t : terms) r += t.coeff;
        return r;
    }
    GradedClass c1() const {
        GradedClass out(model());
        for (const auto& t : terms) out += t.coeff * t.c1();
        return out;
    }
    GradedClass ch2() const {
        GradedClass out(model());
        for (const auto& t : terms) {
            GradedClass c = t.c1();
            out += t.coeff * (Rat(1, 2) * multiply(c, c));
        }
        return out;
    }
    /// Full Chern character, coefficients extended linearly.
    GradedClass ch() const {
        const NumericalModel& m = model();
        GradedClass out(m);
        for (const auto& t : terms) out += t.coeff * m.exp_class(t.c1());
        return out;
    }

    /// Coefficients must be nonnegative on [0,1]; linear coefficients are
    /// checked at the endpoints.
    bool coefficients_admissible() const {
        for (const auto& t : terms) {
            if (t.coeff.degree() > 1) {
                // conservative: sample via endpoint + vertex not needed, all
                // uses are degree <= 1
                if (t.coeff.at(0) < 0 || t.coeff.at(1) < 0) return false;
            } else if (t.coeff.at(0) < 0 || t.coeff.at(1) < 0) {
                return false;
            }
        }
        return true;
    }

    FormalBundleSum at(const Rat& v) const {
        FormalBundleSum out;
        for (const auto& t : terms) {
            if (t.coeff.at(v) == 0) continue;
            out.terms.push_back({UniPoly(t.coeff.at(v)), t.base_c1, t.power});
        }
        return out;
    }
};

inline FormalBundleSum trivial_sum(const NumericalModel& m, const UniPoly& coeff) {
    GradedClass zero(m);
    return FormalBundleSum{{BundleTerm{coeff, zero.component(1), 1}}};
}

inline FormalBundleSum operator+(const FormalBundleSum& a, const FormalBundleSum& b) {
    FormalBundleSum out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

inline FormalBundleSum operator*(const UniPoly& s, const FormalBundleSum& a) {
    FormalBundleSum out = a;
    for (auto& t : out.terms) t.coeff *= s;
    return out;
}

/// Distributed tensor product: coefficients multiply, first Chern classes add.
inline FormalBundleSum tensor_sum(const FormalBundleSum& a, const FormalBundleSum& b) {
    FormalBundleSum out;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            GradedClass c1 = ta.c1() + tb.c1();
            out.terms.push_back({ta.coeff * tb.coeff, std::move(c1), 1});
        }
    return out;
}

/// chi(E tensor L^k tensor B) = int ch(E) e^{k c1(L)} ch(B) Todd(X),
/// as an exact polynomial in k.
inline KPoly euler_characteristic(const SheafType& E, const DivisorClass& L,
                                  const FormalBundleSum* B = nullptr) {
    const NumericalModel& m = E.ch.model();
    GradedClass fixed = multiply(E.ch, m.todd());
    if (B) fixed = multiply(fixed, B->ch());
    std::vector<GradedClass> ek = m.exp_divisor(L);
    KPoly out = kpoly_zero(m.dim());
    for (std::size_t i = 0; i < ek.size(); ++i) out[i] = integrate(multiply(fixed, ek[i]));
    return out;
}

inline Rat euler_characteristic_at(const SheafType& E, const DivisorClass& L, long k,
                                   const FormalBundleSum* B = nullptr) {
    return kpoly_at(euler_characteristic(E, L, B), Rat(k), Rat(0));
}

}  // namespace mgs

#endif
