#ifndef MGS_STABILITY_HPP
#define MGS_STABILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mgs/lex.hpp"
#include "mgs/sheaves.hpp"

namespace mgs {

/// One polarization entry: an ample divisor class together with its formal
/// twist bundle (whose coefficients carry the stability weights).
struct PolarizedTerm {
    DivisorClass L;
    FormalBundleSum B;
};

/// Fixed multi-polarization stability parameter: constant coefficients.
struct StabilityParameter {
    std::vector<PolarizedTerm> bundles;
    bool normalized = false;  // asserts sum_j rank(B_j) vol(L_j) = 1
};

/// One-parameter family of stability parameters; coefficients are linear in
/// the named parameter on [0,1].
struct StabilitySegment {
    std::vector<PolarizedTerm> bundles;
    std::string param = "t";

    StabilityParameter at(const Rat& v) const;
};

namespace detail {

inline const NumericalModel& bundle_model(const std::vector<PolarizedTerm>& bundles) {
    if (bundles.empty()) throw std::invalid_argument("empty stability parameter");
    return bundles.front().L.cls.model();
}

inline UniPoly rank_volume(const std::vector<PolarizedTerm>& bundles) {
    const NumericalModel& m = bundle_model(bundles);
    UniPoly acc;
    for (const auto& pb : bundles) acc += pb.B.rank() * m.volume(pb.L);
    return acc;
}

}  // namespace detail

/// Normalization sum_j rank(B_j(v)) vol(L_j) = 1, identically in the
/// parameter (coefficients are linear, so this is an exact polynomial check).
inline bool is_normalized(const StabilitySegment& seg) {
    return detail::rank_volume(seg.bundles) == UniPoly(Rat(1));
}
inline bool is_normalized(const StabilityParameter& sigma) {
    return detail::rank_volume(sigma.bundles) == UniPoly(Rat(1));
}

inline StabilityParameter StabilitySegment::at(const Rat& v) const {
    StabilityParameter out;
    out.normalized = is_normalized(*this);
    for (const auto& pb : bundles) out.bundles.push_back({pb.L, pb.B.at(v)});
    return out;
}

inline bool coefficients_admissible(const StabilitySegment& seg) {
    for (const auto& pb : seg.bundles)
        if (!pb.B.coefficients_admissible()) return false;
    return true;
}

/// P_E(k) = sum_j chi(E tensor L_j^k tensor B_j), exact in k and in the
/// segment parameter.
inline KPoly multi_hilbert(const SheafType& E, const std::vector<PolarizedTerm>& bundles) {
    const NumericalModel& m = detail::bundle_model(bundles);
    KPoly acc = kpoly_zero(m.dim());
    for (const auto& pb : bundles) kpoly_add(acc, euler_characteristic(E, pb.L, &pb.B));
    return acc;
}
inline KPoly multi_hilbert(const SheafType& E, const StabilityParameter& sigma) {
    return multi_hilbert(E, sigma.bundles);
}
inline KPoly multi_hilbert(const SheafType& E, const StabilitySegment& seg) {
    return multi_hilbert(E, seg.bundles);
}

/// Multiplicity alpha_d = d! * (leading k-coefficient of P_E). Under
/// normalization this equals rank(E).
inline UniPoly multiplicity(const SheafType& E, const std::vector<PolarizedTerm>& bundles) {
    const NumericalModel& m = detail::bundle_model(bundles);
    KPoly P = multi_hilbert(E, bundles);
    Rat fact(1);
    for (int i = 2; i <= m.dim(); ++i) fact *= i;
    return P[static_cast<std::size_t>(m.dim())] * fact;
}

namespace detail {

/// Reduced coefficient vector <<p_1||...||p_d>> of P/alpha_d, the leading
/// 1/d! dropped. Entry p_i is (d-i)! times the k^{d-i} coefficient.
inline CoefficientVector reduced_vector(const SheafType& E, const std::vector<PolarizedTerm>& bundles,
                                        const Rat& alpha_d) {
    const NumericalModel& m = bundle_model(bundles);
    const int d = m.dim();
    KPoly P = multi_hilbert(E, bundles);
    if (alpha_d == 0) throw std::domain_error("zero multiplicity for " + E.name);
    CoefficientVector out;
    Rat fact(1);
    std::vector<Rat> facts{Rat(1)};
    for (int i = 1; i <= d; ++i) {
        fact *= i;
        facts.push_back(fact);
    }
    for (int i = 1; i <= d; ++i)
        out.entries.push_back(P[static_cast<std::size_t>(d - i)] *
                              (facts[static_cast<std::size_t>(d - i)] / alpha_d));
    return out;
}

}  // namespace detail

/// Reduced vector for a fixed parameter: divide by alpha_d.
inline CoefficientVector reduced(const SheafType& E, const StabilityParameter& sigma) {
    UniPoly a = multiplicity(E, sigma.bundles);
    if (!a.is_constant()) throw std::logic_error("parameter-dependent multiplicity");
    if (sigma.normalized && a.constant_term() != E.rank())
        throw std::logic_error("normalized parameter with multiplicity != rank for " + E.name);
    return detail::reduced_vector(E, sigma.bundles, a.constant_term());
}

/// Reduced vector along a normalized segment: multiplicity is rank(E),
/// identically in the parameter (asserted).
inline CoefficientVector reduced(const SheafType& E, const StabilitySegment& seg) {
    if (!is_normalized(seg)) throw std::invalid_argument("segment not normalized");
    UniPoly a = multiplicity(E, seg.bundles);
    if (!(a == UniPoly(E.rank())))
        throw std::logic_error("multiplicity != rank on normalized segment for " + E.name);
    return detail::reduced_vector(E, seg.bundles, E.rank());
}

/// Coefficient vector of p_F - p_E.
template <typename Sigma>
inline CoefficientVector difference_vector(const SheafType& F, const SheafType& E, const Sigma& sigma) {
    CoefficientVector pF = reduced(F, sigma), pE = reduced(E, sigma), out;
    for (std::size_t i = 0; i < pF.entries.size(); ++i)
        out.entries.push_back(pF.entries[i] - pE.entries[i]);
    return out;
}

inline int compare(const SheafType& F, const SheafType& E, const StabilityParameter& sigma) {
    return lex_sign(difference_vector(F, E, sigma));
}
inline int compare(const SheafType& F, const SheafType& E, const StabilitySegment& seg, const Rat& at) {
    return lex_sign_at(difference_vector(F, E, seg), at);
}

/// Candidate destabilizing subsheaf types of a fixed ambient type. Standing in
/// for the (non-constructive) bounded family of saturated subsheaves: every
/// verdict below is relative to this family.
struct SubsheafFamily {
    SheafType ambient;
    std::vector<SheafType> members;
};

inline bool degenerate_member(const SubsheafFamily& fam, const SheafType& F) {
    return F.rank() <= 0 || F.rank() >= fam.ambient.rank();
}

enum class StabilityVerdict { stable, properly_semistable, unstable };

inline std::string to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::properly_semistable: return "properly_semistable";
        default: return "unstable";
    }
}

struct SemistableReport {
    StabilityVerdict verdict = StabilityVerdict::stable;
    std::optional<std::string> witness;  // first member attaining the max sign
    std::vector<std::string> warnings;
};

/// Verdict relative to the family at a segment point: unstable iff some
/// member compares +, properly semistable iff the best sign is 0. Degenerate
/// members are excluded with a warning.
inline SemistableReport semistable(const SubsheafFamily& fam, const StabilitySegment& seg, const Rat& at) {
    SemistableReport rep;
    int best = -1;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) {
            rep.warnings.push_back("member '" + F.name + "' has degenerate rank; excluded");
            continue;
        }
        int s = compare(F, fam.ambient, seg, at);
        if (s > best) {
            best = s;
            rep.witness = F.name;
        }
    }
    rep.verdict = best > 0    ? StabilityVerdict::unstable
                  : best == 0 ? StabilityVerdict::properly_semistable
                              : StabilityVerdict::stable;
    if (best < 0) rep.witness.reset();
    return rep;
}

/// Per-member comparison signs at a point, degenerate members skipped.
inline std::vector<int> sign_profile(const SubsheafFamily& fam, const StabilitySegment& seg, const Rat& at) {
    std::vector<int> out;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        out.push_back(compare(F, fam.ambient, seg, at));
    }
    return out;
}

enum class UniformityMode { strict, difference };

struct UniformityReport {
    bool uniform = true;
    // witness: first reduced coefficient whose parameter-slope is nonzero
    int k_power = -1;
    std::string coordinate;
};

/// Uniformity of a normalized segment. The k^{d-1}..k^1 coefficients of P_E
/// are linear functionals of ch(E); evaluating them on each basis coordinate
/// of the model gives the coefficient functions whose parameter-dependence is
/// tested. Strict mode includes the rank coordinate (the E-independent part
/// of the reduced coefficients); difference mode excludes it, since it
/// cancels in p_F - p_E.
inline UniformityReport is_uniform(const StabilitySegment& seg, UniformityMode mode) {
    if (!is_normalized(seg)) throw std::invalid_argument("segment not normalized");
    const NumericalModel& m = detail::bundle_model(seg.bundles);
    const int d = m.dim();
    // Witness scan order: highest k-power first across all coordinates, so
    // the reported power is the largest one whose coefficient varies.
    std::vector<KPoly> deltas;
    std::vector<std::string> names;
    for (int deg = 0; deg <= d; ++deg)
        for (std::size_t idx = 0; idx < m.basis_size(deg); ++idx) {
            if (mode == UniformityMode::difference && deg == 0) continue;
            SheafType delta{m.basis()[static_cast<std::size_t>(deg)][idx], m.basis_class(deg, idx)};
            deltas.push_back(multi_hilbert(delta, seg.bundles));
            names.push_back(delta.name);
        }
    for (int i = d - 1; i >= 1; --i)
        for (std::size_t c = 0; c < deltas.size(); ++c)
            if (!deltas[c][static_cast<std::size_t>(i)].is_constant()) {
                UniformityReport rep;
                rep.uniform = false;
                rep.k_power = i;
                rep.coordinate = names[c];
                return rep;
            }
    return {};
}

/// sigma(v1) and sigma(v2) are equivalent relative to the family: every
/// member's comparison sign agrees at the two points.
inline bool equivalent_at(const StabilitySegment& seg, const SubsheafFamily& fam, const Rat& v1,
                          const Rat& v2, std::string* witness = nullptr) {
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        if (compare(F, fam.ambient, seg, v1) != compare(F, fam.ambient, seg, v2)) {
            if (witness) *witness = F.name;
            return false;
        }
    }
    return true;
}

/// Openness at both endpoints: the verdict at 0 persists on (0, eps) and the
/// verdict at 1 on (1 - eps, 1), detected by derivative cascades on each
/// member's difference vector.
inline bool is_open(const StabilitySegment& seg, const SubsheafFamily& fam,
                    std::string* witness = nullptr) {
    if (!is_normalized(seg)) throw std::invalid_argument("segment not normalized");
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        CoefficientVector v = difference_vector(F, fam.ambient, seg);
        if (lex_sign_at(v, Rat(0)) != lex_sign_right_of(v, Rat(0)) ||
            lex_sign_at(v, Rat(1)) != lex_sign_left_of(v, Rat(1))) {
            if (witness) *witness = F.name;
            return false;
        }
    }
    return true;
}

}  // namespace mgs

#endif
