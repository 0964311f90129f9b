#ifndef MGS_WALLS_HPP
#define MGS_WALLS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mgs/stability.hpp"

namespace mgs {

/// The wall of index i attached to a subsheaf type F inside tau: the locus
/// beta_{F,i}(L) = integral of hilb_i(F,tau) c1(L)^{d-i} = 0 in the ample
/// cone. Trivial walls (form identically zero) cut out everything and are
/// excluded from generality verdicts.
struct WallFunction {
    enum class Kind { empty, everything, nontrivial };

    SheafType F;
    int index = 1;
    GradedClass form;  // hilb_index(F, tau)
    Kind kind = Kind::nontrivial;

    bool trivial() const { return kind == Kind::everything; }
};

inline WallFunction make_wall(const SheafType& F, const SheafType& tau, int i) {
    const NumericalModel& m = F.ch.model();
    const int d = m.dim();
    if (i < 1 || i > d) throw std::invalid_argument("wall index out of range");
    WallFunction w;
    w.F = F;
    w.index = i;
    w.form = hilb_diff(F, tau, i);

    // Pair the form against every degree-(d-i) monomial in degree-1 basis
    // elements: all pairings zero means the form vanishes on every divisor.
    const int n = d - i;
    std::vector<std::size_t> mono(static_cast<std::size_t>(n), 0);
    bool all_zero = true;
    while (true) {
        GradedClass prod = m.one();
        for (int k = 0; k < n; ++k) prod = m.multiply(prod, m.basis_class(1, mono[static_cast<std::size_t>(k)]));
        if (!m.integrate(m.multiply(w.form, prod)).is_zero()) {
            all_zero = false;
            break;
        }
        // next multi-index (non-decreasing, monomials up to symmetry)
        int pos = n - 1;
        while (pos >= 0 && mono[static_cast<std::size_t>(pos)] + 1 >= m.basis_size(1)) --pos;
        if (pos < 0) break;
        ++mono[static_cast<std::size_t>(pos)];
        for (int k = pos + 1; k < n; ++k) mono[static_cast<std::size_t>(k)] = mono[static_cast<std::size_t>(pos)];
    }
    if (all_zero)
        w.kind = WallFunction::Kind::everything;
    else if (n == 0)
        w.kind = WallFunction::Kind::empty;  // nonzero constant, never crossed
    else
        w.kind = WallFunction::Kind::nontrivial;
    return w;
}

/// beta_{F,i} evaluated on a (possibly parameter-dependent) divisor class.
inline UniPoly beta_at(const WallFunction& w, const GradedClass& divisor) {
    const NumericalModel& m = w.form.model();
    GradedClass acc = w.form;
    for (int k = 0; k < m.dim() - w.index; ++k) acc = m.multiply(acc, divisor);
    return m.integrate(acc);
}

/// The full vector (beta_1, ..., beta_d) at a fixed ample class.
inline std::vector<Rat> beta(const SheafType& F, const SheafType& tau, const DivisorClass& L) {
    const NumericalModel& m = F.ch.model();
    std::vector<Rat> out;
    for (int i = 1; i <= m.dim(); ++i) {
        UniPoly b = beta_at(make_wall(F, tau, i), L.cls);
        if (!b.is_constant()) throw std::logic_error("parameter-dependent divisor in beta");
        out.push_back(b.constant_term());
    }
    return out;
}

/// Restriction of beta_{F,i} to the line (1-u) L0 + u L1, as a polynomial in
/// u of degree <= d - i.
inline UniPoly beta_on_line(const WallFunction& w, const DivisorClass& L0, const DivisorClass& L1,
                            const std::string& var = "u") {
    UniPoly u = UniPoly::variable(var);
    GradedClass line = (UniPoly(Rat(1)) - u) * L0.cls + u * L1.cls;
    return beta_at(w, line);
}

inline RootReport walls_on_ample_line(const SheafType& F, const SheafType& tau, const DivisorClass& L0,
                                      const DivisorClass& L1, int i) {
    return isolate_roots(beta_on_line(make_wall(F, tau, i), L0, L1), Rat(0), Rat(1));
}

/// Is L away from every nontrivial wall of the family?
struct GeneralityReport {
    bool general = true;
    std::string witness_member;
    int witness_index = 0;
};

inline GeneralityReport is_general(const DivisorClass& L, const SubsheafFamily& fam) {
    const int d = fam.ambient.ch.model().dim();
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        for (int i = 1; i <= d - 1; ++i) {
            WallFunction w = make_wall(F, fam.ambient, i);
            if (w.trivial()) continue;
            UniPoly b = beta_at(w, L.cls);
            if (b.is_zero()) return {false, F.name, i};
        }
    }
    return {};
}

/// Signs of the second-kind-and-higher walls at a point of the ample cone.
struct SecondKindReport {
    struct Entry {
        std::string member;
        int index;
        int sign;    // of beta_{F,i}(omega)
        bool trivial;
    };
    std::vector<Entry> entries;
    bool admissible = true;  // no zero among nontrivial walls
};

inline SecondKindReport second_kind_membership(const DivisorClass& omega, const SubsheafFamily& fam) {
    const int d = fam.ambient.ch.model().dim();
    SecondKindReport rep;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        for (int i = 2; i <= d - 1; ++i) {
            WallFunction w = make_wall(F, fam.ambient, i);
            UniPoly b = beta_at(w, omega.cls);
            int s = b.is_zero() ? 0 : sgn(b.constant_term());
            rep.entries.push_back({F.name, i, s, w.trivial()});
            if (!w.trivial() && s == 0) rep.admissible = false;
        }
    }
    return rep;
}

/// Verdict on how the walls of the family cut the ample segment L0 -- L1.
struct SeparationReport {
    enum class Verdict { no_wall, single_first_kind, other };
    Verdict verdict = Verdict::no_wall;
    std::vector<int> root_counts;  // per index 1..d-1, summed over members
    std::string detail;
};

inline SeparationReport classify_separation(const SubsheafFamily& fam, const DivisorClass& L0,
                                            const DivisorClass& L1) {
    const int d = fam.ambient.ch.model().dim();
    SeparationReport rep;
    rep.root_counts.assign(static_cast<std::size_t>(d - 1), 0);
    bool endpoint_on_wall = false;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        for (int i = 1; i <= d - 1; ++i) {
            WallFunction w = make_wall(F, fam.ambient, i);
            if (w.trivial()) continue;
            UniPoly restr = beta_on_line(w, L0, L1);
            RootReport roots = isolate_roots(restr, Rat(0), Rat(1));
            if (roots.identically_zero) {
                // vanishes on the whole line but not on the cone: every point
                // of the segment lies on this wall
                endpoint_on_wall = true;
                rep.detail = "wall (" + F.name + ", " + std::to_string(i) + ") contains the segment";
                continue;
            }
            rep.root_counts[static_cast<std::size_t>(i - 1)] += static_cast<int>(roots.count());
            if (sign_at(restr, Rat(0)) == 0 || sign_at(restr, Rat(1)) == 0) {
                endpoint_on_wall = true;
                rep.detail = "endpoint on wall (" + F.name + ", " + std::to_string(i) + ")";
            }
        }
    }
    int total = 0;
    for (int c : rep.root_counts) total += c;
    if (total == 0 && !endpoint_on_wall) {
        rep.verdict = SeparationReport::Verdict::no_wall;
    } else if (!endpoint_on_wall && rep.root_counts[0] == 1 && total == 1) {
        rep.verdict = SeparationReport::Verdict::single_first_kind;
    } else {
        rep.verdict = SeparationReport::Verdict::other;
        if (rep.detail.empty()) {
            if (rep.root_counts.size() > 1 && rep.root_counts[1] > 0)
                rep.detail = "second-kind wall present";
            else if (rep.root_counts[0] > 1)
                rep.detail = "multiple first-kind walls";
        }
    }
    return rep;
}

/// Walls of a stability segment with their chambers and (rational) chamber
/// representatives.
struct WallPoint {
    Rat value;
    std::vector<std::pair<std::string, int>> tags;  // (member, index)
};

struct Chamber {
    Rat lo, hi;
    Rat representative;
};

struct ChamberDecomposition {
    std::vector<WallPoint> walls;        // strictly increasing in (0,1)
    std::vector<Chamber> chambers;
    std::string param;
};

/// Irrational wall where a rational chamber representative is required.
struct IrrationalWallError : std::runtime_error {
    std::vector<std::pair<Rat, Rat>> intervals;
    explicit IrrationalWallError(std::vector<std::pair<Rat, Rat>> iv)
        : std::runtime_error(
              "irrational wall encountered; chamber representatives must be rational "
              "— re-parameterize the segment so its walls become rational"),
          intervals(std::move(iv)) {}
};

/// Representative validation hook: true means the candidate is generic
/// enough. Violating midpoints are replaced by the midpoint of the upper
/// half-interval, up to a fixed depth.
using GenericityPredicate = std::function<bool(const Rat&)>;

inline Rat pick_representative(const Rat& lo, const Rat& hi, const GenericityPredicate& generic) {
    Rat a = lo, b = hi;
    for (int depth = 0; depth <= 16; ++depth) {
        Rat mid = (a + b) / 2;
        if (!generic || generic(mid)) return mid;
        a = mid;
    }
    throw std::runtime_error("no generic chamber representative found within depth bound");
}

inline ChamberDecomposition segment_walls(const StabilitySegment& seg, const SubsheafFamily& fam,
                                          const GenericityPredicate& generic = nullptr) {
    if (!is_normalized(seg)) throw std::invalid_argument("segment not normalized");
    ChamberDecomposition out;
    out.param = seg.param;
    std::vector<std::pair<Rat, Rat>> irrational;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        CoefficientVector dv = difference_vector(F, fam.ambient, seg);
        for (std::size_t i = 0; i < dv.entries.size(); ++i) {
            if (dv.entries[i].is_zero()) continue;
            RootReport roots = isolate_roots(dv.entries[i], Rat(0), Rat(1));
            for (const auto& r : roots.exact_roots) {
                auto it = std::find_if(out.walls.begin(), out.walls.end(),
                                       [&](const WallPoint& w) { return w.value == r; });
                if (it == out.walls.end()) {
                    out.walls.push_back({r, {}});
                    it = out.walls.end() - 1;
                }
                it->tags.emplace_back(F.name, static_cast<int>(i) + 1);
            }
            for (const auto& iv : roots.irrational_root_intervals) irrational.push_back(iv);
        }
    }
    if (!irrational.empty()) throw IrrationalWallError(std::move(irrational));
    std::sort(out.walls.begin(), out.walls.end(),
              [](const WallPoint& a, const WallPoint& b) { return a.value < b.value; });
    Rat lo(0);
    for (const auto& w : out.walls) {
        out.chambers.push_back({lo, w.value, pick_representative(lo, w.value, generic)});
        lo = w.value;
    }
    out.chambers.push_back({lo, Rat(1), pick_representative(lo, Rat(1), generic)});
    return out;
}

}  // namespace mgs

#endif
