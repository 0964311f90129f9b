#ifndef MGS_PLAN_HPP
#define MGS_PLAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "mgs/segments.hpp"

namespace mgs {

/// Anchors t' < (walls) < t'' with one intermediate point per gap; the
/// parameter values through which the moduli spaces are flipped.
struct FlipSchedule {
    std::string segment_ref;
    std::vector<Rat> anchors;
    std::vector<Rat> intermediates;
};

inline FlipSchedule flip_schedule(const StabilitySegment& seg, const SubsheafFamily& fam,
                                  const Rat& tp, const Rat& tpp, std::string ref = {}) {
    if (!(Rat(0) < tp && tp < tpp && tpp < Rat(1)))
        throw std::invalid_argument("need 0 < t' < t'' < 1");
    UniformityReport u = is_uniform(seg, UniformityMode::difference);
    if (!u.uniform)
        throw std::invalid_argument("flip schedule requires a difference-uniform segment (k^" +
                                    std::to_string(u.k_power) + " coefficient varies)");
    FlipSchedule out;
    out.segment_ref = std::move(ref);
    out.anchors.push_back(tp);
    for (const auto& w : segment_walls(seg, fam).walls)
        if (tp < w.value && w.value < tpp) out.anchors.push_back(w.value);
    out.anchors.push_back(tpp);
    for (std::size_t i = 0; i + 1 < out.anchors.size(); ++i)
        out.intermediates.push_back((out.anchors[i] + out.anchors[i + 1]) / 2);
    return out;
}

struct LedgerEntry {
    std::string check;
    bool passed = false;
    std::string detail;
};

struct ZetaRecord {
    Rat sbar, s0, s1, lambda, b;
    ZetaSegment zeta;
    std::optional<FlipSchedule> schedule;
    bool ok = false;
};

struct EtaRecord {
    Rat tbar, t0, t1;
    long a = 0;
    EtaSegment eta;
    std::vector<WallPoint> walls;
    std::vector<ZetaRecord> zetas;
    bool ok = false;
};

struct VariationPlan {
    std::string kind;  // "threefold-zoom" or "surface"
    SubsheafFamily fam;
    SigmaSegment sigma;            // threefold kind
    StabilitySegment root;         // sigma.seg, or the surface segment
    std::vector<WallPoint> root_walls;
    SeparationReport separation;   // threefold kind
    std::vector<EtaRecord> etas;
    std::optional<FlipSchedule> surface_schedule;
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> warnings;
    bool complete = false;
};

struct PlanOptions {
    std::optional<Rat> lambda;  // default: lambda_min + 1 per eta-wall
    std::optional<long> a;      // default: searched per sigma-wall
    Rat schedule_lo{1, 100};
    Rat schedule_hi{99, 100};
};

namespace detail {

inline void ledger_add(VariationPlan& plan, std::string check, bool passed, std::string detail = {}) {
    plan.ledger.push_back({std::move(check), passed, std::move(detail)});
    if (!plan.ledger.back().passed) plan.complete = false;
}

/// Flank genericity at a sigma-wall tbar: the epsilon term of the eta
/// u-coefficients must not vanish at the flank unless it vanishes
/// identically (member-wise).
inline GenericityPredicate sigma_flank_predicate(const SigmaSegment& sg, const SubsheafFamily& fam,
                                                 const Rat& tbar) {
    const NumericalModel& m = sg.L0.cls.model();
    // precompute the pairings int hilb_1(F, tau) c1(L_j)^2 per member
    std::vector<std::array<Rat, 2>> pairs;
    for (const auto& F : fam.members) {
        if (degenerate_member(fam, F)) continue;
        GradedClass hd1 = hilb_diff(F, fam.ambient, 1);
        std::array<Rat, 2> p;
        for (int j = 0; j < 2; ++j) {
            GradedClass c1sq = m.multiply(sg.L(j).cls, sg.L(j).cls);
            p[static_cast<std::size_t>(j)] = m.integrate(m.multiply(hd1, c1sq)).constant_term();
        }
        pairs.push_back(p);
    }
    return [pairs, &sg, tbar](const Rat& v) {
        for (const auto& p : pairs) {
            if (p[0] == 0 && p[1] == 0) continue;  // epsilon identically zero
            Rat eps(0);
            for (int j = 0; j < 2; ++j) {
                Rat sv = sg.sigma_at(j, v);
                eps += sv * sv / sg.sigma_at(j, tbar) * p[static_cast<std::size_t>(j)];
            }
            if (eps == 0) return false;
        }
        return true;
    };
}

/// Nudge the default schedule window into the wall-free boundary chambers.
inline std::pair<Rat, Rat> schedule_window(const std::vector<WallPoint>& walls, const Rat& lo,
                                           const Rat& hi) {
    Rat a = lo, b = hi;
    if (!walls.empty()) {
        if (walls.front().value <= a) a = walls.front().value / 2;
        if (walls.back().value >= b) b = (walls.back().value + 1) / 2;
    }
    return {a, b};
}

}  // namespace detail

/// The full zooming pipeline: sigma across the ample segment L0 -- L1, one
/// eta per sigma-wall, one zeta (with its flip schedule) per eta-wall.
/// Failures are recorded and the partial plan returned; `complete` is true
/// only when every ledger check passed.
inline VariationPlan build_plan(const DivisorClass& L0, const DivisorClass& L1,
                                const SubsheafFamily& fam, const PlanOptions& opts = {}) {
    VariationPlan plan;
    plan.kind = "threefold-zoom";
    plan.fam = fam;
    plan.complete = true;
    plan.sigma = make_sigma(L0, L1);
    plan.root = plan.sigma.seg;

    plan.separation = classify_separation(fam, L0, L1);
    const char* sep_name =
        plan.separation.verdict == SeparationReport::Verdict::no_wall ? "no_wall"
        : plan.separation.verdict == SeparationReport::Verdict::single_first_kind
            ? "single_first_kind"
            : "other";
    // a non-single separation does not invalidate the plan by itself; the
    // downstream endpoint checks will catch any actual failure
    detail::ledger_add(plan, "separation classification", true,
                       std::string(sep_name) +
                           (plan.separation.detail.empty() ? "" : " (" + plan.separation.detail + ")"));
    if (plan.separation.verdict == SeparationReport::Verdict::other)
        plan.warnings.push_back(
            "polarizations are not separated by a single wall of the first kind; "
            "zeta endpoint equivalences may fail and will be reported");
    detail::ledger_add(plan, "sigma: generic pairing c_{0k} != c_{1k}", plan.sigma.generic);
    {
        std::string w;
        detail::ledger_add(plan, "sigma: open", is_open(plan.sigma.seg, fam, &w), w);
    }

    ChamberDecomposition cd;
    try {
        cd = segment_walls(plan.sigma.seg, fam);
    } catch (const IrrationalWallError& e) {
        detail::ledger_add(plan, "sigma: rational walls", false, e.what());
        return plan;
    }
    plan.root_walls = cd.walls;

    for (std::size_t wi = 0; wi < cd.walls.size(); ++wi) {
        const Rat tbar = cd.walls[wi].value;
        const std::string at = "sigma-wall " + tbar.get_str() + ": ";
        EtaRecord rec;
        rec.tbar = tbar;
        try {
            GenericityPredicate pred = detail::sigma_flank_predicate(plan.sigma, fam, tbar);
            rec.t0 = pick_representative(cd.chambers[wi].lo, cd.chambers[wi].hi, pred);
            rec.t1 = pick_representative(cd.chambers[wi + 1].lo, cd.chambers[wi + 1].hi, pred);
            if (rec.t0 != cd.chambers[wi].representative || rec.t1 != cd.chambers[wi + 1].representative)
                plan.warnings.push_back(at + "flank nudged off the chamber midpoint");

            long modulus = minimal_divisibility_a(plan.sigma, tbar, rec.t0, rec.t1);
            if (opts.a) {
                rec.a = *opts.a;
                rec.eta = make_eta(plan.sigma, tbar, rec.t0, rec.t1, rec.a);
            } else {
                const long cap = modulus << 20;
                std::string witness;
                for (long a = modulus; a <= cap; a *= 2) {
                    EtaSegment eta = make_eta(plan.sigma, tbar, rec.t0, rec.t1, a);
                    bool ok = true;
                    for (const auto& F : fam.members) {
                        if (degenerate_member(fam, F)) continue;
                        if (compare(F, fam.ambient, eta.seg, Rat(0)) !=
                                compare(F, fam.ambient, plan.sigma.seg, rec.t0) ||
                            compare(F, fam.ambient, eta.seg, Rat(1)) !=
                                compare(F, fam.ambient, plan.sigma.seg, rec.t1)) {
                            ok = false;
                            witness = F.name;
                            break;
                        }
                    }
                    if (ok && !is_open(eta.seg, fam, &witness)) ok = false;
                    if (ok) {
                        rec.a = a;
                        rec.eta = eta;
                        break;
                    }
                }
                if (rec.a == 0) throw SearchCapExceeded(at + "no admissible a", witness);
            }
            detail::ledger_add(plan, at + "search_a", true, "a = " + std::to_string(rec.a));
            {
                std::string w;
                bool open = is_open(rec.eta.seg, fam, &w);
                detail::ledger_add(plan, at + "eta open", open, w);
            }
            {
                bool eq = true;
                std::string w;
                for (const auto& F : fam.members) {
                    if (degenerate_member(fam, F)) continue;
                    if (compare(F, fam.ambient, rec.eta.seg, Rat(0)) !=
                            compare(F, fam.ambient, plan.sigma.seg, rec.t0) ||
                        compare(F, fam.ambient, rec.eta.seg, Rat(1)) !=
                            compare(F, fam.ambient, plan.sigma.seg, rec.t1)) {
                        eq = false;
                        w = F.name;
                        break;
                    }
                }
                detail::ledger_add(plan, at + "eta endpoints reproduce sigma flanks", eq, w);
            }
            // u-coefficient cross-validation per member (throws on mismatch)
            for (const auto& F : fam.members) {
                if (degenerate_member(fam, F)) continue;
                eta_u_coefficients(rec.eta, F, fam.ambient);
            }
            detail::ledger_add(plan, at + "eta u-coefficients", true);

            ChamberDecomposition ecd = segment_walls(rec.eta.seg, fam);
            rec.walls = ecd.walls;

            for (std::size_t si = 0; si < ecd.walls.size(); ++si) {
                const Rat sbar = ecd.walls[si].value;
                const std::string zat = at + "eta-wall " + sbar.get_str() + ": ";
                ZetaRecord zr;
                zr.sbar = sbar;
                try {
                    zr.s0 = ecd.chambers[si].representative;
                    zr.s1 = ecd.chambers[si + 1].representative;
                    Rat lmin = minimal_lambda(rec.eta, sbar, zr.s0, zr.s1);
                    zr.lambda = opts.lambda ? *opts.lambda : lmin + 1;
                    detail::ledger_add(plan, zat + "lambda positivity", zr.lambda > lmin,
                                       "lambda = " + zr.lambda.get_str() +
                                           ", lambda_min = " + lmin.get_str());
                    zr.b = search_b(rec.eta, sbar, zr.s0, zr.s1, zr.lambda, fam);
                    detail::ledger_add(plan, zat + "search_b", true, "b = " + zr.b.get_str());
                    zr.zeta = make_zeta(rec.eta, sbar, zr.s0, zr.s1, zr.lambda, zr.b);
                    detail::ledger_add(plan, zat + "finaltwist properties", true);
                    detail::ledger_add(plan, zat + "zeta strictly uniform",
                                       is_uniform(zr.zeta.seg, UniformityMode::strict).uniform);
                    {
                        std::string w;
                        detail::ledger_add(plan, zat + "zeta open", is_open(zr.zeta.seg, fam, &w), w);
                    }
                    {
                        bool eq = true;
                        std::string w;
                        for (const auto& F : fam.members) {
                            if (degenerate_member(fam, F)) continue;
                            if (compare(F, fam.ambient, zr.zeta.seg, Rat(0)) !=
                                    compare(F, fam.ambient, rec.eta.seg, zr.s0) ||
                                compare(F, fam.ambient, zr.zeta.seg, Rat(1)) !=
                                    compare(F, fam.ambient, rec.eta.seg, zr.s1)) {
                                eq = false;
                                w = F.name;
                                break;
                            }
                        }
                        detail::ledger_add(plan, zat + "zeta endpoints reproduce eta flanks", eq, w);
                    }
                    for (const auto& F : fam.members) {
                        if (degenerate_member(fam, F)) continue;
                        delta_identity_check(zr.zeta, F, fam.ambient);
                    }
                    detail::ledger_add(plan, zat + "delta identity", true);

                    ChamberDecomposition zcd = segment_walls(zr.zeta.seg, fam);
                    auto [lo, hi] = detail::schedule_window(zcd.walls, opts.schedule_lo, opts.schedule_hi);
                    zr.schedule = flip_schedule(zr.zeta.seg, fam, lo, hi, "zeta@" + sbar.get_str());
                    detail::ledger_add(plan, zat + "flip schedule", true,
                                       std::to_string(zr.schedule->anchors.size()) + " anchors");
                    zr.ok = true;
                } catch (const std::exception& e) {
                    detail::ledger_add(plan, zat + "construction", false, e.what());
                }
                rec.zetas.push_back(std::move(zr));
            }
            rec.ok = true;
        } catch (const std::exception& e) {
            detail::ledger_add(plan, at + "construction", false, e.what());
        }
        plan.etas.push_back(std::move(rec));
    }

    for (const auto& e : plan.ledger)
        if (!e.passed) plan.complete = false;
    return plan;
}

/// d = 2 direct variant: the twisted segment
/// sigma(t) = (Lbar, Lbar; (t/vol) Lbar_1^a, ((1-t)/vol) Lbar_0^a)
/// is difference-uniform, so its flip schedule needs no zooming.
inline VariationPlan surface_plan(const DivisorClass& L0, const DivisorClass& L1,
                                  const DivisorClass& Lbar, const SubsheafFamily& fam, long a,
                                  const PlanOptions& opts = {}) {
    const NumericalModel& m = Lbar.cls.model();
    if (m.dim() != 2) throw std::invalid_argument("surface plan requires a surface");
    for (std::size_t i = 0; i < m.basis_size(1); ++i)
        if (!Lbar.cls.coord(1, i).is_constant() ||
            Lbar.cls.coord(1, i).constant_term().get_den() != 1)
            throw std::invalid_argument("Lbar must be an integral divisor class");
    if (a <= 0) throw std::invalid_argument("need a > 0");

    VariationPlan plan;
    plan.kind = "surface";
    plan.fam = fam;
    plan.complete = true;
    Rat vol = m.volume(Lbar);
    if (vol <= 0) throw std::invalid_argument("Lbar has non-positive volume");
    UniPoly t = UniPoly::variable("t");
    plan.root.param = "t";
    FormalBundleSum B0{{BundleTerm{t / vol, L1.cls, a}}};
    FormalBundleSum B1{{BundleTerm{(UniPoly(Rat(1)) - t) / vol, L0.cls, a}}};
    plan.root.bundles.push_back({Lbar, B0});
    plan.root.bundles.push_back({Lbar, B1});
    detail::ledger_add(plan, "surface segment normalized", is_normalized(plan.root));

    UniformityReport u = is_uniform(plan.root, UniformityMode::difference);
    detail::ledger_add(plan, "surface segment difference-uniform", u.uniform,
                       u.uniform ? "" : "k^" + std::to_string(u.k_power) + " varies with " + u.coordinate);
    {
        std::string w;
        detail::ledger_add(plan, "surface segment open", is_open(plan.root, fam, &w), w);
    }
    if (!plan.complete) return plan;

    try {
        ChamberDecomposition cd = segment_walls(plan.root, fam);
        plan.root_walls = cd.walls;
        auto [lo, hi] = detail::schedule_window(cd.walls, opts.schedule_lo, opts.schedule_hi);
        plan.surface_schedule = flip_schedule(plan.root, fam, lo, hi, "surface");
        detail::ledger_add(plan, "surface flip schedule", true,
                           std::to_string(plan.surface_schedule->anchors.size()) + " anchors");
    } catch (const std::exception& e) {
        detail::ledger_add(plan, "surface flip schedule", false, e.what());
    }
    for (const auto& e : plan.ledger)
        if (!e.passed) plan.complete = false;
    return plan;
}

}  // namespace mgs

#endif
