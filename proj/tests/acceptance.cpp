// Acceptance runner: one PASS/FAIL line per criterion, exit nonzero on any
// failure. Every check is exact; any thrown exception fails the criterion.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mgs/io.hpp"

using namespace mgs;

namespace {

struct Worked {
    DivisorClass L0, L1;
    SheafType F, tau;
    SubsheafFamily fam;
    SigmaSegment sigma;
};

Worked worked() {
    const NumericalModel& m = models::p1p2();
    Worked w;
    w.L0 = {m.make_divisor({Rat(1), Rat(1)}), true, "L0"};
    w.L1 = {m.make_divisor({Rat(1), Rat(2)}), true, "L1"};
    GradedClass c1 = Rat(3) * m.basis_class(1, 0) - Rat(2) * m.basis_class(1, 1);
    w.F = make_sheaf(m, "F", Rat(1), c1);
    w.tau = make_sheaf(m, "tau", Rat(2), {});
    w.fam = {w.tau, {w.F}};
    w.sigma = make_sigma(w.L0, w.L1);
    return w;
}

void check(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

// 1. Euler-characteristic oracle
void criterion1() {
    const NumericalModel& m3 = models::p1p2();
    SheafType O3 = structure_sheaf(m3);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            DivisorClass L{m3.make_divisor({Rat(a), Rat(b)}), false, ""};
            check(euler_characteristic_at(O3, L, 1) == Rat(a + 1) * Rat(b + 1) * Rat(b + 2) / 2,
                  "chi(O(a,b)) on P1xP2");
        }
    const NumericalModel& m2 = models::p1p1();
    SheafType O2 = structure_sheaf(m2);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            DivisorClass L{m2.make_divisor({Rat(a), Rat(b)}), false, ""};
            check(euler_characteristic_at(O2, L, 1) == Rat(a + 1) * Rat(b + 1),
                  "chi(O(a,b)) on P1xP1");
        }
}

// 2. Worked wall instance
void criterion2() {
    Worked w = worked();
    CoefficientVector dv = difference_vector(w.F, w.tau, w.sigma.seg);
    UniPoly s2m1({Rat(-1), Rat(2)}, "t");
    check(dv.entries[0] == s2m1 / Rat(3), "h1 = (2t-1)/3");
    check(dv.entries[1] == s2m1 / Rat(6), "h2 = (2t-1)/6");
    check(dv.entries[2].is_zero(), "h3 = 0");
    ChamberDecomposition cd = segment_walls(w.sigma.seg, w.fam);
    check(cd.walls.size() == 1 && cd.walls[0].value == Rat(1, 2), "wall set {1/2}");
    check(semistable(w.fam, w.sigma.seg, Rat(1, 4)).verdict == StabilityVerdict::stable,
          "stable at 1/4");
    check(semistable(w.fam, w.sigma.seg, Rat(1, 2)).verdict == StabilityVerdict::properly_semistable,
          "properly semistable at 1/2");
    check(semistable(w.fam, w.sigma.seg, Rat(3, 4)).verdict == StabilityVerdict::unstable,
          "unstable at 3/4");
}

// 3. Twist builders
void criterion3() {
    Worked w = worked();
    const NumericalModel& m = models::p1p2();
    long n = 0;
    FormalBundleSum B = make_zero_c1_twist(Rat(1), Rat(1), w.L0, &n);
    check(n == 2 && B.terms.size() == 3, "n = 2 with three terms");
    check(B.terms[0].coeff == UniPoly(Rat(1, 4)) && B.terms[0].power == 2 &&
              B.terms[1].coeff == UniPoly(Rat(1, 4)) && B.terms[1].power == -2 &&
              B.terms[2].coeff == UniPoly(Rat(1, 2)),
          "(1/4)(A^2 + A^-2) + (1/2) O_X");
    GradedClass asq = m.multiply(w.L0.cls, w.L0.cls);
    GradedClass ch = B.ch();  // independent recomputation
    check(ch.component(0) == m.one() && ch.component(1).is_zero() && ch.component(2) == asq,
          "rank 1, c1 = 0, ch2 = c1(A)^2 via ch");
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> num(1, 400);
    std::uniform_int_distribution<long> den(1, 20);
    for (int trial = 0; trial < 100; ++trial) {
        Rat lambda = rat(num(rng), den(rng)), mu = rat(num(rng), den(rng));
        FormalBundleSum T = make_zero_c1_twist(lambda, mu, w.L1);
        GradedClass lsq = m.multiply(w.L1.cls, w.L1.cls);
        check(T.rank() == UniPoly(lambda) && T.c1().is_zero() && T.ch2() == mu * lsq,
              "random twist Chern constraints");
    }
}

// 4. alphabeta worked solve
void criterion4() {
    std::array<std::array<Rat, 2>, 2> q{{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}}};
    std::array<std::array<Rat, 2>, 2> c{{{Rat(3), Rat(8)}, {Rat(5), Rat(12)}}};  // c[i][k]
    AlphaBetaSolution sol = solve_alphabeta(q, Rat(1, 6), Rat(1, 24), c, Rat(6), Rat(1));
    check(sol.alpha[0][0][0] == Rat(3) && sol.alpha[0][1][0] == Rat(1, 2) &&
              sol.alpha[1][0][0] == Rat(14) && sol.alpha[1][1][0] == Rat(20),
          "alpha values (3, 1/2, 14, 20) at k = 0");
    std::array<Rat, 2> r{Rat(1, 6), Rat(1, 24)};
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i)
            check(r[0] * sol.alpha[0][i][k] + r[1] * sol.alpha[1][i][k] ==
                      r[static_cast<std::size_t>(k)] *
                          (Rat(6) + q[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]),
                  "constraint family (1)");
        check(r[0] * c[0][static_cast<std::size_t>(k)] * (sol.alpha[0][1][k] - sol.alpha[0][0][k]) ==
                  r[1] * c[1][static_cast<std::size_t>(k)] * (sol.alpha[1][0][k] - sol.alpha[1][1][k]),
              "constraint family (2)");
    }
    AlphaBetaSolution low = solve_alphabeta(q, Rat(1, 6), Rat(1, 24), c, Rat(4), Rat(1));
    check(!low.positive && low.lambda_min == Rat(5), "lambda = 4 fails with lambda_min = 5");
}

// 5. finaltwist properties and delta identity, 100 randomized instances
void criterion5() {
    Worked w = worked();
    EtaSegment eta = make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 2);
    std::mt19937 rng(31337);
    std::uniform_int_distribution<long> snum0(1, 49), snum1(51, 99), lnum(1, 60);
    for (int built = 0; built < 100; ++built) {
        Rat s0 = rat(snum0(rng), 100), s1 = rat(snum1(rng), 100);
        Rat lambda = minimal_lambda(eta, Rat(1, 2), s0, s1) + rat(lnum(rng), 12);
        Rat b = rat(lnum(rng), 6);
        // make_zeta re-verifies finaltwist (1)-(3) exactly; throws on failure
        ZetaSegment z = make_zeta(eta, Rat(1, 2), s0, s1, lambda, b);
        delta_identity_check(z, w.F, w.tau);
    }
}

// 6. Uniformity discrimination
void criterion6() {
    Worked w = worked();
    UniformityReport u = is_uniform(w.sigma.seg, UniformityMode::difference);
    check(!u.uniform && u.k_power == 2, "sigma fails difference mode with k^2 witness");
    EtaSegment eta = make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 2);
    ZetaSegment z = make_zeta(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(6), Rat(1));
    check(is_uniform(z.seg, UniformityMode::strict).uniform, "zeta strictly uniform");

    const NumericalModel& m2 = models::p1p1();
    DivisorClass S0{m2.make_divisor({Rat(1), Rat(2)}), true, "L0"};
    DivisorClass S1{m2.make_divisor({Rat(2), Rat(1)}), true, "L1"};
    DivisorClass Sbar{m2.make_divisor({Rat(1), Rat(1)}), true, "Lbar"};
    SheafType tau2 = make_sheaf(m2, "tau", Rat(2), {});
    SheafType F2 = make_sheaf(m2, "F", Rat(1),
                              m2.basis_class(1, 0) - m2.basis_class(1, 1));
    SubsheafFamily fam2{tau2, {F2}};
    VariationPlan sp = surface_plan(S0, S1, Sbar, fam2, 4);
    check(is_uniform(sp.root, UniformityMode::difference).uniform,
          "surface segment difference-uniform");
}

// 7. Lemma-style cross-product degree bound
void criterion7() {
    Worked w = worked();
    EtaSegment eta = make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 2);
    ZetaSegment z = make_zeta(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(6), Rat(1));
    KPoly PF = multi_hilbert(w.F, z.seg), PE = multi_hilbert(w.tau, z.seg);
    auto eval_k = [](const KPoly& P, long k) {
        UniPoly acc;
        Rat kp(1);
        for (const auto& c : P) {
            acc += c * UniPoly(kp);
            kp *= k;
        }
        return acc;
    };
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> nm(1, 20);
    for (int trial = 0; trial < 100; ++trial) {
        long n = nm(rng), m = nm(rng);
        UniPoly cross = eval_k(PF, n) * eval_k(PE, m) - eval_k(PE, n) * eval_k(PF, m);
        check(cross.degree() <= 1, "cross product degree <= 1 in the parameter");
    }
}

// 8. Chamber certification and lex oracle
void criterion8() {
    Worked w = worked();
    ChamberDecomposition cd = segment_walls(w.sigma.seg, w.fam);
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(1, 9999);
    for (const auto& ch : cd.chambers) {
        std::vector<int> expect = sign_profile(w.fam, w.sigma.seg, ch.representative);
        for (int i = 0; i < 50; ++i) {
            Rat x = ch.lo + (ch.hi - ch.lo) * rat(num(rng), 10000);
            check(sign_profile(w.fam, w.sigma.seg, x) == expect, "constant verdicts per chamber");
        }
    }
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        CoefficientVector v;
        for (int i = 0; i < 3; ++i) v.entries.push_back(UniPoly(Rat(coeff(rng))));
        check(lex_sign(v) == sign_at(lex_polynomial(v), lex_cauchy_bound(v)),
              "lex sign equals large-k evaluation");
    }
}

// 9. End-to-end plan with byte-identical replan
void criterion9() {
    io::Problem p = io::load_problem_file(std::string(MGS_DATA_DIR) + "/worked.prob");
    SubsheafFamily fam = p.require_family();
    PlanOptions opts;
    VariationPlan plan = build_plan(p.divisor("L0"), p.divisor("L1"), fam, opts);
    check(plan.complete, "plan complete");
    check(plan.etas.size() == 1 && plan.etas[0].a == 2, "a = 2 at the sigma wall");
    for (const auto& e : plan.ledger) check(e.passed, "ledger check: " + e.check);
    std::string doc = io::dump_document(io::plan_to_json(plan, p.raw, opts));
    // replan from the stored document and compare bytes
    io::json stored = io::json::parse(doc);
    io::Problem p2 = io::load_problem(stored["problem"]);
    PlanOptions opts2 = io::options_from_json(stored["options"]);
    VariationPlan plan2 = build_plan(p2.divisor("L0"), p2.divisor("L1"), p2.require_family(), opts2);
    std::string doc2 = io::dump_document(io::plan_to_json(plan2, p2.raw, opts2));
    check(doc == doc2, "replan reproduces the document byte-identically");
}

// 10. Root isolation vs sign-scan oracle
void criterion10() {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> coeff(-10, 10);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        int d = deg(rng);
        std::vector<Rat> cs(static_cast<std::size_t>(d) + 1);
        for (auto& c : cs) c = Rat(coeff(rng));
        UniPoly p(cs, "x");
        if (p.is_zero()) continue;
        RootReport rep = isolate_roots(p, Rat(0), Rat(1));
        int scan = 0, prev = 0;
        for (long i = 0; i <= 4096; ++i) {
            Rat x = rat(i, 4096);
            int s = sign_at(p, x);
            if (s == 0) {
                if (x > 0 && x < 1) ++scan;
                prev = 0;
                continue;
            }
            if (prev != 0 && s != prev) ++scan;
            prev = s;
        }
        check(static_cast<int>(rep.count()) == scan, "Sturm count equals sign-scan count");
    }
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void()>> criteria[] = {
        {"1 Euler-characteristic oracle (P1xP2, P1xP1)", criterion1},
        {"2 worked wall instance", criterion2},
        {"3 twist builders", criterion3},
        {"4 alphabeta worked solve", criterion4},
        {"5 finaltwist properties and delta identity (100 random)", criterion5},
        {"6 uniformity discrimination", criterion6},
        {"7 cross-product degree bound (100 random)", criterion7},
        {"8 chamber certification and lex oracle", criterion8},
        {"9 end-to-end plan with byte-identical replan", criterion9},
        {"10 root isolation vs sign-scan oracle (500 random)", criterion10},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        try {
            fn();
            std::cout << "PASS criterion " << name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL criterion " << name << " — " << e.what() << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
