#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mgs/plan.hpp"

using namespace mgs;

namespace {

const NumericalModel& M() { return models::p1p2(); }

struct Worked {
    DivisorClass L0, L1;
    SheafType F, tau;
    SubsheafFamily fam;
    SigmaSegment sigma;
};

Worked worked() {
    const NumericalModel& m = M();
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

EtaSegment worked_eta() {
    Worked w = worked();
    return make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 2);
}

Rat rand_rat(std::mt19937& rng, long lo_num, long hi_num, long den) {
    std::uniform_int_distribution<long> d(lo_num, hi_num);
    return rat(d(rng), den);
}

}  // namespace

TEST_CASE("sigma pairing data and genericity") {
    Worked w = worked();
    // c[i][k] = int c1(L_i) c1(L_k)^2
    REQUIRE(w.sigma.c[0][0] == Rat(3));
    REQUIRE(w.sigma.c[0][1] == Rat(8));
    REQUIRE(w.sigma.c[1][0] == Rat(5));
    REQUIRE(w.sigma.c[1][1] == Rat(12));
    REQUIRE(w.sigma.generic);
    REQUIRE(w.sigma.sigma_at(0, Rat(1, 2)) == Rat(1, 6));
    REQUIRE(w.sigma.sigma_at(1, Rat(1, 2)) == Rat(1, 24));
}

TEST_CASE("divisibility modulus and eta exponents") {
    Worked w = worked();
    REQUIRE(minimal_divisibility_a(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4)) == 2);
    EtaSegment eta = worked_eta();
    REQUIRE(eta.a == 2);
    REQUIRE(eta.expo[0][0] == 3);
    REQUIRE(eta.expo[0][1] == 1);
    REQUIRE(eta.expo[1][0] == 1);
    REQUIRE(eta.expo[1][1] == 3);
    REQUIRE(is_normalized(eta.seg));
    // a must be a positive multiple of the modulus
    REQUIRE_THROWS_AS(make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 3), std::invalid_argument);
    REQUIRE_NOTHROW(make_eta(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), 4));
}

TEST_CASE("eta rank/c1/ch2 closed forms hold on 50 random flank draws") {
    Worked w = worked();
    std::mt19937 rng(11);
    int built = 0;
    while (built < 50) {
        Rat t0 = rand_rat(rng, 1, 49, 100);
        Rat t1 = rand_rat(rng, 51, 99, 100);
        long mod = minimal_divisibility_a(w.sigma, Rat(1, 2), t0, t1);
        if (mod > 5000) continue;  // keep exponents small for speed
        // make_eta re-verifies the closed forms exactly and throws on mismatch
        REQUIRE_NOTHROW(make_eta(w.sigma, Rat(1, 2), t0, t1, mod));
        ++built;
    }
}

TEST_CASE("eta u-coefficients of the worked instance") {
    EtaSegment eta = worked_eta();
    Worked w = worked();
    UCoefficients u = eta_u_coefficients(eta, w.F, w.tau);
    UniPoly s2m1({Rat(-1), Rat(2)}, "s");  // 2s - 1
    REQUIRE(u.u1 == Rat(0));
    REQUIRE(u.u2 == s2m1 / Rat(3));
    REQUIRE(u.u3 == Rat(5, 6) * s2m1);
    // eta wall sits at s = 1/2
    ChamberDecomposition cd = segment_walls(eta.seg, w.fam);
    REQUIRE(cd.walls.size() == 1);
    REQUIRE(cd.walls[0].value == Rat(1, 2));
}

TEST_CASE("search_a finds the worked exponent") {
    Worked w = worked();
    REQUIRE(search_a(w.sigma, Rat(1, 2), Rat(1, 4), Rat(3, 4), w.fam) == 2);
}

TEST_CASE("zero-c1 twist: the (1,1) oracle") {
    Worked w = worked();
    DivisorClass A = w.L0;
    long n = 0;
    FormalBundleSum B = make_zero_c1_twist(Rat(1), Rat(1), A, &n);
    REQUIRE(n == 2);
    REQUIRE(B.terms.size() == 3);
    REQUIRE(B.terms[0].coeff == UniPoly(Rat(1, 4)));
    REQUIRE(B.terms[0].power == 2);
    REQUIRE(B.terms[1].coeff == UniPoly(Rat(1, 4)));
    REQUIRE(B.terms[1].power == -2);
    REQUIRE(B.terms[2].coeff == UniPoly(Rat(1, 2)));
    REQUIRE(B.rank() == UniPoly(Rat(1)));
    REQUIRE(B.c1().is_zero());
    GradedClass asq = M().multiply(A.cls, A.cls);
    REQUIRE(B.ch2() == asq);
    // independent recomputation through the full Chern character
    GradedClass ch = B.ch();
    REQUIRE(ch.component(0) == M().one());
    REQUIRE(ch.component(1).is_zero());
    REQUIRE(ch.component(2) == asq);
}

TEST_CASE("zero-c1 twist constraints on 100 random (lambda, mu)") {
    Worked w = worked();
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> num(1, 400);
    std::uniform_int_distribution<long> den(1, 20);
    GradedClass asq = M().multiply(w.L1.cls, w.L1.cls);
    for (int trial = 0; trial < 100; ++trial) {
        Rat lambda = rat(num(rng), den(rng));
        Rat mu = rat(num(rng), den(rng));
        long n = 0;
        FormalBundleSum B = make_zero_c1_twist(lambda, mu, w.L1, &n);
        REQUIRE(B.rank() == UniPoly(lambda));
        REQUIRE(B.c1().is_zero());
        REQUIRE(B.ch2() == mu * asq);
        REQUIRE(B.coefficients_admissible());
        REQUIRE(mu / Rat(n) / Rat(n) < lambda / 2);  // strict positivity of the O_X coefficient
    }
    REQUIRE_THROWS_AS(make_zero_c1_twist(Rat(0), Rat(1), w.L1), std::invalid_argument);
}

TEST_CASE("rank-one twist") {
    Worked w = worked();
    std::array<long, 2> ns{};
    FormalBundleSum C = make_rank_one_twist(Rat(3), Rat(1, 2), w.L0, w.L1, &ns);
    REQUIRE(C.rank() == UniPoly(Rat(1)));
    REQUIRE(C.c1().is_zero());
    GradedClass want = Rat(3) * M().multiply(w.L0.cls, w.L0.cls) +
                       Rat(1, 2) * M().multiply(w.L1.cls, w.L1.cls);
    REQUIRE(C.ch2() == want);
}

TEST_CASE("alphabeta worked solve") {
    std::array<std::array<Rat, 2>, 2> q{{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}}};
    std::array<std::array<Rat, 2>, 2> c{{{Rat(3), Rat(8)}, {Rat(5), Rat(12)}}};  // c[i][k]
    AlphaBetaSolution sol = solve_alphabeta(q, Rat(1, 6), Rat(1, 24), c, Rat(6), Rat(1));
    REQUIRE(sol.alpha[0][0][0] == Rat(3));
    REQUIRE(sol.alpha[0][1][0] == Rat(1, 2));
    REQUIRE(sol.alpha[1][0][0] == Rat(14));
    REQUIRE(sol.alpha[1][1][0] == Rat(20));
    REQUIRE(sol.lambda_min == Rat(5));
    REQUIRE(sol.positive);
    // substitution check of both constraint families, k = 0, 1
    std::array<Rat, 2> r{Rat(1, 6), Rat(1, 24)};
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i)
            REQUIRE(r[0] * sol.alpha[0][i][k] + r[1] * sol.alpha[1][i][k] ==
                    r[static_cast<std::size_t>(k)] * (Rat(6) + q[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
        REQUIRE(r[0] * c[0][static_cast<std::size_t>(k)] * (sol.alpha[0][1][k] - sol.alpha[0][0][k]) ==
                r[1] * c[1][static_cast<std::size_t>(k)] * (sol.alpha[1][0][k] - sol.alpha[1][1][k]));
    }
    // lambda = 4 fails positivity with threshold 5
    AlphaBetaSolution low = solve_alphabeta(q, Rat(1, 6), Rat(1, 24), c, Rat(4), Rat(1));
    REQUIRE_FALSE(low.positive);
    REQUIRE(low.lambda_min == Rat(5));
}

TEST_CASE("alphabeta gauge freedom") {
    std::array<std::array<Rat, 2>, 2> q{{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), Rat(1, 2)}}};
    std::array<std::array<Rat, 2>, 2> c{{{Rat(3), Rat(8)}, {Rat(5), Rat(12)}}};  // c[i][k]
    // any gauge yields an exact solution (constraints are re-verified inside)
    for (long g = -2; g <= 2; ++g) {
        AlphaBetaSolution sol = solve_alphabeta(q, Rat(1, 6), Rat(1, 24), c, Rat(20), Rat(1), Rat(g));
        REQUIRE(sol.beta[0][0][0] == Rat(g));
        REQUIRE(sol.beta[0][0][1] == Rat(g));
    }
    REQUIRE_THROWS_AS(
        solve_alphabeta(q, Rat(1, 6), Rat(1, 24),
                        std::array<std::array<Rat, 2>, 2>{{{Rat(3), Rat(5)}, {Rat(3), Rat(12)}}},
                        Rat(6), Rat(1)),
        std::invalid_argument);
}

TEST_CASE("worked zeta: construction, positivity threshold, delta identity") {
    Worked w = worked();
    EtaSegment eta = worked_eta();
    REQUIRE(minimal_lambda(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4)) == Rat(5));
    REQUIRE_THROWS_AS(make_zeta(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(4), Rat(1)),
                      PositivityFailure);
    try {
        make_zeta(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(4), Rat(1));
    } catch (const PositivityFailure& e) {
        REQUIRE(e.lambda_min == Rat(5));
    }
    REQUIRE(search_b(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(6), w.fam) == Rat(1));
    ZetaSegment z = make_zeta(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(6), Rat(1));
    REQUIRE(z.q[0][0] == Rat(1, 2));
    REQUIRE(z.q[0][1] == Rat(-1, 2));
    REQUIRE(z.q[1][0] == Rat(-1, 2));
    REQUIRE(z.q[1][1] == Rat(1, 2));
    REQUIRE(is_uniform(z.seg, UniformityMode::strict).uniform);
    REQUIRE(is_open(z.seg, w.fam));
    REQUIRE(delta_identity_check(z, w.F, w.tau));
    // endpoints reproduce the eta flank verdicts
    REQUIRE(compare(w.F, w.tau, z.seg, Rat(0)) == compare(w.F, w.tau, eta.seg, Rat(1, 4)));
    REQUIRE(compare(w.F, w.tau, z.seg, Rat(1)) == compare(w.F, w.tau, eta.seg, Rat(3, 4)));
}

TEST_CASE("100 randomized zeta instances pass finaltwist and delta identities") {
    Worked w = worked();
    EtaSegment eta = worked_eta();
    Rat lmin = minimal_lambda(eta, Rat(1, 2), Rat(1, 4), Rat(3, 4));
    std::mt19937 rng(31337);
    std::uniform_int_distribution<long> lnum(1, 60);
    int built = 0;
    while (built < 100) {
        Rat s0 = rand_rat(rng, 1, 49, 100);
        Rat s1 = rand_rat(rng, 51, 99, 100);
        Rat lambda = minimal_lambda(eta, Rat(1, 2), s0, s1) + rat(lnum(rng), 12);
        Rat b = rat(lnum(rng), 6);
        // make_zeta re-verifies the finaltwist properties (1)-(3) exactly and
        // throws on any violation
        ZetaSegment z = make_zeta(eta, Rat(1, 2), s0, s1, lambda, b);
        REQUIRE(delta_identity_check(z, w.F, w.tau));
        ++built;
    }
}

TEST_CASE("cross-product degree bound on zeta segments (100 random n, m)") {
    Worked w = worked();
    EtaSegment eta = worked_eta();
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
        REQUIRE(cross.degree() <= 1);
    }
}

TEST_CASE("zeta rejects bad inputs") {
    Worked w = worked();
    EtaSegment eta = worked_eta();
    REQUIRE_THROWS_AS(make_zeta(eta, Rat(1, 2), Rat(3, 4), Rat(1, 4), Rat(6), Rat(1)),
                      std::invalid_argument);
    // non-generic pairing: L0 = L1 makes c_{0k} = c_{1k}
    SigmaSegment diag = make_sigma(w.L0, w.L0);
    REQUIRE_FALSE(diag.generic);
}
