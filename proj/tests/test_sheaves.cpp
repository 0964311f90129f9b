#include <catch2/catch_amalgamated.hpp>

#include "mgs/sheaves.hpp"

using namespace mgs;

namespace {

const NumericalModel& M() { return models::p1p2(); }

SheafType worked_F() {
    const NumericalModel& m = M();
    GradedClass c1 = Rat(3) * m.basis_class(1, 0) - Rat(2) * m.basis_class(1, 1);
    return make_sheaf(m, "F", Rat(1), c1);
}

SheafType worked_tau() { return make_sheaf(M(), "tau", Rat(2), {}); }

}  // namespace

TEST_CASE("structure sheaf and Hilb") {
    const NumericalModel& m = M();
    SheafType O = structure_sheaf(m);
    REQUIRE(O.rank() == 1);
    // Hilb_i(O) is the Todd component
    for (int i = 0; i <= 3; ++i) REQUIRE(Hilb(O, i) == m.todd().component(i));
    REQUIRE(hilb(O, 1) == m.todd().component(1));
}

TEST_CASE("hilb_diff cancels the Todd part") {
    SheafType F = worked_F(), tau = worked_tau();
    const NumericalModel& m = M();
    // hilb_1(F, tau) = c1(F)/rk(F) - c1(tau)/rk(tau) = 3h1 - 2h2
    GradedClass expect = Rat(3) * m.basis_class(1, 0) - Rat(2) * m.basis_class(1, 1);
    REQUIRE(hilb_diff(F, tau, 1) == expect);
    REQUIRE(hilb_diff(F, F, 2).is_zero());
}

TEST_CASE("formal bundle sums: rank, c1, ch2, ch") {
    const NumericalModel& m = M();
    DivisorClass A{m.make_divisor({Rat(1), Rat(1)}), true, "A"};
    FormalBundleSum B;
    B.terms.push_back({UniPoly(Rat(2)), A.cls, 3});
    B.terms.push_back({UniPoly(Rat(1, 2)), A.cls, -1});
    REQUIRE(B.rank() == UniPoly(Rat(5, 2)));
    REQUIRE(B.c1() == Rat(11, 2) * A.cls);  // 2*3 + (1/2)*(-1)
    GradedClass asq = m.multiply(A.cls, A.cls);
    REQUIRE(B.ch2() == Rat(37, 4) * asq);  // 2*(9/2) + (1/2)*(1/2)
    // ch agrees with the sum of exponentials
    GradedClass want = Rat(2) * m.exp_class(Rat(3) * A.cls) + Rat(1, 2) * m.exp_class(Rat(-1) * A.cls);
    REQUIRE(B.ch() == want);
    REQUIRE(B.coefficients_admissible());
}

TEST_CASE("tensor product of sums distributes") {
    const NumericalModel& m = M();
    DivisorClass A{m.make_divisor({Rat(1), Rat(0)}), true, "A"};
    DivisorClass B{m.make_divisor({Rat(0), Rat(1)}), true, "B"};
    FormalBundleSum sa{{BundleTerm{UniPoly(Rat(2)), A.cls, 1}}};
    FormalBundleSum sb{{BundleTerm{UniPoly(Rat(3)), B.cls, 2}}};
    FormalBundleSum p = tensor_sum(sa, sb);
    REQUIRE(p.rank() == UniPoly(Rat(6)));
    REQUIRE(p.c1() == Rat(6) * (A.cls + Rat(2) * B.cls));
    REQUIRE(p.ch() == Rat(6) * m.exp_class(A.cls + Rat(2) * B.cls));
}

TEST_CASE("euler characteristic with a twist bundle") {
    const NumericalModel& m = M();
    SheafType O = structure_sheaf(m);
    DivisorClass L{m.make_divisor({Rat(1), Rat(1)}), true, "L"};
    // B = 2 O_X doubles every chi
    FormalBundleSum B = trivial_sum(m, UniPoly(Rat(2)));
    for (long k = 0; k <= 3; ++k)
        REQUIRE(euler_characteristic_at(O, L, k, &B) == 2 * euler_characteristic_at(O, L, k));
    // B = L itself shifts k by one
    FormalBundleSum BL{{BundleTerm{UniPoly(Rat(1)), L.cls, 1}}};
    for (long k = 0; k <= 3; ++k)
        REQUIRE(euler_characteristic_at(O, L, k, &BL) == euler_characteristic_at(O, L, k + 1));
}

TEST_CASE("k-polynomial form matches pointwise evaluation") {
    const NumericalModel& m = M();
    SheafType F = worked_F();
    DivisorClass L{m.make_divisor({Rat(1), Rat(2)}), true, "L"};
    KPoly P = euler_characteristic(F, L);
    REQUIRE(P.size() == 4);
    for (long k = -2; k <= 4; ++k)
        REQUIRE(kpoly_at(P, Rat(k), Rat(0)) == euler_characteristic_at(F, L, k));
}
