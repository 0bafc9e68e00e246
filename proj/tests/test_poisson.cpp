#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dkp/curve.hpp"
#include "dkp/poisson.hpp"

using namespace dkp;

namespace {

Poly A(int n, int m = 0) { return Poly::var(gen::A(n, m)); }
Poly B(int n, int m = 0) { return Poly::var(gen::B(n, m)); }

int mod(int a, int n) { return ((a % n) + n) % n; }

// Second Toda bracket written out from its four defining relations.
Poly toda_bracket2(int N, GenId x, GenId y)
{
    auto one = [&](GenId u, GenId v) -> Poly {
        const int n = gen::idx_n(u);
        const int k = gen::idx_n(v);
        const GenTag tu = gen::tag(u);
        const GenTag tv = gen::tag(v);
        Poly out;
        if (tu == GenTag::A && tv == GenTag::A && k == mod(n + 1, N)) out += B(k);
        if (tu == GenTag::A && tv == GenTag::B && k == n) out += A(n) * B(n);
        if (tu == GenTag::A && tv == GenTag::B && k == mod(n + 1, N)) out -= A(n) * B(k);
        if (tu == GenTag::B && tv == GenTag::B && k == mod(n + 1, N)) out -= B(n) * B(k);
        return out;
    };
    if (x == y) return Poly();
    return one(x, y) - one(y, x);
}

}  // namespace

TEST_CASE("second bracket on the Toda lattice")
{
    for (int N : {3, 4, 5}) {
        const auto t = bracket2_ab(N, 1);
        for (GenId x : t.universe())
            for (GenId y : t.universe()) {
                CAPTURE(gen::name(x));
                CAPTURE(gen::name(y));
                CHECK(t(x, y) == toda_bracket2(N, x, y));
            }
    }
    const auto t4 = bracket2_ab(4, 1);
    for (int n = 0; n < 4; ++n) CHECK(t4(gen::A(n, 0), gen::A(mod(n + 1, 4), 0)) == B(mod(n + 1, 4)));
}

TEST_CASE("first bracket on the Toda lattice")
{
    // Level-1 band variables of a single row: c(1,1,k) = -A(k), c(1,2,k) = -B(k).
    for (int N : {3, 4}) {
        const auto t = bracket1_c(N, 1);
        for (int n = 0; n < N; ++n) {
            const GenId a = gen::C(1, 1, n);
            const GenId b = gen::C(1, 2, n);
            const GenId a_prev = gen::C(1, 1, mod(n - 1, N));
            const Poly cb = Poly::var(b);
            CHECK(t(a, b) == -cb);
            CHECK(t(a_prev, b) == cb);
            CHECK(t(a, a) == Poly());
        }
    }
}

TEST_CASE("3x2 bracket entries")
{
    const auto t = bracket2_ab(3, 2);
    CHECK(t(gen::B(1, 1), gen::B(0, 0)) == B(1, 1) * B(0, 0));
    CHECK(t(gen::A(0, 0), gen::A(0, 0)).is_zero());
    CHECK_THROWS_AS(t(gen::C(1, 1, 0), gen::A(0, 0)), UniverseError);
}

TEST_CASE("tables are antisymmetric")
{
    for (const auto& t : {bracket2_ab(3, 2), bracket2_c(3, 2), bracket1_c(3, 2), bracket2_c(2, 3, 2)})
        for (GenId x : t.universe())
            for (GenId y : t.universe()) CHECK(t(x, y) == -t(y, x));
}

TEST_CASE("Leibniz extension")
{
    const auto t = bracket2_ab(3, 2);
    const Poly a = A(0, 0);
    const Poly b = B(0, 0);
    CHECK(bracket(t, a * a, b) == Rational(2) * a * t(gen::A(0, 0), gen::B(0, 0)));
    CHECK(bracket(t, a, Poly(7)).is_zero());
    const Poly f = a * B(1, 1) + A(2, 1);
    const Poly g = B(2, 0) * B(0, 1);
    CHECK(bracket(t, f, g) == -bracket(t, g, f));
    const auto field = hamiltonian_field(t, f);
    REQUIRE(field.size() == t.universe().size());
    for (std::size_t i = 0; i < field.size(); ++i) CHECK(field[i] == bracket(t, f, Poly::var(t.universe()[i])));
}

TEST_CASE("Jacobi identity on small tori")
{
    CHECK(jacobi_defect(bracket2_ab(3, 2), gen::A(2, 0), gen::A(0, 0), gen::A(1, 0)).is_zero());
    CHECK(jacobi_defect(bracket2_ab(3, 2), gen::B(2, 0), gen::B(0, 1), gen::B(1, 0)).is_zero());
    CHECK(jacobi_defect(bracket2_ab(3, 2), gen::A(1, 1), gen::A(1, 1), gen::B(1, 0)).is_zero());
    for (auto [N, M] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{3, 2}, std::pair{2, 3}}) {
        CAPTURE(N);
        CAPTURE(M);
        CHECK(check_jacobi(bracket2_ab(N, M), N, M).ok());
        CHECK(check_jacobi(bracket2_c(N, M), N, M).ok());
        CHECK(check_jacobi(bracket1_c(N, M), N, M).ok());
    }
}

TEST_CASE("bracket degrees")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 1}}) CHECK(check_structure(N, M).ok());
}

TEST_CASE("a degree -M bracket on A, B vanishes for M >= 5")
{
    for (int M = 5; M <= 7; ++M) {
        const int N = M + 1;
        for (GenId x : ab_generators(N, M))
            for (GenId y : ab_generators(N, M)) CHECK(generator_degree(x, N, M) + generator_degree(y, N, M) - M < 0);
    }
}

TEST_CASE("closure of the induced bracket")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 1}}) {
        CAPTURE(N);
        CAPTURE(M);
        CHECK(check_closure(N, M).ok());
    }
    CHECK(check_closure_level(3, 2, 2).ok());
}

TEST_CASE("hierarchy identities on 3x2 and 2x3")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}}) {
        CAPTURE(N);
        CAPTURE(M);
        CHECK(check_ladder(N, M).ok());
        CHECK(check_involution(N, M, true).ok());
        CHECK(check_compat(N, M).ok());
        CHECK(check_casimir(N, M).ok());
        CHECK(check_qlink(N, M).ok());
    }
}

TEST_CASE("Toda identities")
{
    for (int N : {3, 4}) {
        CHECK(check_ladder(N, 1).ok());
        CHECK(check_involution(N, 1, true).ok());
        CHECK(check_casimir(N, 1).ok());
    }
}

TEST_CASE("first flow from the sum of A")
{
    const auto t = bracket2_ab(3, 1);
    Poly h;
    for (int n = 0; n < 3; ++n) h += A(n);
    for (int n = 0; n < 3; ++n) {
        CHECK(bracket(t, h, A(n)) == B(n) - B(mod(n + 1, 3)));
        CHECK(bracket(t, h, B(n)) == (A(n) - A(mod(n - 1, 3))) * B(n));
    }
}

TEST_CASE("ledger quantities commute pairwise on 3x2")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto t = bracket2_ab(3, 2);
    const auto ds = c.degrees();
    int pairs = 0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            CHECK(bracket(t, c.q(ds[i]).q, c.q(ds[j]).q).is_zero());
            ++pairs;
        }
    CHECK(pairs == 28);
}

TEST_CASE("shift of c_M")
{
    const Poly cm = Poly::var(gen::C(1, 2, 0));
    const Poly c1 = Poly::var(gen::C(1, 1, 1));
    CHECK(shift_cm(cm * c1, 3, 2) == cm * c1 + c1);
    CHECK(shift_cm(c1, 3, 2) == c1);
}

TEST_CASE("suite reports serialise")
{
    const auto j = check_casimir(3, 2).to_json();
    CHECK(j["suite"] == "casimir");
    CHECK(j["failures"].empty());
    CHECK(j["cases"].get<long>() > 0);
}
