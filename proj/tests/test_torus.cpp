#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "dkp/poisson.hpp"
#include "dkp/torus.hpp"

using namespace dkp;

namespace {

std::vector<std::pair<int, int>> coprime_pairs(int max_sum)
{
    std::vector<std::pair<int, int>> out;
    for (int s = 2; s <= max_sum; ++s)
        for (int N = 1; N < s; ++N)
            if (std::gcd(N, s - N) == 1) out.emplace_back(N, s - N);
    return out;
}

}  // namespace

TEST_CASE("torus wraps negative coordinates")
{
    const Torus t(3, 2);
    CHECK(t.wrap(-1, -1) == TorusPoint{2, 1});
    CHECK(t.wrap(7, 4) == TorusPoint{1, 0});
    CHECK(t.point(t.index(2, 1)) == TorusPoint{2, 1});
    CHECK(t.size() == 6);
}

TEST_CASE("non-coprime periods are rejected")
{
    CHECK_THROWS_AS(require_coprime(4, 2), GcdError);
    CHECK_THROWS_AS(build_kappa(6, 3), GcdError);
    CHECK_NOTHROW(require_coprime(1, 1));
}

TEST_CASE("kappa on the 3x2 torus")
{
    const auto k = build_kappa(3, 2);
    const int expected[2][3] = {{0, -1, 1}, {0, 1, -1}};
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 3; ++n) CHECK(k(n, m) == expected[m][n]);
    CHECK(k.is_odd());
    CHECK(strictly_row_alternating(k));
}

TEST_CASE("rho and phi on the 3x2 torus")
{
    const auto r = build_rho(3, 2);
    CHECK(r(0, 1) == 1);
    CHECK(r(2, 1) == -1);
    CHECK(r(1, 1) == 0);
    for (int n = 0; n < 3; ++n) CHECK(r(n, 0) == 0);
    const auto p = build_phi(3, 2);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 3; ++n) {
            int want = 0;
            if (n == 1 && m == 1) want = 1;
            if (n == 2 && m == 1) want = -1;
            CHECK(p(n, m) == want);
        }
}

TEST_CASE("single-row torus is the Toda case")
{
    for (int N = 2; N <= 6; ++N) {
        const auto k = build_kappa(N, 1);
        const auto r = build_rho(N, 1);
        const auto p = build_phi(N, 1);
        for (int n = 0; n < N; ++n) {
            CHECK(k(n, 0) == 0);
            CHECK(r(n, 0) == (n == 0) - (n == N - 1));
            CHECK(p(n, 0) == (n == 1) - (n == N - 1));
        }
    }
}

TEST_CASE("kappa vanishes at the origin")
{
    for (auto [N, M] : coprime_pairs(12)) CHECK(build_kappa(N, M)(0, 0) == 0);
}

TEST_CASE("euclid parity")
{
    CHECK(euclid_parity(3, 2) == KappaCase::Case1);
    CHECK(euclid_parity_by_steps(3, 2) == KappaCase::Case1);
    CHECK(euclid_parity_by_steps(2, 3) != euclid_parity_by_steps(3, 2));
    CHECK_NOTHROW(euclid_parity(1, 1));
    for (auto [N, M] : coprime_pairs(12))
        if (N > 2) CHECK(euclid_parity(N, M) == euclid_parity_by_steps(N, M));
}

TEST_CASE("builders agree with the difference-spec solver")
{
    for (auto [N, M] : coprime_pairs(12)) {
        CAPTURE(N);
        CAPTURE(M);
        const auto k = build_kappa(N, M);
        CHECK(satisfies_spec(k, kappa_spec(N, M)));
        CHECK(k == solve_difference_spec(kappa_spec(N, M), SignKind::Kappa));
        if (M > 1 && N > 1) CHECK(build_rho(N, M) == solve_difference_spec(rho_spec(N, M), SignKind::Rho));
        if (M > 1 && N == 1) {
            // (0,0) and (-1,0) coincide, so only membership is meaningful.
            const auto sols = difference_spec_solutions(rho_spec(N, M), SignKind::Rho);
            CHECK(std::find(sols.begin(), sols.end(), build_rho(N, M)) != sols.end());
        }
        CHECK(strictly_row_alternating(k));
    }
}

TEST_CASE("inconsistent spec is rejected")
{
    DifferenceSpec s;
    s.N = 3;
    s.M = 2;
    s.conditions.push_back({{0, 0}, 1});
    CHECK_THROWS_AS(difference_spec_solutions(s), SpecError);
    CHECK_THROWS_AS(solve_difference_spec(s), SpecError);
}

TEST_CASE("zeta special cases")
{
    const int N = 3;
    const int M = 2;
    CHECK(build_zeta(N, M, 0, 0) == build_kappa(N, M));
    CHECK(build_zeta(N, M, 1, 1) == build_phi(N, M));
    CHECK(build_zeta(N, M, 1, 1).is_odd());
    CHECK(build_zeta(N, M, 2, 2).is_odd());
    const auto z01 = build_zeta(N, M, 0, 1);
    const auto rho = build_rho(N, M);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) CHECK(z01(n, m) + (n == 0 && m == 0) - (n == N - 1 && m == 0) == rho(n, m));
}

TEST_CASE("zeta reflection")
{
    const int N = 5;
    const int M = 2;
    for (int x = 0; x <= 2 * M; ++x)
        for (int y = 0; y < x; ++y) {
            const auto a = build_zeta(N, M, x, y);
            const auto b = build_zeta(N, M, y, x);
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < N; ++n) CHECK(a(n, m) == -b(-n, -m));
        }
}

TEST_CASE("zeta row-zero values at level M-1")
{
    for (auto [N, M] : coprime_pairs(10)) {
        if (M < 2) continue;
        for (int x = 1; x <= M + 1; ++x) {
            const auto z = build_zeta(N, M, x - 1, M - 1);
            for (int n = 0; n < N; ++n) {
                const int want = x >= M ? 0 : (((n - (x - M)) % N + N) % N == 0) - (n == 0);
                CHECK(z(n, 0) == want);
            }
        }
    }
}

TEST_CASE("row sums of rho vanish")
{
    for (auto [N, M] : coprime_pairs(12)) {
        const auto r = build_rho(N, M);
        for (int m = 0; m < M; ++m) {
            int s = 0;
            for (int n = 0; n < N; ++n) s += r(n, m);
            CHECK(s == 0);
        }
    }
}

TEST_CASE("full torus battery")
{
    for (auto [N, M] : coprime_pairs(12)) {
        CAPTURE(N);
        CAPTURE(M);
        const auto r = check_torus(N, M);
        CHECK(r.ok());
        CHECK(r.cases > 0);
    }
}

TEST_CASE("tables serialise row-major")
{
    const auto j = build_kappa(3, 2).to_json();
    CHECK(j["N"] == 3);
    CHECK(j["M"] == 2);
    CHECK(j["kind"] == "kappa");
}
