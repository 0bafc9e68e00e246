#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "dkp/curve.hpp"
#include "dkp/pipes.hpp"

using namespace dkp;

namespace {

// Pure-A monomials of every ledger quantity, counted by degree.
std::map<int, std::size_t> pure_a_counts(int N, int M)
{
    const auto c = compute_curve(N, M, CurveMode::AB);
    std::map<int, std::size_t> out;
    for (const auto& [d, e] : c.ledger) {
        std::size_t n = 0;
        for (const auto& t : e.q.terms()) {
            bool pure = true;
            for (const auto& [g, k] : t.mono.factors()) pure = pure && gen::tag(g) == GenTag::A;
            n += pure;
        }
        out[d] = n;
    }
    return out;
}

}  // namespace

TEST_CASE("all-horizontal diagram")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 1}}) {
        const auto top = enumerate_tpds(N, M, N * M);
        REQUIRE(top.size() == 1);
        CHECK(top[0].count(Horizontal) == N * M);
        CHECK(top[0].count(LeftDown) == 0);
        CHECK(top[0].closed());
    }
}

TEST_CASE("a full row of horizontals closes on itself")
{
    PipeDiagram d(3, 2);
    for (int n = 0; n < 3; ++n) d.place(n, 1, Horizontal);
    CHECK(d.closed());
    CHECK(d.degree() == 3);
    CHECK(d.winding().first == Rational(1));
    CHECK(d.winding().second == Rational(0));
    auto c = complete_from_horizontals(3, 2, d.horizontals());
    REQUIRE(c);
    CHECK(*c == d);
}

TEST_CASE("open configurations are not closed")
{
    PipeDiagram d(3, 2);
    d.place(0, 0, Horizontal);
    CHECK_FALSE(d.closed());
    PipeDiagram e(3, 2);
    e.place(1, 1, UpRight);
    CHECK_FALSE(e.closed());
}

TEST_CASE("diagram counts match pure-A monomials")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 1}, std::pair{5, 2}}) {
        CAPTURE(N);
        CAPTURE(M);
        const auto counts = pure_a_counts(N, M);
        for (int d = 1; d <= N * M; ++d) {
            CAPTURE(d);
            const auto it = counts.find(d);
            const std::size_t want = it == counts.end() ? 0 : it->second;
            const auto list = enumerate_tpds(N, M, d);
            CHECK(list.size() == want);
            for (const auto& dg : list) {
                CHECK(dg.closed());
                CHECK(dg.degree() == d);
            }
        }
    }
}

TEST_CASE("diagram monomials are the ledger monomials")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    for (const auto& [d, e] : c.ledger)
        for (const auto& dg : enumerate_tpds(3, 2, d)) {
            bool found = false;
            for (const auto& t : e.q.terms()) found = found || t.mono == dg.monomial();
            CHECK(found);
        }
}

TEST_CASE("degree zero is not part of the bijection")
{
    const auto zero = enumerate_tpds(3, 2, 0);
    CHECK(zero.size() == 2);
    for (const auto& d : zero) CHECK(d.degree() == 0);
}

TEST_CASE("Toda pairings vanish")
{
    for (int N : {3, 4}) {
        for (int d1 = 1; d1 <= N; ++d1)
            for (int d2 = 1; d2 <= N; ++d2)
                for (const auto& a : enumerate_tpds(N, 1, d1))
                    for (const auto& b : enumerate_tpds(N, 1, d2)) CHECK(pairing(a, b) == 0);
    }
}

TEST_CASE("pairing is antisymmetric and matches the kappa sum")
{
    const auto kappa = build_kappa(3, 2);
    std::vector<PipeDiagram> all;
    for (int d = 1; d <= 6; ++d)
        for (auto& dg : enumerate_tpds(3, 2, d)) all.push_back(dg);
    bool some_nonzero = false;
    for (const auto& a : all) {
        CHECK(pairing(a, a) == 0);
        for (const auto& b : all) {
            CHECK(pairing(a, b) == -pairing(b, a));
            CHECK(pairing_kappa(a, b, kappa) == -pairing(a, b));
            some_nonzero = some_nonzero || pairing(a, b) != 0;
        }
    }
    CHECK(some_nonzero);
}

TEST_CASE("two rows of horizontals never pair")
{
    PipeDiagram a(3, 2);
    PipeDiagram b(3, 2);
    for (int n = 0; n < 3; ++n) {
        a.place(n, 0, Horizontal);
        b.place(n, 1, Horizontal);
    }
    CHECK(pairing(a, b) == 0);
    CHECK(pairing(b, a) == 0);
}

TEST_CASE("products and partners")
{
    const auto d1 = enumerate_tpds(3, 2, 1);
    const auto d4 = enumerate_tpds(3, 2, 4);
    for (std::size_t i = 0; i < d1.size(); ++i)
        for (std::size_t j = 0; j < d4.size(); ++j) {
            const int k = pairing(d1[i], d4[j]);
            const auto partners = decomposition_partners(d1, d4, i, j);
            if (k != 0) CHECK_FALSE(partners.empty());
            int total = k;
            for (const auto& p : partners) {
                CHECK(diagram_product(d1[p.first], d4[p.second]) == diagram_product(d1[i], d4[j]));
                CHECK(p.pairing == pairing(d1[p.first], d4[p.second]));
                total += p.pairing;
            }
            CHECK(total == 0);
        }
}

TEST_CASE("pipe suites")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 1}}) {
        CAPTURE(N);
        CAPTURE(M);
        CHECK(check_pipes_bijection(N, M).ok());
        CHECK(check_pipes_pairing(N, M).ok());
        CHECK(check_pipes_sum_zero(N, M).ok());
    }
}

TEST_CASE("diagram json")
{
    const auto top = enumerate_tpds(3, 2, 6);
    const auto j = top.at(0).to_json();
    CHECK(j["degree"] == 6);
}
