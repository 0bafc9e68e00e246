#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "dkp/curve.hpp"
#include "dkp/flows.hpp"

using namespace dkp;

namespace {

double max_diff(const KPState& a, const KPState& b)
{
    double e = 0;
    for (std::size_t i = 0; i < a.A.size(); ++i) e = std::max(e, std::abs(a.A[i] - b.A[i]));
    for (std::size_t i = 0; i < a.B.size(); ++i) e = std::max(e, std::abs(a.B[i] - b.B[i]));
    return e;
}

}  // namespace

TEST_CASE("seeded states are reproducible")
{
    const auto a = KPState::random(3, 2, 9);
    const auto b = KPState::random(3, 2, 9);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.A != KPState::random(3, 2, 10).A);
    for (double v : a.A) CHECK((v >= 0.5 && v <= 1.5));
    const auto r = KPState::from_json(a.to_json());
    CHECK(r.A == a.A);
    CHECK(r.B == a.B);
    CHECK(a.value(gen::A(2, 1)) == a.A[1 * 3 + 2]);
}

TEST_CASE("malformed state json")
{
    nlohmann::json j = KPState::zero(3, 2).to_json();
    j["A"].erase(0);
    CHECK_THROWS(KPState::from_json(j));
}

TEST_CASE("Toda first flow")
{
    const auto s = KPState::random(4, 1, 3);
    KPState out = s;
    FlowField::first(4, 1)(s, out);
    for (int n = 0; n < 4; ++n) {
        const int up = (n + 1) % 4;
        const int dn = (n + 3) % 4;
        CHECK(out.A[n] == doctest::Approx(s.B[n] - s.B[up]));
        CHECK(out.B[n] == doctest::Approx((s.A[n] - s.A[dn]) * s.B[n]));
    }
}

TEST_CASE("first flow with A = 0")
{
    KPState s = KPState::random(3, 2, 4);
    std::fill(s.A.begin(), s.A.end(), 0.0);
    KPState out = s;
    FlowField::first(3, 2)(s, out);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 3; ++n) {
            CHECK(out.A[m * 3 + n] == doctest::Approx(s.B[m * 3 + n] - s.B[m * 3 + (n + 1) % 3]));
            CHECK(out.B[m * 3 + n] == 0.0);
        }
}

TEST_CASE("compiled bracket matches the direct evolution equations")
{
    for (auto [N, M] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{5, 2}, std::pair{4, 1}}) {
        CAPTURE(N);
        CAPTURE(M);
        const auto s = KPState::random(N, M, 42);
        KPState a = s;
        KPState b = s;
        FlowField::first(N, M)(s, a);
        first_flow_direct(s, b);
        CHECK(max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("ledger flow of q1 is plus or minus the first flow")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto s = KPState::random(3, 2, 1);
    KPState a = s;
    KPState b = s;
    FlowField::ledger(c, 1)(s, a);
    FlowField::first(3, 2)(s, b);
    CHECK(max_diff(a, b) < 1e-12);
    CHECK_THROWS_AS(FlowField::ledger(c, 5), std::out_of_range);
}

TEST_CASE("compiled polynomial evaluation")
{
    const Poly p = Rational(1, 2) * Poly::var(gen::A(0, 1)) * Poly::var(gen::B(2, 0)).pow(2) - Poly(3);
    const auto s = KPState::random(3, 2, 5);
    CHECK(CompiledPoly(p, 3, 2)(s) == doctest::Approx(0.5 * s.A[3] * s.B[2] * s.B[2] - 3));
}

TEST_CASE("zero state is stationary")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto r = integrate(KPState::zero(3, 2), FlowField::first(3, 2), 1e-2, 0.5, c);
    CHECK(max_diff(r.final_state, KPState::zero(3, 2)) == 0.0);
    CHECK(r.max_drift() == 0.0);
    CHECK(r.steps == 50);
}

TEST_CASE("conservation under RK4")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto s = KPState::random(3, 2, 1);
    const auto r = integrate(s, FlowField::first(3, 2), 1e-3, 1.0, c);
    CHECK(r.steps == 1000);
    CHECK(r.max_rel_drift.size() == 8);
    CHECK(r.max_drift() < 1e-6);
    CHECK(r.final_state.t == doctest::Approx(1.0));
    CHECK(max_diff(r.final_state, s) > 1e-3);
}

TEST_CASE("higher ledger flows conserve the curve")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto s = KPState::random(3, 2, 2);
    for (int d : {2, 4, 7}) {
        const auto r = integrate(s, FlowField::ledger(c, d), 1e-3, 0.2, c);
        CHECK(r.max_drift() < 1e-6);
    }
    // A Casimir of the second bracket generates no motion at all.
    KPState out = s;
    FlowField::ledger(c, 3)(s, out);
    for (double v : out.A) CHECK(std::abs(v) < 1e-12);
    for (double v : out.B) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("drift shrinks at fourth order")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto o = order_check(KPState::random(3, 2, 1), FlowField::first(3, 2), 0.025, 1.0, c);
    CHECK(o.drift_fine < o.drift_coarse);
    CHECK(std::abs(o.order() - 4.0) < 0.6);
}

TEST_CASE("ledger flows commute")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto s = KPState::random(3, 2, 3);
    CHECK(commutation_defect(s, FlowField::ledger(c, 1), FlowField::ledger(c, 2), 1e-3, 0.1) < 1e-5);
    CHECK(commutation_defect(s, FlowField::ledger(c, 2), FlowField::ledger(c, 4), 1e-3, 0.1) < 1e-5);
}

TEST_CASE("non-finite states abort")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    KPState s = KPState::random(3, 2, 1);
    s.A[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(s.finite());
    CHECK_THROWS_AS(integrate(s, FlowField::first(3, 2), 1e-3, 0.01, c), NonFiniteState);
}

TEST_CASE("sampled trajectory")
{
    const auto c = compute_curve(3, 2, CurveMode::AB);
    const auto r = integrate(KPState::random(3, 2, 1), FlowField::first(3, 2), 1e-2, 0.1, c, 2);
    CHECK(r.trajectory.size() >= 5);
    const auto j = r.to_json(true);
    CHECK(j.contains("trajectory"));
    CHECK(j["drift"].contains("q1"));
}
