#include "dkp/curve.hpp"

#include <algorithm>
#include <stdexcept>

#include "dkp/lattice.hpp"
#include "dkp/torus.hpp"

namespace dkp {

const LedgerEntry& SpectralCurve::q(int degree) const
{
    auto it = ledger.find(degree);
    if (it == ledger.end()) throw std::out_of_range("no conserved quantity of degree " + std::to_string(degree));
    return it->second;
}

std::vector<int> SpectralCurve::degrees() const
{
    std::vector<int> d;
    for (const auto& [k, v] : ledger) d.push_back(k);
    return d;
}

std::set<int> SpectralCurve::casimir2_degrees() const
{
    std::set<int> s;
    for (const auto& [k, v] : ledger)
        if (v.casimir2) s.insert(k);
    return s;
}

std::set<int> SpectralCurve::casimir1_degrees() const
{
    std::set<int> s;
    for (const auto& [k, v] : ledger)
        if (v.casimir1) s.insert(k);
    return s;
}

nlohmann::json SpectralCurve::to_json() const
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [ab, p] : coefficients)
        coeffs.push_back({{"alpha", ab.first}, {"beta", ab.second}, {"poly", p.to_string()}, {"terms", p.size()}});
    nlohmann::json led = nlohmann::json::array();
    for (const auto& [d, e] : ledger)
        led.push_back({{"degree", d},
                       {"alpha", e.a},
                       {"beta", e.b},
                       {"terms", e.q.size()},
                       {"casimir2", e.casimir2},
                       {"casimir1", e.casimir1},
                       {"poly", e.q.to_string()}});
    return {{"N", N},
            {"M", M},
            {"mode", mode == CurveMode::AB ? "ab" : "band"},
            {"normalization", normalization.to_string()},
            {"coefficients", coeffs},
            {"ledger", led}};
}

namespace {

SpectralCurve assemble(int N, int M, CurveMode mode, Poly det)
{
    SpectralCurve c;
    c.N = N;
    c.M = M;
    c.mode = mode;
    c.determinant = std::move(det);
    c.normalization = c.determinant.coeff(M, 0).constant_term();
    const Poly lead = c.determinant.coeff(M, 0);
    if (!lead.is_constant() || c.normalization.is_zero())
        throw LedgerError("alpha^M coefficient is not a nonzero constant");
    const Rational inv = Rational(1) / c.normalization;
    c.coefficients = (c.determinant * inv).split_alpha_beta();
    for (const auto& [ab, p] : c.coefficients) {
        const auto [a, b] = ab;
        const int d = N * M - a * N - b * M;
        if (p.is_constant()) continue;
        if (c.ledger.count(d) != 0)
            throw LedgerError("two coefficients share degree " + std::to_string(d) + " in the ledger");
        LedgerEntry e;
        e.degree = d;
        e.a = a;
        e.b = b;
        e.q = p;
        e.casimir2 = (b == 0);
        auto next = c.coefficients.find({a, b + 1});
        e.casimir1 = (next == c.coefficients.end() || next->second.is_constant());
        c.ledger.emplace(d, std::move(e));
    }
    return c;
}

PolyMatrix plus_beta(PolyMatrix m)
{
    for (int i = 0; i < m.n; ++i) m(i, i) += Poly::var(gen::beta());
    return m;
}

}  // namespace

SpectralCurve compute_curve(int N, int M, CurveMode mode)
{
    require_coprime(N, M);
    PeriodicBandMatrix band = (mode == CurveMode::Band) ? band_variables(N, M, 1) : reduce(N, M).at(1);
    return assemble(N, M, mode, determinant(plus_beta(twist(band))));
}

Poly curve_polynomial_from_W(int N, int M)
{
    const Poly dw = determinant(build_W(N, M));
    // det(W) = (-1)^{N(M-1)} det(C - beta I); flip beta to land on det(C + beta I).
    std::vector<Poly::Term> flipped;
    for (const auto& t : dw.terms()) {
        Poly::Term u = t;
        if (t.mono.exponent(gen::beta()) % 2 != 0) u.coef = -u.coef;
        flipped.push_back(std::move(u));
    }
    Poly p = Poly::from_terms(std::move(flipped));
    if ((N * (M - 1)) % 2 != 0) p = -p;
    return p;
}

std::set<int> predicted_degrees(int N, int M)
{
    std::set<int> s;
    for (int a = -M; a <= M; ++a) {
        const int room = N * M - std::abs(a) * N;
        for (int b = 0; b * M <= room; ++b) {
            const int d = N * M - a * N - b * M;
            if (d > 0) s.insert(d);
        }
    }
    return s;
}

nlohmann::json DegreeSymmetryReport::to_json() const
{
    return {{"homogeneous", homogeneous},
            {"mirror", mirror},
            {"matches_prediction", matches_prediction},
            {"counts", counts},
            {"nonvanishing", nonvanishing},
            {"problems", problems},
            {"ok", ok()}};
}

DegreeSymmetryReport verify_degree_symmetry(const SpectralCurve& c)
{
    DegreeSymmetryReport r;
    const DegreeReport dr = degree_of(c.determinant, c.N, c.M);
    r.homogeneous = dr.homogeneous && dr.degree && *dr.degree == c.N * c.M;
    if (!r.homogeneous) r.problems.emplace_back("determinant is not homogeneous of degree NM");

    r.mirror = true;
    for (const auto& [ab, p] : c.coefficients) {
        if (c.coefficients.count({-ab.first, ab.second}) == 0) {
            r.mirror = false;
            r.problems.push_back("(" + std::to_string(ab.first) + "," + std::to_string(ab.second) +
                                 ") realised without its mirror");
        }
    }

    const std::set<int> predicted = predicted_degrees(c.N, c.M);
    std::set<int> realised;
    for (const auto& [d, e] : c.ledger) realised.insert(d);
    r.matches_prediction = (realised == predicted);
    if (!r.matches_prediction) r.problems.emplace_back("realised degrees differ from the predicted list");
    r.nonvanishing = std::includes(realised.begin(), realised.end(), predicted.begin(), predicted.end());

    const auto n = static_cast<std::size_t>((c.N + 1) * c.M);
    const auto cas = static_cast<std::size_t>(2 * c.M);
    r.counts = c.ledger.size() == n && c.casimir2_degrees().size() == cas && c.casimir1_degrees().size() == cas;
    if (!r.counts) r.problems.emplace_back("ledger counts differ from (N+1)M and 2M");
    return r;
}

std::vector<QLinkRow> qlink_rows(const SpectralCurve& band_curve)
{
    if (band_curve.mode != CurveMode::Band) throw std::invalid_argument("qlink needs a band-mode curve");
    const int N = band_curve.N;
    const int M = band_curve.M;
    std::vector<QLinkRow> rows;
    for (const auto& [d, e] : band_curve.ledger) {
        if (!band_curve.has(d - M)) continue;
        Poly s;
        for (int k = 0; k < N; ++k) s += e.q.derivative(gen::C(1, M, k));
        const Poly& lower = band_curve.q(d - M).q;
        QLinkRow row;
        row.upper = d;
        row.lower = d - M;
        row.b = e.b;
        if (!s.is_zero() && !lower.is_zero()) {
            const Rational r = s.terms().front().coef / lower.terms().front().coef;
            if (s == lower * r) {
                row.ratio = r;
                row.proportional = true;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dkp
