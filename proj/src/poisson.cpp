#include "dkp/poisson.hpp"

#include <algorithm>
#include <mutex>

#include "dkp/parallel.hpp"

namespace dkp {

std::string to_string(BracketKind k)
{
    switch (k) {
    case BracketKind::Bracket2AB: return "bracket2_ab";
    case BracketKind::Bracket2C: return "bracket2_c";
    case BracketKind::Bracket1C: return "bracket1_c";
    case BracketKind::Custom: return "custom";
    }
    return "custom";
}

BracketTable::BracketTable(BracketKind kind, std::vector<GenId> universe,
                           const std::function<Poly(GenId, GenId)>& rule)
    : kind_(kind), gens_(std::move(universe))
{
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    const std::size_t n = gens_.size();
    table_.resize(n * n);
    parallel_for(n, [&](std::size_t r) {
        for (std::size_t c = 0; c < n; ++c) table_[r * n + c] = rule(gens_[r], gens_[c]);
    });
}

bool BracketTable::contains(GenId g) const { return std::binary_search(gens_.begin(), gens_.end(), g); }

std::size_t BracketTable::index(GenId g) const
{
    auto it = std::lower_bound(gens_.begin(), gens_.end(), g);
    if (it == gens_.end() || *it != g) throw UniverseError("generator " + gen::name(g) + " outside the bracket universe");
    return static_cast<std::size_t>(it - gens_.begin());
}

const Poly& BracketTable::operator()(GenId x, GenId y) const { return table_[index(x) * gens_.size() + index(y)]; }

TorusData::TorusData(int N_, int M_)
    : N(N_), M(M_), kappa(build_kappa(N_, M_)), rho(build_rho(N_, M_)), phi(build_phi(N_, M_))
{
}

const SignFunction& TorusData::zeta(int x, int y) const
{
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = zeta_.find({x, y});
    if (it == zeta_.end()) it = zeta_.emplace(std::make_pair(x, y), build_zeta(N, M, x, y)).first;
    return it->second;
}

std::vector<GenId> ab_generators(int N, int M)
{
    std::vector<GenId> g;
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            g.push_back(gen::A(n, m));
            g.push_back(gen::B(n, m));
        }
    std::sort(g.begin(), g.end());
    return g;
}

std::vector<GenId> c_generators(int N, int M, int j)
{
    std::vector<GenId> g;
    const int w = M + 1 - j;
    for (int i = 1; i <= 2 * w; ++i)
        for (int k = 0; k < N; ++k) g.push_back(gen::C(j, i, k));
    std::sort(g.begin(), g.end());
    return g;
}

Poly bracket2_ab_rule(const TorusData& t, GenId x, GenId y)
{
    const GenTag tx = gen::tag(x);
    const GenTag ty = gen::tag(y);
    const int k = gen::idx_n(x);
    const int l = gen::idx_m(x);
    const int n = gen::idx_n(y);
    const int m = gen::idx_m(y);
    const Poly xy = Poly::var(x) * Poly::var(y);
    if (tx == GenTag::A && ty == GenTag::A) {
        const Torus& tor = t.kappa.torus();
        Poly r = xy * Rational(t.kappa(k - n, l - m));
        const TorusPoint p{k, l};
        if (p == tor.wrap(n - 1, m)) r += Poly::var(gen::B(n, m));
        if (p == tor.wrap(n + 1, m)) r -= Poly::var(gen::B(tor.wrap(n + 1, m).n, m));
        return r;
    }
    if (tx == GenTag::A && ty == GenTag::B) return xy * Rational(t.rho(k - n, l - m));
    if (tx == GenTag::B && ty == GenTag::A) return xy * Rational(-t.rho(n - k, m - l));
    if (tx == GenTag::B && ty == GenTag::B) return xy * Rational(t.phi(k - n, l - m));
    throw UniverseError("bracket2_ab: generators must be A or B");
}

Poly bracket2_c_rule(const TorusData& t, int j, GenId x, GenId y)
{
    if (gen::tag(x) != GenTag::C || gen::tag(y) != GenTag::C || gen::idx_j(x) != j || gen::idx_j(y) != j)
        throw UniverseError("bracket2_c: generators must be band variables of the given level");
    const int i1 = gen::idx_m(x);
    const int i2 = gen::idx_m(y);
    if (i1 < i2) return -bracket2_c_rule(t, j, y, x);
    const long k1 = gen::idx_n(x);
    const long k2 = gen::idx_n(y);
    const int N = t.N;
    const int w = t.M + 1 - j;
    auto c = [&](long i, long k) -> Poly {
        if (i == 0) return Poly(1);
        if (i < 0 || i > 2 * w) return {};
        long r = k % N;
        if (r < 0) r += N;
        return Poly::var(gen::C(j, static_cast<int>(i), static_cast<int>(r)));
    };
    Poly r = c(i1, k1) * c(i2, k2) * Rational(t.zeta(i1 - 1, i2 - 1)(k1 - k2, 0));
    // The other two rectangle corners must stay inside the band.
    const long lo = k1 + i2 - 2 * w;
    const long hi = k1 + i2;
    long start = k2 + ((lo - k2) / N) * N;
    while (start > lo) start -= N;
    while (start < lo) start += N;
    for (long kp = start; kp <= hi; kp += N) {
        const int coef = ((kp <= k1 && kp - i2 <= k1 - i1) ? 1 : 0) - ((kp >= k1 && kp - i2 >= k1 - i1) ? 1 : 0);
        if (coef == 0) continue;
        const Poly f = c(k1 - kp + i2, k1) * c(kp - k1 + i1, kp);
        if (!f.is_zero()) r += f * Rational(coef);
    }
    return r;
}

namespace {

struct TraceFormula {
    int N;
    int M;
    PeriodicBandMatrix ct;

    TraceFormula(int n, int m) : N(n), M(m), ct(band_variables(n, m, 1).transpose()) {}

    Poly operator()(GenId x, GenId y) const
    {
        if (gen::tag(x) != GenTag::C || gen::tag(y) != GenTag::C || gen::idx_j(x) != 1 || gen::idx_j(y) != 1)
            throw UniverseError("bracket1_c: generators must be level-1 band variables");
        const auto ex = PeriodicBandMatrix::elementary(N, M, gen::idx_m(x), gen::idx_n(x));
        const auto ey = PeriodicBandMatrix::elementary(N, M, gen::idx_m(y), gen::idx_n(y));
        const auto up = ex.upper_part().commutator(ey.upper_part());
        const auto lo = ex.lower_part().commutator(ey.lower_part());
        return ((up - lo) * ct).trace_per_period();
    }
};

}  // namespace

Poly bracket1_c_rule(int N, int M, GenId x, GenId y) { return TraceFormula(N, M)(x, y); }

BracketTable bracket2_ab(int N, int M)
{
    const TorusData t(N, M);
    return {BracketKind::Bracket2AB, ab_generators(N, M), [&](GenId x, GenId y) { return bracket2_ab_rule(t, x, y); }};
}

BracketTable bracket2_c(int N, int M, int j)
{
    const TorusData t(N, M);
    for (int x = 0; x < 2 * (M + 1 - j); ++x)
        for (int y = 0; y < 2 * (M + 1 - j); ++y) t.zeta(x, y);
    return {BracketKind::Bracket2C, c_generators(N, M, j),
            [&](GenId x, GenId y) { return bracket2_c_rule(t, j, x, y); }};
}

BracketTable bracket1_c(int N, int M)
{
    const TraceFormula f(N, M);
    return {BracketKind::Bracket1C, c_generators(N, M, 1), [&](GenId x, GenId y) { return f(x, y); }};
}

namespace {

bool is_parameter(GenId g) { return gen::tag(g) == GenTag::Alpha || gen::tag(g) == GenTag::Beta; }

std::vector<std::pair<GenId, Poly>> gradient(const BracketTable& t, const Poly& f)
{
    std::vector<std::pair<GenId, Poly>> d;
    for (GenId g : f.generators()) {
        if (is_parameter(g)) continue;
        if (!t.contains(g)) throw UniverseError("generator " + gen::name(g) + " outside the bracket universe");
        d.emplace_back(g, f.derivative(g));
    }
    return d;
}

}  // namespace

Poly bracket(const BracketTable& t, const Poly& f, const Poly& g)
{
    const auto df = gradient(t, f);
    const auto dg = gradient(t, g);
    PolyAccumulator acc;
    for (const auto& [x, fx] : df) {
        PolyAccumulator inner;
        for (const auto& [y, gy] : dg) {
            const Poly& xy = t(x, y);
            if (!xy.is_zero()) inner.add_product(xy, gy);
        }
        const Poly field = inner.take();
        if (!field.is_zero()) acc.add_product(fx, field);
    }
    return acc.take();
}

std::vector<Poly> hamiltonian_field(const BracketTable& t, const Poly& f)
{
    const auto df = gradient(t, f);
    std::vector<Poly> out(t.universe().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        PolyAccumulator acc;
        for (const auto& [x, fx] : df) {
            const Poly& xy = t(x, t.universe()[i]);
            if (!xy.is_zero()) acc.add_product(fx, xy);
        }
        out[i] = acc.take();
    }
    return out;
}

Poly jacobi_defect(const BracketTable& t, GenId a, GenId b, GenId c)
{
    const Poly pa = Poly::var(a);
    const Poly pb = Poly::var(b);
    const Poly pc = Poly::var(c);
    return bracket(t, pa, t(b, c)) + bracket(t, pb, t(c, a)) + bracket(t, pc, t(a, b));
}

Poly mixed_jacobiator(const BracketTable& one, const BracketTable& two, GenId a, GenId b, GenId c)
{
    Poly r;
    const GenId cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& p : cyc) {
        const Poly x = Poly::var(p[0]);
        r += bracket(two, x, one(p[1], p[2]));
        r += bracket(one, x, two(p[1], p[2]));
    }
    return r;
}

Poly shift_cm(const Poly& p, int N, int M, const Rational& t)
{
    std::map<GenId, Poly> img;
    for (int k = 0; k < N; ++k) {
        const GenId g = gen::C(1, M, k);
        img.emplace(g, Poly::var(g) + Poly(t));
    }
    return p.substitute(img);
}

void SuiteReport::fail(std::string what, std::vector<GenId> tuple, const Poly& residual)
{
    std::vector<std::string> names;
    for (GenId g : tuple) names.push_back(gen::name(g));
    fail(std::move(what), std::move(names), residual.to_string());
}

void SuiteReport::fail(std::string what, std::vector<std::string> tuple, std::string residual)
{
    failures.push_back({std::move(what), std::move(tuple), std::move(residual)});
}

void SuiteReport::merge(const SuiteReport& o)
{
    cases += o.cases;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    if (!o.details.empty()) details[o.suite] = o.details;
}

nlohmann::json SuiteReport::to_json() const
{
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : failures) f.push_back({{"what", x.what}, {"tuple", x.tuple}, {"residual", x.residual}});
    nlohmann::json j = {{"suite", suite}, {"N", N}, {"M", M}, {"cases", cases}, {"failures", f}, {"ok", ok()}};
    if (!details.empty()) j["details"] = details;
    return j;
}

namespace {

SuiteReport make_report(std::string name, int N, int M)
{
    SuiteReport r;
    r.suite = std::move(name);
    r.N = N;
    r.M = M;
    return r;
}

// Per-case results collected by index, then folded in order.
struct CaseResult {
    long cases = 0;
    std::vector<Failure> failures;
    void fail(std::string what, std::vector<GenId> tuple, const Poly& residual)
    {
        std::vector<std::string> names;
        for (GenId g : tuple) names.push_back(gen::name(g));
        failures.push_back({std::move(what), std::move(names), residual.to_string()});
    }
};

void fold(SuiteReport& r, const std::vector<CaseResult>& parts)
{
    for (const auto& p : parts) {
        r.cases += p.cases;
        r.failures.insert(r.failures.end(), p.failures.begin(), p.failures.end());
    }
}

}  // namespace

SuiteReport check_jacobi(const BracketTable& t, int N, int M)
{
    SuiteReport r = make_report("jacobi:" + to_string(t.kind()), N, M);
    const auto& g = t.universe();
    const std::size_t n = g.size();
    std::vector<CaseResult> parts(n);
    parallel_for(n, [&](std::size_t a) {
        CaseResult& cr = parts[a];
        for (std::size_t b = a; b < n; ++b) {
            ++cr.cases;
            const Poly anti = t(g[a], g[b]) + t(g[b], g[a]);
            if (!anti.is_zero()) cr.fail("antisymmetry", {g[a], g[b]}, anti);
            for (std::size_t c = b + 1; c < n && a < b; ++c) {
                ++cr.cases;
                const Poly d = jacobi_defect(t, g[a], g[b], g[c]);
                if (!d.is_zero()) cr.fail("jacobi", {g[a], g[b], g[c]}, d);
            }
        }
    });
    fold(r, parts);
    return r;
}

SuiteReport check_closure_level(int N, int M, int j)
{
    SuiteReport r = make_report("closure", N, M);
    const BracketTable ab = bracket2_ab(N, M);
    const BracketTable cj = bracket2_c(N, M, j);
    const Reduction red = reduce(N, M);
    std::map<GenId, Poly> img;
    for (GenId g : cj.universe()) img.emplace(g, red.at(j).at(gen::idx_m(g), gen::idx_n(g)));
    const auto& g = cj.universe();
    const std::size_t n = g.size();
    std::vector<CaseResult> parts(n);
    parallel_for(n, [&](std::size_t a) {
        CaseResult& cr = parts[a];
        for (std::size_t b = 0; b < n; ++b) {
            ++cr.cases;
            const Poly expanded = bracket(ab, img.at(g[a]), img.at(g[b]));
            const Poly closed = cj(g[a], g[b]).substitute(img);
            const Poly diff = expanded - closed;
            if (!diff.is_zero()) cr.fail("closure level " + std::to_string(j), {g[a], g[b]}, diff);
        }
    });
    fold(r, parts);
    return r;
}

SuiteReport check_closure(int N, int M)
{
    SuiteReport r = make_report("closure", N, M);
    for (int j = M; j >= 1; --j) {
        const SuiteReport lvl = check_closure_level(N, M, j);
        r.cases += lvl.cases;
        r.failures.insert(r.failures.end(), lvl.failures.begin(), lvl.failures.end());
        r.details["level_" + std::to_string(j)] = lvl.cases;
    }
    return r;
}

SuiteReport check_ladder(int N, int M)
{
    SuiteReport r = make_report("ladder", N, M);
    const SpectralCurve curve = compute_curve(N, M, CurveMode::Band);
    const BracketTable b1 = bracket1_c(N, M);
    const BracketTable b2 = bracket2_c(N, M, 1);
    const auto& g = b1.universe();
    nlohmann::json pairs = nlohmann::json::array();
    std::vector<std::pair<int, int>> links;
    for (const auto& [d, e] : curve.ledger)
        if (curve.has(d - M) && curve.q(d - M).a == e.a && curve.q(d - M).b == e.b + 1) links.emplace_back(d, d - M);
    std::vector<CaseResult> parts(links.size());
    parallel_for(links.size(), [&](std::size_t idx) {
        const auto [up, lo] = links[idx];
        const auto f1 = hamiltonian_field(b1, curve.q(up).q);
        const auto f2 = hamiltonian_field(b2, curve.q(lo).q);
        for (std::size_t i = 0; i < g.size(); ++i) {
            ++parts[idx].cases;
            const Poly diff = f1[i] - f2[i];
            if (!diff.is_zero())
                parts[idx].fail("ladder q" + std::to_string(up) + " / q" + std::to_string(lo), {g[i]}, diff);
        }
    });
    fold(r, parts);
    for (const auto& [up, lo] : links) pairs.push_back({up, lo});

    const std::set<int> cas1 = curve.casimir1_degrees();
    std::vector<int> cas(cas1.begin(), cas1.end());
    std::vector<CaseResult> cparts(cas.size());
    parallel_for(cas.size(), [&](std::size_t idx) {
        const auto f1 = hamiltonian_field(b1, curve.q(cas[idx]).q);
        for (std::size_t i = 0; i < g.size(); ++i) {
            ++cparts[idx].cases;
            if (!f1[i].is_zero()) cparts[idx].fail("bracket-1 casimir q" + std::to_string(cas[idx]), {g[i]}, f1[i]);
        }
    });
    fold(r, cparts);
    r.details = {{"pairs", pairs}, {"casimir1", cas}};
    return r;
}

namespace {

void involution_on(SuiteReport& r, const SpectralCurve& curve, const BracketTable& t, const std::string& label)
{
    std::vector<std::pair<int, int>> pairs;
    const auto deg = curve.degrees();
    for (std::size_t a = 0; a < deg.size(); ++a)
        for (std::size_t b = a + 1; b < deg.size(); ++b) pairs.emplace_back(deg[a], deg[b]);
    std::vector<CaseResult> parts(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        const auto [x, y] = pairs[idx];
        ++parts[idx].cases;
        const Poly v = bracket(t, curve.q(x).q, curve.q(y).q);
        if (!v.is_zero()) {
            parts[idx].failures.push_back(
                {label + " involution", {"q" + std::to_string(x), "q" + std::to_string(y)}, v.to_string()});
        }
    });
    fold(r, parts);
    r.details[label + "_pairs"] = pairs.size();
}

}  // namespace

SuiteReport check_involution(int N, int M, bool ab_mode)
{
    SuiteReport r = make_report("involution", N, M);
    involution_on(r, compute_curve(N, M, CurveMode::Band), bracket2_c(N, M, 1), "band");
    if (ab_mode) involution_on(r, compute_curve(N, M, CurveMode::AB), bracket2_ab(N, M), "ab");
    return r;
}

SuiteReport check_compat(int N, int M)
{
    SuiteReport r = make_report("compat", N, M);
    const BracketTable b1 = bracket1_c(N, M);
    const BracketTable b2 = bracket2_c(N, M, 1);
    const auto& g = b1.universe();
    const std::size_t n = g.size();
    std::vector<CaseResult> parts(n);
    parallel_for(n, [&](std::size_t a) {
        CaseResult& cr = parts[a];
        for (std::size_t b = 0; b < n; ++b) {
            ++cr.cases;
            const Poly v2 = b2(g[a], g[b]);
            const Poly diff = b1(g[a], g[b]) - (v2 - shift_cm(v2, N, M));
            if (!diff.is_zero()) cr.fail("shift relation", {g[a], g[b]}, diff);
        }
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                ++cr.cases;
                const Poly j = mixed_jacobiator(b1, b2, g[a], g[b], g[c]);
                if (!j.is_zero()) cr.fail("mixed jacobiator", {g[a], g[b], g[c]}, j);
            }
    });
    fold(r, parts);
    return r;
}

SuiteReport check_casimir(int N, int M)
{
    SuiteReport r = make_report("casimir", N, M);
    struct Job {
        const SpectralCurve* curve;
        const BracketTable* table;
        int degree;
        std::string label;
    };
    const SpectralCurve band = compute_curve(N, M, CurveMode::Band);
    const SpectralCurve ab = compute_curve(N, M, CurveMode::AB);
    const BracketTable b1 = bracket1_c(N, M);
    const BracketTable b2 = bracket2_c(N, M, 1);
    const BracketTable bab = bracket2_ab(N, M);
    std::vector<Job> jobs;
    for (int d : band.casimir2_degrees()) jobs.push_back({&band, &b2, d, "bracket-2 casimir (band)"});
    for (int d : ab.casimir2_degrees()) jobs.push_back({&ab, &bab, d, "bracket-2 casimir (ab)"});
    for (int d : band.casimir1_degrees()) jobs.push_back({&band, &b1, d, "bracket-1 casimir"});
    std::vector<CaseResult> parts(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t idx) {
        const Job& job = jobs[idx];
        const auto field = hamiltonian_field(*job.table, job.curve->q(job.degree).q);
        for (std::size_t i = 0; i < field.size(); ++i) {
            ++parts[idx].cases;
            if (!field[i].is_zero())
                parts[idx].fail(job.label + " q" + std::to_string(job.degree), {job.table->universe()[i]}, field[i]);
        }
    });
    fold(r, parts);
    const auto c2 = band.casimir2_degrees();
    const auto c1 = band.casimir1_degrees();
    r.details = {{"casimir2", std::vector<int>(c2.begin(), c2.end())},
                 {"casimir1", std::vector<int>(c1.begin(), c1.end())}};
    return r;
}

SuiteReport check_qlink(int N, int M)
{
    SuiteReport r = make_report("qlink", N, M);
    const SpectralCurve curve = compute_curve(N, M, CurveMode::Band);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [d, e] : curve.ledger) {
        ++r.cases;
        Poly s;
        for (int k = 0; k < N; ++k) s += e.q.derivative(gen::C(1, M, k));
        auto it = curve.coefficients.find({e.a, e.b + 1});
        const Poly next = it == curve.coefficients.end() ? Poly() : it->second;
        const Poly diff = s - next * Rational(e.b + 1);
        if (!diff.is_zero()) r.fail("sum of c_M derivatives of q" + std::to_string(d), {}, diff);
    }
    for (const auto& row : qlink_rows(curve))
        rows.push_back({{"upper", row.upper},
                        {"lower", row.lower},
                        {"beta", row.b},
                        {"proportional", row.proportional},
                        {"ratio", row.ratio.to_string()}});
    r.details = {{"rows", rows}};
    return r;
}

SuiteReport check_structure(int N, int M)
{
    SuiteReport r = make_report("structure", N, M);
    auto degree_check = [&](const BracketTable& t, int shift) {
        for (GenId x : t.universe())
            for (GenId y : t.universe()) {
                ++r.cases;
                const Poly& v = t(x, y);
                if (v.is_zero()) continue;
                const DegreeReport d = degree_of(v, N, M);
                const int want = generator_degree(x, N, M) + generator_degree(y, N, M) + shift;
                if (!d.homogeneous || !d.degree || *d.degree != want)
                    r.fail("degree of " + to_string(t.kind()), {x, y}, v);
            }
    };
    const BracketTable bab = bracket2_ab(N, M);
    degree_check(bab, 0);
    degree_check(bracket2_c(N, M, 1), 0);
    degree_check(bracket1_c(N, M), -M);

    const TorusData t(N, M);
    Poly q1;
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) q1 += Poly::var(gen::A(n, m));
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            Poly sk;
            Poly sr;
            for (int l = 0; l < M; ++l)
                for (int k = 0; k < N; ++k) {
                    sk += Poly::var(gen::A(k, l)) * Rational(t.kappa(k - n, l - m));
                    sr += Poly::var(gen::A(k, l)) * Rational(t.rho(k - n, l - m));
                }
            const Poly a = Poly::var(gen::A(n, m));
            const Poly b = Poly::var(gen::B(n, m));
            const Poly adot = b - Poly::var(gen::B(t.kappa.torus().wrap(n + 1, m).n, m)) + sk * a;
            const Poly bdot = sr * b;
            r.cases += 2;
            const Poly da = bracket(bab, q1, a) - adot;
            const Poly db = bracket(bab, q1, b) - bdot;
            if (!da.is_zero()) r.fail("first flow", {gen::A(n, m)}, da);
            if (!db.is_zero()) r.fail("first flow", {gen::B(n, m)}, db);
        }
    return r;
}

}  // namespace dkp
