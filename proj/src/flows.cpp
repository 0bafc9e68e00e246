#include "dkp/flows.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dkp/poisson.hpp"
#include "dkp/torus.hpp"

namespace dkp {

KPState KPState::zero(int N, int M)
{
    require_coprime(N, M);
    KPState s;
    s.N = N;
    s.M = M;
    s.A.assign(static_cast<std::size_t>(N) * M, 0.0);
    s.B.assign(static_cast<std::size_t>(N) * M, 0.0);
    return s;
}

KPState KPState::random(int N, int M, std::uint64_t seed, double lo, double hi)
{
    KPState s = zero(N, M);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    for (double& a : s.A) a = u(rng);
    for (double& b : s.B) b = u(rng);
    return s;
}

KPState KPState::from_json(const nlohmann::json& j)
{
    KPState s = zero(j.at("N").get<int>(), j.at("M").get<int>());
    const auto a = j.at("A").get<std::vector<double>>();
    const auto b = j.at("B").get<std::vector<double>>();
    if (a.size() != s.A.size() || b.size() != s.B.size()) throw std::invalid_argument("state: wrong number of entries");
    s.A = a;
    s.B = b;
    s.t = j.value("t", 0.0);
    return s;
}

nlohmann::json KPState::to_json() const { return {{"N", N}, {"M", M}, {"t", t}, {"A", A}, {"B", B}}; }

double KPState::value(GenId g) const
{
    const std::size_t slot = static_cast<std::size_t>(gen::idx_m(g)) * N + gen::idx_n(g);
    switch (gen::tag(g)) {
    case GenTag::A: return A.at(slot);
    case GenTag::B: return B.at(slot);
    default: throw std::invalid_argument("numeric state only carries A and B");
    }
}

bool KPState::finite() const
{
    for (double v : A)
        if (!std::isfinite(v)) return false;
    for (double v : B)
        if (!std::isfinite(v)) return false;
    return true;
}

CompiledPoly::CompiledPoly(const Poly& p, int N, int M)
{
    const auto nm = static_cast<std::uint32_t>(N * M);
    for (const auto& t : p.terms()) {
        Term ct{t.coef.to_double(), {}};
        for (const auto& [g, e] : t.mono.factors()) {
            const auto slot = static_cast<std::uint32_t>(gen::idx_m(g) * N + gen::idx_n(g));
            if (gen::tag(g) == GenTag::A)
                ct.factors.emplace_back(slot, e);
            else if (gen::tag(g) == GenTag::B)
                ct.factors.emplace_back(nm + slot, e);
            else
                throw std::invalid_argument("compiled polynomials only take A and B");
        }
        terms_.push_back(std::move(ct));
    }
    (void)M;
}

double CompiledPoly::operator()(const KPState& s) const
{
    const std::size_t nm = s.A.size();
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.coef;
        for (const auto& [slot, e] : t.factors) {
            const double x = slot < nm ? s.A[slot] : s.B[slot - nm];
            for (int i = 0; i < e; ++i) v *= x;
        }
        sum += v;
    }
    return sum;
}

FlowField FlowField::of(const Poly& hamiltonian, int N, int M, std::string label)
{
    const BracketTable t = bracket2_ab(N, M);
    const std::vector<Poly> field = hamiltonian_field(t, hamiltonian);
    FlowField f;
    f.N_ = N;
    f.M_ = M;
    f.label_ = std::move(label);
    f.a_.resize(static_cast<std::size_t>(N) * M);
    f.b_.resize(static_cast<std::size_t>(N) * M);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const GenId g = t.universe()[i];
        const std::size_t slot = static_cast<std::size_t>(gen::idx_m(g)) * N + gen::idx_n(g);
        (gen::tag(g) == GenTag::A ? f.a_ : f.b_)[slot] = CompiledPoly(field[i], N, M);
    }
    return f;
}

FlowField FlowField::first(int N, int M)
{
    Poly h;
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) h += Poly::var(gen::A(n, m));
    return of(h, N, M, "first");
}

FlowField FlowField::ledger(const SpectralCurve& ab_curve, int degree)
{
    if (ab_curve.mode != CurveMode::AB) throw std::invalid_argument("ledger flows need an A,B-mode curve");
    if (!ab_curve.has(degree)) throw std::out_of_range("degree " + std::to_string(degree) + " is not in the ledger");
    return of(ab_curve.q(degree).q, ab_curve.N, ab_curve.M, "q" + std::to_string(degree));
}

void FlowField::operator()(const KPState& s, KPState& out) const
{
    for (std::size_t i = 0; i < a_.size(); ++i) {
        out.A[i] = a_[i](s);
        out.B[i] = b_[i](s);
    }
}

void first_flow_direct(const KPState& s, KPState& out)
{
    const int N = s.N;
    const int M = s.M;
    const SignFunction kappa = build_kappa(N, M);
    const SignFunction rho = build_rho(N, M);
    const Torus& tor = kappa.torus();
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            double sk = 0.0;
            double sr = 0.0;
            for (int l = 0; l < M; ++l)
                for (int k = 0; k < N; ++k) {
                    const double a = s.A[tor.index(k, l)];
                    sk += kappa(k - n, l - m) * a;
                    sr += rho(k - n, l - m) * a;
                }
            const std::size_t i = tor.index(n, m);
            out.A[i] = s.B[i] - s.B[tor.index(n + 1, m)] + sk * s.A[i];
            out.B[i] = sr * s.B[i];
        }
}

double IntegrationReport::max_drift() const
{
    double m = 0.0;
    for (const auto& [d, v] : max_rel_drift) m = std::max(m, v);
    return m;
}

nlohmann::json IntegrationReport::to_json(bool with_trajectory) const
{
    nlohmann::json drift = nlohmann::json::object();
    for (const auto& [d, v] : max_rel_drift) drift["q" + std::to_string(d)] = v;
    nlohmann::json j = {{"steps", steps}, {"drift", drift}, {"max_drift", max_drift()}, {"final", final_state.to_json()}};
    if (with_trajectory) {
        nlohmann::json tr = nlohmann::json::array();
        for (const auto& s : trajectory) tr.push_back(s.to_json());
        j["trajectory"] = tr;
    }
    return j;
}

namespace {

void axpy(KPState& out, const KPState& x, double h, const KPState& k)
{
    for (std::size_t i = 0; i < x.A.size(); ++i) {
        out.A[i] = x.A[i] + h * k.A[i];
        out.B[i] = x.B[i] + h * k.B[i];
    }
}

struct Rk4 {
    const FlowField& f;
    KPState k1, k2, k3, k4, tmp;

    Rk4(const FlowField& field, const KPState& shape) : f(field), k1(shape), k2(shape), k3(shape), k4(shape), tmp(shape) {}

    void step(KPState& s, double dt)
    {
        f(s, k1);
        axpy(tmp, s, dt / 2, k1);
        f(tmp, k2);
        axpy(tmp, s, dt / 2, k2);
        f(tmp, k3);
        axpy(tmp, s, dt, k3);
        f(tmp, k4);
        for (std::size_t i = 0; i < s.A.size(); ++i) {
            s.A[i] += dt / 6 * (k1.A[i] + 2 * k2.A[i] + 2 * k3.A[i] + k4.A[i]);
            s.B[i] += dt / 6 * (k1.B[i] + 2 * k2.B[i] + 2 * k3.B[i] + k4.B[i]);
        }
        s.t += dt;
    }
};

long step_count(double dt, double T)
{
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (T < 0.0) throw std::invalid_argument("T must be nonnegative");
    return std::lround(T / dt);
}

KPState run(const KPState& start, const FlowField& f, double dt, double T)
{
    KPState s = start;
    Rk4 rk(f, start);
    const long n = step_count(dt, T);
    for (long i = 0; i < n; ++i) {
        rk.step(s, dt);
        if (!s.finite()) throw NonFiniteState("state became non-finite at t=" + std::to_string(s.t));
    }
    return s;
}

}  // namespace

IntegrationReport integrate(const KPState& start, const FlowField& flow, double dt, double T,
                            const SpectralCurve& monitors, int sample_every)
{
    if (!start.finite()) throw NonFiniteState("initial state is not finite");
    std::map<int, CompiledPoly> qs;
    std::map<int, double> q0;
    for (const auto& [d, e] : monitors.ledger) {
        qs.emplace(d, CompiledPoly(e.q, start.N, start.M));
        q0[d] = qs.at(d)(start);
    }
    IntegrationReport rep;
    for (const auto& [d, v] : q0) rep.max_rel_drift[d] = 0.0;
    KPState s = start;
    Rk4 rk(flow, start);
    const long n = step_count(dt, T);
    if (sample_every > 0) rep.trajectory.push_back(s);
    for (long i = 0; i < n; ++i) {
        rk.step(s, dt);
        if (!s.finite()) throw NonFiniteState("state became non-finite at t=" + std::to_string(s.t));
        for (const auto& [d, q] : qs) {
            const double ref = q0[d];
            const double diff = std::abs(q(s) - ref);
            const double rel = std::abs(ref) > 0.0 ? diff / std::abs(ref) : diff;
            rep.max_rel_drift[d] = std::max(rep.max_rel_drift[d], rel);
        }
        if (sample_every > 0 && (i + 1) % sample_every == 0) rep.trajectory.push_back(s);
    }
    rep.steps = n;
    rep.final_state = s;
    return rep;
}

OrderReport order_check(const KPState& start, const FlowField& flow, double dt, double T, const SpectralCurve& monitors)
{
    const IntegrationReport coarse = integrate(start, flow, dt, T, monitors);
    const IntegrationReport fine = integrate(start, flow, dt / 2, T, monitors);
    OrderReport r;
    r.dt = dt;
    for (const auto& [d, v] : coarse.max_rel_drift) {
        if (v > r.drift_coarse) {
            r.drift_coarse = v;
            r.degree = d;
        }
    }
    r.drift_fine = fine.max_rel_drift.at(r.degree);
    r.ratio = r.drift_fine > 0.0 ? r.drift_coarse / r.drift_fine : 0.0;
    return r;
}

double OrderReport::order() const { return ratio > 0.0 ? std::log2(ratio) : 0.0; }

nlohmann::json OrderReport::to_json() const
{
    return {{"dt", dt}, {"drift_coarse", drift_coarse}, {"drift_fine", drift_fine}, {"ratio", ratio},
            {"order", order()}, {"quantity", "q" + std::to_string(degree)}};
}

double commutation_defect(const KPState& start, const FlowField& f1, const FlowField& f2, double dt, double T)
{
    const KPState x = run(run(start, f1, dt, T), f2, dt, T);
    const KPState y = run(run(start, f2, dt, T), f1, dt, T);
    double m = 0.0;
    for (std::size_t i = 0; i < x.A.size(); ++i) {
        m = std::max(m, std::abs(x.A[i] - y.A[i]));
        m = std::max(m, std::abs(x.B[i] - y.B[i]));
    }
    return m;
}

}  // namespace dkp
