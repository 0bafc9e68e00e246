#include "dkp/torus.hpp"

#include <algorithm>
#include <numeric>

namespace dkp {

GcdError::GcdError(int N, int M)
    : std::invalid_argument("gcd(N,M) must be 1, got N=" + std::to_string(N) + " M=" + std::to_string(M))
{
}

void require_coprime(int N, int M)
{
    if (N < 1 || M < 1) throw std::invalid_argument("N and M must be positive");
    if (std::gcd(N, M) != 1) throw GcdError(N, M);
}

Torus::Torus(int N, int M) : N_(N), M_(M) { require_coprime(N, M); }

TorusPoint Torus::wrap(long n, long m) const
{
    long a = n % N_;
    long b = m % M_;
    if (a < 0) a += N_;
    if (b < 0) b += M_;
    return {static_cast<int>(a), static_cast<int>(b)};
}

std::size_t Torus::index(long n, long m) const
{
    const TorusPoint p = wrap(n, m);
    return static_cast<std::size_t>(p.m) * N_ + p.n;
}

TorusPoint Torus::point(std::size_t idx) const
{
    return {static_cast<int>(idx % N_), static_cast<int>(idx / N_)};
}

std::string to_string(SignKind k)
{
    switch (k) {
    case SignKind::Kappa: return "kappa";
    case SignKind::Rho: return "rho";
    case SignKind::Phi: return "phi";
    case SignKind::Zeta: return "zeta";
    case SignKind::Custom: return "custom";
    }
    return "custom";
}

std::string to_string(KappaCase c) { return c == KappaCase::Case1 ? "Case1" : "Case2"; }

SignFunction::SignFunction(int N, int M, SignKind kind, std::vector<int> values, int x, int y)
    : torus_(N, M), kind_(kind), x_(x), y_(y), values_(std::move(values))
{
    if (values_.size() != torus_.size()) throw std::invalid_argument("SignFunction: table size mismatch");
    for (int v : values_)
        if (v < -1 || v > 1)
            throw std::domain_error("SignFunction: value " + std::to_string(v) + " outside {-1,0,1} for " +
                                    to_string(kind) + " on " + std::to_string(N) + "x" + std::to_string(M));
}

bool SignFunction::is_odd() const
{
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const TorusPoint p = torus_.point(i);
        if (values_[i] != -(*this)(-static_cast<long>(p.n), -static_cast<long>(p.m))) return false;
    }
    return true;
}

nlohmann::json SignFunction::to_json() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (int m = 0; m < M(); ++m) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = 0; n < N(); ++n) row.push_back((*this)(n, m));
        rows.push_back(std::move(row));
    }
    return {{"N", N()}, {"M", M()}, {"kind", to_string(kind_)}, {"x", x_}, {"y", y_}, {"values", rows}};
}

namespace {

// First a >= 1 with (-a, a) == target, searched over one full orbit.
long first_hit(const Torus& t, TorusPoint target)
{
    const long len = static_cast<long>(t.size());
    for (long a = 1; a <= len; ++a)
        if (t.wrap(-a, a) == target) return a;
    return len + 1;
}

using Table = std::vector<int>;

Table kappa_table(int N, int M)
{
    const Torus t(N, M);
    Table v(t.size(), 0);
    if (M == 1) return v;
    long last = 0;
    if (euclid_parity(N, M) == KappaCase::Case1)
        last = first_hit(t, t.wrap(1, 0));
    else
        last = first_hit(t, t.wrap(0, -1));
    for (long a = 1; a <= last; ++a) {
        v[t.index(-a, a)] -= 1;
        v[t.index(a, -a)] += 1;
    }
    return v;
}

Table zeta_table(int N, int M, int x, int y);

Table zeta_le(int N, int M, int x, int y)
{
    const Torus t(N, M);
    const Table k = kappa_table(N, M);
    Table z0(t.size(), 0);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            for (int s = 0; s <= y; ++s) z0[t.index(n, m)] += k[t.index(n + s, m)];
    Table z(t.size(), 0);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            for (int s = 0; s <= x; ++s) z[t.index(n, m)] += z0[t.index(n - s, m)];
    for (int s = 1; s <= x; ++s) z[t.index(s, 0)] += 1;
    for (int s = -y; s <= -y + x - 1; ++s) z[t.index(s, 0)] -= 1;
    return z;
}

Table zeta_table(int N, int M, int x, int y)
{
    if (x <= y) return zeta_le(N, M, x, y);
    const Torus t(N, M);
    const Table r = zeta_le(N, M, y, x);
    Table z(t.size(), 0);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) z[t.index(n, m)] = -r[t.index(-n, -m)];
    return z;
}

}  // namespace

KappaCase euclid_parity(int N, int M)
{
    const Torus t(N, M);
    const long a1 = first_hit(t, t.wrap(1, 0));
    const long a2 = first_hit(t, t.wrap(-1, 0));
    return a1 <= a2 ? KappaCase::Case1 : KappaCase::Case2;
}

int euclid_steps(int N, int M)
{
    require_coprime(N, M);
    int steps = 0;
    long a = N;
    long b = M;
    while (b != 0) {
        const long r = a % b;
        a = b;
        b = r;
        ++steps;
    }
    return steps;
}

KappaCase euclid_parity_by_steps(int N, int M)
{
    return euclid_steps(N, M) % 2 == 0 ? KappaCase::Case1 : KappaCase::Case2;
}

SignFunction build_kappa(int N, int M) { return {N, M, SignKind::Kappa, kappa_table(N, M)}; }

SignFunction build_rho(int N, int M)
{
    const Torus t(N, M);
    const Table k = kappa_table(N, M);
    Table r(t.size(), 0);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) r[t.index(n, m)] = k[t.index(n + 1, m)] + k[t.index(n, m)];
    r[t.index(0, 0)] += 1;
    r[t.index(-1, 0)] -= 1;
    return {N, M, SignKind::Rho, std::move(r)};
}

SignFunction build_phi(int N, int M)
{
    const SignFunction rho = build_rho(N, M);
    const Torus& t = rho.torus();
    Table p(t.size(), 0);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) p[t.index(n, m)] = -rho(-n - 1, -m) - rho(-n, -m);
    return {N, M, SignKind::Phi, std::move(p)};
}

SignFunction build_zeta(int N, int M, int x, int y)
{
    if (x < 0 || y < 0) throw std::invalid_argument("build_zeta: x, y must be nonnegative");
    return {N, M, SignKind::Zeta, zeta_table(N, M, x, y), x, y};
}

DifferenceSpec kappa_spec(int N, int M)
{
    const Torus t(N, M);
    DifferenceSpec s{N, M, {}, std::nullopt};
    s.conditions = {{t.wrap(1, -1), -1}, {t.wrap(1, 0), 1}, {t.wrap(0, -1), 1}, {t.wrap(0, 0), -1}};
    s.pin = std::make_pair(TorusPoint{0, 0}, 0);
    return s;
}

DifferenceSpec rho_spec(int N, int M)
{
    const Torus t(N, M);
    DifferenceSpec s{N, M, {}, std::nullopt};
    s.conditions = {{t.wrap(-1, -1), 1}, {t.wrap(1, 0), 1}, {t.wrap(0, -1), -1}, {t.wrap(0, 0), -1}};
    return s;
}

DifferenceSpec zeta_spec(int N, int M, int x, int y)
{
    const Torus t(N, M);
    DifferenceSpec s{N, M, {}, std::nullopt};
    if (x <= y)
        s.conditions = {{t.wrap(1, -1), -1}, {t.wrap(x + 1, 0), 1}, {t.wrap(-y, -1), 1}, {t.wrap(-y + x, 0), -1}};
    else
        s.conditions = {{t.wrap(0, 0), -1}, {t.wrap(x + 1, 0), 1}, {t.wrap(-y, -1), 1}, {t.wrap(-y + x + 1, -1), -1}};
    return s;
}

namespace {

Table summed_differences(const Torus& t, const DifferenceSpec& spec)
{
    Table d(t.size(), 0);
    for (const auto& c : spec.conditions) d[t.index(c.from.n, c.from.m)] += c.diff;
    return d;
}

}  // namespace

std::vector<SignFunction> difference_spec_solutions(const DifferenceSpec& spec, SignKind kind)
{
    const Torus t(spec.N, spec.M);
    const Table d = summed_differences(t, spec);
    Table raw(t.size(), 0);
    long n = 0;
    long m = 0;
    int acc = 0;
    for (std::size_t step = 0; step < t.size(); ++step) {
        raw[t.index(n, m)] = acc;
        acc += d[t.index(n, m)];
        n -= 1;
        m += 1;
    }
    if (acc != 0) throw SpecError("difference spec is inconsistent: net difference " + std::to_string(acc));
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    std::vector<SignFunction> out;
    for (int shift = -1 - *lo; shift <= 1 - *hi; ++shift) {
        Table v = raw;
        for (int& x : v) x += shift;
        out.emplace_back(spec.N, spec.M, kind, std::move(v));
    }
    return out;
}

SignFunction solve_difference_spec(const DifferenceSpec& spec, SignKind kind)
{
    std::vector<SignFunction> sols = difference_spec_solutions(spec, kind);
    if (spec.pin) {
        const auto& [p, v] = *spec.pin;
        std::erase_if(sols, [&](const SignFunction& f) { return f(p.n, p.m) != v; });
    }
    if (sols.empty()) throw SpecError("difference spec has no {-1,0,1}-valued solution");
    if (sols.size() > 1)
        throw SpecError("difference spec leaves " + std::to_string(sols.size()) + " admissible shifts");
    return sols.front();
}

bool satisfies_spec(const SignFunction& f, const DifferenceSpec& spec)
{
    const Torus& t = f.torus();
    const Table d = summed_differences(t, spec);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const TorusPoint p = t.point(i);
        if (f(p.n - 1, p.m + 1) - f(p.n, p.m) != d[i]) return false;
    }
    return true;
}

bool strictly_row_alternating(const SignFunction& f)
{
    const int N = f.N();
    for (int m = 0; m < f.M(); ++m) {
        for (int n = 0; n < N; ++n) {
            if (f(n, m) != 1) continue;
            int minus = 0;
            for (int i = 1; i <= N; ++i) {
                const int v = f(n + i, m);
                if (v == 1) break;
                if (v == -1) ++minus;
            }
            if (minus != 1) return false;
        }
    }
    return true;
}

}  // namespace dkp
