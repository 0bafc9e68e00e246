#include "dkp/app.hpp"

#include <functional>
#include <stdexcept>

#include "dkp/curve.hpp"
#include "dkp/flows.hpp"
#include "dkp/lattice.hpp"
#include "dkp/pipes.hpp"
#include "dkp/poisson.hpp"
#include "dkp/torus.hpp"

#ifndef DKP_VERSION
#define DKP_VERSION "0.0.0"
#endif

namespace dkp::app {

const char* version() { return DKP_VERSION; }

nlohmann::json header(int N, int M, const std::string& command, std::uint64_t seed)
{
    return {{"N", N}, {"M", M}, {"command", command}, {"version", version()}, {"seed", seed}};
}

namespace {

KPState start_state(int N, int M, std::uint64_t seed, const std::optional<nlohmann::json>& state)
{
    if (!state) return KPState::random(N, M, seed);
    KPState s = KPState::from_json(*state);
    if (s.N != N || s.M != M) throw std::invalid_argument("state file is for a different torus");
    return s;
}

using Suite = std::function<std::vector<SuiteReport>(int, int)>;

const std::vector<std::pair<std::string, Suite>>& suites()
{
    static const std::vector<std::pair<std::string, Suite>> list = {
        {"structure", [](int N, int M) { return std::vector<SuiteReport>{check_structure(N, M)}; }},
        {"torus", [](int N, int M) { return std::vector<SuiteReport>{check_torus(N, M)}; }},
        {"jacobi",
         [](int N, int M) {
             std::vector<SuiteReport> out;
             for (auto [name, table] : {std::pair{"bracket2_ab", bracket2_ab(N, M)}, std::pair{"bracket2_c", bracket2_c(N, M)},
                                        std::pair{"bracket1_c", bracket1_c(N, M)}}) {
                 SuiteReport r = check_jacobi(table, N, M);
                 r.suite = std::string("jacobi:") + name;
                 out.push_back(std::move(r));
             }
             return out;
         }},
        {"closure", [](int N, int M) { return std::vector<SuiteReport>{check_closure(N, M)}; }},
        {"ladder", [](int N, int M) { return std::vector<SuiteReport>{check_ladder(N, M)}; }},
        {"involution", [](int N, int M) { return std::vector<SuiteReport>{check_involution(N, M, true)}; }},
        {"compat", [](int N, int M) { return std::vector<SuiteReport>{check_compat(N, M)}; }},
        {"casimir", [](int N, int M) { return std::vector<SuiteReport>{check_casimir(N, M)}; }},
        {"qlink", [](int N, int M) { return std::vector<SuiteReport>{check_qlink(N, M)}; }},
        {"pipes",
         [](int N, int M) {
             return std::vector<SuiteReport>{check_pipes_bijection(N, M), check_pipes_pairing(N, M), check_pipes_sum_zero(N, M)};
         }},
    };
    return list;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suites()) n.push_back(name);
        return n;
    }();
    return names;
}

nlohmann::json curve_report(int N, int M, std::uint64_t seed, const CurveOptions& opt)
{
    CurveMode mode;
    if (opt.mode == "ab")
        mode = CurveMode::AB;
    else if (opt.mode == "band")
        mode = CurveMode::Band;
    else
        throw std::invalid_argument("unknown curve mode '" + opt.mode + "'");
    const SpectralCurve c = compute_curve(N, M, mode);
    nlohmann::json j = header(N, M, "curve", seed);
    j["curve"] = c.to_json();
    j["degree_check"] = verify_degree_symmetry(c).to_json();
    if (opt.numeric) {
        if (mode != CurveMode::AB) throw std::invalid_argument("numeric evaluation needs mode ab");
        const KPState s = start_state(N, M, seed, opt.state);
        nlohmann::json values = nlohmann::json::object();
        for (const auto& [d, e] : c.ledger) values["q" + std::to_string(d)] = CompiledPoly(e.q, N, M)(s);
        j["numeric"] = {{"state", s.to_json()}, {"values", values}};
    }
    return j;
}

nlohmann::json check_report(int N, int M, std::uint64_t seed, const std::string& suite)
{
    require_coprime(N, M);
    std::vector<SuiteReport> reports;
    bool known = false;
    for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        known = true;
        for (auto& r : fn(N, M)) reports.push_back(std::move(r));
    }
    if (!known) throw std::invalid_argument("unknown suite '" + suite + "'");
    nlohmann::json j = header(N, M, "check", seed);
    nlohmann::json list = nlohmann::json::array();
    long cases = 0;
    long failures = 0;
    for (const auto& r : reports) {
        list.push_back(r.to_json());
        cases += r.cases;
        failures += static_cast<long>(r.failures.size());
    }
    j["suite"] = suite;
    j["reports"] = list;
    j["cases"] = cases;
    j["failures"] = failures;
    j["ok"] = failures == 0;
    return j;
}

nlohmann::json flow_report(int N, int M, std::uint64_t seed, const FlowOptions& opt)
{
    const SpectralCurve c = compute_curve(N, M, CurveMode::AB);
    const FlowField f = opt.degree ? FlowField::ledger(c, *opt.degree) : FlowField::first(N, M);
    const KPState s = start_state(N, M, seed, opt.state);
    nlohmann::json j = header(N, M, "flow", seed);
    j["flow"] = f.label();
    j["dt"] = opt.dt;
    j["T"] = opt.T;
    j["initial"] = s.to_json();
    const IntegrationReport r = integrate(s, f, opt.dt, opt.T, c, opt.sample_every);
    j.update(r.to_json(opt.sample_every > 0));
    if (opt.order_check) j["order_check"] = order_check(s, f, opt.dt, opt.T, c).to_json();
    return j;
}

nlohmann::json pipes_report(int N, int M, std::uint64_t seed, const PipesOptions& opt)
{
    require_coprime(N, M);
    nlohmann::json j = header(N, M, "pipes", seed);
    nlohmann::json diagrams = nlohmann::json::object();
    const int lo = opt.degree ? *opt.degree : 0;
    const int hi = opt.degree ? *opt.degree : N * M;
    if (lo < 0 || hi > N * M) throw std::invalid_argument("degree must lie in [0, NM]");
    for (int d = lo; d <= hi; ++d) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& dg : enumerate_tpds(N, M, d)) list.push_back(dg.to_json());
        if (!list.empty()) diagrams[std::to_string(d)] = list;
    }
    j["diagrams"] = diagrams;
    j["bijection"] = check_pipes_bijection(N, M).to_json();
    if (opt.pairings) j["pairings"] = check_pipes_pairing(N, M).to_json();
    if (opt.sum_zero) j["sum_zero"] = check_pipes_sum_zero(N, M).to_json();
    bool ok = j["bijection"]["ok"].get<bool>();
    if (opt.pairings) ok = ok && j["pairings"]["ok"].get<bool>();
    if (opt.sum_zero) ok = ok && j["sum_zero"]["ok"].get<bool>();
    j["ok"] = ok;
    return j;
}

nlohmann::json torus_report(int N, int M, std::uint64_t seed)
{
    require_coprime(N, M);
    nlohmann::json j = header(N, M, "torus", seed);
    j["kappa"] = build_kappa(N, M).to_json();
    j["rho"] = build_rho(N, M).to_json();
    j["phi"] = build_phi(N, M).to_json();
    j["euclid"] = {{"walk", to_string(euclid_parity(N, M))},
                   {"steps", euclid_steps(N, M)},
                   {"by_steps", to_string(euclid_parity_by_steps(N, M))}};
    nlohmann::json ranks = nlohmann::json::array();
    for (int lvl = 1; lvl < M; ++lvl) {
        const RankReport r = jacobian_rank_special(N, M, lvl);
        ranks.push_back({{"level", r.j}, {"rank", r.rank}, {"target_dim", r.target_dim}, {"full", r.full()}});
    }
    j["reduction_jacobian"] = ranks;
    return j;
}

}  // namespace dkp::app
