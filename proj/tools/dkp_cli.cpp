// dkp: curve, verification, flow and pipe-diagram tooling for the discrete KP hierarchy.
// All results go to stdout (or --out) as JSON; summaries go to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dkp/app.hpp"
#include "dkp/flows.hpp"
#include "dkp/torus.hpp"
#include "json.hpp"

namespace {

enum Exit { Ok = 0, CheckFailed = 1, GcdViolation = 3, RuntimeFailure = 4 };

struct Common {
    int N = 0;
    int M = 0;
    std::uint64_t seed = 1;
    std::string out;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--N", c.N, "period in n")->required()->check(CLI::PositiveNumber);
    sub->add_option("--M", c.M, "period in m")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "seed for randomized inputs")->capture_default_str();
    sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
}

std::optional<nlohmann::json> read_state(const std::string& path)
{
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file " + path);
    return nlohmann::json::parse(in);
}

void emit(const nlohmann::json& j, const std::string& out)
{
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete KP hierarchy: spectral curves, Poisson brackets, flows and pipe diagrams"};
    app.set_version_flag("--version", dkp::app::version());
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Common common;

    auto* curve = app.add_subcommand("curve", "spectral curve and conserved-quantity ledger");
    add_common(curve, common);
    dkp::app::CurveOptions curve_opt;
    std::string curve_state;
    curve->add_option("--mode", curve_opt.mode, "ab or band")->check(CLI::IsMember({"ab", "band"}))->capture_default_str();
    curve->add_flag("--numeric", curve_opt.numeric, "evaluate the ledger on a seeded or given state");
    curve->add_option("--state", curve_state, "JSON state {N, M, A, B}");

    auto* check = app.add_subcommand("check", "run verification suites");
    add_common(check, common);
    std::string suite = "all";
    std::vector<std::string> choices = dkp::app::suite_names();
    choices.push_back("all");
    check->add_option("--suite", suite, "suite to run")->check(CLI::IsMember(choices))->capture_default_str();

    auto* flow = app.add_subcommand("flow", "integrate a hierarchy flow with RK4");
    add_common(flow, common);
    dkp::app::FlowOptions flow_opt;
    std::string degree = "first";
    std::string flow_state;
    flow->add_option("--degree", degree, "ledger degree, or 'first' for the sum of A")->capture_default_str();
    flow->add_option("--dt", flow_opt.dt, "step size")->check(CLI::PositiveNumber)->capture_default_str();
    flow->add_option("--T", flow_opt.T, "final time")->check(CLI::NonNegativeNumber)->capture_default_str();
    flow->add_option("--state", flow_state, "JSON state {N, M, A, B}");
    flow->add_option("--sample-every", flow_opt.sample_every, "record the state every k steps");
    flow->add_flag("--order-check", flow_opt.order_check, "repeat with dt/2 and report the drift ratio");

    auto* pipes = app.add_subcommand("pipes", "toroidal pipe diagrams");
    add_common(pipes, common);
    dkp::app::PipesOptions pipes_opt;
    pipes->add_option("--degree", pipes_opt.degree, "only diagrams of this degree");
    pipes->add_flag("--pairings", pipes_opt.pairings, "check the intersection pairing on all pairs");
    pipes->add_flag("--sum-zero", pipes_opt.sum_zero, "check that every product group sums to zero");

    auto* torus = app.add_subcommand("torus", "sign functions and reduction ranks");
    add_common(torus, common);

    CLI11_PARSE(app, argc, argv);

    try {
        dkp::require_coprime(common.N, common.M);
        nlohmann::json report;
        bool ok = true;
        if (*curve) {
            curve_opt.state = read_state(curve_state);
            report = dkp::app::curve_report(common.N, common.M, common.seed, curve_opt);
            std::cerr << "curve: " << report["curve"]["ledger"].size() << " conserved quantities\n";
        } else if (*check) {
            report = dkp::app::check_report(common.N, common.M, common.seed, suite);
            ok = report["ok"].get<bool>();
            std::cerr << "check " << suite << ": " << report["cases"] << " cases, " << report["failures"] << " failures\n";
        } else if (*flow) {
            if (degree != "first") flow_opt.degree = std::stoi(degree);
            flow_opt.state = read_state(flow_state);
            report = dkp::app::flow_report(common.N, common.M, common.seed, flow_opt);
            std::cerr << "flow " << report["flow"].get<std::string>() << ": max relative drift " << report["max_drift"] << "\n";
        } else if (*pipes) {
            report = dkp::app::pipes_report(common.N, common.M, common.seed, pipes_opt);
            ok = report["ok"].get<bool>();
        } else if (*torus) {
            report = dkp::app::torus_report(common.N, common.M, common.seed);
        }
        emit(report, common.out);
        return ok ? Ok : CheckFailed;
    } catch (const dkp::GcdError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return GcdViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return RuntimeFailure;
    }
}
