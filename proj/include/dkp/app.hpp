#ifndef DKP_APP_HPP
#define DKP_APP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dkp::app {

const char* version();

/// Every report starts from {N, M, command, version, seed}.
nlohmann::json header(int N, int M, const std::string& command, std::uint64_t seed);

struct CurveOptions {
    std::string mode = "ab";  // "ab" or "band"
    bool numeric = false;     // also evaluate the ledger on a numeric state
    std::optional<nlohmann::json> state;
};
nlohmann::json curve_report(int N, int M, std::uint64_t seed, const CurveOptions& opt);

/// Names accepted by check_report besides "all".
const std::vector<std::string>& suite_names();
/// "ok" is false when any suite reported a failure.
nlohmann::json check_report(int N, int M, std::uint64_t seed, const std::string& suite);

struct FlowOptions {
    std::optional<int> degree;  // empty means the first flow
    double dt = 1e-3;
    double T = 1.0;
    int sample_every = 0;
    bool order_check = false;
    std::optional<nlohmann::json> state;
};
nlohmann::json flow_report(int N, int M, std::uint64_t seed, const FlowOptions& opt);

struct PipesOptions {
    std::optional<int> degree;
    bool pairings = false;
    bool sum_zero = false;
};
nlohmann::json pipes_report(int N, int M, std::uint64_t seed, const PipesOptions& opt);

nlohmann::json torus_report(int N, int M, std::uint64_t seed);

}  // namespace dkp::app

#endif  // DKP_APP_HPP
