#ifndef DKP_FLOWS_HPP
#define DKP_FLOWS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dkp/curve.hpp"
#include "dkp/poly.hpp"
#include "json.hpp"

namespace dkp {

/// Numeric point of phase space; slot of (n,m) is m*N + n.
struct KPState {
    int N = 0;
    int M = 0;
    std::vector<double> A;
    std::vector<double> B;
    double t = 0.0;

    static KPState zero(int N, int M);
    /// Entries uniform in [lo, hi], fully determined by the seed.
    static KPState random(int N, int M, std::uint64_t seed, double lo = 0.5, double hi = 1.5);
    static KPState from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    double value(GenId g) const;
    bool finite() const;
};

/// Polynomial in A, B flattened for fast repeated evaluation.
class CompiledPoly {
public:
    CompiledPoly() = default;
    CompiledPoly(const Poly& p, int N, int M);
    double operator()(const KPState& s) const;

private:
    struct Term {
        double coef;
        std::vector<std::pair<std::uint32_t, int>> factors;  // slot into [A..., B...]
    };
    std::vector<Term> terms_;
};

/// Right-hand side x' = {H, x} on every A and B.
class FlowField {
public:
    /// Hamiltonian flow of a ledger quantity, through bracket2 on A, B.
    static FlowField ledger(const SpectralCurve& ab_curve, int degree);
    /// Flow of an arbitrary Hamiltonian polynomial in A, B.
    static FlowField of(const Poly& hamiltonian, int N, int M, std::string label);
    /// The flow generated by the sum of all A(n,m).
    static FlowField first(int N, int M);

    const std::string& label() const { return label_; }
    void operator()(const KPState& s, KPState& out) const;

private:
    int N_ = 0;
    int M_ = 0;
    std::string label_;
    std::vector<CompiledPoly> a_;
    std::vector<CompiledPoly> b_;
};

/// The first flow written out directly from the structure functions.
void first_flow_direct(const KPState& s, KPState& out);

struct IntegrationReport {
    KPState final_state;
    long steps = 0;
    std::map<int, double> max_rel_drift;  // per ledger degree
    std::vector<KPState> trajectory;      // sampled states when requested
    double max_drift() const;
    nlohmann::json to_json(bool with_trajectory) const;
};

class NonFiniteState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Classical fixed-step RK4; every ledger quantity is monitored after each step.
IntegrationReport integrate(const KPState& start, const FlowField& flow, double dt, double T,
                            const SpectralCurve& monitors, int sample_every = 0);

/// Drift ratio drift(dt) / drift(dt/2) of the largest-drift quantity.
struct OrderReport {
    double dt = 0.0;
    double drift_coarse = 0.0;
    double drift_fine = 0.0;
    double ratio = 0.0;
    int degree = 0;
    /// log2 of the ratio; 4 for a fourth order method in the asymptotic regime.
    double order() const;
    nlohmann::json to_json() const;
};
OrderReport order_check(const KPState& start, const FlowField& flow, double dt, double T, const SpectralCurve& monitors);

/// Max-norm distance between flowing d1 then d2 and d2 then d1, each for time T.
double commutation_defect(const KPState& start, const FlowField& f1, const FlowField& f2, double dt, double T);

}  // namespace dkp

#endif  // DKP_FLOWS_HPP
