#ifndef DKP_TORUS_HPP
#define DKP_TORUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dkp {

/// Raised whenever a (N,M) pair with gcd != 1 reaches a constructor.
class GcdError : public std::invalid_argument {
public:
    GcdError(int N, int M);
};

void require_coprime(int N, int M);

/// Point of Z/N x Z/M stored by canonical residues.
struct TorusPoint {
    int n = 0;
    int m = 0;
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

class Torus {
public:
    Torus(int N, int M);

    int N() const { return N_; }
    int M() const { return M_; }
    std::size_t size() const { return static_cast<std::size_t>(N_) * M_; }

    /// Reduces arbitrary integers to canonical residues.
    TorusPoint wrap(long n, long m) const;
    std::size_t index(long n, long m) const;
    TorusPoint point(std::size_t idx) const;

private:
    int N_;
    int M_;
};

enum class SignKind { Kappa, Rho, Phi, Zeta, Custom };
std::string to_string(SignKind k);

/// Total {-1,0,1}-valued table on the torus.
class SignFunction {
public:
    SignFunction(int N, int M, SignKind kind, std::vector<int> values, int x = 0, int y = 0);

    int N() const { return torus_.N(); }
    int M() const { return torus_.M(); }
    const Torus& torus() const { return torus_; }
    SignKind kind() const { return kind_; }
    int x() const { return x_; }
    int y() const { return y_; }

    int operator()(long n, long m) const { return values_[torus_.index(n, m)]; }
    const std::vector<int>& values() const { return values_; }

    bool is_odd() const;
    friend bool operator==(const SignFunction& a, const SignFunction& b) { return a.values_ == b.values_; }

    nlohmann::json to_json() const;

private:
    Torus torus_;
    SignKind kind_;
    int x_;
    int y_;
    std::vector<int> values_;
};

enum class KappaCase { Case1, Case2 };
std::string to_string(KappaCase c);

/// Walk (-1,1),(-2,2),... and report which of (1,0), (-1,0) comes first.
/// On a tie (N <= 2) Case1 is reported.
KappaCase euclid_parity(int N, int M);
/// Number of division steps of the Euclidean algorithm on the ordered pair.
int euclid_steps(int N, int M);
/// Case predicted by the step count: even is Case1.
KappaCase euclid_parity_by_steps(int N, int M);

SignFunction build_kappa(int N, int M);
SignFunction build_rho(int N, int M);
SignFunction build_phi(int N, int M);
SignFunction build_zeta(int N, int M, int x, int y);

/// f(from + (-1,1)) - f(from) = diff.
struct DifferenceCondition {
    TorusPoint from;
    int diff = 0;
};

struct DifferenceSpec {
    int N = 1;
    int M = 1;
    std::vector<DifferenceCondition> conditions;
    /// Optional forced value used when range feasibility leaves a choice.
    std::optional<std::pair<TorusPoint, int>> pin;
};

DifferenceSpec kappa_spec(int N, int M);
DifferenceSpec rho_spec(int N, int M);
DifferenceSpec zeta_spec(int N, int M, int x, int y);

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All additive shifts that put the orbit-walk solution into {-1,0,1}.
/// Throws SpecError when the net difference around the orbit is nonzero.
std::vector<SignFunction> difference_spec_solutions(const DifferenceSpec& spec, SignKind kind = SignKind::Custom);
/// Unique solution, honouring the pin; throws SpecError otherwise.
SignFunction solve_difference_spec(const DifferenceSpec& spec, SignKind kind = SignKind::Custom);

/// True when the spec's conditions hold and all other steps are flat.
bool satisfies_spec(const SignFunction& f, const DifferenceSpec& spec);

/// Between cyclically consecutive +1's of a row there is exactly one -1.
bool strictly_row_alternating(const SignFunction& f);

}  // namespace dkp

#endif  // DKP_TORUS_HPP
