#ifndef DKP_POISSON_HPP
#define DKP_POISSON_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dkp/curve.hpp"
#include "dkp/lattice.hpp"
#include "dkp/poly.hpp"
#include "dkp/torus.hpp"
#include "json.hpp"

namespace dkp {

enum class BracketKind { Bracket2AB, Bracket2C, Bracket1C, Custom };
std::string to_string(BracketKind k);

class UniverseError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Bracket on a finite set of generators, tabulated once.
class BracketTable {
public:
    BracketTable(BracketKind kind, std::vector<GenId> universe, const std::function<Poly(GenId, GenId)>& rule);

    BracketKind kind() const { return kind_; }
    const std::vector<GenId>& universe() const { return gens_; }
    bool contains(GenId g) const;
    /// {x, y}; throws UniverseError outside the universe.
    const Poly& operator()(GenId x, GenId y) const;

private:
    std::size_t index(GenId g) const;
    BracketKind kind_;
    std::vector<GenId> gens_;
    std::vector<Poly> table_;
};

/// Structure functions shared by the brackets on one torus.
struct TorusData {
    TorusData(int N, int M);
    int N;
    int M;
    SignFunction kappa;
    SignFunction rho;
    SignFunction phi;
    /// zeta^{x,y}, built lazily.
    const SignFunction& zeta(int x, int y) const;

private:
    mutable std::map<std::pair<int, int>, SignFunction> zeta_;
};

std::vector<GenId> ab_generators(int N, int M);
std::vector<GenId> c_generators(int N, int M, int j);

Poly bracket2_ab_rule(const TorusData& t, GenId x, GenId y);
/// Closed-form induced bracket on level-j band variables.
Poly bracket2_c_rule(const TorusData& t, int j, GenId x, GenId y);
/// First bracket from the trace formula on level-1 band variables.
Poly bracket1_c_rule(int N, int M, GenId x, GenId y);

BracketTable bracket2_ab(int N, int M);
BracketTable bracket2_c(int N, int M, int j = 1);
BracketTable bracket1_c(int N, int M);

/// Bilinear Leibniz extension of a generator table.
Poly bracket(const BracketTable& t, const Poly& f, const Poly& g);
/// {f, g} for every g in the universe, sharing the derivatives of f.
std::vector<Poly> hamiltonian_field(const BracketTable& t, const Poly& f);

Poly jacobi_defect(const BracketTable& t, GenId a, GenId b, GenId c);
/// Sum over cyclic permutations of {x,{y,z}_1}_2 + {x,{y,z}_2}_1.
Poly mixed_jacobiator(const BracketTable& one, const BracketTable& two, GenId a, GenId b, GenId c);

/// Shifts every c(1,M,k) by t.
Poly shift_cm(const Poly& p, int N, int M, const Rational& t = 1);

struct Failure {
    std::string what;
    std::vector<std::string> tuple;
    std::string residual;
};

struct SuiteReport {
    std::string suite;
    int N = 0;
    int M = 0;
    long cases = 0;
    std::vector<Failure> failures;
    nlohmann::json details = nlohmann::json::object();
    bool ok() const { return failures.empty(); }
    void fail(std::string what, std::vector<GenId> tuple, const Poly& residual);
    void fail(std::string what, std::vector<std::string> tuple, std::string residual);
    void merge(const SuiteReport& o);
    nlohmann::json to_json() const;
};

/// Antisymmetry and vanishing Jacobi defect on all distinct triples.
SuiteReport check_jacobi(const BracketTable& t, int N, int M);
/// Closed form against the A,B expansion, every level, every pair.
SuiteReport check_closure(int N, int M);
SuiteReport check_closure_level(int N, int M, int j);
/// {q_{i+M}, g}_1 = {q_i, g}_2 on every generator, and bracket-1 Casimirs.
SuiteReport check_ladder(int N, int M);
/// {q_i, q_j}_2 = 0 in band variables, and in A,B when ab_mode is set.
SuiteReport check_involution(int N, int M, bool ab_mode);
/// Mixed Jacobiator and the shift relation between the two brackets.
SuiteReport check_compat(int N, int M);
/// Casimirs of both brackets, in both coordinate systems.
SuiteReport check_casimir(int N, int M);
/// Corrected q-link: sum_k d q_{a,b}/d c_M(k) = (b+1) q_{a,b+1}.
SuiteReport check_qlink(int N, int M);
/// Sign-function builders against their difference specs, symmetry, addition and
/// expansion rules of zeta for 0 <= x, y <= 2M, and the row-0 lemma.
SuiteReport check_torus(int N, int M);
/// Bracket degrees, the first flow, antisymmetry of every table.
SuiteReport check_structure(int N, int M);

}  // namespace dkp

#endif  // DKP_POISSON_HPP
