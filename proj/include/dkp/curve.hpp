#ifndef DKP_CURVE_HPP
#define DKP_CURVE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dkp/poly.hpp"
#include "json.hpp"

namespace dkp {

enum class CurveMode {
    AB,    // entries expanded through the reduction into A, B
    Band,  // entries are the level-1 band variables c(1,i,k)
};

struct LedgerEntry {
    int degree = 0;
    int a = 0;  // alpha exponent
    int b = 0;  // beta exponent
    Poly q;
    bool casimir2 = false;
    bool casimir1 = false;
};

/// det(C_alpha + beta I) divided by its alpha^M beta^0 coefficient.
///
/// Written out, the curve reads alpha^M + ... + sum over (a,b) of
/// q_{a,b} alpha^a beta^b with beta^N carrying coefficient +-1. Every
/// coefficient with positive degree NM - aN - bM is a conserved quantity.
struct SpectralCurve {
    int N = 0;
    int M = 0;
    CurveMode mode = CurveMode::AB;
    Poly determinant;  // unnormalised det(C_alpha + beta I)
    Rational normalization = 1;
    std::map<std::pair<int, int>, Poly> coefficients;
    std::map<int, LedgerEntry> ledger;

    const LedgerEntry& q(int degree) const;
    bool has(int degree) const { return ledger.count(degree) != 0; }
    std::vector<int> degrees() const;
    std::set<int> casimir2_degrees() const;
    std::set<int> casimir1_degrees() const;
    nlohmann::json to_json() const;
};

class LedgerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SpectralCurve compute_curve(int N, int M, CurveMode mode);

/// det(W) rewritten in the det(C + beta I) convention, for cross-checks.
Poly curve_polynomial_from_W(int N, int M);

/// Expected nonconstant degrees: NM - aN - bM for |a| <= M and
/// 0 <= b <= (NM - |a|N)/M.
std::set<int> predicted_degrees(int N, int M);

struct DegreeSymmetryReport {
    bool homogeneous = false;       // every monomial of the determinant has degree NM
    bool mirror = false;            // (a,b) realised iff (-a,b) realised
    bool matches_prediction = false;
    bool counts = false;            // (N+1)M quantities, 2M of each Casimir kind
    bool nonvanishing = false;      // every predicted coefficient is a nonzero polynomial
    std::vector<std::string> problems;
    bool ok() const { return homogeneous && mirror && matches_prediction && counts && nonvanishing; }
    nlohmann::json to_json() const;
};

DegreeSymmetryReport verify_degree_symmetry(const SpectralCurve& c);

struct QLinkRow {
    int upper = 0;  // degree i+M
    int lower = 0;  // degree i
    int b = 0;      // beta exponent of the upper quantity
    Rational ratio = 0;  // sum_k dq_{i+M}/dc_M(k) = ratio * q_i, 0 if not proportional
    bool proportional = false;
};

/// Sum over sites of the c_M derivative of each ledger entry compared with
/// the entry one beta power higher. Requires a band-mode curve.
std::vector<QLinkRow> qlink_rows(const SpectralCurve& band_curve);

}  // namespace dkp

#endif  // DKP_CURVE_HPP
