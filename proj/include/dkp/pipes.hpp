#ifndef DKP_PIPES_HPP
#define DKP_PIPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkp/poisson.hpp"
#include "dkp/poly.hpp"
#include "dkp/torus.hpp"
#include "json.hpp"

namespace dkp {

/// Piece bits. Horizontal joins W-E, left-down knee W-S, up-right knee N-E.
enum Piece : std::uint8_t { Horizontal = 1, LeftDown = 2, UpRight = 4 };

class PipeDiagram {
public:
    PipeDiagram(int N, int M);

    int N() const { return torus_.N(); }
    int M() const { return torus_.M(); }
    std::uint8_t at(int n, int m) const { return site_[torus_.index(n, m)]; }
    void place(int n, int m, Piece p) { site_[torus_.index(n, m)] |= p; }
    const std::vector<std::uint8_t>& sites() const { return site_; }

    /// Number of horizontal pieces.
    int degree() const;
    int count(Piece p) const;
    /// Only H, LD, UR and LD+UR per site, every used port matched by its neighbour.
    bool closed() const;
    std::vector<TorusPoint> horizontals() const;
    /// Product of A(n,m) over the horizontal pieces.
    Monomial monomial() const;
    /// Crossings of a vertical cut divided by N, crossings of a horizontal cut divided by M.
    std::pair<Rational, Rational> winding() const;

    nlohmann::json to_json() const;
    friend bool operator==(const PipeDiagram& a, const PipeDiagram& b) { return a.site_ == b.site_; }
    friend bool operator<(const PipeDiagram& a, const PipeDiagram& b) { return a.site_ < b.site_; }

private:
    Torus torus_;
    std::vector<std::uint8_t> site_;
};

/// Places horizontals at the marked sites and the forced knees after each.
/// Empty when the knees collide.
std::optional<PipeDiagram> complete_from_horizontals(int N, int M, const std::vector<TorusPoint>& horizontals);

/// All closed diagrams of the given degree, in lexicographic order of sites.
std::vector<PipeDiagram> enumerate_tpds(int N, int M, int degree);

/// Knee-overlap count: d1 horizontals on d2 left-down knees minus those on d2 up-right knees.
int pairing(const PipeDiagram& d1, const PipeDiagram& d2);
/// Sum of kappa(n-i, m-j) over horizontals (n,m) of d1 and (i,j) of d2: the
/// coefficient of the bracket of the two monomials at B = 0. Equals -pairing(d1, d2).
int pairing_kappa(const PipeDiagram& d1, const PipeDiagram& d2, const SignFunction& kappa);

/// Multiset union of pieces, as per-site counts of each kind.
std::vector<std::uint8_t> diagram_product(const PipeDiagram& d1, const PipeDiagram& d2);

struct PartnerPair {
    std::size_t first;
    std::size_t second;
    int pairing;
};

/// Index pairs (into the two degree lists) other than (i1, i2) with the same product.
std::vector<PartnerPair> decomposition_partners(const std::vector<PipeDiagram>& deg1, const std::vector<PipeDiagram>& deg2,
                                                std::size_t i1, std::size_t i2);

/// Diagram counts against the pure-A monomials of each ledger quantity at B = 0.
SuiteReport check_pipes_bijection(int N, int M);
/// Knee count against the kappa sum, antisymmetry, and the bracket of the two monomials at B = 0.
SuiteReport check_pipes_pairing(int N, int M);
/// Pairings summed over every product group vanish; nonzero pairings have partners.
SuiteReport check_pipes_sum_zero(int N, int M);

}  // namespace dkp

#endif  // DKP_PIPES_HPP
