#ifndef DKP_LATTICE_HPP
#define DKP_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "dkp/poly.hpp"
#include "dkp/torus.hpp"
#include "json.hpp"

namespace dkp {

/// Bi-infinite, period-N band matrix of halfwidth w.
///
/// Band index i in [0, 2w] at site k is the entry (k, k + w - i); the
/// diagonal is i = w and i < w lies strictly above it.
class PeriodicBandMatrix {
public:
    PeriodicBandMatrix(int N, int w);

    static PeriodicBandMatrix identity(int N);
    /// Ones at every periodic copy of band index i, site k.
    static PeriodicBandMatrix elementary(int N, int w, int i, long k);

    int N() const { return N_; }
    int halfwidth() const { return w_; }

    /// Zero when i is outside [0, 2w].
    const Poly& at(int i, long k) const;
    Poly& ref(int i, long k);
    /// Entry of the infinite matrix.
    const Poly& entry(long row, long col) const;

    PeriodicBandMatrix operator+(const PeriodicBandMatrix& o) const;
    PeriodicBandMatrix operator-(const PeriodicBandMatrix& o) const;
    PeriodicBandMatrix operator*(const PeriodicBandMatrix& o) const;
    PeriodicBandMatrix commutator(const PeriodicBandMatrix& o) const;
    PeriodicBandMatrix upper_part() const;
    PeriodicBandMatrix lower_part() const;
    PeriodicBandMatrix transpose() const;
    /// Sum of diagonal entries over one period.
    Poly trace_per_period() const;
    /// Same matrix stored with a larger halfwidth.
    PeriodicBandMatrix widened(int w) const;

    nlohmann::json to_json() const;

private:
    std::size_t slot(int i, long k) const;
    int N_;
    int w_;
    std::vector<Poly> e_;
};

/// Dense square matrix of polynomials.
struct PolyMatrix {
    int n = 0;
    std::vector<Poly> a;

    explicit PolyMatrix(int size = 0) : n(size), a(static_cast<std::size_t>(size) * size) {}
    Poly& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const Poly& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

/// Matrix position of a site: sites are laid out 1..N, so residue k sits at (k-1) mod N.
int site_position(int N, long k);

/// The spectral matrix; row/column of torus point (n,m) is m*N + site_position(n).
PolyMatrix build_W(int N, int M);

/// X(m) as a halfwidth-1 band: 1 above, -A(k,m) on, -B(k,m) below the diagonal.
PeriodicBandMatrix x_band(int N, int M, int m);

/// Symbolic band variables c(j,i,k) of level j with c_0 = 1.
PeriodicBandMatrix band_variables(int N, int M, int j);

/// One elimination step: level j from level j+1, any entry polynomials.
PeriodicBandMatrix reduce_step(const PeriodicBandMatrix& upper, int M, int j);

/// All levels j = 1..M with entries polynomial in A, B (index 0 unused).
struct Reduction {
    int N = 0;
    int M = 0;
    std::vector<PeriodicBandMatrix> level;
    const PeriodicBandMatrix& at(int j) const { return level.at(static_cast<std::size_t>(j)); }
};
Reduction reduce(int N, int M);

/// Images c(j,i,k) -> polynomial in A, B for every level.
std::map<GenId, Poly> reduction_images(const Reduction& r);

/// Wraps a band matrix into the N x N alpha-twisted matrix.
PolyMatrix twist(const PeriodicBandMatrix& band);

/// Expansion by minors memoised over column subsets.
Poly determinant(const PolyMatrix& m);

/// Exact rank of a rational matrix.
int rational_rank(std::vector<std::vector<Rational>> rows);

struct RankReport {
    int j = 0;
    int rank = 0;
    int target_dim = 0;
    int source_dim = 0;
    bool full() const { return rank == target_dim; }
};

/// Differential of one elimination step at the special point.
RankReport jacobian_rank_special(int N, int M, int j);
/// Same differential at a seeded random rational point.
RankReport jacobian_rank_random(int N, int M, int j, std::uint64_t seed);

}  // namespace dkp

#endif  // DKP_LATTICE_HPP
