#include "dkp/lattice.hpp"

#include <random>
#include <stdexcept>

namespace dkp {

namespace {

const Poly& zero_poly()
{
    static const Poly z;
    return z;
}

long wrap_mod(long k, long N)
{
    long r = k % N;
    return r < 0 ? r + N : r;
}

}  // namespace

PeriodicBandMatrix::PeriodicBandMatrix(int N, int w)
    : N_(N), w_(w), e_(static_cast<std::size_t>(2 * w + 1) * static_cast<std::size_t>(N))
{
    if (N < 1 || w < 0) throw std::invalid_argument("PeriodicBandMatrix: bad shape");
}

PeriodicBandMatrix PeriodicBandMatrix::identity(int N)
{
    PeriodicBandMatrix m(N, 0);
    for (int k = 0; k < N; ++k) m.ref(0, k) = Poly(1);
    return m;
}

PeriodicBandMatrix PeriodicBandMatrix::elementary(int N, int w, int i, long k)
{
    PeriodicBandMatrix m(N, w);
    m.ref(i, k) = Poly(1);
    return m;
}

std::size_t PeriodicBandMatrix::slot(int i, long k) const
{
    return static_cast<std::size_t>(i) * N_ + static_cast<std::size_t>(wrap_mod(k, N_));
}

const Poly& PeriodicBandMatrix::at(int i, long k) const
{
    if (i < 0 || i > 2 * w_) return zero_poly();
    return e_[slot(i, k)];
}

Poly& PeriodicBandMatrix::ref(int i, long k)
{
    if (i < 0 || i > 2 * w_) throw std::out_of_range("band index outside the band");
    return e_[slot(i, k)];
}

const Poly& PeriodicBandMatrix::entry(long row, long col) const
{
    const long i = row + w_ - col;
    if (i < 0 || i > 2 * w_) return zero_poly();
    return at(static_cast<int>(i), row);
}

PeriodicBandMatrix PeriodicBandMatrix::widened(int w) const
{
    if (w < w_) throw std::invalid_argument("widened: cannot shrink");
    PeriodicBandMatrix r(N_, w);
    for (int i = 0; i <= 2 * w_; ++i)
        for (int k = 0; k < N_; ++k) r.ref(i + w - w_, k) = at(i, k);
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::operator+(const PeriodicBandMatrix& o) const
{
    if (N_ != o.N_) throw std::invalid_argument("band matrices of different period");
    const int w = std::max(w_, o.w_);
    PeriodicBandMatrix r = widened(w);
    const PeriodicBandMatrix b = o.widened(w);
    for (std::size_t s = 0; s < r.e_.size(); ++s) r.e_[s] += b.e_[s];
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::operator-(const PeriodicBandMatrix& o) const
{
    if (N_ != o.N_) throw std::invalid_argument("band matrices of different period");
    const int w = std::max(w_, o.w_);
    PeriodicBandMatrix r = widened(w);
    const PeriodicBandMatrix b = o.widened(w);
    for (std::size_t s = 0; s < r.e_.size(); ++s) r.e_[s] -= b.e_[s];
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::operator*(const PeriodicBandMatrix& o) const
{
    if (N_ != o.N_) throw std::invalid_argument("band matrices of different period");
    PeriodicBandMatrix r(N_, w_ + o.w_);
    for (int k = 0; k < N_; ++k) {
        for (int i1 = 0; i1 <= 2 * w_; ++i1) {
            const Poly& x = at(i1, k);
            if (x.is_zero()) continue;
            for (int i2 = 0; i2 <= 2 * o.w_; ++i2) {
                const Poly& y = o.at(i2, k + w_ - i1);
                if (y.is_zero()) continue;
                r.ref(i1 + i2, k) += x * y;
            }
        }
    }
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::commutator(const PeriodicBandMatrix& o) const
{
    return (*this) * o - o * (*this);
}

PeriodicBandMatrix PeriodicBandMatrix::upper_part() const
{
    PeriodicBandMatrix r(N_, w_);
    for (int i = 0; i < w_; ++i)
        for (int k = 0; k < N_; ++k) r.ref(i, k) = at(i, k);
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::lower_part() const
{
    PeriodicBandMatrix r(N_, w_);
    for (int i = w_; i <= 2 * w_; ++i)
        for (int k = 0; k < N_; ++k) r.ref(i, k) = at(i, k);
    return r;
}

PeriodicBandMatrix PeriodicBandMatrix::transpose() const
{
    PeriodicBandMatrix r(N_, w_);
    for (int i = 0; i <= 2 * w_; ++i)
        for (int k = 0; k < N_; ++k) r.ref(i, k) = at(2 * w_ - i, k + w_ - i);
    return r;
}

Poly PeriodicBandMatrix::trace_per_period() const
{
    Poly t;
    for (int k = 0; k < N_; ++k) t += at(w_, k);
    return t;
}

nlohmann::json PeriodicBandMatrix::to_json() const
{
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i <= 2 * w_; ++i)
        for (int k = 0; k < N_; ++k)
            if (!at(i, k).is_zero()) entries.push_back({i, k, at(i, k).to_string()});
    return {{"N", N_}, {"halfwidth", w_}, {"entries", entries}};
}

int site_position(int N, long k) { return static_cast<int>(wrap_mod(k - 1, N)); }

PeriodicBandMatrix x_band(int N, int M, int m)
{
    const Torus t(N, M);
    const int mm = t.wrap(0, m).m;
    PeriodicBandMatrix x(N, 1);
    for (int k = 0; k < N; ++k) {
        x.ref(0, k) = Poly(1);
        x.ref(1, k) = -Poly::var(gen::A(k, mm));
        x.ref(2, k) = -Poly::var(gen::B(k, mm));
    }
    return x;
}

PolyMatrix twist(const PeriodicBandMatrix& band)
{
    const int N = band.N();
    const int w = band.halfwidth();
    PolyMatrix c(N);
    for (long k = 1; k <= N; ++k) {
        for (int i = 0; i <= 2 * w; ++i) {
            const Poly& v = band.at(i, k);
            if (v.is_zero()) continue;
            const long col = k + w - i;
            const long l = wrap_mod(col - 1, N) + 1;
            const long s = (l - col) / N;
            c(static_cast<int>(k - 1), static_cast<int>(l - 1)) += v * Poly::var(gen::alpha(), static_cast<int>(-s));
        }
    }
    return c;
}

PolyMatrix build_W(int N, int M)
{
    const Torus t(N, M);
    const int size = N * M;
    PolyMatrix w(size);
    const int beta_block = t.wrap(0, 1).m;
    for (int m = 0; m < M; ++m) {
        const Poly d = (m == beta_block) ? -Poly::var(gen::beta()) : Poly(-1);
        for (int p = 0; p < N; ++p) w(m * N + p, m * N + p) += d;
        const int src = t.wrap(0, m - 1).m;
        const PolyMatrix x = twist(x_band(N, M, src));
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (!x(r, c).is_zero()) w(m * N + r, src * N + c) += x(r, c);
    }
    return w;
}

PeriodicBandMatrix band_variables(int N, int M, int j)
{
    if (j < 1 || j > M) throw std::out_of_range("band_variables: level outside 1..M");
    const int w = M + 1 - j;
    PeriodicBandMatrix b(N, w);
    for (int k = 0; k < N; ++k) {
        b.ref(0, k) = Poly(1);
        for (int i = 1; i <= 2 * w; ++i) b.ref(i, k) = Poly::var(gen::C(j, i, k));
    }
    return b;
}

PeriodicBandMatrix reduce_step(const PeriodicBandMatrix& upper, int M, int j)
{
    const int N = upper.N();
    const int w = M + 1 - j;
    if (upper.halfwidth() != w - 1) throw std::invalid_argument("reduce_step: level width mismatch");
    PeriodicBandMatrix r(N, w);
    for (int i = 0; i <= 2 * w; ++i) {
        for (long k = 0; k < N; ++k) {
            Poly v = upper.at(i, k);
            const Poly& c1 = upper.at(i - 1, k);
            if (!c1.is_zero()) v -= Poly::var(gen::A(static_cast<int>(wrap_mod(k - i + M + 1 - j, N)), j)) * c1;
            const Poly& c2 = upper.at(i - 2, k);
            if (!c2.is_zero()) v -= Poly::var(gen::B(static_cast<int>(wrap_mod(k - i + M + 2 - j, N)), j)) * c2;
            r.ref(i, k) = std::move(v);
        }
    }
    return r;
}

Reduction reduce(int N, int M)
{
    require_coprime(N, M);
    Reduction r;
    r.N = N;
    r.M = M;
    r.level.assign(static_cast<std::size_t>(M) + 1, PeriodicBandMatrix(N, 0));
    r.level[static_cast<std::size_t>(M)] = x_band(N, M, M);
    for (int j = M - 1; j >= 1; --j)
        r.level[static_cast<std::size_t>(j)] = reduce_step(r.level[static_cast<std::size_t>(j) + 1], M, j);
    return r;
}

std::map<GenId, Poly> reduction_images(const Reduction& r)
{
    std::map<GenId, Poly> img;
    for (int j = 1; j <= r.M; ++j) {
        const int w = r.M + 1 - j;
        for (int i = 1; i <= 2 * w; ++i)
            for (int k = 0; k < r.N; ++k) img.emplace(gen::C(j, i, k), r.at(j).at(i, k));
    }
    return img;
}

namespace {

struct MinorExpander {
    const PolyMatrix& m;
    std::vector<std::optional<Poly>> memo;

    explicit MinorExpander(const PolyMatrix& mat) : m(mat), memo(std::size_t{1} << mat.n) {}

    const Poly& minor(std::uint32_t used)
    {
        auto& slot = memo[used];
        if (slot) return *slot;
        const int r = __builtin_popcount(used);
        if (r == m.n) {
            slot = Poly(1);
            return *slot;
        }
        PolyAccumulator acc;
        int free_before = 0;
        for (int c = 0; c < m.n; ++c) {
            if ((used >> c) & 1u) continue;
            const Poly& a = m(r, c);
            if (!a.is_zero()) {
                const Poly& sub = minor(used | (1u << c));
                if (!sub.is_zero()) acc.add_product(a, sub, (free_before % 2 == 0) ? Rational(1) : Rational(-1));
            }
            ++free_before;
        }
        slot = acc.take();
        return *slot;
    }
};

}  // namespace

Poly determinant(const PolyMatrix& m)
{
    if (m.n == 0) return Poly(1);
    if (m.n > 24) throw std::invalid_argument("determinant: matrix too large for minor expansion");
    MinorExpander e(m);
    return e.minor(0);
}

int rational_rank(std::vector<std::vector<Rational>> rows)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
        std::size_t piv = r0;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r0]);
        const Rational inv = Rational(1) / rows[r0][c];
        for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
            if (rows[r][c].is_zero()) continue;
            const Rational f = rows[r][c] * inv;
            for (std::size_t cc = c; cc < cols; ++cc)
                if (!rows[r0][cc].is_zero()) rows[r][cc] -= f * rows[r0][cc];
        }
        ++r0;
        ++rank;
    }
    return rank;
}

namespace {

RankReport jacobian_rank_at(int N, int M, int j, const std::function<Rational(GenId)>& point)
{
    if (j < 1 || j >= M) throw std::out_of_range("jacobian rank: level must satisfy 1 <= j <= M-1");
    const PeriodicBandMatrix upper = band_variables(N, M, j + 1);
    const PeriodicBandMatrix level = reduce_step(upper, M, j);
    const int w = M + 1 - j;

    std::vector<GenId> source;
    for (int i = 1; i <= 2 * (w - 1); ++i)
        for (int k = 0; k < N; ++k) source.push_back(gen::C(j + 1, i, k));
    for (int k = 0; k < N; ++k) {
        source.push_back(gen::A(k, j));
        source.push_back(gen::B(k, j));
    }
    std::map<GenId, Poly> values;
    for (GenId g : source) values.emplace(g, Poly(point(g)));

    std::vector<std::vector<Rational>> rows;
    for (int i = 1; i <= 2 * w; ++i) {
        for (int k = 0; k < N; ++k) {
            const Poly& target = level.at(i, k);
            std::vector<Rational> row;
            row.reserve(source.size());
            for (GenId g : source) row.push_back(target.derivative(g).substitute(values).constant_term());
            rows.push_back(std::move(row));
        }
    }
    RankReport rep;
    rep.j = j;
    rep.target_dim = static_cast<int>(rows.size());
    rep.source_dim = static_cast<int>(source.size());
    rep.rank = rational_rank(std::move(rows));
    return rep;
}

}  // namespace

RankReport jacobian_rank_special(int N, int M, int j)
{
    const int top = 2 * M - 2 * j;
    return jacobian_rank_at(N, M, j, [&](GenId g) {
        if (gen::tag(g) == GenTag::C && gen::idx_m(g) == top) return Rational(1);
        return Rational(0);
    });
}

RankReport jacobian_rank_random(int N, int M, int j, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    std::map<GenId, Rational> cache;
    return jacobian_rank_at(N, M, j, [&](GenId g) {
        auto it = cache.find(g);
        if (it == cache.end()) it = cache.emplace(g, Rational(num(rng), den(rng))).first;
        return it->second;
    });
}

}  // namespace dkp
