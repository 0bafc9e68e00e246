#ifndef DKP_POLY_HPP
#define DKP_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "dkp/rational.hpp"

namespace dkp {

// Generators are packed into 32 bits: a 4-bit tag followed by indices.
// The numeric order of the ids is the canonical generator enumeration.
enum class GenTag : std::uint32_t { Alpha = 0, Beta = 1, A = 2, B = 3, C = 4 };

using GenId = std::uint32_t;

namespace gen {

GenId alpha();
GenId beta();
/// A(n,m) and B(n,m) with canonical residues 0 <= n < 2^14, 0 <= m < 2^14.
GenId A(int n, int m);
GenId B(int n, int m);
/// Band variable at reduction level j, band index i, site k.
GenId C(int j, int i, int k);

GenTag tag(GenId g);
int idx_n(GenId g);  // n of A/B, k of C
int idx_m(GenId g);  // m of A/B, i of C
int idx_j(GenId g);  // j of C

std::string name(GenId g);
/// Inverse of name(); throws std::invalid_argument.
GenId parse(const std::string& s);

}  // namespace gen

class Monomial {
public:
    using Factor = std::pair<GenId, int>;
    using Storage = boost::container::small_vector<Factor, 4>;

    Monomial() = default;
    explicit Monomial(GenId g, int e = 1);

    const Storage& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int exponent(GenId g) const;
    int total_degree(int N, int M) const;

    Monomial operator*(const Monomial& o) const;
    /// Removes g entirely and returns its exponent.
    Monomial without(GenId g, int* e) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.f_ < b.f_; }

    std::string to_string() const;

private:
    friend class Poly;
    Storage f_;
};

/// Sparse polynomial over exact rationals, Laurent in alpha only.
class Poly {
public:
    struct Term {
        Monomial mono;
        Rational coef;
    };

    Poly() = default;
    Poly(long long c);  // NOLINT(google-explicit-constructor)
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
    static Poly var(GenId g, int e = 1);
    static Poly monomial(Monomial m, Rational c = 1);
    /// Builds from unsorted, possibly repeated terms.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    /// Sorted, duplicate-free list of generators that occur.
    std::vector<GenId> generators() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b);

    Poly pow(unsigned e) const;
    Poly derivative(GenId g) const;
    /// Replaces every listed generator by its image; others stay.
    Poly substitute(const std::map<GenId, Poly>& images) const;
    Poly substitute(const std::function<std::optional<Poly>(GenId)>& image) const;
    /// Coefficient of alpha^a beta^b, as a polynomial free of alpha and beta.
    Poly coeff(int a, int b) const;
    /// All (a,b) exponent pairs present, each with its coefficient.
    std::map<std::pair<int, int>, Poly> split_alpha_beta() const;

    double eval(const std::function<double(GenId)>& value) const;

    std::string to_string() const;

private:
    void canonicalize();
    std::vector<Term> t_;
};

struct DegreeReport {
    bool homogeneous = true;
    std::optional<int> degree;  // common degree when homogeneous and nonzero
    std::vector<int> per_term;
};

/// Generator degrees: A 1, B 2, alpha N, beta M, band index i for C.
int generator_degree(GenId g, int N, int M);
DegreeReport degree_of(const Poly& p, int N, int M);

/// Accumulates many products before one canonicalization.
class PolyAccumulator {
public:
    void add(const Poly& p);
    void add_product(const Poly& a, const Poly& b, const Rational& scale = 1);
    void add_term(Monomial m, Rational c);
    Poly take();

private:
    std::vector<Poly::Term> buf_;
};

}  // namespace dkp

#endif  // DKP_POLY_HPP
