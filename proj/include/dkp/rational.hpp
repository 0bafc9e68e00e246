#ifndef DKP_RATIONAL_HPP
#define DKP_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dkp {

/// Exact rational number.
///
/// Values that fit in a reduced int64 fraction are kept inline; anything
/// larger is promoted to a GMP rational and demoted again once it fits.
/// Almost every coefficient produced by this library is a small integer,
/// so the inline path carries nearly all of the arithmetic.
class Rational {
public:
    Rational() = default;
    Rational(long long n);  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    double to_double() const;
    std::string to_string() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    void assign_big(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::optional<mpq_class> big_;
};

}  // namespace dkp

#endif  // DKP_RATIONAL_HPP
