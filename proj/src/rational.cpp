#include "dkp/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace dkp {

namespace {

bool fits_int64(const mpz_class& z) { return z.fits_slong_p() != 0; }

// Reduces n/d in place; returns false on overflow (only INT64_MIN corner cases).
bool normalize_small(std::int64_t& n, std::int64_t& d)
{
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
        if (n == INT64_MIN || d == INT64_MIN) return false;
        n = -n;
        d = -d;
    }
    if (n == 0) {
        d = 1;
        return true;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
    return true;
}

}  // namespace

Rational::Rational(long long n) : num_(n) {}

Rational::Rational(long long n, long long d) : num_(n), den_(d)
{
    if (!normalize_small(num_, den_)) {
        mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
        q.canonicalize();
        assign_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

void Rational::assign_big(mpq_class q)
{
    q.canonicalize();
    if (fits_int64(q.get_num()) && fits_int64(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::move(q);
    }
}

Rational Rational::parse(std::string_view text)
{
    std::string s(text);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const
{
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const
{
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const
{
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const
{
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const
{
    if (!big_ && num_ != INT64_MIN) return Rational(-num_, den_);
    return Rational(mpq_class(-to_mpq()));
}

Rational& Rational::operator+=(const Rational& o)
{
    if (!big_ && !o.big_) {
        std::int64_t n = 0;
        std::int64_t d = 0;
        if (den_ == 1 && o.den_ == 1) {
            if (!__builtin_add_overflow(num_, o.num_, &n)) {
                num_ = n;
                return *this;
            }
        } else {
            std::int64_t a = 0;
            std::int64_t b = 0;
            if (!__builtin_mul_overflow(num_, o.den_, &a) && !__builtin_mul_overflow(o.num_, den_, &b) &&
                !__builtin_add_overflow(a, b, &n) && !__builtin_mul_overflow(den_, o.den_, &d) &&
                normalize_small(n, d)) {
                num_ = n;
                den_ = d;
                return *this;
            }
        }
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o)
{
    if (!big_ && !o.big_) {
        std::int64_t n = 0;
        std::int64_t d = 0;
        if (den_ == 1 && o.den_ == 1) {
            if (!__builtin_mul_overflow(num_, o.num_, &n)) {
                num_ = n;
                return *this;
            }
        } else if (!__builtin_mul_overflow(num_, o.num_, &n) && !__builtin_mul_overflow(den_, o.den_, &d) &&
                   normalize_small(n, d)) {
            num_ = n;
            den_ = d;
            return *this;
        }
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    assign_big(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_mpq() == b.to_mpq();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    const int c = cmp(a.to_mpq(), b.to_mpq());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace dkp
