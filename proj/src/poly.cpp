#include "dkp/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dkp {

namespace gen {

namespace {
constexpr std::uint32_t kTagShift = 28;
constexpr std::uint32_t kLow14 = (1u << 14) - 1;

GenId make(GenTag t, std::uint32_t payload) { return (static_cast<std::uint32_t>(t) << kTagShift) | payload; }

void check_range(int v, int limit, const char* what)
{
    if (v < 0 || v >= limit) throw std::out_of_range(std::string("generator index out of range: ") + what);
}
}  // namespace

GenId alpha() { return make(GenTag::Alpha, 0); }
GenId beta() { return make(GenTag::Beta, 0); }

GenId A(int n, int m)
{
    check_range(n, 1 << 14, "n");
    check_range(m, 1 << 14, "m");
    return make(GenTag::A, (static_cast<std::uint32_t>(m) << 14) | static_cast<std::uint32_t>(n));
}

GenId B(int n, int m)
{
    check_range(n, 1 << 14, "n");
    check_range(m, 1 << 14, "m");
    return make(GenTag::B, (static_cast<std::uint32_t>(m) << 14) | static_cast<std::uint32_t>(n));
}

GenId C(int j, int i, int k)
{
    check_range(j, 1 << 6, "j");
    check_range(i, 1 << 8, "i");
    check_range(k, 1 << 14, "k");
    return make(GenTag::C, (static_cast<std::uint32_t>(j) << 22) | (static_cast<std::uint32_t>(i) << 14) |
                               static_cast<std::uint32_t>(k));
}

GenTag tag(GenId g) { return static_cast<GenTag>(g >> kTagShift); }
int idx_n(GenId g) { return static_cast<int>(g & kLow14); }
int idx_m(GenId g) { return static_cast<int>((g >> 14) & (tag(g) == GenTag::C ? 0xFFu : kLow14)); }
int idx_j(GenId g) { return static_cast<int>((g >> 22) & 0x3Fu); }

std::string name(GenId g)
{
    switch (tag(g)) {
    case GenTag::Alpha: return "alpha";
    case GenTag::Beta: return "beta";
    case GenTag::A: return "A(" + std::to_string(idx_n(g)) + "," + std::to_string(idx_m(g)) + ")";
    case GenTag::B: return "B(" + std::to_string(idx_n(g)) + "," + std::to_string(idx_m(g)) + ")";
    case GenTag::C:
        return "c(" + std::to_string(idx_j(g)) + "," + std::to_string(idx_m(g)) + "," + std::to_string(idx_n(g)) +
               ")";
    }
    throw std::logic_error("bad generator tag");
}

GenId parse(const std::string& s)
{
    if (s == "alpha") return alpha();
    if (s == "beta") return beta();
    int a = 0;
    int b = 0;
    int c = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "A(%d,%d)%c", &a, &b, &tail) == 2) return A(a, b);
    if (std::sscanf(s.c_str(), "B(%d,%d)%c", &a, &b, &tail) == 2) return B(a, b);
    if (std::sscanf(s.c_str(), "c(%d,%d,%d)%c", &a, &b, &c, &tail) == 3) return C(a, b, c);
    throw std::invalid_argument("unknown generator '" + s + "'");
}

}  // namespace gen

Monomial::Monomial(GenId g, int e)
{
    if (e != 0) f_.emplace_back(g, e);
}

int Monomial::exponent(GenId g) const
{
    auto it = std::lower_bound(f_.begin(), f_.end(), g, [](const Factor& f, GenId x) { return f.first < x; });
    return (it != f_.end() && it->first == g) ? it->second : 0;
}

int Monomial::total_degree(int N, int M) const
{
    int d = 0;
    for (const auto& [g, e] : f_) d += e * generator_degree(g, N, M);
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    auto a = f_.begin();
    auto b = o.f_.begin();
    while (a != f_.end() || b != o.f_.end()) {
        if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
            r.f_.push_back(*a++);
        } else if (a == f_.end() || b->first < a->first) {
            r.f_.push_back(*b++);
        } else {
            const int e = a->second + b->second;
            if (e != 0) r.f_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::without(GenId g, int* e) const
{
    Monomial r;
    *e = 0;
    for (const auto& f : f_) {
        if (f.first == g)
            *e = f.second;
        else
            r.f_.push_back(f);
    }
    return r;
}

std::string Monomial::to_string() const
{
    if (f_.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : f_) {
        if (!s.empty()) s += "*";
        s += gen::name(g);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

Poly::Poly(long long c) : Poly(Rational(c)) {}

Poly::Poly(const Rational& c)
{
    if (!c.is_zero()) t_.push_back({Monomial{}, c});
}

Poly Poly::var(GenId g, int e) { return monomial(Monomial(g, e)); }

Poly Poly::monomial(Monomial m, Rational c)
{
    Poly p;
    if (!c.is_zero()) p.t_.push_back({std::move(m), std::move(c)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    Poly p;
    p.t_ = std::move(terms);
    p.canonicalize();
    return p;
}

void Poly::canonicalize()
{
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < t_.size();) {
        std::size_t j = i + 1;
        Rational c = std::move(t_[i].coef);
        while (j < t_.size() && t_[j].mono == t_[i].mono) c += t_[j++].coef;
        if (!c.is_zero()) {
            if (out != i) t_[out].mono = std::move(t_[i].mono);
            t_[out].coef = std::move(c);
            ++out;
        }
        i = j;
    }
    t_.resize(out);
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.is_one()); }

Rational Poly::constant_term() const
{
    if (!t_.empty() && t_[0].mono.is_one()) return t_[0].coef;
    return 0;
}

std::vector<GenId> Poly::generators() const
{
    std::vector<GenId> g;
    for (const auto& t : t_)
        for (const auto& f : t.mono.factors()) g.push_back(f.first);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.t_) t.coef = -t.coef;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.t_.empty()) return *this;
    std::vector<Term> r;
    r.reserve(t_.size() + o.t_.size());
    auto a = t_.begin();
    auto b = o.t_.begin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->mono < b->mono)) {
            r.push_back(std::move(*a++));
        } else if (a == t_.end() || b->mono < a->mono) {
            r.push_back(*b++);
        } else {
            Rational c = a->coef + b->coef;
            if (!c.is_zero()) r.push_back({std::move(a->mono), std::move(c)});
            ++a;
            ++b;
        }
    }
    t_ = std::move(r);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.t_.empty() || b.t_.empty()) return {};
    if (a.is_constant()) return b * a.t_[0].coef;
    if (b.is_constant()) return a * b.t_[0].coef;
    std::vector<Poly::Term> out;
    out.reserve(a.t_.size() * b.t_.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) out.push_back({x.mono * y.mono, x.coef * y.coef});
    return Poly::from_terms(std::move(out));
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        t_.clear();
    } else if (!c.is_one()) {
        for (auto& t : t_) t.coef *= c;
    }
    return *this;
}

bool operator==(const Poly& a, const Poly& b)
{
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (!(a.t_[i].mono == b.t_[i].mono) || !(a.t_[i].coef == b.t_[i].coef)) return false;
    return true;
}

Poly Poly::pow(unsigned e) const
{
    Poly r(1);
    Poly base = *this;
    while (e != 0) {
        if ((e & 1u) != 0) r *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return r;
}

Poly Poly::derivative(GenId g) const
{
    std::vector<Term> out;
    for (const auto& t : t_) {
        int e = 0;
        Monomial rest = t.mono.without(g, &e);
        if (e == 0) continue;
        if (e != 1) rest = rest * Monomial(g, e - 1);
        out.push_back({std::move(rest), t.coef * Rational(e)});
    }
    return from_terms(std::move(out));
}

Poly Poly::substitute(const std::map<GenId, Poly>& images) const
{
    return substitute([&](GenId g) -> std::optional<Poly> {
        auto it = images.find(g);
        if (it == images.end()) return std::nullopt;
        return it->second;
    });
}

Poly Poly::substitute(const std::function<std::optional<Poly>(GenId)>& image) const
{
    std::map<GenId, std::optional<Poly>> cache;
    auto lookup = [&](GenId g) -> const std::optional<Poly>& {
        auto it = cache.find(g);
        if (it == cache.end()) it = cache.emplace(g, image(g)).first;
        return it->second;
    };
    PolyAccumulator acc;
    for (const auto& t : t_) {
        Monomial kept;
        Poly factor(t.coef);
        for (const auto& [g, e] : t.mono.factors()) {
            const auto& img = lookup(g);
            if (!img) {
                kept.f_.emplace_back(g, e);
                continue;
            }
            if (e < 0) throw std::domain_error("substitute: negative exponent on " + gen::name(g));
            factor *= img->pow(static_cast<unsigned>(e));
            if (factor.is_zero()) break;
        }
        if (factor.is_zero()) continue;
        acc.add(factor * Poly::monomial(std::move(kept)));
    }
    return acc.take();
}

Poly Poly::coeff(int a, int b) const
{
    const GenId al = gen::alpha();
    const GenId be = gen::beta();
    std::vector<Term> out;
    for (const auto& t : t_) {
        if (t.mono.exponent(al) != a || t.mono.exponent(be) != b) continue;
        int e = 0;
        Monomial m = t.mono.without(al, &e).without(be, &e);
        out.push_back({std::move(m), t.coef});
    }
    return from_terms(std::move(out));
}

std::map<std::pair<int, int>, Poly> Poly::split_alpha_beta() const
{
    const GenId al = gen::alpha();
    const GenId be = gen::beta();
    std::map<std::pair<int, int>, std::vector<Term>> groups;
    for (const auto& t : t_) {
        int a = 0;
        int b = 0;
        Monomial m = t.mono.without(al, &a).without(be, &b);
        groups[{a, b}].push_back({std::move(m), t.coef});
    }
    std::map<std::pair<int, int>, Poly> out;
    for (auto& [k, v] : groups) out.emplace(k, from_terms(std::move(v)));
    return out;
}

double Poly::eval(const std::function<double(GenId)>& value) const
{
    double s = 0.0;
    for (const auto& t : t_) {
        double v = t.coef.to_double();
        for (const auto& [g, e] : t.mono.factors()) v *= std::pow(value(g), e);
        s += v;
    }
    return s;
}

std::string Poly::to_string() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        const bool neg = t.coef.sign() < 0;
        const Rational mag = neg ? -t.coef : t.coef;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (t.mono.is_one()) {
            os << mag;
        } else {
            if (!mag.is_one()) os << mag << "*";
            os << t.mono.to_string();
        }
    }
    return os.str();
}

int generator_degree(GenId g, int N, int M)
{
    switch (gen::tag(g)) {
    case GenTag::Alpha: return N;
    case GenTag::Beta: return M;
    case GenTag::A: return 1;
    case GenTag::B: return 2;
    case GenTag::C: return gen::idx_m(g);
    }
    return 0;
}

DegreeReport degree_of(const Poly& p, int N, int M)
{
    DegreeReport r;
    for (const auto& t : p.terms()) {
        const int d = t.mono.total_degree(N, M);
        r.per_term.push_back(d);
        if (!r.degree)
            r.degree = d;
        else if (*r.degree != d)
            r.homogeneous = false;
    }
    if (!r.homogeneous) r.degree.reset();
    return r;
}

void PolyAccumulator::add(const Poly& p) { buf_.insert(buf_.end(), p.terms().begin(), p.terms().end()); }

void PolyAccumulator::add_product(const Poly& a, const Poly& b, const Rational& scale)
{
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) buf_.push_back({x.mono * y.mono, x.coef * y.coef * scale});
}

void PolyAccumulator::add_term(Monomial m, Rational c) { buf_.push_back({std::move(m), std::move(c)}); }

Poly PolyAccumulator::take()
{
    Poly p = Poly::from_terms(std::move(buf_));
    buf_.clear();
    return p;
}

}  // namespace dkp
