#include "dkp/pipes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dkp/curve.hpp"

namespace dkp {

namespace {

bool uses_w(std::uint8_t s) { return (s & (Horizontal | LeftDown)) != 0; }
bool uses_e(std::uint8_t s) { return (s & (Horizontal | UpRight)) != 0; }
bool uses_s(std::uint8_t s) { return (s & LeftDown) != 0; }
bool uses_n(std::uint8_t s) { return (s & UpRight) != 0; }
bool allowed(std::uint8_t s) { return s == 0 || s == Horizontal || s == LeftDown || s == UpRight || s == (LeftDown | UpRight); }

std::string product_key(const std::vector<std::uint8_t>& p) { return std::string(p.begin(), p.end()); }

}  // namespace

PipeDiagram::PipeDiagram(int N, int M) : torus_(N, M), site_(torus_.size(), 0) {}

int PipeDiagram::count(Piece p) const
{
    return static_cast<int>(std::count_if(site_.begin(), site_.end(), [p](std::uint8_t s) { return (s & p) != 0; }));
}

int PipeDiagram::degree() const { return count(Horizontal); }

bool PipeDiagram::closed() const
{
    for (int m = 0; m < M(); ++m)
        for (int n = 0; n < N(); ++n) {
            const std::uint8_t s = at(n, m);
            if (!allowed(s)) return false;
            if (uses_e(s) != uses_w(at(n + 1, m))) return false;
            if (uses_s(s) != uses_n(at(n, m - 1))) return false;
        }
    return true;
}

std::vector<TorusPoint> PipeDiagram::horizontals() const
{
    std::vector<TorusPoint> out;
    for (std::size_t i = 0; i < site_.size(); ++i)
        if (site_[i] & Horizontal) out.push_back(torus_.point(i));
    return out;
}

Monomial PipeDiagram::monomial() const
{
    Monomial mono;
    for (const auto& p : horizontals()) mono = mono * Monomial(gen::A(p.n, p.m));
    return mono;
}

std::pair<Rational, Rational> PipeDiagram::winding() const
{
    return {Rational(count(Horizontal) + count(UpRight)) / Rational(N()), Rational(count(LeftDown)) / Rational(M())};
}

nlohmann::json PipeDiagram::to_json() const
{
    nlohmann::json sites = nlohmann::json::object();
    for (std::size_t i = 0; i < site_.size(); ++i) {
        if (site_[i] == 0) continue;
        const TorusPoint p = torus_.point(i);
        nlohmann::json pieces = nlohmann::json::array();
        if (site_[i] & Horizontal) pieces.push_back("H");
        if (site_[i] & LeftDown) pieces.push_back("LD");
        if (site_[i] & UpRight) pieces.push_back("UR");
        sites["(" + std::to_string(p.n) + "," + std::to_string(p.m) + ")"] = pieces;
    }
    return {{"degree", degree()}, {"sites", sites}};
}

std::optional<PipeDiagram> complete_from_horizontals(int N, int M, const std::vector<TorusPoint>& horizontals)
{
    PipeDiagram d(N, M);
    const Torus tor(N, M);
    for (const auto& h : horizontals) {
        if (d.at(h.n, h.m) & Horizontal) return std::nullopt;
        d.place(h.n, h.m, Horizontal);
    }
    for (const auto& h : horizontals) {
        TorusPoint cur = tor.wrap(h.n + 1, h.m);
        for (std::size_t steps = 0; !(d.at(cur.n, cur.m) & Horizontal); ++steps) {
            if (steps > tor.size()) return std::nullopt;
            const TorusPoint below = tor.wrap(cur.n, cur.m - 1);
            if (d.at(cur.n, cur.m) & LeftDown) return std::nullopt;
            if (d.at(below.n, below.m) & (UpRight | Horizontal)) return std::nullopt;
            d.place(cur.n, cur.m, LeftDown);
            d.place(below.n, below.m, UpRight);
            cur = tor.wrap(below.n + 1, below.m);
        }
    }
    if (!d.closed()) return std::nullopt;
    return d;
}

std::vector<PipeDiagram> enumerate_tpds(int N, int M, int degree)
{
    const Torus tor(N, M);
    const int sites = static_cast<int>(tor.size());
    std::vector<PipeDiagram> out;
    if (degree < 0 || degree > sites) return out;
    if (degree == 0) {
        out.emplace_back(N, M);
        PipeDiagram full(N, M);
        for (int i = 0; i < sites; ++i) {
            const TorusPoint p = tor.point(i);
            full.place(p.n, p.m, LeftDown);
            full.place(p.n, p.m, UpRight);
        }
        if (full.closed()) out.push_back(full);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<int> pick(degree);
    for (int i = 0; i < degree; ++i) pick[i] = i;
    for (;;) {
        std::vector<TorusPoint> hs;
        for (int i : pick) hs.push_back(tor.point(i));
        if (auto d = complete_from_horizontals(N, M, hs)) out.push_back(std::move(*d));
        int i = degree - 1;
        while (i >= 0 && pick[i] == sites - degree + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < degree; ++j) pick[j] = pick[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

int pairing(const PipeDiagram& d1, const PipeDiagram& d2)
{
    if (d1.N() != d2.N() || d1.M() != d2.M()) throw std::invalid_argument("pairing: diagrams live on different tori");
    int k = 0;
    for (std::size_t i = 0; i < d1.sites().size(); ++i) {
        if (!(d1.sites()[i] & Horizontal)) continue;
        if (d2.sites()[i] & LeftDown) ++k;
        if (d2.sites()[i] & UpRight) --k;
    }
    return k;
}

int pairing_kappa(const PipeDiagram& d1, const PipeDiagram& d2, const SignFunction& kappa)
{
    if (d1.N() != d2.N() || d1.M() != d2.M()) throw std::invalid_argument("pairing: diagrams live on different tori");
    int k = 0;
    for (const auto& a : d1.horizontals())
        for (const auto& b : d2.horizontals()) k += kappa(a.n - b.n, a.m - b.m);
    return k;
}

std::vector<std::uint8_t> diagram_product(const PipeDiagram& d1, const PipeDiagram& d2)
{
    const std::size_t n = d1.sites().size();
    std::vector<std::uint8_t> p(3 * n, 0);
    for (const PipeDiagram* d : {&d1, &d2})
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint8_t s = d->sites()[i];
            p[3 * i] += (s & Horizontal) ? 1 : 0;
            p[3 * i + 1] += (s & LeftDown) ? 1 : 0;
            p[3 * i + 2] += (s & UpRight) ? 1 : 0;
        }
    return p;
}

std::vector<PartnerPair> decomposition_partners(const std::vector<PipeDiagram>& deg1, const std::vector<PipeDiagram>& deg2,
                                                std::size_t i1, std::size_t i2)
{
    const auto target = diagram_product(deg1.at(i1), deg2.at(i2));
    std::vector<PartnerPair> out;
    for (std::size_t a = 0; a < deg1.size(); ++a)
        for (std::size_t b = 0; b < deg2.size(); ++b) {
            if (a == i1 && b == i2) continue;
            if (diagram_product(deg1[a], deg2[b]) == target) out.push_back({a, b, pairing(deg1[a], deg2[b])});
        }
    return out;
}

namespace {

struct Catalogue {
    SpectralCurve curve;
    std::map<int, std::vector<PipeDiagram>> by_degree;  // degrees >= 1 with at least one diagram
};

Catalogue catalogue(int N, int M)
{
    Catalogue c{compute_curve(N, M, CurveMode::AB), {}};
    for (int d = 1; d <= N * M; ++d) {
        auto list = enumerate_tpds(N, M, d);
        if (!list.empty()) c.by_degree.emplace(d, std::move(list));
    }
    return c;
}

Poly at_b_zero(const Poly& p)
{
    return p.substitute([](GenId g) -> std::optional<Poly> {
        if (gen::tag(g) == GenTag::B) return Poly();
        return std::nullopt;
    });
}

std::string pair_label(int d1, std::size_t i1, int d2, std::size_t i2)
{
    return "deg" + std::to_string(d1) + "#" + std::to_string(i1) + " x deg" + std::to_string(d2) + "#" + std::to_string(i2);
}

}  // namespace

SuiteReport check_pipes_bijection(int N, int M)
{
    SuiteReport r;
    r.suite = "pipes-bijection";
    r.N = N;
    r.M = M;
    const Catalogue cat = catalogue(N, M);
    nlohmann::json counts = nlohmann::json::array();
    nlohmann::json windings = nlohmann::json::array();
    for (int d = 1; d <= N * M; ++d) {
        ++r.cases;
        const auto it = cat.by_degree.find(d);
        const std::size_t diagrams = it == cat.by_degree.end() ? 0 : it->second.size();
        std::set<Monomial> from_diagrams;
        if (it != cat.by_degree.end())
            for (const auto& dg : it->second) from_diagrams.insert(dg.monomial());

        std::set<Monomial> from_curve;
        std::set<std::string> coefs;
        if (cat.curve.has(d)) {
            const Poly q = at_b_zero(cat.curve.q(d).q);
            for (const auto& t : q.terms()) {
                from_curve.insert(t.mono);
                coefs.insert(t.coef.to_string());
                std::vector<TorusPoint> hs;
                bool square_free = true;
                for (const auto& [g, e] : t.mono.factors()) {
                    if (e != 1) square_free = false;
                    hs.push_back({gen::idx_n(g), gen::idx_m(g)});
                }
                const auto dg = square_free ? complete_from_horizontals(N, M, hs) : std::nullopt;
                if (!dg || dg->degree() != d) r.fail("monomial has no closed diagram", {"q" + std::to_string(d), t.mono.to_string()}, "");
            }
            const LedgerEntry& e = cat.curve.q(d);
            std::set<std::pair<std::string, std::string>> w;
            if (it != cat.by_degree.end())
                for (const auto& dg : it->second) {
                    const auto [h, v] = dg.winding();
                    w.insert({h.to_string(), v.to_string()});
                }
            nlohmann::json wl = nlohmann::json::array();
            for (const auto& [h, v] : w) wl.push_back({h, v});
            windings.push_back({{"degree", d}, {"alpha", e.a}, {"beta", e.b}, {"windings", wl}});
        }
        if (from_curve != from_diagrams)
            r.fail("diagram set differs from monomials", {"degree " + std::to_string(d)},
                   std::to_string(diagrams) + " diagrams vs " + std::to_string(from_curve.size()) + " monomials");
        nlohmann::json cl = nlohmann::json::array();
        for (const auto& s : coefs) cl.push_back(s);
        counts.push_back({{"degree", d}, {"diagrams", diagrams}, {"monomials", from_curve.size()}, {"coefficients", cl}});
    }
    r.details["counts"] = counts;
    r.details["windings"] = windings;
    r.details["degree_zero_diagrams"] = enumerate_tpds(N, M, 0).size();
    return r;
}

SuiteReport check_pipes_pairing(int N, int M)
{
    SuiteReport r;
    r.suite = "pipes-pairing";
    r.N = N;
    r.M = M;
    const Catalogue cat = catalogue(N, M);
    const SignFunction kappa = build_kappa(N, M);
    const BracketTable table = bracket2_ab(N, M);
    std::vector<std::pair<int, std::size_t>> all;
    std::vector<const PipeDiagram*> ptr;
    for (const auto& [d, list] : cat.by_degree)
        for (std::size_t i = 0; i < list.size(); ++i) {
            all.emplace_back(d, i);
            ptr.push_back(&list[i]);
        }
    std::vector<Poly> mono(ptr.size());
    for (std::size_t i = 0; i < ptr.size(); ++i) mono[i] = Poly::monomial(ptr[i]->monomial());

    long nonzero = 0;
    for (std::size_t i = 0; i < ptr.size(); ++i)
        for (std::size_t j = 0; j < ptr.size(); ++j) {
            ++r.cases;
            const int k = pairing(*ptr[i], *ptr[j]);
            const int ks = pairing_kappa(*ptr[i], *ptr[j], kappa);
            const std::string label = pair_label(all[i].first, all[i].second, all[j].first, all[j].second);
            if (k != 0) ++nonzero;
            if (k != -ks) r.fail("knee count is not minus the kappa sum", {label}, std::to_string(k) + " vs " + std::to_string(ks));
            if (k != -pairing(*ptr[j], *ptr[i])) r.fail("pairing not antisymmetric", {label}, std::to_string(k));
            if (j < i) continue;
            const Poly lhs = at_b_zero(bracket(table, mono[i], mono[j]));
            const Poly rhs = Rational(ks) * (mono[i] * mono[j]);
            if (!(lhs == rhs)) r.fail("bracket at B=0 is not k times the product", {label}, (lhs - rhs).to_string());
        }
    r.details["diagrams"] = ptr.size();
    r.details["nonzero_pairings"] = nonzero;
    return r;
}

SuiteReport check_pipes_sum_zero(int N, int M)
{
    SuiteReport r;
    r.suite = "pipes-sum-zero";
    r.N = N;
    r.M = M;
    const Catalogue cat = catalogue(N, M);
    long groups = 0;
    long nonzero_pairs = 0;
    long two_element = 0;
    for (const auto& [d1, l1] : cat.by_degree)
        for (const auto& [d2, l2] : cat.by_degree) {
            struct Group {
                long sum = 0;
                long size = 0;
                long nonzero = 0;
                std::pair<std::size_t, std::size_t> first;
            };
            std::map<std::string, Group> by_product;
            for (std::size_t i = 0; i < l1.size(); ++i)
                for (std::size_t j = 0; j < l2.size(); ++j) {
                    Group& g = by_product[product_key(diagram_product(l1[i], l2[j]))];
                    const int k = pairing(l1[i], l2[j]);
                    if (g.size == 0) g.first = {i, j};
                    g.sum += k;
                    ++g.size;
                    if (k != 0) ++g.nonzero;
                }
            for (const auto& [key, g] : by_product) {
                ++r.cases;
                ++groups;
                nonzero_pairs += g.nonzero;
                if (g.size == 2) ++two_element;
                const std::string label = pair_label(d1, g.first.first, d2, g.first.second);
                if (g.sum != 0) r.fail("product group does not sum to zero", {label}, std::to_string(g.sum));
                if (g.nonzero > 0 && g.size < 2) r.fail("nonzero pairing without a partner", {label}, "");
            }
        }
    r.details["groups"] = groups;
    r.details["nonzero_pairs"] = nonzero_pairs;
    r.details["two_element_groups"] = two_element;
    return r;
}

}  // namespace dkp
