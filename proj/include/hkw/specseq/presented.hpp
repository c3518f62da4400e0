#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hkw/specseq/filtered.hpp"
#include "hkw/specseq/morphism.hpp"

namespace hkw {

enum class GenKind { Polynomial, Truncated, Exterior, DividedPower, Laurent };

inline std::string kind_name(GenKind k)
{
    switch (k) {
    case GenKind::Polynomial: return "polynomial";
    case GenKind::Truncated: return "truncated";
    case GenKind::Exterior: return "exterior";
    case GenKind::DividedPower: return "divided_power";
    case GenKind::Laurent: return "laurent";
    }
    return "?";
}

struct PresentedGenerator {
    std::string name;
    GenKind kind = GenKind::Polynomial;
    int s = 0, t = 0;        // (filtration, complementary degree)
    int height = 0;          // truncated: g^height = 0
    int lo = 0, hi = 0;      // laurent exponent bounds
    std::vector<int> extra;  // further gradings, preserved by every differential

    PresentedGenerator() = default;
    PresentedGenerator(std::string n, GenKind k, int s_, int t_) : name(std::move(n)), kind(k), s(s_), t(t_) {}

    int degree() const { return s + t; }
};

using Monomial = std::vector<int>;  // exponent per generator
using Polynomial = std::vector<std::pair<Monomial, i64>>;

// d_page(generator^power) = coeff * target
struct ScheduleEntry {
    int page = 1;
    std::string generator;
    int power = 1;
    Monomial target;
    i64 coeff = 1;
    std::string provenance = "given";
};

// Graded-commutative E-term over k = F_(p^field_degree), or over W_c(k) when coef_exp = c > 1.
struct PresentedAlgebraComplex {
    int p = 2;
    int field_degree = 1;
    int coef_exp = 1;
    std::vector<PresentedGenerator> gens;
    std::vector<ScheduleEntry> schedule;
    std::string p_generator;  // generator detecting multiplication by p, used by the power rule
    std::string name;

    int index(const std::string& n) const
    {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == n) return static_cast<int>(i);
        throw std::invalid_argument("presented algebra: unknown generator '" + n + "'");
    }
    Monomial one() const { return Monomial(gens.size(), 0); }
    Monomial power(const std::string& n, int e) const
    {
        Monomial m = one();
        m[static_cast<size_t>(index(n))] = e;
        return m;
    }
    // "x^2 mu0^8 sx" or "x^2*mu0^8*sx"; "1" is the unit
    Monomial parse(const std::string& text) const
    {
        Monomial m = one();
        std::string s = text;
        for (auto& c : s)
            if (c == '*') c = ' ';
        std::istringstream is(s);
        std::string tok;
        while (is >> tok) {
            if (tok == "1") continue;
            auto h = tok.find('^');
            std::string n = tok.substr(0, h);
            int e = h == std::string::npos ? 1 : std::stoi(tok.substr(h + 1));
            m[static_cast<size_t>(index(n))] += e;
        }
        return m;
    }
    Bideg bidegree(const Monomial& m) const
    {
        int s = 0, t = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            s += m[i] * gens[i].s;
            t += m[i] * gens[i].t;
        }
        return {s, t};
    }
    int degree(const Monomial& m) const
    {
        auto [s, t] = bidegree(m);
        return s + t;
    }
    std::vector<int> extra(const Monomial& m) const
    {
        std::vector<int> e;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (e.size() < gens[i].extra.size()) e.resize(gens[i].extra.size(), 0);
            for (size_t k = 0; k < gens[i].extra.size(); ++k) e[k] += m[i] * gens[i].extra[k];
        }
        while (!e.empty() && e.back() == 0) e.pop_back();
        return e;
    }
    std::string label(const Monomial& m) const
    {
        std::string s;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += " ";
            if (gens[i].kind == GenKind::DividedPower) s += "g" + std::to_string(m[i]) + "(" + gens[i].name + ")";
            else s += gens[i].name + (m[i] == 1 ? "" : "^" + std::to_string(m[i]));
        }
        return s.empty() ? "1" : s;
    }
    void add(int page, const std::string& gen, int power, const std::string& target, i64 coeff = 1, const std::string& prov = "given")
    {
        schedule.push_back({page, gen, power, parse(target), coeff, prov});
    }
};

struct PresentedWindow {
    int qlo = 0, qhi = 4;
    int cap = 8;  // filtrations >= cap are truncated away
};

namespace detail {

inline i64 binom_i64(int n, int k)
{
    if (k < 0 || k > n) return 0;
    i128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<i64>(r);
}

inline bool is_p_power(int p, int e, int& k)
{
    k = 0;
    while (e > 1) {
        if (e % p) return false;
        e /= p;
        ++k;
    }
    return e == 1;
}

} // namespace detail

// Product of monomials with graded-commutativity signs and the structure of each generator type.
// Returns false when the product vanishes.
inline bool mono_mul(const PresentedAlgebraComplex& A, const Monomial& a, const Monomial& b, Monomial& out, i64& coeff)
{
    const size_t n = A.gens.size();
    out.assign(n, 0);
    coeff = 1;
    int sign = 0;
    int odd_after = 0;  // odd degree of a-factors with index > j
    for (size_t jj = n; jj-- > 0;) {
        const auto& g = A.gens[jj];
        if ((b[jj] * g.degree()) % 2) sign += odd_after;
        odd_after += (a[jj] * g.degree()) % 2 ? 1 : 0;
    }
    for (size_t i = 0; i < n; ++i) {
        const auto& g = A.gens[i];
        int e = a[i] + b[i];
        switch (g.kind) {
        case GenKind::Exterior:
            if (e > 1) return false;
            break;
        case GenKind::Truncated:
            if (e >= g.height) return false;
            break;
        case GenKind::DividedPower:
            coeff *= detail::binom_i64(e, a[i]);
            break;
        case GenKind::Laurent:
            if (e < g.lo || e > g.hi) return false;
            break;
        case GenKind::Polynomial:
            break;
        }
        if (e < 0 && g.kind != GenKind::Laurent) return false;
        out[i] = e;
    }
    if (sign % 2) coeff = -coeff;
    return coeff != 0;
}

inline Polynomial poly_mul(const PresentedAlgebraComplex& A, const Polynomial& x, const Polynomial& y)
{
    std::map<Monomial, i64> acc;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            Monomial m;
            i64 c;
            if (mono_mul(A, a, b, m, c)) acc[m] += c * ca * cb;
        }
    Polynomial r;
    for (auto& [m, c] : acc)
        if (c) r.push_back({m, c});
    return r;
}

// Checks generator types, schedule bidegrees (d_r: (s, t) -> (s + r, t - r - 1)) and extra gradings.
inline void validate_presented(const PresentedAlgebraComplex& A)
{
    if (!is_prime(A.p)) throw std::invalid_argument("presented algebra: p must be prime");
    if (A.coef_exp < 1 || A.field_degree < 1) throw std::invalid_argument("presented algebra: bad coefficient ring");
    for (const auto& g : A.gens) {
        if (g.degree() % 2 && g.kind != GenKind::Exterior) throw std::invalid_argument("presented algebra: odd generator " + g.name + " must be exterior");
        if (g.kind == GenKind::Truncated && g.height < 1) throw std::invalid_argument("presented algebra: truncated generator " + g.name + " needs a height");
        if (g.kind == GenKind::Laurent && g.lo > g.hi) throw std::invalid_argument("presented algebra: Laurent generator " + g.name + " needs exponent bounds");
        if (g.kind != GenKind::Laurent && g.s < 0) throw std::invalid_argument("presented algebra: generator " + g.name + " has negative filtration");
    }
    for (const auto& e : A.schedule) {
        int i = A.index(e.generator);
        const auto& g = A.gens[static_cast<size_t>(i)];
        int k;
        if (e.power != 1 && !((g.kind == GenKind::Polynomial || g.kind == GenKind::Truncated || g.kind == GenKind::Laurent) && detail::is_p_power(A.p, e.power, k)))
            throw std::invalid_argument("presented algebra: schedule source must be a generator or a p-power of a polynomial generator");
        if (e.page < 0) throw std::invalid_argument("presented algebra: negative page");
        if (e.target.size() != A.gens.size()) throw std::invalid_argument("presented algebra: target has the wrong shape");
        Monomial src = A.power(e.generator, e.power);
        auto [s, t] = A.bidegree(src);
        auto [s2, t2] = A.bidegree(e.target);
        if (s2 != s + e.page || t2 != t - e.page - 1)
            throw std::invalid_argument("presented algebra: d_" + std::to_string(e.page) + "(" + A.label(src) + ") = " + A.label(e.target) + " violates the bidegree (r, -r-1)");
        if (A.extra(src) != A.extra(e.target)) throw std::invalid_argument("presented algebra: d_" + std::to_string(e.page) + "(" + A.label(src) + ") does not preserve the extra gradings");
    }
}

// Total differential D = sum of scheduled d_r, extended by graded Leibniz, the digit rule on
// powers D(g^e) = sum_k e_k g^(e - p^k) D(g^(p^k)) and D(gamma_j(g)) = gamma_(j-1)(g) D(g).
class PresentedDifferential {
public:
    explicit PresentedDifferential(const PresentedAlgebraComplex& A) : A_(A)
    {
        validate_presented(A);
        for (const auto& e : A.schedule) sched_[{A.index(e.generator), e.power}].push_back({e.target, e.coeff});
    }

    Polynomial apply(const Monomial& m) const
    {
        const size_t n = A_.gens.size();
        std::map<Monomial, i64> acc;
        int prefix_deg = 0;
        for (size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            Polynomial dg = power_diff(static_cast<int>(i), m[i]);
            if (!dg.empty()) {
                Monomial pre = A_.one(), post = A_.one();
                for (size_t j = 0; j < i; ++j) pre[j] = m[j];
                for (size_t j = i + 1; j < n; ++j) post[j] = m[j];
                Polynomial t = poly_mul(A_, poly_mul(A_, {{pre, 1}}, dg), {{post, 1}});
                i64 sg = prefix_deg % 2 ? -1 : 1;
                for (auto& [mm, c] : t) acc[mm] += sg * c;
            }
            prefix_deg += m[i] * A_.gens[i].degree();
        }
        Polynomial r;
        for (auto& [mm, c] : acc)
            if (c) r.push_back({mm, c});
        return r;
    }

private:
    Polynomial scheduled(int i, int pw) const
    {
        auto it = sched_.find({i, pw});
        return it == sched_.end() ? Polynomial{} : it->second;
    }
    bool has(int i, int pw) const { return sched_.count({i, pw}) > 0; }

    // D(g^(p^k)): the scheduled value, or p * y^(p-1) D(y) with y = g^(p^(k-1))
    Polynomial dpk(int i, int pk) const
    {
        if (has(i, pk) || pk == 1) return scheduled(i, pk);
        int prev = pk / A_.p;
        Polynomial dy = dpk(i, prev);
        Monomial y = A_.one();
        y[static_cast<size_t>(i)] = prev * (A_.p - 1);
        Polynomial r = poly_mul(A_, {{y, A_.p}}, dy);
        return r;
    }

    Polynomial power_diff(int i, int e) const
    {
        const auto& g = A_.gens[static_cast<size_t>(i)];
        Monomial rest = A_.one();
        switch (g.kind) {
        case GenKind::Exterior:
            return scheduled(i, 1);
        case GenKind::DividedPower: {
            rest[static_cast<size_t>(i)] = e - 1;
            return poly_mul(A_, {{rest, 1}}, scheduled(i, 1));
        }
        default:
            break;
        }
        if (e < 0) {
            for (auto& [k, v] : sched_)
                if (k.first == i && k.second != 1) throw std::invalid_argument("presented algebra: power schedule on a negative Laurent exponent");
            rest[static_cast<size_t>(i)] = e - 1;
            return poly_mul(A_, {{rest, e}}, scheduled(i, 1));
        }
        std::map<Monomial, i64> acc;
        int x = e, pk = 1;
        while (x > 0) {
            int dk = x % A_.p;
            if (dk) {
                rest[static_cast<size_t>(i)] = e - pk;
                for (auto& [mm, c] : poly_mul(A_, {{rest, dk}}, dpk(i, pk))) acc[mm] += c;
            }
            x /= A_.p;
            pk *= A_.p;
        }
        Polynomial r;
        for (auto& [mm, c] : acc)
            if (c) r.push_back({mm, c});
        return r;
    }

    const PresentedAlgebraComplex& A_;
    std::map<std::pair<int, int>, Polynomial> sched_;
};

// Monomials with total degree in [qlo - 1, qhi + 1] and filtration below the cap, per total degree.
inline std::map<int, std::vector<Monomial>> presented_basis(const PresentedAlgebraComplex& A, const PresentedWindow& w)
{
    validate_presented(A);
    const size_t n = A.gens.size();
    const int dlo = w.qlo - 1, dhi = w.qhi + 1;
    int min_deg = 0, min_filt = 0;
    for (const auto& g : A.gens)
        if (g.kind == GenKind::Laurent) {
            min_deg += std::min(g.lo * g.degree(), g.hi * g.degree());
            min_filt += std::min(g.lo * g.s, g.hi * g.s);
        }
    std::vector<int> elo(n, 0), ehi(n, 0);
    for (size_t i = 0; i < n; ++i) {
        const auto& g = A.gens[i];
        switch (g.kind) {
        case GenKind::Exterior: ehi[i] = 1; continue;
        case GenKind::Truncated: ehi[i] = g.height - 1; break;
        case GenKind::Laurent: elo[i] = g.lo; ehi[i] = g.hi; continue;
        default: ehi[i] = -1; break;
        }
        int b = -1;
        if (g.degree() > 0) b = (dhi - min_deg) / g.degree();
        if (g.s > 0) {
            int fb = (w.cap - 1 - min_filt) / g.s;
            b = b < 0 ? fb : std::min(b, fb);
        }
        if (b < 0 && ehi[i] < 0) throw std::invalid_argument("presented algebra: generator " + g.name + " is unbounded in the window; give a filtration cap or exponent bounds");
        if (b >= 0) ehi[i] = ehi[i] < 0 ? b : std::min(ehi[i], b);
        ehi[i] = std::max(ehi[i], 0);
    }
    std::map<int, std::vector<Monomial>> out;
    Monomial cur(n, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            auto [s, t] = A.bidegree(cur);
            int q = s + t;
            if (q < dlo || q > dhi || s < 0 || s >= w.cap) return;
            out[q].push_back(cur);
            return;
        }
        for (int e = elo[i]; e <= ehi[i]; ++e) {
            cur[i] = e;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    return out;
}

// The filtered complex (E_0, D) whose spectral sequence the schedule describes, over Z/p^coef_exp.
inline FilteredComplex presented_complex(const PresentedAlgebraComplex& A, const PresentedWindow& w)
{
    if (w.qhi < w.qlo || w.cap < 1) throw std::invalid_argument("presented algebra: empty window");
    auto basis = presented_basis(A, w);
    PresentedDifferential D(A);
    FilteredComplex F;
    auto& C = F.complex;
    C.p = A.p;
    C.coef_exp = A.coef_exp;
    C.lo = w.qlo - 1;
    C.hi = w.qhi + 1;
    const i64 mod = ipow(A.p, A.coef_exp);
    std::vector<std::map<Monomial, int>> index;
    for (int q = C.lo; q <= C.hi; ++q) {
        auto& ms = basis[q];
        std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
            int sa = A.bidegree(a).first, sb = A.bidegree(b).first;
            return sa != sb ? sa < sb : a < b;
        });
        ChainModule M;
        std::map<Monomial, int> idx;
        for (const auto& m : ms) {
            idx[m] = static_cast<int>(M.rank());
            M.labels.push_back(A.label(m));
            M.weight.push_back(A.bidegree(m).first);
        }
        index.push_back(std::move(idx));
        C.mods.push_back(std::move(M));
    }
    for (int q = C.lo; q <= C.hi; ++q) {
        std::vector<SparseVec> cols;
        for (const auto& m : basis[q]) {
            SparseVec v;
            if (q > C.lo)
                for (const auto& [t, c] : D.apply(m)) {
                    i64 cc = mod ? ((c % mod) + mod) % mod : c;
                    if (!cc) continue;
                    int s = A.bidegree(t).first;
                    if (s >= w.cap) continue;
                    auto it = index[static_cast<size_t>(q - 1 - C.lo)].find(t);
                    if (it == index[static_cast<size_t>(q - 1 - C.lo)].end())
                        throw std::logic_error("presented algebra: differential of " + A.label(m) + " leaves the window at " + A.label(t));
                    v.push_back({it->second, cc});
                }
            cols.push_back(sv_normalize(v));
        }
        C.bnd.push_back(std::move(cols));
    }
    std::string where;
    if (!check_d_squared(C, &where)) throw std::invalid_argument("presented algebra: the schedule does not square to zero (" + where + ")");
    F.cap = w.cap;
    F.description = A.name.empty() ? "presented algebra" : A.name;
    validate_filtration(F);
    return F;
}

// Pages of the presented E-term in total degrees qlo..qhi. Cells in filtration s of page r are exact
// for s + r < cap; those near the cap see the truncation.
inline SSResult eval_presented(const PresentedAlgebraComplex& A, const PresentedWindow& w, const PageOptions& o = {})
{
    auto F = presented_complex(A, w);
    SSResult S = compute_pages(F, w.qlo, w.qhi, o);
    base_change_pages(S, A.field_degree);
    return S;
}

// From d_r(g) = T generate d_(r+k)(g^(p^k)) = v^k g^(p^k - 1) T for the generator v detecting p,
// while g^(p^k) stays in total degree <= qhi + 1 and the target below the cap.
inline std::vector<ScheduleEntry> power_rule_differentials(const PresentedAlgebraComplex& A, const std::string& base, int seed_page,
                                                           const Monomial& seed_target, i64 seed_coeff, const PresentedWindow& w)
{
    std::vector<ScheduleEntry> out;
    const i64 mod = ipow(A.p, A.coef_exp);
    if (seed_coeff % mod == 0) return out;
    const int i = A.index(base);
    const auto& g = A.gens[static_cast<size_t>(i)];
    if (g.kind != GenKind::Polynomial && g.kind != GenKind::Truncated && g.kind != GenKind::Laurent)
        throw std::invalid_argument("power rule: base generator must be polynomial");
    if (A.p_generator.empty()) throw std::invalid_argument("power rule: no generator detecting p");
    const int v = A.index(A.p_generator);
    if (g.degree() > w.qhi + 1) throw std::invalid_argument("power rule: window exhausted before the seed");
    int pk = 1;
    for (int k = 1;; ++k) {
        if (pk > (w.qhi + 1) / (A.p * std::max(1, g.degree()))) break;
        pk *= A.p;
        if (g.kind == GenKind::Truncated && pk >= g.height) break;
        if (g.kind == GenKind::Laurent && pk > g.hi) break;
        Monomial pre = A.one();
        pre[static_cast<size_t>(v)] = k;
        pre[static_cast<size_t>(i)] = pk - 1;
        Monomial t;
        i64 c;
        if (!mono_mul(A, pre, seed_target, t, c)) break;
        if (A.bidegree(t).first >= w.cap) break;
        out.push_back({seed_page + k, base, pk, t, c * seed_coeff, "power-rule from d_" + std::to_string(seed_page) + "(" + base + ")"});
    }
    return out;
}

// Multiplication by a monomial as a map of filtered complexes (shift = its filtration).
inline SSMorphism multiplication_morphism(const PresentedAlgebraComplex& A, const PresentedWindow& w, const Monomial& by)
{
    if (A.degree(by) != 0 || A.degree(by) % 2) throw std::invalid_argument("multiplication morphism: multiplier must have total degree 0");
    auto F = presented_complex(A, w);
    PresentedDifferential D(A);
    if (!D.apply(by).empty()) throw std::invalid_argument("multiplication morphism: multiplier is not a cycle");
    auto basis = presented_basis(A, w);
    SSMorphism m{F, F, {}, "multiplication by " + A.label(by)};
    m.map.lo = F.complex.lo;
    m.map.hi = F.complex.hi;
    m.map.shift = A.bidegree(by).first;
    const i64 mod = ipow(A.p, A.coef_exp);
    for (int q = F.complex.lo; q <= F.complex.hi; ++q) {
        auto ms = basis[q];
        std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
            int sa = A.bidegree(a).first, sb = A.bidegree(b).first;
            return sa != sb ? sa < sb : a < b;
        });
        std::map<Monomial, int> idx;
        for (size_t j = 0; j < ms.size(); ++j) idx[ms[j]] = static_cast<int>(j);
        std::vector<SparseVec> cols;
        for (const auto& x : ms) {
            SparseVec v;
            Monomial t;
            i64 c;
            if (mono_mul(A, by, x, t, c) && A.bidegree(t).first < w.cap && (c % mod) != 0) v.push_back({idx.at(t), c % mod});
            cols.push_back(v);
        }
        m.map.cols.push_back(std::move(cols));
    }
    return m;
}

// Groups read off E_inf as towers under multiplication by the p-detecting generator v:
// a tower of length l contributes W_l(k). Only valid without hidden extensions.
inline std::map<int, WittModuleDescriptor> tower_groups(const PresentedAlgebraComplex& A, const PresentedWindow& w)
{
    if (A.p_generator.empty()) throw std::invalid_argument("tower groups: no generator detecting p");
    MorphismOptions o;
    o.check_lemma = false;
    // ranks[j][q] = dim v^j E_inf in degree q (over F_p)
    std::vector<std::map<int, int>> ranks;
    {
        auto S = compute_pages(presented_complex(A, w), w.qlo, w.qhi);
        std::map<int, int> r0;
        for (const auto& [st, g] : S.einf.cells) r0[st.first + st.second] += g.length();
        ranks.push_back(r0);
    }
    for (int j = 1; j < w.cap; ++j) {
        auto rep = morphism_pages(multiplication_morphism(A, w, A.power(A.p_generator, j)), w.qlo, w.qhi, o);
        std::map<int, int> rj;
        bool any = false;
        for (int q = w.qlo; q <= w.qhi; ++q) {
            rj[q] = rep.image_length(rep.r_inf, q);
            any = any || rj[q] > 0;
        }
        ranks.push_back(rj);
        if (!any) break;
    }
    std::map<int, WittModuleDescriptor> out;
    for (int q = w.qlo; q <= w.qhi; ++q) {
        WittModuleDescriptor d(PrimePower(A.p, A.field_degree));
        auto rk = [&](size_t j) { return j < ranks.size() && ranks[j].count(q) ? ranks[j].at(q) : 0; };
        // towers of length >= l: rk(l - 1) - rk(l)
        for (size_t l = 1; l <= ranks.size(); ++l) d.add(static_cast<int>(l), (rk(l - 1) - rk(l)) - (rk(l) - rk(l + 1)));
        out[q] = d;
    }
    return out;
}

// E_1 = Gamma(mu0) (x) P(x) (x) E(sx) for HH(W(k)) filtered by powers of p, with d_1(gamma_j(mu0)) = gamma_(j-1)(mu0) sx.
inline PresentedAlgebraComplex presented_hh_wk(int p, int field_degree = 1)
{
    PresentedAlgebraComplex A;
    A.p = p;
    A.field_degree = field_degree;
    A.name = "HH(W(k)) from HH(k[x])";
    A.gens = {{"mu0", GenKind::DividedPower, 0, 2}, {"x", GenKind::Polynomial, 1, -1}, {"sx", GenKind::Exterior, 1, 0}};
    A.p_generator = "x";
    A.add(1, "mu0", 1, "sx");
    return A;
}

// E_1 = P(mu0) (x) P(x) (x) E(sx) for W(k) filtered by powers of p, with d_1(mu0) = sx and the power rule.
inline PresentedAlgebraComplex presented_thh_wk(int p, const PresentedWindow& w, int field_degree = 1)
{
    PresentedAlgebraComplex A;
    A.p = p;
    A.field_degree = field_degree;
    A.name = "THH(W(k)) from THH(k[x])";
    A.gens = {{"mu0", GenKind::Polynomial, 0, 2}, {"x", GenKind::Polynomial, 1, -1}, {"sx", GenKind::Exterior, 1, 0}};
    A.p_generator = "x";
    A.add(1, "mu0", 1, "sx", 1, "seed");
    for (auto& e : power_rule_differentials(A, "mu0", 1, A.parse("sx"), 1, w)) A.schedule.push_back(e);
    return A;
}

// E_0 = Gamma(mu0) (x) P_n(x) (x) E(sx) (x) Gamma(xn) for W_n(k) filtered by powers of p, with
// d_0(gamma_j(xn)) = n x^(n-1) gamma_(j-1)(xn) sx and d_1(gamma_j(mu0)) = gamma_(j-1)(mu0) sx.
inline PresentedAlgebraComplex presented_hh_wn(int p, int n, int field_degree = 1)
{
    PresentedAlgebraComplex A;
    A.p = p;
    A.field_degree = field_degree;
    A.name = "HH(W_" + std::to_string(n) + "(k)) from HH(k[x]/x^" + std::to_string(n) + ")";
    PresentedGenerator x{"x", GenKind::Truncated, 1, -1};
    x.height = n;
    A.gens = {{"mu0", GenKind::DividedPower, 0, 2}, x, {"sx", GenKind::Exterior, 1, 0}, {"xn", GenKind::DividedPower, n, 2 - n}};
    A.p_generator = "x";
    if (n % p) A.add(0, "xn", 1, "x^" + std::to_string(n - 1) + " sx", n);
    A.add(1, "mu0", 1, "sx");
    return A;
}

// E_0 = P(mu0) (x) P_n(x) (x) E(sx) (x) Gamma(xn) for THH(W_n(k)). With the third grading
// (xn of extra degree -1) d_0 drops out and the power rule d_(k+1)(mu0^(p^k)) = x^k mu0^(p^k-1) sx remains.
inline PresentedAlgebraComplex presented_thh_wn(int p, int n, const PresentedWindow& w, bool third_grading = true, int field_degree = 1)
{
    PresentedAlgebraComplex A;
    A.p = p;
    A.field_degree = field_degree;
    A.name = "THH(W_" + std::to_string(n) + "(k)) from THH(k[x]/x^" + std::to_string(n) + ")";
    PresentedGenerator x{"x", GenKind::Truncated, 1, -1};
    x.height = n;
    PresentedGenerator xn{"xn", GenKind::DividedPower, n, 2 - n};
    if (third_grading) xn.extra = {-1};
    A.gens = {{"mu0", GenKind::Polynomial, 0, 2}, x, {"sx", GenKind::Exterior, 1, 0}, xn};
    A.p_generator = "x";
    if (!third_grading && n % p) A.add(0, "xn", 1, "x^" + std::to_string(n - 1) + " sx", n);
    A.add(1, "mu0", 1, "sx", 1, "seed");
    for (auto& e : power_rule_differentials(A, "mu0", 1, A.parse("sx"), 1, w)) A.schedule.push_back(e);
    return A;
}

// E_1 = W_n(k) (x) Gamma(xn) (x) P(y) (x) E(sy) for W(k) filtered by powers of p^n, d_1(gamma_j(xn)) = gamma_(j-1)(xn) sy.
inline PresentedAlgebraComplex presented_hh_wk_from_wn(int p, int n, int field_degree = 1)
{
    PresentedAlgebraComplex A;
    A.p = p;
    A.coef_exp = n;
    A.field_degree = field_degree;
    A.name = "HH(W(k)) from HH(W_" + std::to_string(n) + "(k)[y])";
    A.gens = {{"xn", GenKind::DividedPower, 0, 2}, {"y", GenKind::Polynomial, 1, -1}, {"sy", GenKind::Exterior, 1, 0}};
    A.p_generator = "y";
    A.add(1, "xn", 1, "sy");
    return A;
}

} // namespace hkw
