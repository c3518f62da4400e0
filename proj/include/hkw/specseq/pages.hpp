#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hkw/homology/reduce.hpp"

namespace hkw {

// A chain complex whose module weights are a decreasing filtration F^s = span{weight >= s},
// truncated so that every weight is below `cap`.
struct FilteredComplex {
    ChainComplex complex;
    int cap = 1;
    std::string description;
};

inline void validate_filtration(const FilteredComplex& F)
{
    const auto& C = F.complex;
    for (int k = C.lo; k <= C.hi; ++k) {
        const auto& M = C.module(k);
        for (int w : M.weight)
            if (w < 0 || w >= F.cap) throw std::invalid_argument("filtered complex: weight outside [0, cap)");
        if (k == C.lo) continue;
        const auto& B = C.boundary(k);
        const auto& T = C.module(k - 1);
        for (size_t j = 0; j < B.size(); ++j)
            for (auto [i, c] : B[j]) {
                (void)c;
                if (T.weight[static_cast<size_t>(i)] < M.weight[j]) throw std::invalid_argument("filtered complex: boundary decreases filtration");
            }
    }
}

// Same complex with the given filtration values (per degree, per basis element).
inline FilteredComplex refilter(const ChainComplex& C, const std::vector<std::vector<int>>& w, int cap)
{
    FilteredComplex F{C, cap, ""};
    for (int k = C.lo; k <= C.hi; ++k) F.complex.module(k).weight = w.at(static_cast<size_t>(k - C.lo));
    validate_filtration(F);
    return F;
}

// Keep only the boundary entries that preserve the given grading (associated graded complex).
inline ChainComplex graded_part(const ChainComplex& C, const std::vector<std::vector<int>>& g)
{
    ChainComplex R = C;
    for (int k = C.lo + 1; k <= C.hi; ++k) {
        auto& B = R.boundary(k);
        const auto& gs = g.at(static_cast<size_t>(k - C.lo));
        const auto& gt = g.at(static_cast<size_t>(k - 1 - C.lo));
        for (size_t j = 0; j < B.size(); ++j) {
            SparseVec v;
            for (auto [i, c] : B[j])
                if (gt[static_cast<size_t>(i)] == gs[j]) v.push_back({i, c});
            B[j] = v;
        }
    }
    require_d_squared(R);
    return R;
}

using Bideg = std::pair<int, int>;  // (s, t), total degree s + t

struct SSPage {
    int r = 1;
    std::map<Bideg, FinAbPGroup> cells;      // nonzero cells only
    std::map<Bideg, FinAbPGroup> diff_image;  // image of d_r out of (s, t), nonzero only
};

struct HiddenInfo {
    bool extension_required = false;  // H is not the direct sum of its graded pieces
    std::vector<int> hidden_at;       // filtrations s where p * F^s H reaches F^(s+2) H unexpectedly
};

inline json page_to_json(const SSPage& P, int p)
{
    json j;
    j["r"] = P.r;
    j["cells"] = json::array();
    for (const auto& [st, g] : P.cells) {
        json c;
        c["s"] = st.first;
        c["t"] = st.second;
        c["total_degree"] = st.first + st.second;
        c["factors"] = g.factors;
        if (g.free_rank) c["free_rank"] = g.free_rank;
        c["dim"] = g.factors.size() + static_cast<size_t>(g.free_rank);
        c["text"] = g.str();
        j["cells"].push_back(c);
    }
    j["differentials"] = json::array();
    for (const auto& [st, g] : P.diff_image) {
        json d;
        d["from"] = {st.first, st.second};
        d["to"] = {st.first + P.r, st.second - P.r - 1};
        d["rank"] = g.factors.size() + static_cast<size_t>(g.free_rank);
        d["image_factors"] = g.factors;
        j["differentials"].push_back(d);
    }
    (void)p;
    return j;
}

// Rows are total degrees (top first), columns filtrations. With `exponents` a cell shows log_p of its order.
inline std::string page_grid(const SSPage& P, int qlo, int qhi, int smax, bool exponents = false)
{
    std::ostringstream os;
    os << "E_" << P.r << "  (rows: total degree, columns: filtration s" << (exponents ? ", cells: log_p of the order" : "") << ")\n";
    const int w = 10;
    os << "    |";
    for (int s = 0; s < smax; ++s) {
        std::string h = "s=" + std::to_string(s);
        os << std::string(static_cast<size_t>(w) - std::min(static_cast<size_t>(w), h.size()), ' ') << h;
    }
    os << "\n";
    for (int q = qhi; q >= qlo; --q) {
        std::string lab = std::to_string(q);
        os << std::string(4 - std::min<size_t>(4, lab.size()), ' ') << lab << "|";
        for (int s = 0; s < smax; ++s) {
            auto it = P.cells.find({s, q - s});
            std::string e = ".";
            if (it != P.cells.end()) {
                const auto& g = it->second;
                if (exponents) e = std::to_string(g.length()) + (g.free_rank ? "+Z" : "");
                else if (g.free_rank == 0 && !g.factors.empty() && g.factors.back() == 1) e = "F" + std::to_string(g.p) + (g.factors.size() > 1 ? "^" + std::to_string(g.factors.size()) : "");
                else e = g.str();
                if (e.size() > static_cast<size_t>(w) - 1) e = "L" + std::to_string(g.length()) + (g.free_rank ? "+Z" : "");
            }
            os << std::string(static_cast<size_t>(w) - std::min(static_cast<size_t>(w), e.size()), ' ') << e;
        }
        os << "\n";
    }
    return os.str();
}

// Exact E_r computation: Z_r^s = {x in F^s : dx in F^(s+r)}, B_(r-1)^s = F^s n d(F^(s-r+1)),
// E_r^s = Z_r^s / (Z_(r-1)^(s+1) + B_(r-1)^s), all modulo p^c when coefficients are Z/p^c.
class SSEngine {
public:
    SSEngine(std::shared_ptr<const ReducedComplex> rc, int cap) : rc_(std::move(rc)), cap_(cap) {}

    const ReducedComplex& reduced() const { return *rc_; }
    const PadicRing& ring() const { return rc_->R; }
    int cap() const { return cap_; }
    PrecisionLog& log() { return log_; }

    // F^s + p^c C in degree q
    const Lattice& L(int q, int s)
    {
        s = std::clamp(s, 0, cap_);
        auto key = std::make_pair(q, s);
        auto it = Lc_.find(key);
        if (it != Lc_.end()) return it->second;
        const auto& R = ring();
        size_t n = rc_->rank(q);
        std::vector<PVec> g;
        const int c = rc_->coef_exp;
        if (n) {
            const auto& f = rc_->filtration(q);
            for (size_t i = 0; i < n; ++i) {
                u64 v = f[i] >= s ? 1 : (c ? R.pow_p(c) : 0);
                if (!v) continue;
                PVec e{std::vector<u64>(n, 0), R.precision()};
                e.v[i] = v;
                g.push_back(std::move(e));
            }
        }
        return Lc_.emplace(key, Lattice::span(R, n, std::move(g))).first->second;
    }

    const Lattice& Z(int q, int s, int r)
    {
        s = std::clamp(s, 0, cap_);
        r = std::min(r, cap_ + 1);
        auto key = std::make_tuple(q, s, r);
        auto it = Zc_.find(key);
        if (it != Zc_.end()) return it->second;
        Lattice z;
        if (q <= rc_->lo || rc_->rank(q - 1) == 0) z = L(q, s);
        else z = preimage(ring(), rc_->diff(q), L(q, s), L(q - 1, s + r), &log_);
        return Zc_.emplace(key, std::move(z)).first->second;
    }

    // L^s n (d(L^(s-r)) + p^c)
    const Lattice& B(int q, int s, int r)
    {
        s = std::clamp(s, 0, cap_);
        r = std::min(r, cap_ + 1);
        auto key = std::make_tuple(q, s, r);
        auto it = Bc_.find(key);
        if (it != Bc_.end()) return it->second;
        const auto& R = ring();
        size_t n = rc_->rank(q);
        Lattice im(&R, n);
        if (q < rc_->hi && rc_->rank(q + 1) > 0) im = image(R, rc_->diff(q + 1), L(q + 1, std::max(0, s - r)), &log_);
        if (rc_->coef_exp) im = im.sum(Lattice::scaled_full(R, n, rc_->coef_exp), &log_);
        Lattice b = intersect(R, L(q, s), im, &log_);
        return Bc_.emplace(key, std::move(b)).first->second;
    }

    // Z_(r-1)^(s+1) + B_(r-1)^s
    const Lattice& Den(int q, int s, int r)
    {
        s = std::clamp(s, 0, cap_);
        r = std::min(r, cap_ + 1);
        auto key = std::make_tuple(q, s, r);
        auto it = Dc_.find(key);
        if (it != Dc_.end()) return it->second;
        Lattice d = Z(q, s + 1, r - 1).sum(B(q, s, r - 1), &log_);
        return Dc_.emplace(key, std::move(d)).first->second;
    }

    FinAbPGroup cell(int q, int s, int r) { return group(Z(q, s, r), Den(q, s, r)); }

    // image of d_r: E_r^s(q) -> E_r^(s+r)(q-1)
    FinAbPGroup diff_image(int q, int s, int r)
    {
        if (q <= rc_->lo || rc_->rank(q - 1) == 0 || rc_->rank(q) == 0) return FinAbPGroup(ring().p());
        const auto& R = ring();
        Lattice im = image(R, rc_->diff(q), Z(q, s, r), &log_);
        const Lattice& den = Den(q - 1, s + r, r);
        return group(im.sum(den, &log_), den);
    }

    // cycles, boundaries and F^s H = (Z n L^s) + B
    Lattice cycles(int q) { return Z(q, 0, cap_ + 1); }
    Lattice boundaries(int q) { return B(q, 0, cap_ + 1); }
    Lattice filtered_homology(int q, int s)
    {
        return Z(q, s, cap_ + 1).sum(boundaries(q), &log_);
    }

    FinAbPGroup group(const Lattice& big, const Lattice& small)
    {
        int thr = reliable_precision(ring());
        return quotient_group(ring(), big, small, &log_, thr);
    }

    void check_precision() const
    {
        if (log_.min_prec <= reliable_precision(ring())) throw std::runtime_error("spectral sequence: p-adic precision exhausted (" + std::to_string(log_.min_prec) + " of " + std::to_string(ring().precision()) + ")");
    }

private:
    std::shared_ptr<const ReducedComplex> rc_;
    int cap_;
    PrecisionLog log_;
    std::map<std::pair<int, int>, Lattice> Lc_;
    std::map<std::tuple<int, int, int>, Lattice> Zc_, Bc_, Dc_;
};

struct SSResult {
    int p = 2;
    int coef_exp = 0;
    int qlo = 0, qhi = 0;
    int cap = 1;
    std::vector<SSPage> pages;  // r = 1 .. r_max
    SSPage einf;
    std::map<int, FinAbPGroup> homology;
    std::map<int, std::vector<FinAbPGroup>> graded;  // F^s H / F^(s+1) H by s
    std::map<int, HiddenInfo> hidden;
    std::vector<std::string> problems;  // failed internal checks
    std::shared_ptr<SSEngine> engine;

    const SSPage& page(int r) const
    {
        for (const auto& P : pages)
            if (P.r == r) return P;
        if (r > static_cast<int>(pages.size())) return einf;
        throw std::out_of_range("page not computed");
    }
    FinAbPGroup cell(int r, int s, int t) const
    {
        const auto& P = page(r);
        auto it = P.cells.find({s, t});
        return it == P.cells.end() ? FinAbPGroup(p) : it->second;
    }
};

struct PageOptions {
    int r_max = -1;  // -1: until the filtration is exhausted
    bool checks = true;
    bool track_maps = false;
};

// Pages E_1 .. E_(r_max) and E_inf for total degrees qlo..qhi of a filtered complex.
// The complex must contain degree qhi + 1 so that the top row is exact.
inline SSResult compute_pages(const FilteredComplex& F, int qlo, int qhi, const PageOptions& o = {})
{
    const auto& C = F.complex;
    if (qlo < C.lo || qhi + 1 > C.hi) throw std::invalid_argument("compute_pages: window needs a guard degree above it");
    validate_filtration(F);
    ReduceOptions ro;
    ro.filtered = true;
    ro.track_maps = o.track_maps;
    auto rc = std::make_shared<const ReducedComplex>(reduce_complex(C, ro));
    auto E = std::make_shared<SSEngine>(rc, F.cap);
    SSResult res;
    res.p = C.p;
    res.coef_exp = C.coef_exp;
    res.qlo = qlo;
    res.qhi = qhi;
    res.cap = F.cap;
    res.engine = E;
    const int rmax = o.r_max < 0 ? F.cap : std::min(o.r_max, F.cap);
    const int qtop = std::min(qhi + 1, C.hi);
    auto build = [&](int r, bool diffs) {
        SSPage P;
        P.r = r;
        for (int q = qlo; q <= qtop; ++q)
            for (int s = 0; s < F.cap; ++s) {
                if (q <= qhi) {
                    auto g = E->cell(q, s, r);
                    if (!g.trivial()) P.cells[{s, q - s}] = g;
                }
                if (diffs) {
                    auto d = E->diff_image(q, s, r);
                    if (!d.trivial()) P.diff_image[{s, q - s}] = d;
                }
            }
        return P;
    };
    for (int r = 1; r <= rmax; ++r) res.pages.push_back(build(r, true));
    res.einf = build(F.cap + 1, false);
    const PadicRing& R = E->ring();
    for (int q = qlo; q <= qhi; ++q) {
        Lattice Zq = E->cycles(q), Bq = E->boundaries(q);
        res.homology[q] = E->group(Zq, Bq);
        std::vector<Lattice> Phi;
        for (int s = 0; s <= F.cap; ++s) Phi.push_back(E->filtered_homology(q, s));
        FinAbPGroup sum(R.p());
        for (int s = 0; s < F.cap; ++s) {
            auto g = E->group(Phi[static_cast<size_t>(s)], Phi[static_cast<size_t>(s) + 1]);
            res.graded[q].push_back(g);
            sum = sum + g;
        }
        HiddenInfo h;
        h.extension_required = !(sum == res.homology[q]);
        for (int s = 0; s + 2 <= F.cap; ++s) {
            Lattice pPhi = Phi[static_cast<size_t>(s)].times_p(1);
            Lattice lhs = intersect(R, pPhi, Phi[static_cast<size_t>(s) + 2], &E->log());
            Lattice rhs = Phi[static_cast<size_t>(s) + 1].times_p(1).sum(Bq, &E->log());
            if (!contains(R, rhs, lhs, &E->log())) h.hidden_at.push_back(s);
        }
        res.hidden[q] = h;
    }
    if (o.checks) {
        // E_inf against the associated graded of homology
        for (int q = qlo; q <= qhi; ++q)
            for (int s = 0; s < F.cap; ++s) {
                auto it = res.einf.cells.find({s, q - s});
                FinAbPGroup e = it == res.einf.cells.end() ? FinAbPGroup(R.p()) : it->second;
                if (!(e == res.graded[q][static_cast<size_t>(s)]))
                    res.problems.push_back("E_inf differs from Gr H at (s=" + std::to_string(s) + ", q=" + std::to_string(q) + ")");
            }
        // E_(r+1) = H(E_r, d_r) by length when all groups involved are finite
        for (size_t i = 0; i < res.pages.size(); ++i) {
            if (i + 1 == res.pages.size() && rmax < F.cap) break;
            const auto& P = res.pages[i];
            const auto& N = i + 1 < res.pages.size() ? res.pages[i + 1] : res.einf;
            for (int q = qlo; q <= qhi; ++q)
                for (int s = 0; s < F.cap; ++s) {
                    auto get = [&](const std::map<Bideg, FinAbPGroup>& m, int ss, int tt) {
                        auto it = m.find({ss, tt});
                        return it == m.end() ? FinAbPGroup(R.p()) : it->second;
                    };
                    auto e = get(P.cells, s, q - s), e1 = get(N.cells, s, q - s);
                    auto out = get(P.diff_image, s, q - s);
                    auto in = get(P.diff_image, s - P.r, q + 1 - (s - P.r));
                    if (!e.finite() || !e1.finite() || !out.finite() || !in.finite()) continue;
                    if (e1.length() != e.length() - out.length() - in.length())
                        res.problems.push_back("E_" + std::to_string(P.r + 1) + " is not H(E_" + std::to_string(P.r) + ") at (s=" + std::to_string(s) + ", q=" + std::to_string(q) + ")");
                }
        }
    }
    E->check_precision();
    return res;
}

inline json ss_to_json(const SSResult& S)
{
    json j;
    j["p"] = S.p;
    j["window"] = {S.qlo, S.qhi};
    j["filtration_cap"] = S.cap;
    j["pages"] = json::array();
    for (const auto& P : S.pages) j["pages"].push_back(page_to_json(P, S.p));
    j["E_inf"] = page_to_json(S.einf, S.p);
    j["homology"] = json::object();
    for (const auto& [q, g] : S.homology) {
        json h = g;
        h["extension_required"] = S.hidden.at(q).extension_required;
        h["hidden_p_extension_at"] = S.hidden.at(q).hidden_at;
        j["homology"][std::to_string(q)] = h;
    }
    j["checks_failed"] = S.problems;
    return j;
}

} // namespace hkw
