#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hkw/arith/padic.hpp"
#include "hkw/homology/chain.hpp"

namespace hkw {

using PSparse = std::vector<std::pair<int, u64>>;  // sorted by index

struct ReduceOptions {
    bool filtered = false;     // pivots must have equal weight on both ends
    bool track_maps = false;   // keep inclusion and projection data
    int precision = -1;        // p-adic precision, default max_precision(p)
    bool compress_top = true;  // shrink the top degree to generators of the filtered image of d
};

struct ReductionStep {
    int degree;  // degree of the cancelled column c
    int c, e;
    u64 uinv;
    PSparse dc;  // column of c at cancellation time, in degree-1 coordinates
};

// Result of cancelling unit pivots: a complex homotopy equivalent to the input over Z_(p),
// with the filtration preserved when `filtered` is set.
struct ReducedComplex {
    PadicRing R{2};
    int lo = 0, hi = -1;
    int coef_exp = 0;
    std::vector<std::vector<int>> keep;  // surviving original indices per degree
    std::vector<std::vector<int>> filt;
    std::vector<std::vector<std::string>> labels;
    std::vector<PMatrix> d;  // d[k - lo]: keep[k] -> keep[k-1]
    std::vector<std::vector<PSparse>> iota;  // per survivor, in original coordinates
    std::vector<ReductionStep> steps;
    std::vector<std::vector<int>> pos;  // original index -> survivor position or -1
    size_t cancelled = 0;
    bool top_compressed = false;

    size_t rank(int k) const { return (k < lo || k > hi) ? 0 : keep[static_cast<size_t>(k - lo)].size(); }
    const PMatrix& diff(int k) const { return d.at(static_cast<size_t>(k - lo)); }
    const std::vector<int>& filtration(int k) const { return filt.at(static_cast<size_t>(k - lo)); }

    // Projection of an original chain of degree k onto the surviving basis.
    std::vector<u64> project(int k, PSparse v) const
    {
        if (steps.empty() && cancelled) throw std::logic_error("project: reduction was run without map tracking");
        if (top_compressed && k == hi) throw std::logic_error("project: top degree was compressed");
        auto getv = [&](int i) -> u64 {
            auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(i, u64{0}));
            return (it != v.end() && it->first == i) ? it->second : 0;
        };
        for (const auto& s : steps) {
            if (s.degree - 1 == k) {
                u64 lam = getv(s.e);
                if (!lam) continue;
                v = axpy_sparse(v, R.mul(lam, s.uinv), s.dc);
            } else if (s.degree == k) {
                auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(s.c, u64{0}));
                if (it != v.end() && it->first == s.c) v.erase(it);
            }
        }
        std::vector<u64> out(rank(k), 0);
        for (auto [i, x] : v) {
            int t = pos[static_cast<size_t>(k - lo)][static_cast<size_t>(i)];
            if (t >= 0) out[static_cast<size_t>(t)] = x;
        }
        return out;
    }

    // v - a * w
    PSparse axpy_sparse(const PSparse& v, u64 a, const PSparse& w) const
    {
        PSparse r;
        r.reserve(v.size() + w.size());
        size_t i = 0, j = 0;
        while (i < v.size() || j < w.size()) {
            if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) { r.push_back(v[i++]); continue; }
            if (i == v.size() || w[j].first < v[i].first) {
                u64 x = R.neg(R.mul(a, w[j].second));
                if (x) r.push_back({w[j].first, x});
                ++j;
                continue;
            }
            u64 x = R.sub(v[i].second, R.mul(a, w[j].second));
            if (x) r.push_back({v[i].first, x});
            ++i;
            ++j;
        }
        return r;
    }
};

inline ReducedComplex reduce_complex(const ChainComplex& C, const ReduceOptions& o = {})
{
    ReducedComplex Rc;
    Rc.R = PadicRing(C.p, o.precision);
    const PadicRing& R = Rc.R;
    Rc.lo = C.lo;
    Rc.hi = C.hi;
    Rc.coef_exp = C.coef_exp;
    const int nd = C.hi - C.lo + 1;
    if (nd <= 0) return Rc;
    auto di = [&](int k) { return static_cast<size_t>(k - C.lo); };
    std::vector<std::vector<PSparse>> cols(static_cast<size_t>(nd));
    std::vector<std::vector<std::vector<int>>> rows(static_cast<size_t>(nd));
    std::vector<std::vector<char>> alive(static_cast<size_t>(nd));
    std::vector<std::vector<int>> f(static_cast<size_t>(nd));
    std::vector<std::vector<PSparse>> iota(static_cast<size_t>(nd));
    for (int k = C.lo; k <= C.hi; ++k) {
        size_t n = C.rank(k);
        alive[di(k)].assign(n, 1);
        rows[di(k)].assign(n, {});
        f[di(k)].assign(n, 0);
        if (o.filtered) f[di(k)] = C.module(k).weight;
        if (o.track_maps) {
            iota[di(k)].resize(n);
            for (size_t i = 0; i < n; ++i) iota[di(k)][i] = {{static_cast<int>(i), 1}};
        }
        cols[di(k)].resize(n);
        if (k == C.lo) continue;
        const auto& B = C.boundary(k);
        for (size_t j = 0; j < n; ++j) {
            PSparse v;
            for (auto [i, c] : B[j]) {
                u64 x = R.from(c);
                if (x) v.push_back({i, x});
            }
            std::sort(v.begin(), v.end());
            for (auto& t : v) rows[di(k - 1)][static_cast<size_t>(t.first)].push_back(static_cast<int>(j));
            cols[di(k)][j] = std::move(v);
        }
    }
    std::vector<int> stamp;
    int stamp_id = 0;
    auto get = [](const PSparse& v, int i) -> u64 {
        auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(i, u64{0}));
        return (it != v.end() && it->first == i) ? it->second : 0;
    };

    auto cancel = [&](int k, int c, int e) {
        auto& ck = cols[di(k)];
        u64 u = get(ck[static_cast<size_t>(c)], e);
        u64 uinv = R.inv_unit(u);
        PSparse dc = ck[static_cast<size_t>(c)];
        auto& rl = rows[di(k - 1)][static_cast<size_t>(e)];
        stamp.assign(std::max(stamp.size(), ck.size()), 0);
        ++stamp_id;
        std::vector<int> bs;
        for (int b : rl)
            if (b != c && alive[di(k)][static_cast<size_t>(b)] && stamp[static_cast<size_t>(b)] != stamp_id) {
                stamp[static_cast<size_t>(b)] = stamp_id;
                bs.push_back(b);
            }
        for (int b : bs) {
            auto& colb = ck[static_cast<size_t>(b)];
            u64 lam = get(colb, e);
            if (!lam) continue;
            u64 fac = R.mul(lam, uinv);
            PSparse nb = Rc.axpy_sparse(colb, fac, dc);
            // register fill-in
            size_t i = 0;
            for (auto& t : nb) {
                while (i < colb.size() && colb[i].first < t.first) ++i;
                if (i == colb.size() || colb[i].first != t.first) rows[di(k - 1)][static_cast<size_t>(t.first)].push_back(b);
            }
            colb = std::move(nb);
            if (o.track_maps) iota[di(k)][static_cast<size_t>(b)] = Rc.axpy_sparse(iota[di(k)][static_cast<size_t>(b)], fac, iota[di(k)][static_cast<size_t>(c)]);
        }
        if (o.track_maps) Rc.steps.push_back({k, c, e, uinv, dc});
        alive[di(k)][static_cast<size_t>(c)] = 0;
        alive[di(k - 1)][static_cast<size_t>(e)] = 0;
        ck[static_cast<size_t>(c)].clear();
        rl.clear();
        if (k + 1 <= C.hi) {
            auto& up = cols[di(k + 1)];
            for (int z : rows[di(k)][static_cast<size_t>(c)]) {
                auto& v = up[static_cast<size_t>(z)];
                auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(c, u64{0}));
                if (it != v.end() && it->first == c) v.erase(it);
            }
            rows[di(k)][static_cast<size_t>(c)].clear();
        }
        cols[di(k - 1)][static_cast<size_t>(e)].clear();
        ++Rc.cancelled;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = C.hi; k > C.lo; --k) {
            auto& ck = cols[di(k)];
            std::vector<int> order(ck.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ck[static_cast<size_t>(a)].size() < ck[static_cast<size_t>(b)].size(); });
            for (int c : order) {
                if (!alive[di(k)][static_cast<size_t>(c)]) continue;
                int best = -1;
                size_t bcost = 0;
                for (auto [e, x] : ck[static_cast<size_t>(c)]) {
                    if (x % static_cast<u64>(R.p()) == 0) continue;
                    if (f[di(k - 1)][static_cast<size_t>(e)] != f[di(k)][static_cast<size_t>(c)]) continue;
                    size_t cost = rows[di(k - 1)][static_cast<size_t>(e)].size();
                    if (best < 0 || cost < bcost) { best = e; bcost = cost; }
                }
                if (best >= 0) {
                    cancel(k, c, best);
                    changed = true;
                }
            }
        }
    }

    for (int k = C.lo; k <= C.hi; ++k) {
        std::vector<int> kp, fl;
        std::vector<std::string> lb;
        std::vector<int> ps(C.rank(k), -1);
        for (size_t i = 0; i < C.rank(k); ++i)
            if (alive[di(k)][i]) {
                ps[i] = static_cast<int>(kp.size());
                kp.push_back(static_cast<int>(i));
                fl.push_back(C.module(k).weight[i]);
                lb.push_back(C.module(k).labels[i]);
            }
        Rc.keep.push_back(kp);
        Rc.filt.push_back(fl);
        Rc.labels.push_back(lb);
        Rc.pos.push_back(ps);
        if (o.track_maps) {
            std::vector<PSparse> io;
            for (int i : kp) io.push_back(iota[di(k)][static_cast<size_t>(i)]);
            Rc.iota.push_back(std::move(io));
        }
    }
    for (int k = C.lo; k <= C.hi; ++k) {
        size_t nr = k > C.lo ? Rc.keep[di(k - 1)].size() : 0;
        PMatrix M(nr, Rc.keep[di(k)].size());
        if (k > C.lo)
            for (size_t j = 0; j < Rc.keep[di(k)].size(); ++j)
                for (auto [i, x] : cols[di(k)][static_cast<size_t>(Rc.keep[di(k)][j])]) {
                    int t = Rc.pos[di(k - 1)][static_cast<size_t>(i)];
                    if (t < 0) throw std::logic_error("reduce_complex: boundary hits a cancelled element");
                    M.col[j][static_cast<size_t>(t)] = x;
                }
        Rc.d.push_back(std::move(M));
    }
    if (o.compress_top && C.hi > C.lo && Rc.rank(C.hi) > 0) {
        // only the lattices d(F^t C_top) matter for degrees below the top
        const size_t top = di(C.hi);
        const PMatrix& D = Rc.d[top];
        std::vector<size_t> order(D.cols);
        std::iota(order.begin(), order.end(), size_t{0});
        const auto& ft = Rc.filt[top];
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ft[a] > ft[b]; });
        std::vector<PVec> gens;
        Lattice span(&R, D.rows);
        std::vector<size_t> kept;
        for (size_t j : order) {
            PVec v{D.col[j], R.precision()};
            bool zero = std::all_of(v.v.begin(), v.v.end(), [](u64 x) { return x == 0; });
            if (zero) continue;
            Lattice one = Lattice::span(R, D.rows, {v});
            if (contains(R, span, one)) continue;
            gens.push_back(v);
            span = Lattice::span(R, D.rows, gens);
            kept.push_back(j);
        }
        std::sort(kept.begin(), kept.end());
        PMatrix M(D.rows, kept.size());
        std::vector<int> kp, fl;
        std::vector<std::string> lb;
        std::vector<int> ps(C.rank(C.hi), -1);
        for (size_t i = 0; i < kept.size(); ++i) {
            M.col[i] = D.col[kept[i]];
            int orig = Rc.keep[top][kept[i]];
            ps[static_cast<size_t>(orig)] = static_cast<int>(i);
            kp.push_back(orig);
            fl.push_back(ft[kept[i]]);
            lb.push_back(Rc.labels[top][kept[i]]);
        }
        Rc.d[top] = std::move(M);
        Rc.keep[top] = kp;
        Rc.filt[top] = fl;
        Rc.labels[top] = lb;
        Rc.pos[top] = ps;
        if (o.track_maps) {
            std::vector<PSparse> io;
            for (size_t j : kept) io.push_back(Rc.iota[top][j]);
            Rc.iota[top] = std::move(io);
        }
        Rc.top_compressed = true;
    }
    return Rc;
}

} // namespace hkw
