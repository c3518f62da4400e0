#pragma once

#include <random>
#include <string>
#include <vector>

#include "hkw/specseq/filtered.hpp"
#include "hkw/specseq/morphism.hpp"

namespace hkw {

// Map of p-adically filtered cyclic bar complexes Z/p^N -> Z/p^M (M | N) induced by the model map
// y -> y, h -> h, e -> y^(N/step - M/step) e, which preserves weights.
inline SSMorphism shukla_quotient_morphism(int p, int N, int M, int step, int q_max)
{
    if (N % step || M % step || M > N) throw std::invalid_argument("shukla_quotient_morphism: need step | M | ... and M <= N");
    const int kS = N / step, kT = M / step;
    const int capS = padic_filtration_cap(kS, q_max), capT = padic_filtration_cap(kT, q_max);
    DGRing A = filtered_shukla_model(p, step, kS, capS);
    DGRing B = filtered_shukla_model(p, step, kT, capT);
    std::map<std::pair<int, int>, int> bidx;
    for (size_t i = 0; i < B.size(); ++i) bidx[B.monomial[i]] = static_cast<int>(i);
    std::vector<SparseVec> phi(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
        auto [a, mask] = A.monomial[i];
        if (mask & 2) a += kS - kT;
        auto it = bidx.find({a, mask});
        if (it != bidx.end()) phi[i] = {{it->second, 1}};
    }
    BarOptions o;
    o.q_max = q_max;
    std::vector<std::vector<std::string>> wa, wb;
    SSMorphism m;
    m.source.complex = cyclic_bar_complex(A, o, &wa);
    m.source.cap = capS;
    m.target.complex = cyclic_bar_complex(B, o, &wb);
    m.target.cap = capT;
    m.map.lo = 0;
    m.map.hi = q_max;
    m.map.cols = bar_map(A, wa, B, wb, phi);
    m.description = "Z/" + std::to_string(p) + "^" + std::to_string(N) + " -> Z/" + std::to_string(p) + "^" + std::to_string(M) + ", filtered by powers of p" + (step > 1 ? "^" + std::to_string(step) : "");
    m.source.description = m.target.description = m.description;
    validate_morphism(m);
    return m;
}

// Random pair of filtered complexes over Z whose spectral sequences satisfy the hypothesis of the
// inclusion lemma at r0 = 1 by construction: the target is a sum of pieces x -> p^e y (x even,
// filtration gap g) and free cycles, the source maps piecewise into it, injectively on even classes,
// and both sides are hidden behind random filtered unitriangular changes of basis.
inline SSMorphism random_lemma_instance(std::mt19937_64& rng, int p, int qhi, int pieces = 6)
{
    struct Gen { int deg, w; };
    std::vector<std::vector<Gen>> S(static_cast<size_t>(qhi) + 2), T(static_cast<size_t>(qhi) + 2);
    // d and f as sparse triples (degree, column, row, coefficient)
    struct Entry { int k, col, row; i64 c; };
    std::vector<Entry> dS, dT, f;
    auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
    auto add = [&](std::vector<std::vector<Gen>>& X, int deg, int w) {
        X[static_cast<size_t>(deg)].push_back({deg, w});
        return static_cast<int>(X[static_cast<size_t>(deg)].size()) - 1;
    };
    const int maxw = 5;
    for (int i = 0; i < pieces; ++i) {
        int kind = uni(0, 3);
        if (kind == 0) {  // free even cycle, mapped identically
            int q = 2 * uni(0, (qhi + 1) / 2);
            if (q > qhi + 1) q -= 2;
            int w = uni(0, maxw);
            int t = add(T, q, w), s = add(S, q, w);
            f.push_back({q, s, t, 1});
        } else if (kind == 1) {  // odd cycle, source copy maps to it or to zero
            int q = 2 * uni(0, qhi / 2) + 1;
            if (q > qhi + 1) q -= 2;
            int w = uni(0, maxw);
            int t = add(T, q, w);
            if (uni(0, 1)) {
                int s = add(S, q, uni(0, w));
                f.push_back({q, s, t, uni(0, 1) ? 1 : p});
            }
        } else {  // pair x -> p^e y, source pair with smaller gap and exponent
            int q = 2 * uni(1, (qhi + 1) / 2);
            int w = uni(0, maxw);
            int gt = uni(0, 3), et = uni(0, 2);
            int xt = add(T, q, w), yt = add(T, q - 1, w + gt);
            dT.push_back({q, xt, yt, ipow(p, et)});
            if (kind == 3) {
                int gs = uni(0, gt), es = uni(0, et);
                int xs = add(S, q, w), ys = add(S, q - 1, w + gs);
                dS.push_back({q, xs, ys, ipow(p, es)});
                f.push_back({q, xs, xt, 1});
                f.push_back({q - 1, ys, yt, ipow(p, et - es)});
            }
        }
    }
    const int lo = 0, hi = qhi + 1;
    auto dense = [&](const std::vector<std::vector<Gen>>& X, const std::vector<Entry>& E) {
        std::vector<std::vector<std::vector<i64>>> D(static_cast<size_t>(hi) + 1);  // D[k][col][row]
        for (int k = lo; k <= hi; ++k) {
            size_t rows = k > lo ? X[static_cast<size_t>(k) - 1].size() : 0;
            D[static_cast<size_t>(k)].assign(X[static_cast<size_t>(k)].size(), std::vector<i64>(rows, 0));
        }
        for (const auto& e : E) D[static_cast<size_t>(e.k)][static_cast<size_t>(e.col)][static_cast<size_t>(e.row)] += e.c;
        return D;
    };
    auto DS = dense(S, dS), DT = dense(T, dT);
    std::vector<std::vector<std::vector<i64>>> F(static_cast<size_t>(hi) + 1);
    for (int k = lo; k <= hi; ++k)
        F[static_cast<size_t>(k)].assign(S[static_cast<size_t>(k)].size(), std::vector<i64>(T[static_cast<size_t>(k)].size(), 0));
    for (const auto& e : f) F[static_cast<size_t>(e.k)][static_cast<size_t>(e.col)][static_cast<size_t>(e.row)] += e.c;
    // b_i <- b_i + c b_j with w(b_j) >= w(b_i)
    auto scramble = [&](std::vector<std::vector<Gen>>& X, std::vector<std::vector<std::vector<i64>>>& D, bool is_source) {
        for (int it = 0; it < 3 * pieces; ++it) {
            int k = uni(lo, hi);
            auto& G = X[static_cast<size_t>(k)];
            if (G.size() < 2) continue;
            int i = uni(0, static_cast<int>(G.size()) - 1), j = uni(0, static_cast<int>(G.size()) - 1);
            if (i == j || G[static_cast<size_t>(j)].w < G[static_cast<size_t>(i)].w) continue;
            i64 c = uni(-2, 2);
            if (!c) continue;
            auto& Dk = D[static_cast<size_t>(k)];
            for (size_t r = 0; r < Dk[static_cast<size_t>(i)].size(); ++r) Dk[static_cast<size_t>(i)][r] += c * Dk[static_cast<size_t>(j)][r];
            if (k + 1 <= hi)
                for (auto& col : D[static_cast<size_t>(k) + 1]) col[static_cast<size_t>(j)] -= c * col[static_cast<size_t>(i)];
            auto& Fk = F[static_cast<size_t>(k)];
            if (is_source)
                for (size_t r = 0; r < Fk[static_cast<size_t>(i)].size(); ++r) Fk[static_cast<size_t>(i)][r] += c * Fk[static_cast<size_t>(j)][r];
            else
                for (auto& col : Fk) col[static_cast<size_t>(j)] -= c * col[static_cast<size_t>(i)];
        }
    };
    scramble(S, DS, true);
    scramble(T, DT, false);
    auto build = [&](const std::vector<std::vector<Gen>>& X, const std::vector<std::vector<std::vector<i64>>>& D, const std::string& nm) {
        FilteredComplex FC;
        auto& C = FC.complex;
        C.p = p;
        C.lo = lo;
        C.hi = hi;
        int wmax = 0;
        for (int k = lo; k <= hi; ++k) {
            ChainModule M;
            for (size_t i = 0; i < X[static_cast<size_t>(k)].size(); ++i) {
                M.labels.push_back(nm + std::to_string(k) + "_" + std::to_string(i));
                M.weight.push_back(X[static_cast<size_t>(k)][i].w);
                wmax = std::max(wmax, X[static_cast<size_t>(k)][i].w);
            }
            C.mods.push_back(std::move(M));
            std::vector<SparseVec> cols;
            for (const auto& col : D[static_cast<size_t>(k)]) {
                SparseVec v;
                for (size_t r = 0; r < col.size(); ++r)
                    if (col[r]) v.push_back({static_cast<int>(r), col[r]});
                cols.push_back(v);
            }
            C.bnd.push_back(std::move(cols));
        }
        FC.cap = wmax + 1;
        require_d_squared(C);
        validate_filtration(FC);
        return FC;
    };
    SSMorphism m;
    m.source = build(S, DS, "a");
    m.target = build(T, DT, "b");
    m.target.cap = m.source.cap = std::max(m.source.cap, m.target.cap);
    m.map.lo = lo;
    m.map.hi = hi;
    for (int k = lo; k <= hi; ++k) {
        std::vector<SparseVec> cols;
        for (const auto& col : F[static_cast<size_t>(k)]) {
            SparseVec v;
            for (size_t r = 0; r < col.size(); ++r)
                if (col[r]) v.push_back({static_cast<int>(r), col[r]});
            cols.push_back(v);
        }
        m.map.cols.push_back(std::move(cols));
    }
    m.description = "random even-injective instance";
    validate_morphism(m);
    return m;
}

// Complex with two compatible filtrations: module weights (horizontal) and aux (vertical).
struct BifilteredComplex {
    ChainComplex complex;
    int cap_h = 1, cap_v = 1;
    std::string description;
};

// Z/p^N filtered by powers of p (horizontal) and of p^n (vertical), n | N.
inline BifilteredComplex padic_bifiltration(int p, int N, int n, int q_max)
{
    if (n < 1 || N % n) throw std::invalid_argument("padic_bifiltration: n must divide N");
    BifilteredComplex B;
    B.cap_h = padic_filtration_cap(N, q_max);
    DGRing A = filtered_shukla_model(p, 1, N, B.cap_h);
    BarOptions o;
    o.q_max = q_max;
    for (const auto& b : A.basis) o.aux_letter_weight.push_back(b.weight / n);
    B.complex = cyclic_bar_complex(A, o);
    B.cap_v = (B.cap_h - 1) / n + 1;
    B.description = "Z/" + std::to_string(p) + "^" + std::to_string(N) + " filtered by powers of p and p^" + std::to_string(n);
    return B;
}

struct SquareReport {
    ParityReport ss1, ss2, ss3, ss4;  // BiGr => Gr^v, Gr^v => A, BiGr => Gr^h, Gr^h => A
    bool clockwise = false, counterclockwise = false;
    bool lemma_holds = true;          // clockwise even-to-odd implies counterclockwise even-to-odd
};

inline SquareReport commuting_square_check(const BifilteredComplex& B, int qlo, int qhi)
{
    const auto& C = B.complex;
    std::vector<std::vector<int>> h, v;
    for (int k = C.lo; k <= C.hi; ++k) {
        h.push_back(C.module(k).weight);
        v.push_back(C.module(k).aux);
        if (v.back().size() != h.back().size()) throw std::invalid_argument("commuting square: complex has no vertical filtration");
    }
    SquareReport rep;
    FilteredComplex grv{graded_part(C, v), B.cap_h, "Gr^v by h"};
    FilteredComplex grh = refilter(graded_part(C, h), v, B.cap_v);
    auto ss = [&](const FilteredComplex& F) { return parity_check(compute_pages(F, qlo, qhi), 1); };
    rep.ss1 = ss(grv);
    rep.ss2 = ss(refilter(C, v, B.cap_v));
    rep.ss3 = ss(grh);
    rep.ss4 = ss(FilteredComplex{C, B.cap_h, "A by h"});
    rep.clockwise = rep.ss1.even_to_odd_only && rep.ss2.even_to_odd_only;
    rep.counterclockwise = rep.ss3.even_to_odd_only && rep.ss4.even_to_odd_only;
    rep.lemma_holds = !rep.clockwise || rep.counterclockwise;
    return rep;
}

} // namespace hkw
