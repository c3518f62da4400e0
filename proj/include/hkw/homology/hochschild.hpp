#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hkw/homology/chain.hpp"

namespace hkw {

struct BarOptions {
    int q_max = 4;           // top degree built
    bool normalized = true;  // unit excluded from the slots a_1..a_q
    int weight_cap = -1;     // drop words of total weight >= cap (-1: the ring's cap)
    int only_weight = -1;    // keep only words of this total weight (graded rings)
    int coef_exp = 0;        // recorded only; boundaries stay integral
    std::vector<int> aux_letter_weight;  // per basis element; words get the sum as a second grading
};

namespace detail {

using Word = std::string;  // basis indices as bytes

inline std::string word_label(const DGRing& A, const Word& w)
{
    std::string s = A.basis[static_cast<unsigned char>(w[0])].label;
    if (w.size() == 1) return s;
    s += "[";
    for (size_t i = 1; i < w.size(); ++i) {
        if (i > 1) s += "|";
        s += A.basis[static_cast<unsigned char>(w[i])].label;
    }
    return s + "]";
}

} // namespace detail

// Number of words of each total degree 0..q_max, without building the complex.
inline std::vector<long long> bar_word_counts(const DGRing& A, const BarOptions& o)
{
    const int cap = o.weight_cap >= 0 ? o.weight_cap : A.weight_cap;
    int maxw = 0;
    for (const auto& b : A.basis) maxw = std::max(maxw, b.weight);
    int wmax = cap > 0 ? cap - 1 : (o.q_max + 1) * maxw;
    if (o.only_weight >= 0) wmax = std::min(wmax, o.only_weight);
    const size_t W = static_cast<size_t>(wmax) + 1, D = static_cast<size_t>(o.q_max) + 1;
    // slots[d][w]: sequences of slots with shifted degree d and weight w
    std::vector<std::vector<long long>> slots(D, std::vector<long long>(W, 0));
    slots[0][0] = 1;
    for (size_t d = 1; d < D; ++d)
        for (size_t w = 0; w < W; ++w) {
            long long t = 0;
            for (size_t b = o.normalized ? 1 : 0; b < A.size(); ++b) {
                size_t dd = static_cast<size_t>(A.basis[b].degree) + 1;
                size_t ww = static_cast<size_t>(A.basis[b].weight);
                if (dd <= d && ww <= w) t += slots[d - dd][w - ww];
            }
            slots[d][w] = t;
        }
    std::vector<long long> out(D, 0);
    for (size_t d = 0; d < D; ++d)
        for (size_t b = 0; b < A.size(); ++b) {
            size_t d0 = static_cast<size_t>(A.basis[b].degree), w0 = static_cast<size_t>(A.basis[b].weight);
            if (d0 > d) continue;
            for (size_t w = 0; w + w0 < W; ++w) {
                size_t tw = w + w0;
                if (cap > 0 && static_cast<int>(tw) >= cap) continue;
                if (o.only_weight >= 0 && static_cast<int>(tw) != o.only_weight) continue;
                out[d] += slots[d - d0][w];
            }
        }
    return out;
}

// Normalized cyclic bar complex a_0[a_1|...|a_q] in degrees 0..q_max with
// |a_0[a_1|...|a_q]| = sum |a_i| + q and differential d_int + b.
// When `words_out` is given it receives the basis words of each degree in basis order.
inline ChainComplex cyclic_bar_complex(const DGRing& A, const BarOptions& o, std::vector<std::vector<std::string>>* words_out = nullptr)
{
    using detail::Word;
    if (A.size() > 255) throw std::invalid_argument("cyclic_bar_complex: ring basis too large");
    if (o.q_max < 0) throw std::invalid_argument("cyclic_bar_complex: negative degree bound");
    const int cap = o.weight_cap >= 0 ? o.weight_cap : A.weight_cap;
    const int first_slot = o.normalized ? 1 : 0;
    const int D = o.q_max;
    std::vector<std::vector<Word>> words(static_cast<size_t>(D) + 1);
    std::vector<std::vector<int>> wts(static_cast<size_t>(D) + 1);
    auto allowed = [&](int w) { return cap <= 0 || w < cap; };
    // depth-first enumeration
    Word cur;
    std::function<void(int, int)> extend = [&](int deg, int w) {
        if (o.only_weight < 0 || w == o.only_weight) {
            words[static_cast<size_t>(deg)].push_back(cur);
        }
        for (size_t b = static_cast<size_t>(first_slot); b < A.size(); ++b) {
            int nd = deg + A.basis[b].degree + 1;
            int nw = w + A.basis[b].weight;
            if (nd > D || !allowed(nw)) continue;
            if (o.only_weight >= 0 && nw > o.only_weight) continue;
            cur.push_back(static_cast<char>(b));
            extend(nd, nw);
            cur.pop_back();
        }
    };
    for (size_t a0 = 0; a0 < A.size(); ++a0) {
        int d0 = A.basis[a0].degree, w0 = A.basis[a0].weight;
        if (d0 > D || !allowed(w0)) continue;
        if (o.only_weight >= 0 && w0 > o.only_weight) continue;
        cur.assign(1, static_cast<char>(a0));
        extend(d0, w0);
    }
    auto word_weight = [&](const Word& w) {
        int t = 0;
        for (auto c : w) t += A.basis[static_cast<unsigned char>(c)].weight;
        return t;
    };
    ChainComplex C;
    C.p = A.p;
    C.coef_exp = o.coef_exp;
    C.graded = A.graded;
    C.lo = 0;
    C.hi = D;
    std::vector<std::unordered_map<Word, int>> index(static_cast<size_t>(D) + 1);
    for (int k = 0; k <= D; ++k) {
        auto& ws = words[static_cast<size_t>(k)];
        std::sort(ws.begin(), ws.end(), [&](const Word& x, const Word& y) {
            int a = word_weight(x), b = word_weight(y);
            if (a != b) return a < b;
            return x < y;
        });
        ChainModule M;
        for (size_t i = 0; i < ws.size(); ++i) {
            index[static_cast<size_t>(k)][ws[i]] = static_cast<int>(i);
            M.labels.push_back(detail::word_label(A, ws[i]));
            M.weight.push_back(word_weight(ws[i]));
            if (!o.aux_letter_weight.empty()) {
                int a = 0;
                for (auto c : ws[i]) a += o.aux_letter_weight.at(static_cast<unsigned char>(c));
                M.aux.push_back(a);
            }
        }
        C.mods.push_back(std::move(M));
    }
    for (int k = 0; k <= D; ++k) {
        std::vector<SparseVec> cols;
        for (const auto& w : words[static_cast<size_t>(k)]) {
            SparseVec out;
            if (k == 0) { cols.push_back(out); continue; }
            const size_t q = w.size() - 1;
            std::vector<int> deg(w.size());
            for (size_t i = 0; i < w.size(); ++i) deg[i] = A.basis[static_cast<unsigned char>(w[i])].degree;
            // eps[i] = |a_0| + sum_{j<=i} (|a_j| + 1)
            std::vector<int> eps(w.size());
            eps[0] = deg[0];
            for (size_t i = 1; i < w.size(); ++i) eps[i] = eps[i - 1] + deg[i] + 1;
            auto emit = [&](const Word& t, i64 c) {
                if (c == 0) return;
                auto& idx = index[static_cast<size_t>(k - 1)];
                auto it = idx.find(t);
                if (it == idx.end()) {
                    int tw = word_weight(t);
                    if ((cap > 0 && tw >= cap) || (o.only_weight >= 0 && tw != o.only_weight)) return;
                    throw std::logic_error("cyclic_bar_complex: boundary leaves the enumerated basis: " + detail::word_label(A, t));
                }
                out.push_back({it->second, c});
            };
            // internal differential
            for (size_t i = 0; i <= q; ++i)
                for (auto [j, c] : A.diff[static_cast<unsigned char>(w[i])]) {
                    if (i > 0 && o.normalized && j == 0) continue;
                    Word t = w;
                    t[i] = static_cast<char>(j);
                    i64 s = (i == 0) ? 1 : ((eps[i - 1] % 2) ? 1 : -1);
                    emit(t, s * c);
                }
            // Hochschild b
            if (q >= 1) {
                auto [k0, c0] = A.product(static_cast<unsigned char>(w[0]), static_cast<unsigned char>(w[1]));
                if (k0 >= 0) {
                    Word t;
                    t.push_back(static_cast<char>(k0));
                    t.append(w.begin() + 2, w.end());
                    emit(t, ((deg[0] % 2) ? -1 : 1) * c0);
                }
                for (size_t i = 1; i + 1 <= q; ++i) {
                    auto [km, cm] = A.product(static_cast<unsigned char>(w[i]), static_cast<unsigned char>(w[i + 1]));
                    if (km < 0 || (o.normalized && km == 0)) continue;
                    Word t(w.begin(), w.begin() + static_cast<long>(i));
                    t.push_back(static_cast<char>(km));
                    t.append(w.begin() + static_cast<long>(i) + 2, w.end());
                    emit(t, ((eps[i] % 2) ? -1 : 1) * cm);
                }
                auto [kl, cl] = A.product(static_cast<unsigned char>(w[q]), static_cast<unsigned char>(w[0]));
                if (kl >= 0) {
                    Word t;
                    t.push_back(static_cast<char>(kl));
                    t.append(w.begin() + 1, w.begin() + static_cast<long>(q));
                    int e = ((deg[q] + 1) * eps[q - 1]) % 2;
                    emit(t, (e ? 1 : -1) * cl);
                }
            }
            out = sv_normalize(out);
            cols.push_back(out);
        }
        C.bnd.push_back(std::move(cols));
    }
    require_d_squared(C);
    if (words_out) *words_out = std::move(words);
    return C;
}

// Chain map of cyclic bar complexes induced by a degree-preserving DG ring map phi
// (phi[i] = image of basis element i of A in the basis of B). Terms leaving the target basis
// through its weight cap are dropped; a unit in a slot a_1..a_q vanishes in the normalized target.
inline std::vector<std::vector<SparseVec>> bar_map(const DGRing& A, const std::vector<std::vector<std::string>>& wordsA,
                                                   const DGRing& B, const std::vector<std::vector<std::string>>& wordsB,
                                                   const std::vector<SparseVec>& phi, bool normalized = true)
{
    if (phi.size() != A.size()) throw std::invalid_argument("bar_map: phi must give an image for every basis element");
    for (size_t i = 0; i < A.size(); ++i)
        for (auto [j, c] : phi[i]) {
            (void)c;
            if (B.basis.at(static_cast<size_t>(j)).degree != A.basis[i].degree) throw std::invalid_argument("bar_map: phi does not preserve degree");
        }
    std::vector<std::vector<SparseVec>> out(wordsA.size());
    for (size_t k = 0; k < wordsA.size(); ++k) {
        std::unordered_map<std::string, int> idx;
        if (k < wordsB.size())
            for (size_t i = 0; i < wordsB[k].size(); ++i) idx[wordsB[k][i]] = static_cast<int>(i);
        for (const auto& w : wordsA[k]) {
            SparseVec v;
            std::string t(w.size(), '\0');
            std::function<void(size_t, i64)> expand = [&](size_t i, i64 c) {
                if (i == w.size()) {
                    auto it = idx.find(t);
                    if (it != idx.end()) v.push_back({it->second, c});
                    return;
                }
                for (auto [j, cj] : phi[static_cast<unsigned char>(w[i])]) {
                    if (i > 0 && normalized && j == 0) continue;
                    t[i] = static_cast<char>(j);
                    expand(i + 1, c * cj);
                }
            };
            expand(0, 1);
            out[k].push_back(sv_normalize(v));
        }
    }
    return out;
}

} // namespace hkw
