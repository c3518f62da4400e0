#pragma once

#include <map>
#include <string>
#include <vector>

#include "hkw/arith/groups.hpp"
#include "hkw/homology/dgring.hpp"

namespace hkw {

struct ChainModule {
    std::vector<std::string> labels;
    std::vector<int> weight;  // internal degree (graded) or filtration weight
    std::vector<int> aux;     // optional second grading, empty when unused
    size_t rank() const { return labels.size(); }
};

// Bounded chain complex of free modules over Z (coef_exp = 0) or Z/p^coef_exp.
// bnd[k] holds the columns of d: C_k -> C_{k-1}.
struct ChainComplex {
    int p = 2;
    int coef_exp = 0;
    bool graded = false;
    int lo = 0, hi = -1;
    std::vector<ChainModule> mods;
    std::vector<std::vector<SparseVec>> bnd;

    bool has(int k) const { return k >= lo && k <= hi; }
    const ChainModule& module(int k) const { return mods.at(static_cast<size_t>(k - lo)); }
    ChainModule& module(int k) { return mods.at(static_cast<size_t>(k - lo)); }
    size_t rank(int k) const { return has(k) ? module(k).rank() : 0; }
    const std::vector<SparseVec>& boundary(int k) const { return bnd.at(static_cast<size_t>(k - lo)); }
    std::vector<SparseVec>& boundary(int k) { return bnd.at(static_cast<size_t>(k - lo)); }
    std::string base() const { return coef_exp == 0 ? "Z" : (coef_exp == 1 ? "F_" + std::to_string(p) : "Z/" + std::to_string(p) + "^" + std::to_string(coef_exp)); }

    SparseIntMatrix boundary_matrix(int k) const
    {
        SparseIntMatrix M(static_cast<int>(rank(k - 1)), static_cast<int>(rank(k)));
        if (!has(k) || !has(k - 1)) return M;
        const auto& cols = boundary(k);
        for (size_t j = 0; j < cols.size(); ++j)
            for (auto [i, c] : cols[j]) M.set(i, static_cast<int>(j), BigInt(c));
        return M;
    }
};

// d o d = 0, exactly over Z (reduced mod p^coef_exp when set)
inline bool check_d_squared(const ChainComplex& C, std::string* where = nullptr)
{
    const i128 m = C.coef_exp ? static_cast<i128>(ipow(C.p, C.coef_exp)) : 0;
    for (int k = C.lo + 2; k <= C.hi; ++k) {
        const auto& dk = C.boundary(k);
        const auto& dk1 = C.boundary(k - 1);
        for (size_t j = 0; j < dk.size(); ++j) {
            std::map<int, i128> acc;
            for (auto [i, c] : dk[j])
                for (auto [l, e] : dk1[static_cast<size_t>(i)]) acc[l] += static_cast<i128>(c) * e;
            for (auto& [l, v] : acc) {
                i128 r = m ? v % m : v;
                if (r != 0) {
                    if (where) *where = "degree " + std::to_string(k) + ", column " + std::to_string(j);
                    return false;
                }
            }
        }
    }
    return true;
}

inline void require_d_squared(const ChainComplex& C)
{
    std::string w;
    if (!check_d_squared(C, &w)) throw std::logic_error("chain complex: d o d != 0 at " + w);
}

// Subcomplex of basis elements with weight exactly s.
inline ChainComplex internal_split(const ChainComplex& C, int s)
{
    if (s < 0) throw std::invalid_argument("internal_split: negative internal degree");
    if (!C.graded) throw std::invalid_argument("internal_split: complex is not graded");
    ChainComplex R;
    R.p = C.p;
    R.coef_exp = C.coef_exp;
    R.graded = true;
    R.lo = C.lo;
    R.hi = C.hi;
    std::vector<std::vector<int>> newidx;
    for (int k = C.lo; k <= C.hi; ++k) {
        const auto& M = C.module(k);
        ChainModule N;
        std::vector<int> idx(M.rank(), -1);
        for (size_t i = 0; i < M.rank(); ++i)
            if (M.weight[i] == s) {
                idx[i] = static_cast<int>(N.rank());
                N.labels.push_back(M.labels[i]);
                N.weight.push_back(s);
                if (!M.aux.empty()) N.aux.push_back(M.aux[i]);
            }
        newidx.push_back(std::move(idx));
        R.mods.push_back(std::move(N));
    }
    for (int k = C.lo; k <= C.hi; ++k) {
        std::vector<SparseVec> cols;
        const auto& idx = newidx[static_cast<size_t>(k - C.lo)];
        for (size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0) continue;
            SparseVec v;
            if (k > C.lo)
                for (auto [i, c] : C.boundary(k)[j]) {
                    int t = newidx[static_cast<size_t>(k - 1 - C.lo)][static_cast<size_t>(i)];
                    if (t < 0) throw std::logic_error("internal_split: differential does not preserve internal degree");
                    v.push_back({t, c});
                }
            cols.push_back(sv_normalize(v));
        }
        R.bnd.push_back(std::move(cols));
    }
    return R;
}

// {degrees, ranks, boundary triplets}
inline json complex_to_json(const ChainComplex& C, bool with_labels = true)
{
    json j;
    j["p"] = C.p;
    j["base"] = C.base();
    j["degrees"] = json::array();
    j["ranks"] = json::array();
    j["boundaries"] = json::object();
    for (int k = C.lo; k <= C.hi; ++k) {
        j["degrees"].push_back(k);
        j["ranks"].push_back(C.rank(k));
        if (with_labels) j["labels"][std::to_string(k)] = C.module(k).labels;
        if (k > C.lo) {
            json t = json::array();
            const auto& cols = C.boundary(k);
            for (size_t c = 0; c < cols.size(); ++c)
                for (auto [r, v] : cols[c]) t.push_back({r, c, v});
            j["boundaries"][std::to_string(k)] = t;
        }
    }
    return j;
}

} // namespace hkw
