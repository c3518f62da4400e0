#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "hkw/arith/witt.hpp"

namespace hkw {

class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols)
    {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    static SparseIntMatrix from_dense(const std::vector<std::vector<BigInt>>& d, int cols = -1)
    {
        int r = static_cast<int>(d.size());
        int c = cols >= 0 ? cols : (r ? static_cast<int>(d[0].size()) : 0);
        SparseIntMatrix M(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) M.set(i, j, d[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        return M;
    }
    static SparseIntMatrix from_ints(const std::vector<std::vector<i64>>& d)
    {
        std::vector<std::vector<BigInt>> b;
        for (const auto& row : d) b.emplace_back(row.begin(), row.end());
        return from_dense(b, d.empty() ? 0 : static_cast<int>(d[0].size()));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t nnz() const { return e_.size(); }

    void set(int i, int j, const BigInt& v)
    {
        check(i, j);
        if (v == 0) e_.erase({i, j});
        else e_[{i, j}] = v;
    }
    void add(int i, int j, const BigInt& v)
    {
        check(i, j);
        auto& t = e_[{i, j}];
        t += v;
        if (t == 0) e_.erase({i, j});
    }
    BigInt get(int i, int j) const
    {
        auto it = e_.find({i, j});
        return it == e_.end() ? BigInt(0) : it->second;
    }
    const std::map<std::pair<int, int>, BigInt>& entries() const { return e_; }

    std::vector<std::vector<BigInt>> dense() const
    {
        std::vector<std::vector<BigInt>> d(static_cast<size_t>(rows_), std::vector<BigInt>(static_cast<size_t>(cols_), 0));
        for (const auto& [ij, v] : e_) d[static_cast<size_t>(ij.first)][static_cast<size_t>(ij.second)] = v;
        return d;
    }

    SparseIntMatrix operator*(const SparseIntMatrix& o) const
    {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: non-composable shapes");
        std::map<int, std::vector<std::pair<int, BigInt>>> byrow;
        for (const auto& [ij, v] : o.e_) byrow[ij.first].push_back({ij.second, v});
        SparseIntMatrix r(rows_, o.cols_);
        for (const auto& [ij, v] : e_) {
            auto it = byrow.find(ij.second);
            if (it == byrow.end()) continue;
            for (const auto& [k, w] : it->second) r.add(ij.first, k, v * w);
        }
        return r;
    }
    bool is_zero() const { return e_.empty(); }
    bool operator==(const SparseIntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

private:
    void check(int i, int j) const
    {
        if (i < 0 || j < 0 || i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
    }
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, BigInt> e_;
};

struct SNFResult {
    std::vector<BigInt> factors;  // nonzero invariant factors d_1 | d_2 | ...
    int rank = 0;
    std::optional<SparseIntMatrix> U, V, D;  // U * M * V = D
};

inline SNFResult smith_normal_form(const SparseIntMatrix& M, bool transforms = false)
{
    using Mat = std::vector<std::vector<BigInt>>;
    const int R = M.rows(), C = M.cols();
    Mat A = M.dense();
    Mat U, V;
    if (transforms) {
        U.assign(static_cast<size_t>(R), std::vector<BigInt>(static_cast<size_t>(R), 0));
        V.assign(static_cast<size_t>(C), std::vector<BigInt>(static_cast<size_t>(C), 0));
        for (int i = 0; i < R; ++i) U[i][i] = 1;
        for (int j = 0; j < C; ++j) V[j][j] = 1;
    }
    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        std::swap(A[a], A[b]);
        if (transforms) std::swap(U[a], U[b]);
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (auto& row : A) std::swap(row[a], row[b]);
        if (transforms) for (auto& row : V) std::swap(row[a], row[b]);
    };
    // row_i += c * row_k
    auto row_op = [&](int i, int k, const BigInt& c) {
        for (int j = 0; j < C; ++j) if (A[k][j] != 0) A[i][j] += c * A[k][j];
        if (transforms) for (int j = 0; j < R; ++j) if (U[k][j] != 0) U[i][j] += c * U[k][j];
    };
    auto col_op = [&](int j, int k, const BigInt& c) {
        for (int i = 0; i < R; ++i) if (A[i][k] != 0) A[i][j] += c * A[i][k];
        if (transforms) for (int i = 0; i < C; ++i) if (V[i][k] != 0) V[i][j] += c * V[i][k];
    };
    auto absb = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };

    int t = 0;
    for (; t < std::min(R, C); ++t) {
        // minimal absolute value pivot in the remaining block
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j)
                if (A[i][j] != 0 && (pi < 0 || absb(A[i][j]) < best)) { best = absb(A[i][j]); pi = i; pj = j; }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < R; ++i) {
                if (A[i][t] == 0) continue;
                BigInt q = A[i][t] / A[t][t];
                row_op(i, t, -q);
                if (A[i][t] != 0) dirty = true;
            }
            for (int j = t + 1; j < C; ++j) {
                if (A[t][j] == 0) continue;
                BigInt q = A[t][j] / A[t][t];
                col_op(j, t, -q);
                if (A[t][j] != 0) dirty = true;
            }
            if (dirty) {
                // bring the smallest remainder in row/column t to the pivot
                int bi = t, bj = t;
                BigInt b = absb(A[t][t]);
                for (int i = t + 1; i < R; ++i)
                    if (A[i][t] != 0 && absb(A[i][t]) < b) { b = absb(A[i][t]); bi = i; bj = t; }
                for (int j = t + 1; j < C; ++j)
                    if (A[t][j] != 0 && absb(A[t][j]) < b) { b = absb(A[t][j]); bi = t; bj = j; }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < R && bad < 0; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (A[i][j] % A[t][t] != 0) { bad = i; break; }
            if (bad < 0) break;
            row_op(t, bad, 1);
        }
        if (A[t][t] < 0) {
            for (int j = 0; j < C; ++j) A[t][j] = -A[t][j];
            if (transforms) for (int j = 0; j < R; ++j) U[t][j] = -U[t][j];
        }
    }
    SNFResult res;
    res.rank = t;
    for (int i = 0; i < t; ++i) res.factors.push_back(A[i][i]);
    if (transforms) {
        res.U = SparseIntMatrix::from_dense(U, R);
        res.V = SparseIntMatrix::from_dense(V, C);
        res.D = SparseIntMatrix::from_dense(A, C);
    }
    return res;
}

} // namespace hkw
