#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "hkw/arith/groups.hpp"

namespace hkw {

// Arithmetic in Z/p^M, used as a finite-precision model of Z_(p).
class PadicRing {
public:
    explicit PadicRing(int p, int M = -1) : p_(p), M_(M < 0 ? max_precision(p) : M)
    {
        if (!is_prime(p)) throw std::invalid_argument("PadicRing: p not prime");
        if (M_ < 1 || M_ > max_precision(p)) throw std::invalid_argument("PadicRing: precision out of range");
        mod_ = static_cast<u64>(ipow(p, M_));
        pw_.resize(static_cast<size_t>(M_) + 1);
        pw_[0] = 1;
        for (int i = 1; i <= M_; ++i) pw_[static_cast<size_t>(i)] = pw_[static_cast<size_t>(i) - 1] * static_cast<u64>(p);
    }
    int p() const { return p_; }
    int precision() const { return M_; }
    u64 modulus() const { return mod_; }
    u64 pow_p(int e) const { return e >= M_ ? 0 : pw_[static_cast<size_t>(e)]; }

    u64 from(i64 v) const { return static_cast<u64>(mod(v, static_cast<i64>(mod_))); }
    i64 centered(u64 x) const { return x > mod_ / 2 ? static_cast<i64>(x) - static_cast<i64>(mod_) : static_cast<i64>(x); }
    u64 add(u64 a, u64 b) const
    {
        u64 r = a + b;
        return r >= mod_ ? r - mod_ : r;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : mod_ - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % mod_); }
    // valuation, M for zero
    int val(u64 a) const
    {
        if (a == 0) return M_;
        int v = 0;
        while (a % static_cast<u64>(p_) == 0) { a /= static_cast<u64>(p_); ++v; }
        return v;
    }
    u64 inv_unit(u64 a) const { return static_cast<u64>(invmod(static_cast<i64>(a), static_cast<i64>(mod_))); }
    // a / p^e for a divisible by p^e; meaningful mod p^(M-e)
    u64 div_pow(u64 a, int e) const { return a / pw_[static_cast<size_t>(e)]; }

private:
    int p_, M_;
    u64 mod_;
    std::vector<u64> pw_;
};

// Dense vector over Z/p^M, valid modulo p^prec.
struct PVec {
    std::vector<u64> v;
    int prec = 0;
};

// Running record of the lowest precision reached, checked by callers.
struct PrecisionLog {
    int min_prec = std::numeric_limits<int>::max();
    void note(int p) { min_prec = std::min(min_prec, p); }
};

namespace detail {

inline int pvec_val(const PadicRing& R, const PVec& x, size_t from = 0, size_t to = std::numeric_limits<size_t>::max())
{
    int best = x.prec;
    to = std::min(to, x.v.size());
    for (size_t i = from; i < to; ++i) {
        int v = R.val(x.v[i]);
        if (v < best) best = v;
    }
    return best;
}

// Valuation of x away from coordinate i (its precision when nothing else is visible).
inline int pvec_val_except(const PadicRing& R, const PVec& x, size_t i)
{
    int best = x.prec;
    for (size_t j = 0; j < x.v.size(); ++j)
        if (j != i) best = std::min(best, R.val(x.v[j]));
    return best;
}

// Precision of g - c * piv when c = g_i / piv_i and piv_i has valuation bv: the division only
// costs precision where piv has entries of smaller valuation than its pivot.
inline int elim_precision(int gprec, int pprec, int bv, int mv) { return std::min(gprec, pprec) - std::max(0, bv - mv); }

// g <- g - c * piv
inline void axpy(const PadicRing& R, PVec& g, u64 c, const PVec& piv)
{
    if (c == 0) return;
    for (size_t i = 0; i < g.v.size(); ++i)
        if (piv.v[i]) g.v[i] = R.sub(g.v[i], R.mul(c, piv.v[i]));
}

// Echelonize on coordinates [0, ncoord); returns pivots (with pivot coordinate) and leftovers
// that vanish on those coordinates up to their precision.
struct EchelonOut {
    std::vector<PVec> pivots;
    std::vector<int> pivot_coord;
    std::vector<PVec> leftovers;
};

inline EchelonOut echelon(const PadicRing& R, std::vector<PVec> gens, size_t ncoord, PrecisionLog* log)
{
    EchelonOut out;
    for (size_t i = 0; i < ncoord && !gens.empty(); ++i) {
        int best = -1, bv = 0;
        for (size_t g = 0; g < gens.size(); ++g) {
            int v = R.val(gens[g].v[i]);
            if (v < gens[g].prec && (best < 0 || v < bv)) { best = static_cast<int>(g); bv = v; }
        }
        if (best < 0) continue;
        PVec piv = std::move(gens[static_cast<size_t>(best)]);
        gens.erase(gens.begin() + best);
        u64 unit_inv = R.inv_unit(R.div_pow(piv.v[i], bv));
        const int mv = pvec_val_except(R, piv, i);
        for (auto& g : gens) {
            u64 b = g.v[i];
            if (R.val(b) >= g.prec) { g.v[i] = 0; continue; }
            u64 c = R.mul(R.div_pow(b, bv), unit_inv);
            axpy(R, g, c, piv);
            g.v[i] = 0;
            g.prec = elim_precision(g.prec, piv.prec, bv, mv);
            if (log) log->note(g.prec);
        }
        out.pivots.push_back(std::move(piv));
        out.pivot_coord.push_back(static_cast<int>(i));
    }
    out.leftovers = std::move(gens);
    return out;
}

} // namespace detail

// Z_(p)-submodule of Z_(p)^N, stored as an echelon basis.
class Lattice {
public:
    Lattice() = default;
    Lattice(const PadicRing* R, size_t N) : R_(R), N_(N) {}

    static Lattice span(const PadicRing& R, size_t N, std::vector<PVec> gens, PrecisionLog* log = nullptr)
    {
        Lattice L(&R, N);
        auto e = detail::echelon(R, std::move(gens), N, log);
        L.B_ = std::move(e.pivots);
        L.piv_ = std::move(e.pivot_coord);
        return L;
    }
    static Lattice full(const PadicRing& R, size_t N) { return coordinates(R, N, [](size_t) { return true; }); }
    template <class Pred>
    static Lattice coordinates(const PadicRing& R, size_t N, Pred keep)
    {
        Lattice L(&R, N);
        for (size_t i = 0; i < N; ++i) {
            if (!keep(i)) continue;
            PVec e{std::vector<u64>(N, 0), R.precision()};
            e.v[i] = 1;
            L.B_.push_back(std::move(e));
            L.piv_.push_back(static_cast<int>(i));
        }
        return L;
    }
    // p^c Z_(p)^N
    static Lattice scaled_full(const PadicRing& R, size_t N, int c)
    {
        Lattice L(&R, N);
        if (c >= R.precision()) return L;
        for (size_t i = 0; i < N; ++i) {
            PVec e{std::vector<u64>(N, 0), R.precision()};
            e.v[i] = R.pow_p(c);
            L.B_.push_back(std::move(e));
            L.piv_.push_back(static_cast<int>(i));
        }
        return L;
    }

    size_t ambient() const { return N_; }
    size_t rank() const { return B_.size(); }
    const std::vector<PVec>& basis() const { return B_; }
    const PadicRing& ring() const { return *R_; }

    Lattice operator+(const Lattice& o) const
    {
        std::vector<PVec> g = B_;
        g.insert(g.end(), o.B_.begin(), o.B_.end());
        return span(*R_, N_, std::move(g));
    }
    Lattice sum(const Lattice& o, PrecisionLog* log) const
    {
        std::vector<PVec> g = B_;
        g.insert(g.end(), o.B_.begin(), o.B_.end());
        return span(*R_, N_, std::move(g), log);
    }
    Lattice times_p(int k) const
    {
        std::vector<PVec> g = B_;
        u64 c = R_->pow_p(k);
        for (auto& x : g)
            for (auto& y : x.v) y = R_->mul(y, c);
        return span(*R_, N_, std::move(g));
    }

private:
    const PadicRing* R_ = nullptr;
    size_t N_ = 0;
    std::vector<PVec> B_;
    std::vector<int> piv_;
};

// Dense matrix over Z/p^M stored by columns: cols[j] is the image of e_j, length rows.
struct PMatrix {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<u64>> col;

    PMatrix() = default;
    PMatrix(size_t r, size_t c) : rows(r), cols(c), col(c, std::vector<u64>(r, 0)) {}
    std::vector<u64> apply(const PadicRing& R, const std::vector<u64>& x) const
    {
        std::vector<u64> y(rows, 0);
        for (size_t j = 0; j < cols; ++j) {
            if (!x[j]) continue;
            for (size_t i = 0; i < rows; ++i)
                if (col[j][i]) y[i] = R.add(y[i], R.mul(x[j], col[j][i]));
        }
        return y;
    }
};

// image A(L)
inline Lattice image(const PadicRing& R, const PMatrix& A, const Lattice& L, PrecisionLog* log = nullptr)
{
    std::vector<PVec> g;
    for (const auto& b : L.basis()) g.push_back(PVec{A.apply(R, b.v), b.prec});
    return Lattice::span(R, A.rows, std::move(g), log);
}

// {x in src : A x in tgt}
inline Lattice preimage(const PadicRing& R, const PMatrix& A, const Lattice& src, const Lattice& tgt, PrecisionLog* log = nullptr)
{
    const size_t r = A.rows, n = A.cols;
    std::vector<PVec> g;
    for (const auto& s : src.basis()) {
        PVec w{std::vector<u64>(r + n, 0), s.prec};
        auto As = A.apply(R, s.v);
        std::copy(As.begin(), As.end(), w.v.begin());
        std::copy(s.v.begin(), s.v.end(), w.v.begin() + static_cast<long>(r));
        g.push_back(std::move(w));
    }
    for (const auto& t : tgt.basis()) {
        PVec w{std::vector<u64>(r + n, 0), t.prec};
        for (size_t i = 0; i < r; ++i) w.v[i] = R.neg(t.v[i]);
        g.push_back(std::move(w));
    }
    auto e = detail::echelon(R, std::move(g), r, log);
    std::vector<PVec> tails;
    for (auto& w : e.leftovers) {
        PVec x{std::vector<u64>(w.v.begin() + static_cast<long>(r), w.v.end()), w.prec};
        tails.push_back(std::move(x));
    }
    return Lattice::span(R, n, std::move(tails), log);
}

inline Lattice intersect(const PadicRing& R, const Lattice& a, const Lattice& b, PrecisionLog* log = nullptr)
{
    PMatrix I(a.ambient(), a.ambient());
    for (size_t i = 0; i < a.ambient(); ++i) I.col[i][i] = 1;
    return preimage(R, I, a, b, log);
}

// Invariant factors of a matrix given by columns (local SNF by minimal valuation pivots).
// Entries at or beyond a vector's precision count as zero. Returns exponents of nonzero
// pivots (including 0 for units) and the number of pivots.
inline std::vector<int> local_invariants(const PadicRing& R, std::vector<PVec> cols, size_t nrows, PrecisionLog* log = nullptr)
{
    std::vector<int> out;
    for (;;) {
        int bc = -1, br = -1, bv = std::numeric_limits<int>::max();
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < nrows; ++r) {
                int v = R.val(cols[c].v[r]);
                if (v < cols[c].prec && v < bv) { bv = v; bc = static_cast<int>(c); br = static_cast<int>(r); }
            }
        if (bc < 0) break;
        out.push_back(bv);
        PVec piv = std::move(cols[static_cast<size_t>(bc)]);
        cols.erase(cols.begin() + bc);
        u64 ui = R.inv_unit(R.div_pow(piv.v[static_cast<size_t>(br)], bv));
        for (auto& g : cols) {
            u64 b = g.v[static_cast<size_t>(br)];
            if (R.val(b) >= g.prec) { g.v[static_cast<size_t>(br)] = 0; continue; }
            u64 c = R.mul(R.div_pow(b, bv), ui);
            detail::axpy(R, g, c, piv);
            g.v[static_cast<size_t>(br)] = 0;
            g.prec = std::min(g.prec, piv.prec);
            if (log) log->note(g.prec);
        }
        // the pivot row is now zero in every remaining column, so row operations are not needed
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Coordinates of the generators of `small` in the echelon basis of `big` (small must lie in big).
// Returns false if some generator is not contained.
inline bool coordinates_in(const PadicRing& R, const Lattice& big, const Lattice& small, std::vector<PVec>& coords, PrecisionLog* log)
{
    const auto& B = big.basis();
    coords.clear();
    // pivot coordinate of each basis vector: first coordinate with valuation below precision
    std::vector<size_t> pc(B.size());
    std::vector<int> mv(B.size());
    for (size_t k = 0; k < B.size(); ++k) {
        size_t i = 0;
        while (i < B[k].v.size() && R.val(B[k].v[i]) >= B[k].prec) ++i;
        pc[k] = i;
        mv[k] = detail::pvec_val_except(R, B[k], i);
    }
    for (const auto& g0 : small.basis()) {
        PVec g = g0;
        PVec lam{std::vector<u64>(B.size(), 0), g.prec};
        for (size_t k = 0; k < B.size(); ++k) {
            size_t i = pc[k];
            u64 a = B[k].v[i];
            int e = R.val(a);
            u64 b = g.v[i];
            int vb = R.val(b);
            if (vb >= g.prec) continue;
            if (vb < e) return false;
            u64 c = R.mul(R.div_pow(b, e), R.inv_unit(R.div_pow(a, e)));
            detail::axpy(R, g, c, B[k]);
            g.v[i] = 0;
            lam.v[k] = c;
            lam.prec = std::min({lam.prec, g.prec - e, B[k].prec - e});
            g.prec = detail::elim_precision(g.prec, B[k].prec, e, mv[k]);
            if (log) log->note(g.prec);
        }
        if (detail::pvec_val(R, g) < g.prec) return false;
        coords.push_back(std::move(lam));
    }
    return true;
}

inline bool contains(const PadicRing& R, const Lattice& big, const Lattice& small, PrecisionLog* log = nullptr)
{
    std::vector<PVec> c;
    return coordinates_in(R, big, small, c, log);
}

// Half the working precision: invariants below it are trusted, the rest count as free.
inline int reliable_precision(const PadicRing& R) { return R.precision() / 2; }

// Structure of big/small. Exponents at or above `free_threshold` are reported as free summands.
inline FinAbPGroup quotient_group(const PadicRing& R, const Lattice& big, const Lattice& small, PrecisionLog* log = nullptr, int free_threshold = -1)
{
    std::vector<PVec> coords;
    if (!coordinates_in(R, big, small, coords, log)) throw std::logic_error("quotient_group: submodule not contained");
    if (free_threshold < 0) free_threshold = R.precision();
    auto inv = local_invariants(R, std::move(coords), big.rank(), log);
    FinAbPGroup g(R.p());
    int pivots = 0;
    for (int e : inv) {
        if (e >= free_threshold) continue;
        ++pivots;
        if (e > 0) g.factors.push_back(e);
    }
    g.free_rank = static_cast<int>(big.rank()) - pivots;
    g.canonicalize();
    return g;
}

} // namespace hkw
