#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hkw/arith/prime.hpp"

namespace hkw {

// Conway polynomials, constant term first, for p in {2,3,5,7} and s <= 6.
inline const std::vector<int>* conway_lookup(int p, int s)
{
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {1, 1}}, {{2, 2}, {1, 1, 1}}, {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 1}, {1, 1}}, {{3, 2}, {2, 2, 1}}, {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}}, {{3, 5}, {1, 2, 0, 0, 0, 1}}, {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 1}, {3, 1}}, {{5, 2}, {2, 4, 1}}, {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}}, {{5, 5}, {3, 4, 0, 0, 0, 1}}, {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
        {{7, 1}, {4, 1}}, {{7, 2}, {3, 6, 1}}, {{7, 3}, {4, 0, 6, 1}},
        {{7, 4}, {3, 4, 5, 0, 1}}, {{7, 5}, {4, 1, 0, 0, 0, 1}}, {{7, 6}, {3, 6, 4, 5, 1, 0, 1}},
    };
    auto it = table.find({p, s});
    return it == table.end() ? nullptr : &it->second;
}

namespace detail {

// polynomial helpers over F_p, constant term first
inline std::vector<int> poly_trim(std::vector<int> a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& f, int p)
{
    a = poly_trim(std::move(a));
    int df = static_cast<int>(f.size()) - 1;
    i64 lead_inv = invmod(f.back(), p);
    while (static_cast<int>(a.size()) - 1 >= df) {
        int shift = static_cast<int>(a.size()) - 1 - df;
        i64 c = mulmod(a.back(), lead_inv, p);
        for (int i = 0; i <= df; ++i)
            a[shift + i] = static_cast<int>(mod(a[shift + i] - c * f[i], p));
        a = poly_trim(std::move(a));
    }
    return a;
}

inline std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p)
{
    if (a.empty() || b.empty()) return {};
    std::vector<i64> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += static_cast<i64>(a[i]) * b[j];
    std::vector<int> out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = static_cast<int>(mod(r[i], p));
    return poly_trim(out);
}

inline std::vector<int> poly_gcd(std::vector<int> a, std::vector<int> b, int p)
{
    a = poly_trim(a); b = poly_trim(b);
    while (!b.empty()) {
        auto r = poly_mod(a, b, p);
        a = std::move(b); b = std::move(r);
    }
    return a;
}

inline std::vector<int> poly_powmod(std::vector<int> base, u64 e, const std::vector<int>& f, int p)
{
    std::vector<int> r{1};
    base = poly_mod(base, f, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// Rabin irreducibility test for monic f of degree s.
inline bool poly_irreducible(const std::vector<int>& f, int p)
{
    int s = static_cast<int>(f.size()) - 1;
    if (s < 1) return false;
    auto xq = [&](int k) {
        // x^(p^k) mod f
        std::vector<int> r{0, 1};
        for (int i = 0; i < k; ++i) r = poly_powmod(r, static_cast<u64>(p), f, p);
        return r;
    };
    const auto x_red = poly_mod({0, 1}, f, p);
    auto sub_x = [&](std::vector<int> a) {
        if (a.size() < x_red.size()) a.resize(x_red.size(), 0);
        for (size_t i = 0; i < x_red.size(); ++i) a[i] = static_cast<int>(mod(a[i] - x_red[i], p));
        return poly_trim(a);
    };
    if (poly_trim(sub_x(xq(s))).size() != 0) return false;
    for (int d = 1; d < s; ++d) {
        if (s % d != 0) continue;
        auto g = poly_gcd(f, sub_x(xq(d)), p);
        if (g.size() > 1) return false;
    }
    return true;
}

inline std::vector<int> least_irreducible(int p, int s)
{
    std::vector<int> f(s + 1, 0);
    f[s] = 1;
    i64 total = ipow(p, s);
    for (i64 code = 0; code < total; ++code) {
        i64 c = code;
        for (int i = 0; i < s; ++i) { f[i] = static_cast<int>(c % p); c /= p; }
        if (f[0] == 0 && s > 1) continue;
        if (poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

} // namespace detail

struct FqField {
    int p = 2;
    int s = 1;
    std::vector<int> modulus;  // monic, constant term first
    std::string source;        // "conway" or "least-irreducible"

    i64 q() const { return ipow(p, s); }

    std::string modulus_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (int i = s; i >= 0; --i) {
            int c = modulus[i];
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }
};

using FqFieldPtr = std::shared_ptr<const FqField>;

inline FqFieldPtr make_field(int p, int s)
{
    PrimePower pp(p, s);
    auto F = std::make_shared<FqField>();
    F->p = p;
    F->s = s;
    if (auto c = conway_lookup(p, s)) {
        F->modulus = *c;
        F->source = "conway";
    } else {
        F->modulus = detail::least_irreducible(p, s);
        F->source = "least-irreducible";
    }
    return F;
}

class FqElement {
public:
    FqElement() = default;
    FqElement(FqFieldPtr F, std::vector<int> c) : F_(std::move(F)), c_(std::move(c))
    {
        if (static_cast<int>(c_.size()) != F_->s) throw std::invalid_argument("FqElement: wrong coefficient length");
        for (auto& x : c_) x = static_cast<int>(mod(x, F_->p));
    }
    static FqElement from_int(FqFieldPtr F, i64 v)
    {
        std::vector<int> c(F->s, 0);
        c[0] = static_cast<int>(mod(v, F->p));
        return FqElement(F, c);
    }
    static FqElement zero(FqFieldPtr F) { return from_int(F, 0); }
    static FqElement one(FqFieldPtr F) { return from_int(F, 1); }
    // element with coefficient index code in base p
    static FqElement from_index(FqFieldPtr F, i64 code)
    {
        std::vector<int> c(F->s);
        for (int i = 0; i < F->s; ++i) { c[i] = static_cast<int>(code % F->p); code /= F->p; }
        return FqElement(F, c);
    }
    i64 index() const
    {
        i64 code = 0;
        for (int i = F_->s - 1; i >= 0; --i) code = code * F_->p + c_[i];
        return code;
    }

    const FqFieldPtr& field() const { return F_; }
    const std::vector<int>& coeffs() const { return c_; }
    bool is_zero() const
    {
        for (int x : c_) if (x) return false;
        return true;
    }

    FqElement operator+(const FqElement& o) const
    {
        check(o);
        std::vector<int> r(c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = (c_[i] + o.c_[i]) % F_->p;
        return FqElement(F_, r);
    }
    FqElement operator-() const
    {
        std::vector<int> r(c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = (F_->p - c_[i]) % F_->p;
        return FqElement(F_, r);
    }
    FqElement operator-(const FqElement& o) const { return *this + (-o); }
    FqElement operator*(const FqElement& o) const
    {
        check(o);
        auto r = detail::poly_mod(detail::poly_mul(c_, o.c_, F_->p), F_->modulus, F_->p);
        r.resize(F_->s, 0);
        return FqElement(F_, r);
    }
    FqElement pow(u64 e) const
    {
        FqElement r = one(F_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    FqElement inverse() const
    {
        if (is_zero()) throw std::domain_error("inverse of zero in F_q");
        return pow(static_cast<u64>(F_->q() - 2));
    }
    FqElement frobenius() const { return pow(static_cast<u64>(F_->p)); }
    // x -> x^(p^(s-1)), the inverse of Frobenius
    FqElement frobenius_inverse() const
    {
        FqElement r = *this;
        for (int i = 1; i < F_->s; ++i) r = r.frobenius();
        return r;
    }

    bool operator==(const FqElement& o) const { return c_ == o.c_ && F_->p == o.F_->p && F_->s == o.F_->s; }
    bool operator!=(const FqElement& o) const { return !(*this == o); }

    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
        os << "]";
        return os.str();
    }

private:
    void check(const FqElement& o) const
    {
        if (F_.get() != o.F_.get() && (F_->p != o.F_->p || F_->modulus != o.F_->modulus))
            throw std::invalid_argument("F_q elements from different fields");
    }
    FqFieldPtr F_;
    std::vector<int> c_;
};

} // namespace hkw
