#pragma once

#include <vector>

#include "hkw/arith/fq.hpp"

namespace hkw {

// GR(p^m, s) = (Z/p^m)[x]/(f~) where f~ is the field modulus read as an integer polynomial.
class GaloisRing {
public:
    using Elem = std::vector<i64>;  // s coefficients mod p^m

    GaloisRing(FqFieldPtr F, int m) : F_(std::move(F)), m_(m)
    {
        if (m < 1) throw std::invalid_argument("GaloisRing: length must be >= 1");
        if (m > max_precision(F_->p)) throw std::overflow_error("GaloisRing: p^m exceeds 62 bits");
        mod_ = ipow(F_->p, m);
    }

    const FqFieldPtr& field() const { return F_; }
    int length() const { return m_; }
    i64 modulus() const { return mod_; }
    int degree() const { return F_->s; }

    Elem zero() const { return Elem(F_->s, 0); }
    Elem from_int(i64 v) const
    {
        Elem e = zero();
        e[0] = mod(v, mod_);
        return e;
    }
    Elem lift(const FqElement& a) const
    {
        Elem e = zero();
        for (int i = 0; i < F_->s; ++i) e[i] = a.coeffs()[i];
        return e;
    }
    FqElement reduce(const Elem& e) const
    {
        std::vector<int> c(F_->s);
        for (int i = 0; i < F_->s; ++i) c[i] = static_cast<int>(mod(e[i], F_->p));
        return FqElement(F_, c);
    }

    Elem add(const Elem& a, const Elem& b) const
    {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], mod_);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const
    {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] - b[i], mod_);
        return r;
    }
    Elem neg(const Elem& a) const { return sub(zero(), a); }
    Elem scale(const Elem& a, i64 c) const
    {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], c, mod_);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const
    {
        int s = F_->s;
        std::vector<i128> t(2 * s - 1, 0);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) t[i + j] = (t[i + j] + static_cast<i128>(a[i]) * b[j]) % mod_;
        for (int k = 2 * s - 2; k >= s; --k) {
            i128 c = t[k];
            if (c == 0) continue;
            t[k] = 0;
            for (int i = 0; i < s; ++i) t[k - s + i] = (t[k - s + i] - c * F_->modulus[i]) % mod_;
        }
        Elem r(s);
        for (int i = 0; i < s; ++i) r[i] = mod(static_cast<i64>(t[i]), mod_);
        return r;
    }
    Elem pow(Elem b, u64 e) const
    {
        Elem r = from_int(1);
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    bool divisible_by_p(const Elem& a) const
    {
        for (auto c : a) if (c % F_->p) return false;
        return true;
    }
    // exact division by p of an element divisible by p; the result is meaningful mod p^(m-1)
    Elem div_p(const Elem& a) const
    {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / F_->p;
        return r;
    }

    // Teichmuller lift: the unique (q-1)-th root of unity or 0 reducing to a.
    Elem teichmuller(const FqElement& a) const
    {
        Elem x = lift(a);
        for (int k = 1; k < m_; ++k) x = pow(x, static_cast<u64>(F_->q()));
        return x;
    }

private:
    FqFieldPtr F_;
    int m_;
    i64 mod_;
};

} // namespace hkw
