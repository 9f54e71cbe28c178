#pragma once

#include <cstdint>
#include <vector>

#include "qhopf/errors.hpp"

namespace qhopf {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Coordinate vector over GF(p); entries are residues in [0, p).
using Vec = std::vector<u32>;

inline bool is_prime_u32(u32 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Arithmetic in the prime field GF(p). Values are canonical residues.
class Fp {
public:
    explicit Fp(u32 p) : p_(p) {
        if (!is_prime_u32(p)) throw input_error("characteristic must be prime, got " + std::to_string(p));
    }

    u32 p() const { return p_; }

    u32 reduce(u64 x) const { return static_cast<u32>(x % p_); }
    u32 reduce_signed(long long x) const {
        long long r = x % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<u32>(r);
    }

    u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p_ ? s - p_ : s; }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p_); }

    u32 pow(u32 a, u64 e) const {
        u64 base = a % p_, acc = 1;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<u32>(acc);
    }

    u32 inv(u32 a) const {
        if (a % p_ == 0) throw not_invertible("zero has no inverse in GF(" + std::to_string(p_) + ")");
        return pow(a, p_ - 2);
    }

    u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

    // n! and its inverse for n < p (used by truncated series).
    u32 factorial(u32 n) const {
        u32 f = 1;
        for (u32 i = 2; i <= n; ++i) f = mul(f, i);
        return f;
    }

    // binom(n, k) mod p via the factorized digits of Lucas' theorem.
    u32 binom_lucas(u64 n, u64 k) const {
        u32 result = 1;
        while (k > 0 || n > 0) {
            u32 nd = static_cast<u32>(n % p_), kd = static_cast<u32>(k % p_);
            if (kd > nd) return 0;
            result = mul(result, small_binom(nd, kd));
            n /= p_;
            k /= p_;
        }
        return result;
    }

    bool operator==(const Fp& o) const { return p_ == o.p_; }

private:
    u32 small_binom(u32 n, u32 k) const {
        // n, k < p so the numerator/denominator are units away from overflowing
        u32 num = 1, den = 1;
        for (u32 i = 0; i < k; ++i) {
            num = mul(num, n - i);
            den = mul(den, i + 1);
        }
        return div(num, den);
    }

    u32 p_;
};

inline void vec_add_inplace(const Fp& F, Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], b[i]);
}

inline void vec_sub_inplace(const Fp& F, Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.sub(a[i], b[i]);
}

inline void vec_scale_inplace(const Fp& F, Vec& a, u32 c) {
    for (auto& x : a) x = F.mul(x, c);
}

inline void vec_axpy(const Fp& F, Vec& a, u32 c, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], F.mul(c, b[i]));
}

inline bool vec_is_zero(const Vec& a) {
    for (u32 x : a)
        if (x) return false;
    return true;
}

} // namespace qhopf
