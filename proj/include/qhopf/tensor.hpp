#pragma once

// Elements of tensor powers A^{(x)m}, stored as dense coordinate vectors of
// length dim^m with slot 1 as the most significant digit. Multiplication is
// slotwise; arity is capped at 4 (both sides of the pentagon live in H^{(x)4}).

#include <array>
#include <vector>

#include "qhopf/algebra.hpp"

namespace qhopf {

inline constexpr u32 kMaxArity = 4;

struct TensorElement {
    AlgebraRef alg;
    u32 arity = 1;
    Vec coords;

    const Fp& field() const { return alg->field(); }
    bool is_zero() const { return vec_is_zero(coords); }
};

namespace detail {

inline u64 tensor_size(std::size_t dim, u32 arity) {
    u64 s = 1;
    for (u32 k = 0; k < arity; ++k) s *= dim;
    return s;
}

inline void check_same_space(const TensorElement& a, const TensorElement& b, const char* op) {
    if (a.alg.get() != b.alg.get() || a.arity != b.arity)
        throw input_error(std::string(op) + ": operands must share algebra and arity");
}

inline void check_arity_cap(u32 arity) {
    if (arity == 0 || arity > kMaxArity)
        throw unsupported("tensor arity " + std::to_string(arity) + " outside supported range 1.." +
                          std::to_string(kMaxArity));
}

inline std::array<u32, kMaxArity> digits_of(u64 flat, std::size_t dim, u32 arity) {
    std::array<u32, kMaxArity> d{};
    for (u32 k = arity; k-- > 0;) {
        d[k] = static_cast<u32>(flat % dim);
        flat /= dim;
    }
    return d;
}

inline u64 flat_of(const std::array<u32, kMaxArity>& digits, std::size_t dim, u32 arity) {
    u64 f = 0;
    for (u32 k = 0; k < arity; ++k) f = f * dim + digits[k];
    return f;
}

struct NonZero {
    u64 flat;
    std::array<u32, kMaxArity> digits;
    u32 coeff;
};

inline std::vector<NonZero> nonzeros(const TensorElement& t) {
    std::vector<NonZero> nz;
    std::size_t dim = t.alg->dim();
    for (u64 i = 0; i < t.coords.size(); ++i)
        if (t.coords[i]) nz.push_back({i, digits_of(i, dim, t.arity), t.coords[i]});
    return nz;
}

} // namespace detail

inline TensorElement tensor_zero(AlgebraRef alg, u32 arity) {
    detail::check_arity_cap(arity);
    u64 n = detail::tensor_size(alg->dim(), arity);
    return TensorElement{std::move(alg), arity, Vec(n, 0)};
}

// Outer product of arity many coordinate vectors.
inline TensorElement tensor_outer(AlgebraRef alg, const std::vector<Vec>& factors) {
    detail::check_arity_cap(static_cast<u32>(factors.size()));
    TensorElement t = tensor_zero(alg, static_cast<u32>(factors.size()));
    std::size_t dim = t.alg->dim();
    const Fp& F = t.field();
    std::vector<u64> idx{0};
    std::vector<u32> val{1};
    for (const auto& f : factors) {
        std::vector<u64> nidx;
        std::vector<u32> nval;
        for (std::size_t s = 0; s < idx.size(); ++s)
            for (std::size_t j = 0; j < dim; ++j)
                if (f[j]) {
                    nidx.push_back(idx[s] * dim + j);
                    nval.push_back(F.mul(val[s], f[j]));
                }
        idx = std::move(nidx);
        val = std::move(nval);
    }
    for (std::size_t s = 0; s < idx.size(); ++s)
        t.coords[idx[s]] = F.add(t.coords[idx[s]], val[s]);
    return t;
}

// 1 (x) 1 (x) ... (x) 1.
inline TensorElement tensor_unit(AlgebraRef alg, u32 arity) {
    std::vector<Vec> us(arity, alg->unit());
    return tensor_outer(std::move(alg), us);
}

inline TensorElement tensor_add(const TensorElement& a, const TensorElement& b) {
    detail::check_same_space(a, b, "tensor_add");
    TensorElement out = a;
    vec_add_inplace(a.field(), out.coords, b.coords);
    return out;
}

inline TensorElement tensor_sub(const TensorElement& a, const TensorElement& b) {
    detail::check_same_space(a, b, "tensor_sub");
    TensorElement out = a;
    vec_sub_inplace(a.field(), out.coords, b.coords);
    return out;
}

inline TensorElement tensor_scale(const TensorElement& a, u32 c) {
    TensorElement out = a;
    vec_scale_inplace(a.field(), out.coords, c);
    return out;
}

inline TensorElement tensor_neg(const TensorElement& a) {
    return tensor_scale(a, a.field().neg(1));
}

inline bool tensor_equal(const TensorElement& a, const TensorElement& b) {
    return a.alg.get() == b.alg.get() && a.arity == b.arity && a.coords == b.coords;
}

// Componentwise product in A^{(x)m}.
inline TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b) {
    detail::check_same_space(a, b, "tensor_multiply");
    const Algebra& A = *a.alg;
    const Fp& F = A.field();
    std::size_t dim = A.dim();
    u32 m = a.arity;
    TensorElement out = tensor_zero(a.alg, m);

    auto anz = detail::nonzeros(a);
    auto bnz = detail::nonzeros(b);
    // frontier of partially assembled result indices while expanding slot products
    std::vector<std::pair<u64, u32>> frontier, next;
    for (const auto& xa : anz)
        for (const auto& xb : bnz) {
            u32 c = F.mul(xa.coeff, xb.coeff);
            frontier.clear();
            frontier.push_back({0, c});
            for (u32 k = 0; k < m && !frontier.empty(); ++k) {
                const SparseVec& prod = A.product(xa.digits[k], xb.digits[k]);
                next.clear();
                for (const auto& [pf, pv] : frontier)
                    for (const auto& t : prod) next.push_back({pf * dim + t.index, F.mul(pv, t.coeff)});
                frontier.swap(next);
            }
            for (const auto& [f, v] : frontier) out.coords[f] = F.add(out.coords[f], v);
        }
    return out;
}

inline TensorElement tensor_pow(const TensorElement& a, u32 e) {
    TensorElement acc = tensor_unit(a.alg, a.arity);
    for (u32 i = 0; i < e; ++i) acc = tensor_multiply(acc, a);
    return acc;
}

// Scalar value of epsilon^{(x)m}; nonzero is necessary for invertibility.
inline u32 tensor_counit_scalar(const TensorElement& t) {
    const Algebra& A = *t.alg;
    const Fp& F = A.field();
    u64 acc = 0;
    for (const auto& nz : detail::nonzeros(t)) {
        u32 c = nz.coeff;
        for (u32 k = 0; k < t.arity; ++k) c = F.mul(c, A.counit()[nz.digits[k]]);
        acc += c;
    }
    return F.reduce(acc);
}

// a^{-1} in A^{(x)m}. Tries the geometric series for unit-plus-nilpotent
// elements, then falls back to solving against the left-multiplication matrix.
inline TensorElement tensor_invert(const TensorElement& a) {
    const Fp& F = a.field();
    u32 s = tensor_counit_scalar(a);
    if (s == 0) throw not_invertible("tensor element is singular (counit character vanishes)");

    TensorElement one = tensor_unit(a.alg, a.arity);
    TensorElement n = tensor_sub(tensor_scale(a, F.inv(s)), one);
    if (n.is_zero()) return tensor_scale(one, F.inv(s));

    u64 cap = detail::tensor_size(a.alg->dim(), a.arity) + 1;
    TensorElement inv = one;
    TensorElement term = one;
    bool nilpotent = false;
    for (u64 i = 0; i < cap; ++i) {
        term = tensor_multiply(term, n);
        if (term.is_zero()) {
            nilpotent = true;
            break;
        }
        if (i % 2 == 0)
            inv = tensor_sub(inv, term);
        else
            inv = tensor_add(inv, term);
    }
    if (nilpotent) return tensor_scale(inv, F.inv(s));

    // general case: solve L_a x = 1
    std::size_t d = a.coords.size();
    Matrix lm(F, d, d);
    for (u64 j = 0; j < d; ++j) {
        TensorElement ej{a.alg, a.arity, Vec(d, 0)};
        ej.coords[j] = 1;
        Vec col = tensor_multiply(a, ej).coords;
        for (u64 r = 0; r < d; ++r) lm.at(r, j) = col[r];
    }
    auto x = solve_linear(lm, one.coords);
    if (!x) throw not_invertible("tensor element is singular");
    TensorElement out{a.alg, a.arity, *x};
    if (!tensor_equal(tensor_multiply(out, a), one) || !tensor_equal(tensor_multiply(a, out), one))
        throw not_invertible("tensor element has no two-sided inverse");
    return out;
}

// Inserts the unit into position pos (0-based, 0 <= pos <= arity).
inline TensorElement insert_unit(const TensorElement& t, u32 pos) {
    if (pos > t.arity) throw input_error("insert_unit: position out of range");
    detail::check_arity_cap(t.arity + 1);
    const Algebra& A = *t.alg;
    const Fp& F = A.field();
    std::size_t dim = A.dim();
    TensorElement out = tensor_zero(t.alg, t.arity + 1);
    for (const auto& nz : detail::nonzeros(t)) {
        for (std::size_t u = 0; u < dim; ++u) {
            if (!A.unit()[u]) continue;
            std::array<u32, kMaxArity> dig{};
            for (u32 k = 0; k < pos; ++k) dig[k] = nz.digits[k];
            dig[pos] = static_cast<u32>(u);
            for (u32 k = pos; k < t.arity; ++k) dig[k + 1] = nz.digits[k];
            u64 f = detail::flat_of(dig, dim, t.arity + 1);
            out.coords[f] = F.add(out.coords[f], F.mul(nz.coeff, A.unit()[u]));
        }
    }
    return out;
}

// Applies the counit to one slot, lowering the arity by one.
inline TensorElement counit_contract(const TensorElement& t, u32 slot) {
    if (slot >= t.arity) throw input_error("counit_contract: slot out of range");
    if (t.arity == 1) throw unsupported("cannot contract an arity-1 tensor to arity 0");
    const Algebra& A = *t.alg;
    const Fp& F = A.field();
    std::size_t dim = A.dim();
    TensorElement out = tensor_zero(t.alg, t.arity - 1);
    for (const auto& nz : detail::nonzeros(t)) {
        u32 e = A.counit()[nz.digits[slot]];
        if (!e) continue;
        std::array<u32, kMaxArity> dig{};
        u32 w = 0;
        for (u32 k = 0; k < t.arity; ++k)
            if (k != slot) dig[w++] = nz.digits[k];
        u64 f = detail::flat_of(dig, dim, t.arity - 1);
        out.coords[f] = F.add(out.coords[f], F.mul(nz.coeff, e));
    }
    return out;
}

// Applies a comultiplication table (basis index -> coords in A^{(x)2}) to one
// slot, raising the arity by one.
inline TensorElement comul_at(const TensorElement& t, u32 slot, const std::vector<Vec>& delta) {
    if (slot >= t.arity) throw input_error("comul_at: slot out of range");
    detail::check_arity_cap(t.arity + 1);
    const Algebra& A = *t.alg;
    const Fp& F = A.field();
    std::size_t dim = A.dim();
    TensorElement out = tensor_zero(t.alg, t.arity + 1);
    for (const auto& nz : detail::nonzeros(t)) {
        const Vec& dv = delta[nz.digits[slot]];
        for (std::size_t ij = 0; ij < dv.size(); ++ij) {
            if (!dv[ij]) continue;
            u32 i = static_cast<u32>(ij / dim), j = static_cast<u32>(ij % dim);
            std::array<u32, kMaxArity> dig{};
            for (u32 k = 0; k < slot; ++k) dig[k] = nz.digits[k];
            dig[slot] = i;
            dig[slot + 1] = j;
            for (u32 k = slot + 1; k < t.arity; ++k) dig[k + 1] = nz.digits[k];
            u64 f = detail::flat_of(dig, dim, t.arity + 1);
            out.coords[f] = F.add(out.coords[f], F.mul(nz.coeff, dv[ij]));
        }
    }
    return out;
}

// Subscript convention: perm[k] (1-based) is the position receiving the
// original slot-(k+1) factor, so t_{312} maps x(x)y(x)z to y(x)z(x)x.
inline TensorElement permute_slots(const TensorElement& t, const std::vector<u32>& perm) {
    if (perm.size() != t.arity) throw input_error("permute_slots: permutation size must equal arity");
    std::vector<bool> seen(t.arity, false);
    for (u32 v : perm) {
        if (v < 1 || v > t.arity || seen[v - 1]) throw input_error("permute_slots: not a permutation");
        seen[v - 1] = true;
    }
    const Fp& F = t.field();
    std::size_t dim = t.alg->dim();
    TensorElement out = tensor_zero(t.alg, t.arity);
    for (const auto& nz : detail::nonzeros(t)) {
        std::array<u32, kMaxArity> dig{};
        for (u32 k = 0; k < t.arity; ++k) dig[perm[k] - 1] = nz.digits[k];
        u64 f = detail::flat_of(dig, dim, t.arity);
        out.coords[f] = F.add(out.coords[f], nz.coeff);
    }
    return out;
}

// Places tensorand k at position slots[k] (1-based) inside a larger tensor
// power, filling the remaining slots with the unit: embed(R, 3, {1,3}) = R_13.
inline TensorElement tensor_embed(const TensorElement& t, u32 target_arity,
                                  const std::vector<u32>& slots) {
    if (slots.size() != t.arity) throw input_error("tensor_embed: need one slot per tensorand");
    detail::check_arity_cap(target_arity);
    std::vector<bool> used(target_arity, false);
    for (u32 s : slots) {
        if (s < 1 || s > target_arity || used[s - 1]) throw input_error("tensor_embed: bad slot list");
        used[s - 1] = true;
    }
    TensorElement out = t;
    for (u32 pos = 0; pos < target_arity; ++pos)
        if (!used[pos]) out = insert_unit(out, pos);
    // after unit insertion the original factors sit in order at the used slots;
    // reorder them if the slot list is not increasing
    std::vector<u32> usedpos;
    for (u32 pos = 0; pos < target_arity; ++pos)
        if (used[pos]) usedpos.push_back(pos + 1);
    bool increasing = true;
    for (u32 k = 0; k < t.arity; ++k)
        if (slots[k] != usedpos[k]) increasing = false;
    if (!increasing) {
        std::vector<u32> perm(target_arity);
        std::vector<u32> freepos;
        for (u32 pos = 1; pos <= target_arity; ++pos)
            if (!used[pos - 1]) freepos.push_back(pos);
        // factor currently at usedpos[k] must travel to slots[k]; units stay put
        std::size_t fi = 0;
        for (u32 pos = 1; pos <= target_arity; ++pos) {
            if (used[pos - 1]) {
                u32 k = 0;
                while (usedpos[k] != pos) ++k;
                perm[pos - 1] = slots[k];
            } else {
                perm[pos - 1] = freepos[fi++];
            }
        }
        out = permute_slots(out, perm);
    }
    return out;
}

// Applies a dim x dim matrix to every slot (the m-th Kronecker power acting
// on coordinates).
inline TensorElement apply_slotwise(const TensorElement& t, const Matrix& m) {
    if (m.rows() != t.alg->dim() || m.cols() != t.alg->dim())
        throw input_error("apply_slotwise: matrix shape must match algebra dimension");
    const Fp& F = t.field();
    std::size_t dim = t.alg->dim();
    TensorElement out = t;
    // contract one slot at a time
    for (u32 slot = 0; slot < t.arity; ++slot) {
        TensorElement next = tensor_zero(t.alg, t.arity);
        for (const auto& nz : detail::nonzeros(out)) {
            for (std::size_t r = 0; r < dim; ++r) {
                u32 c = m.at(r, nz.digits[slot]);
                if (!c) continue;
                auto dig = nz.digits;
                dig[slot] = static_cast<u32>(r);
                u64 f = detail::flat_of(dig, dim, t.arity);
                next.coords[f] = F.add(next.coords[f], F.mul(nz.coeff, c));
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace qhopf
