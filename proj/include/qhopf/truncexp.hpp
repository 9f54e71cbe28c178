#pragma once

// Truncated exponential E and logarithm L between (I^{(x)n}, +) and
// (1 + I^{(x)n}, *) for commutative augmented algebras with x^p = 0 on the
// augmentation ideal. E is defined on basis decomposables by the p-truncated
// series and extended multiplicatively; applying the series to a sum would be
// wrong, so the implementation never does.

#include <memory>

#include "qhopf/tensor.hpp"

namespace qhopf {

struct NilWitness {
    AlgebraRef alg;
    bool certified = false;
    std::string refusal; // first failing basis element when not certified
};

// Checks e^p = 0 for every I-basis element; commutativity makes the basis
// check sufficient ((x+y)^p = x^p + y^p).
inline NilWitness certify_nilpotent(const AlgebraRef& alg) {
    if (!alg->commutative()) throw unsupported("certify_nilpotent requires a commutative algebra");
    AugmentedSplit split(alg);
    NilWitness w{alg, true, ""};
    for (std::size_t i = 0; i < split.idim(); ++i) {
        Vec pw = alg->element_pow(split.ibasis()[i], alg->p());
        if (!vec_is_zero(pw)) {
            w.certified = false;
            w.refusal = "p-th power of I-basis element " + std::to_string(i) + " is nonzero";
            break;
        }
    }
    return w;
}

// Shared context for the E/L family over one algebra.
class ExpContext {
public:
    explicit ExpContext(AlgebraRef alg) : split_(std::move(alg)) {
        witness_ = certify_nilpotent(split_.algebra());
    }

    const AugmentedSplit& split() const { return split_; }
    const NilWitness& witness() const { return witness_; }
    const AlgebraRef& algebra() const { return split_.algebra(); }

    void require_witness() const {
        if (!witness_.certified)
            throw unsupported("truncated exponential needs x^p = 0 on I: " + witness_.refusal);
    }

private:
    AugmentedSplit split_;
    NilWitness witness_;
};

namespace detail {

// Coordinates w.r.t. the adapted basis {1, f_1, ..., f_m} applied slotwise.
inline TensorElement to_adapted(const TensorElement& t, const AugmentedSplit& split) {
    return apply_slotwise(t, split.Pinv());
}

inline TensorElement from_adapted(const TensorElement& t, const AugmentedSplit& split) {
    return apply_slotwise(t, split.P());
}

// True when every nonzero coordinate avoids the unit digit in every slot.
inline bool adapted_supported_on_I(const TensorElement& adapted) {
    std::size_t dim = adapted.alg->dim();
    for (const auto& nz : nonzeros(adapted))
        for (u32 k = 0; k < adapted.arity; ++k)
            if (nz.digits[k] == 0) return false;
    return true;
}

// E on one decomposable c * f_{a1} (x) ... (x) f_{an}.
inline TensorElement exp_decomposable(const ExpContext& ctx, u32 arity,
                                      const std::array<u32, kMaxArity>& idx, u32 c) {
    const AlgebraRef& A = ctx.algebra();
    const Fp& F = A->field();
    std::vector<Vec> factors;
    for (u32 k = 0; k < arity; ++k) factors.push_back(ctx.split().ibasis()[idx[k]]);
    TensorElement base = tensor_outer(A, factors);
    TensorElement acc = tensor_unit(A, arity);
    TensorElement power = tensor_unit(A, arity);
    u32 cj = 1;
    for (u32 j = 1; j < F.p(); ++j) {
        power = tensor_multiply(power, base);
        cj = F.mul(cj, c);
        if (power.is_zero()) break;
        u32 coeff = F.mul(cj, F.inv(F.factorial(j)));
        acc = tensor_add(acc, tensor_scale(power, coeff));
    }
    return acc;
}

} // namespace detail

// E(t) for t supported on I^{(x)n}, n >= 2.
inline TensorElement trunc_exp(const ExpContext& ctx, const TensorElement& t) {
    if (t.alg.get() != ctx.algebra().get()) throw input_error("trunc_exp: algebra mismatch");
    if (t.arity < 2) throw unsupported("trunc_exp is undefined for arity 1");
    ctx.require_witness();
    TensorElement adapted = detail::to_adapted(t, ctx.split());
    if (!detail::adapted_supported_on_I(adapted))
        throw input_error("trunc_exp: argument is not supported on I^{(x)n}");
    TensorElement result = tensor_unit(ctx.algebra(), t.arity);
    for (const auto& nz : detail::nonzeros(adapted)) {
        std::array<u32, kMaxArity> idx{};
        for (u32 k = 0; k < t.arity; ++k) idx[k] = nz.digits[k] - 1;
        result = tensor_multiply(result, detail::exp_decomposable(ctx, t.arity, idx, nz.coeff));
    }
    return result;
}

// L(s) for s in 1 + I^{(x)n}: the unique t with E(t) = s, found by filtration
// refinement (the closed series only applies to images of decomposables).
inline TensorElement trunc_log(const ExpContext& ctx, const TensorElement& s) {
    if (s.alg.get() != ctx.algebra().get()) throw input_error("trunc_log: algebra mismatch");
    if (s.arity < 2) throw unsupported("trunc_log is undefined for arity 1");
    ctx.require_witness();
    if (!ctx.split().has_degrees()) throw unsupported("trunc_log needs the radical filtration");

    TensorElement unit = tensor_unit(ctx.algebra(), s.arity);
    {
        TensorElement body = detail::to_adapted(tensor_sub(s, unit), ctx.split());
        if (!detail::adapted_supported_on_I(body))
            throw input_error("trunc_log: argument is not in 1 + I^{(x)n}");
    }

    TensorElement t = tensor_zero(ctx.algebra(), s.arity);
    std::size_t max_rounds = s.arity * ctx.split().nil_index() + 2;
    std::size_t last_degree = 0;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        TensorElement r = tensor_sub(tensor_multiply(s, trunc_exp(ctx, tensor_neg(t))), unit);
        if (r.is_zero()) return t;
        TensorElement radapt = detail::to_adapted(r, ctx.split());
        if (!detail::adapted_supported_on_I(radapt))
            throw internal_error("trunc_log residual escaped I^{(x)n}");
        std::size_t best = static_cast<std::size_t>(-1);
        for (const auto& nz : detail::nonzeros(radapt)) {
            std::size_t deg = 0;
            for (u32 k = 0; k < r.arity; ++k) deg += ctx.split().idegree(nz.digits[k] - 1);
            best = std::min(best, deg);
        }
        if (best <= last_degree && round > 0)
            throw internal_error("trunc_log failed to make progress");
        last_degree = best;
        // lowest-degree part of the residual, back in stored coordinates
        TensorElement low = tensor_zero(ctx.algebra(), s.arity);
        for (const auto& nz : detail::nonzeros(radapt)) {
            std::size_t deg = 0;
            for (u32 k = 0; k < r.arity; ++k) deg += ctx.split().idegree(nz.digits[k] - 1);
            if (deg == best) low.coords[nz.flat] = nz.coeff;
        }
        t = tensor_add(t, detail::from_adapted(low, ctx.split()));
    }
    throw internal_error("trunc_log did not converge");
}

// Prop 5.1(3): E extended to A_1 + ... + A_n, n >= 3, where A_i allows an
// arbitrary entry (unit component included) in slot i only.
inline TensorElement trunc_exp_extended(const ExpContext& ctx, const TensorElement& t) {
    if (t.arity < 3) throw unsupported("extended exponential needs arity >= 3");
    ctx.require_witness();
    TensorElement adapted = detail::to_adapted(t, ctx.split());

    // split by location of the unit digit; more than one unit digit is outside
    // A_1 + ... + A_n
    TensorElement all_i = tensor_zero(ctx.algebra(), t.arity);
    std::vector<TensorElement> with_unit_at;
    for (u32 k = 0; k < t.arity; ++k) with_unit_at.push_back(tensor_zero(ctx.algebra(), t.arity - 1));
    std::size_t dim = ctx.algebra()->dim();
    for (const auto& nz : detail::nonzeros(adapted)) {
        u32 units = 0, where = 0;
        for (u32 k = 0; k < t.arity; ++k)
            if (nz.digits[k] == 0) {
                ++units;
                where = k;
            }
        if (units == 0) {
            all_i.coords[nz.flat] = nz.coeff;
        } else if (units == 1) {
            std::array<u32, kMaxArity> dig{};
            u32 w = 0;
            for (u32 k = 0; k < t.arity; ++k)
                if (k != where) dig[w++] = nz.digits[k];
            u64 f = detail::flat_of(dig, dim, t.arity - 1);
            with_unit_at[where].coords[f] = nz.coeff;
        } else {
            throw input_error("trunc_exp_extended: argument is not in A_1 + ... + A_n");
        }
    }

    TensorElement result = trunc_exp(ctx, detail::from_adapted(all_i, ctx.split()));
    for (u32 k = 0; k < t.arity; ++k) {
        if (with_unit_at[k].is_zero()) continue;
        TensorElement part = trunc_exp(ctx, detail::from_adapted(with_unit_at[k], ctx.split()));
        result = tensor_multiply(result, insert_unit(part, k));
    }
    return result;
}

// Elementwise truncated series sum_{j<p} h^j / j! on a single algebra element.
// This is a plain map, not a homomorphism; Remark 5.2 territory.
inline Vec series_exp_element(const AlgebraRef& alg, const Vec& h) {
    const Fp& F = alg->field();
    Vec acc = alg->unit();
    Vec power = alg->unit();
    for (u32 j = 1; j < F.p(); ++j) {
        power = alg->mul(power, h);
        if (vec_is_zero(power)) break;
        vec_axpy(F, acc, F.inv(F.factorial(j)), power);
    }
    return acc;
}

} // namespace qhopf
