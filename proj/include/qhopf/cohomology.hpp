#pragma once

// Additive (normalized bar) and multiplicative (Sweedler-style) cohomology.
//
// Additive cochains over an augmented algebra R are functionals on I^{(x)n},
// stored against the dual of a fixed I-basis; the differential is the
// normalized bar formula. The multiplicative side works with invertible
// normalized tensors over a commutative cocommutative Hopf base B; its
// additive shadow is the coface sum f |-> sum_i (-1)^i d_i(f), which is the
// transpose of the bar differential of B^* under the evaluation pairing.

#include <algorithm>
#include <set>

#include "qhopf/catalog.hpp"
#include "qhopf/quasi.hpp"
#include "qhopf/truncexp.hpp"

namespace qhopf {

using SplitRef = std::shared_ptr<const AugmentedSplit>;

struct AdditiveCochain {
    SplitRef split; // augmented algebra R with its I-basis
    u32 degree = 1;
    Vec coords; // length idim^degree, slot 1 most significant
};

namespace detail {

inline u64 pow_sz(std::size_t base, u32 e) {
    u64 s = 1;
    for (u32 k = 0; k < e; ++k) s *= base;
    return s;
}

inline void decode(u64 flat, std::size_t m, u32 n, u32* out) {
    for (u32 k = n; k-- > 0;) {
        out[k] = static_cast<u32>(flat % m);
        flat /= m;
    }
}

} // namespace detail

inline AdditiveCochain make_additive_cochain(SplitRef split, u32 degree, Vec coords) {
    if (degree < 1) throw input_error("cochain degree must be >= 1");
    if (coords.size() != detail::pow_sz(split->idim(), degree))
        throw input_error("cochain coordinate length mismatch");
    return AdditiveCochain{std::move(split), degree, std::move(coords)};
}

// Normalized bar differential
//   (df)(a_1..a_{n+1}) = eps(a_1) f(a_2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..)
//                        + (-1)^{n+1} f(..) eps(a_{n+1});
// on I-restricted arguments the eps terms vanish.
inline AdditiveCochain additive_differential(const AdditiveCochain& c) {
    const AugmentedSplit& sp = *c.split;
    const Fp& F = sp.algebra()->field();
    std::size_t m = sp.idim();
    u32 n = c.degree;
    Vec out(detail::pow_sz(m, n + 1), 0);
    std::vector<u32> beta(n + 1);
    for (u64 row = 0; row < out.size(); ++row) {
        detail::decode(row, m, n + 1, beta.data());
        u64 acc = 0;
        for (u32 i = 1; i <= n; ++i) {
            // merge slots i, i+1 (1-based) through the product, sign (-1)^i
            for (const auto& t : sp.iproduct(beta[i - 1], beta[i])) {
                u64 alpha = 0;
                for (u32 k = 0; k + 1 < i; ++k) alpha = alpha * m + beta[k];
                alpha = alpha * m + t.index;
                for (u32 k = i + 1; k <= n; ++k) alpha = alpha * m + beta[k];
                u32 v = F.mul(t.coeff, c.coords[alpha]);
                acc += (i % 2 == 1) ? F.neg(v) : v;
            }
        }
        out[row] = F.reduce(acc);
    }
    return AdditiveCochain{c.split, n + 1, std::move(out)};
}

namespace detail {

// For each I-basis target k, the pairs (u, v) with coefficient of f_k in
// f_u f_v; splitting one cochain slot runs over these.
inline std::vector<std::vector<std::array<u32, 3>>> product_preimages(const AugmentedSplit& sp) {
    std::size_t m = sp.idim();
    std::vector<std::vector<std::array<u32, 3>>> by_target(m);
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
            for (const auto& t : sp.iproduct(u, v))
                by_target[t.index].push_back({static_cast<u32>(u), static_cast<u32>(v), t.coeff});
    return by_target;
}

// Column col of the bar matrix C^n -> C^{n+1} as (row, value) pairs.
inline void bar_column(const AugmentedSplit& sp,
                       const std::vector<std::vector<std::array<u32, 3>>>& pre, u32 n, u64 col,
                       std::vector<std::pair<u64, u32>>& out) {
    const Fp& F = sp.algebra()->field();
    std::size_t m = sp.idim();
    out.clear();
    std::vector<u32> alpha(n);
    decode(col, m, n, alpha.data());
    for (u32 i = 1; i <= n; ++i) {
        for (const auto& [u, v, c] : pre[alpha[i - 1]]) {
            u64 row = 0;
            for (u32 k = 0; k + 1 < i; ++k) row = row * m + alpha[k];
            row = row * m + u;
            row = row * m + v;
            for (u32 k = i; k < n; ++k) row = row * m + alpha[k];
            out.push_back({row, (i % 2 == 1) ? F.neg(c) : c});
        }
    }
}

inline Matrix bar_matrix_dense(const AugmentedSplit& sp, u32 n) {
    std::size_t m = sp.idim();
    u64 rows = pow_sz(m, n + 1), cols = pow_sz(m, n);
    Matrix d(sp.algebra()->field(), rows, cols);
    auto pre = product_preimages(sp);
    std::vector<std::pair<u64, u32>> column;
    for (u64 c = 0; c < cols; ++c) {
        bar_column(sp, pre, n, c, column);
        for (const auto& [r, v] : column) d.at(r, c) = d.field().add(d.at(r, c), v);
    }
    return d;
}

inline SparseMatrix bar_matrix_sparse(const AugmentedSplit& sp, u32 n) {
    std::size_t m = sp.idim();
    u64 rows = pow_sz(m, n + 1), cols = pow_sz(m, n);
    SparseMatrix d(sp.algebra()->p(), rows, cols);
    auto pre = product_preimages(sp);
    std::vector<std::pair<u64, u32>> column;
    for (u64 c = 0; c < cols; ++c) {
        bar_column(sp, pre, n, c, column);
        for (const auto& [r, v] : column) d.add_entry(r, c, v);
    }
    d.normalize();
    return d;
}

} // namespace detail

struct CohomologyBudget {
    u64 dense_limit = 20000;   // largest cochain space handled densely
    u64 refuse_limit = 1000000; // hard cap on any involved cochain space
};

struct CohomologyReport {
    u32 degree = 0;
    u64 dim_cocycles = 0;
    u64 dim_coboundaries = 0;
    u64 dim_h = 0;
    bool sparse_mode = false; // representatives are only extracted densely
    std::vector<AdditiveCochain> representatives;
};

inline CohomologyReport additive_cohomology(SplitRef split, u32 n,
                                            const CohomologyBudget& budget = {}) {
    if (n < 1) throw input_error("additive_cohomology: degree must be >= 1");
    const AugmentedSplit& sp = *split;
    std::size_t m = sp.idim();
    u64 sn = detail::pow_sz(m, n), snext = detail::pow_sz(m, n + 1);
    u64 sprev = n >= 2 ? detail::pow_sz(m, n - 1) : 0;
    if (std::max(sn, snext) > budget.refuse_limit)
        throw resource_limit("cochain space exceeds the configured budget");

    CohomologyReport rep;
    rep.degree = n;
    rep.sparse_mode = std::max(sn, snext) > budget.dense_limit;

    if (rep.sparse_mode) {
        u64 rank_dn = detail::bar_matrix_sparse(sp, n).rank();
        u64 rank_dprev = n >= 2 ? detail::bar_matrix_sparse(sp, n - 1).rank() : 0;
        rep.dim_cocycles = sn - rank_dn;
        rep.dim_coboundaries = rank_dprev;
        rep.dim_h = rep.dim_cocycles - rep.dim_coboundaries;
        return rep;
    }

    Matrix dn = detail::bar_matrix_dense(sp, n);
    std::vector<Vec> kern = kernel_basis(dn);
    rep.dim_cocycles = kern.size();

    Echelon image(sp.algebra()->field(), sn);
    if (n >= 2) {
        Matrix dprev = detail::bar_matrix_dense(sp, n - 1);
        for (u64 c = 0; c < sprev; ++c) {
            Vec col(sn, 0);
            for (u64 r = 0; r < sn; ++r) col[r] = dprev.at(r, c);
            image.insert(std::move(col));
        }
    }
    rep.dim_coboundaries = image.rank();
    rep.dim_h = rep.dim_cocycles - rep.dim_coboundaries;

    Echelon reps_seen = image;
    for (const auto& z : kern) {
        Vec reduced = image.reduce(z);
        if (vec_is_zero(reduced)) continue;
        if (reps_seen.insert(reduced))
            rep.representatives.push_back(AdditiveCochain{split, n, image.reduce(z)});
        if (rep.representatives.size() == rep.dim_h) break;
    }
    return rep;
}

inline CohomologyReport additive_cohomology(const AlgebraRef& r, u32 n,
                                            const CohomologyBudget& budget = {}) {
    return additive_cohomology(std::make_shared<AugmentedSplit>(r), n, budget);
}

// ---------------------------------------------------------------------------
// Pairing between tensors over a Hopf base B and cochains over R = B^*.

// Evaluates a tensor over B against the adapted I-basis of a split of R,
// where R's stored basis is dual to B's (as produced by dual_hopf).
inline AdditiveCochain tensor_to_cochain(const TensorElement& t, SplitRef split_r) {
    const AugmentedSplit& sp = *split_r;
    if (t.alg->dim() != sp.algebra()->dim() || t.alg->p() != sp.algebra()->p())
        throw input_error("tensor_to_cochain: dimension mismatch with the dual side");
    Matrix eval = sp.P().transposed();
    TensorElement adapted{t.alg, t.arity, apply_slotwise(t, eval).coords};
    std::size_t m = sp.idim();
    Vec out(detail::pow_sz(m, t.arity), 0);
    for (const auto& nz : detail::nonzeros(adapted)) {
        u64 idx = 0;
        for (u32 k = 0; k < t.arity; ++k) {
            if (nz.digits[k] == 0)
                throw input_error("tensor_to_cochain: tensor is not normalized (unit component)");
            idx = idx * m + (nz.digits[k] - 1);
        }
        out[idx] = nz.coeff;
    }
    return AdditiveCochain{std::move(split_r), t.arity, std::move(out)};
}

// Inverse of tensor_to_cochain: realizes a cochain over R as the tensor over
// B supported on I_B^{(x)n}.
inline TensorElement cochain_to_tensor(const AdditiveCochain& c, const AlgebraRef& b_alg) {
    const AugmentedSplit& sp = *c.split;
    std::size_t d = b_alg->dim(), m = sp.idim();
    if (d != sp.algebra()->dim()) throw input_error("cochain_to_tensor: dimension mismatch");
    TensorElement padded = tensor_zero(b_alg, c.degree);
    std::vector<u32> alpha(c.degree);
    for (u64 i = 0; i < c.coords.size(); ++i) {
        if (!c.coords[i]) continue;
        detail::decode(i, m, c.degree, alpha.data());
        u64 flat = 0;
        for (u32 k = 0; k < c.degree; ++k) flat = flat * d + (alpha[k] + 1);
        padded.coords[flat] = c.coords[i];
    }
    Matrix back = inverse(sp.P().transposed());
    return apply_slotwise(padded, back);
}

// xi(f) = sum_{i=1}^{p-1} (1/i) binom(p-1, i-1) f^i (x) f^{p-i}, a 2-cocycle
// for the augmented algebra dual to b.
inline AdditiveCochain xi_map(const HopfStructure& b, const Vec& f) {
    const auto& A = b.algebra();
    const Fp& F = A->field();
    {
        TensorElement ft{A, 1, f};
        Vec lhs = b.comul(f);
        Vec rhs = tensor_add(insert_unit(ft, 1), insert_unit(ft, 0)).coords;
        if (lhs != rhs) throw input_error("xi_map: f is not primitive");
    }
    u32 p = F.p();
    TensorElement xi = tensor_zero(A, 2);
    Vec fi = f;
    for (u32 i = 1; i <= p - 1; ++i) {
        Vec fpi = A->element_pow(f, p - i);
        u32 c = F.mul(F.inv(i), F.binom_lucas(p - 1, i - 1));
        if (c && !vec_is_zero(fi) && !vec_is_zero(fpi))
            xi = tensor_add(xi, tensor_scale(tensor_outer(A, {fi, fpi}), c));
        fi = A->mul(fi, f);
    }
    HopfRef dual = dual_hopf(b);
    auto split = std::make_shared<AugmentedSplit>(dual->algebra());
    return tensor_to_cochain(xi, std::move(split));
}

// Cor 2.6 basis of H^3(O(prod alpha_{p,r_i}), k): the gamma_{ij} = x_i* (x) beta_j
// together with the wedge triples x_i* (x) x_j* (x) x_l*, i < j < l.
struct CanonicalH3 {
    HopfRef base;  // O(prod G) carrying the cochains
    SplitRef split;
    std::vector<AdditiveCochain> elements;
};

inline CanonicalH3 canonical_h3_basis(u32 p, const std::vector<u32>& rs) {
    CanonicalH3 out;
    out.base = make_alpha_product(p, rs);
    const AlgebraRef& R = out.base->algebra();
    out.split = std::make_shared<AugmentedSplit>(R);
    std::size_t n = rs.size();
    std::size_t m = out.split->idim();

    // stored basis of R: lexicographic monomials x^a; the unit is e_0, so the
    // I-basis is the non-unit monomials in stored order and cochain index
    // (stored index - 1) addresses the dual of a monomial
    std::vector<u64> Ns(n), stride(n);
    for (std::size_t i = 0; i < n; ++i) {
        Ns[i] = 1;
        for (u32 k = 0; k < rs[i]; ++k) Ns[i] *= p;
    }
    stride[n - 1] = 1;
    for (std::size_t i = n - 1; i-- > 0;) stride[i] = stride[i + 1] * Ns[i + 1];

    auto var_index = [&](std::size_t i) { return stride[i]; }; // monomial x_i
    auto ipos = [&](u64 stored) {
        if (stored == 0) throw internal_error("unit monomial has no I-position");
        return stored - 1;
    };

    const Fp& F = R->field();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // gamma_{ij} = x_i* (x) beta_j, beta_j = sum_l x_j^{l*} (x) x_j^{(N_j - l)*}
            Vec coords(detail::pow_sz(m, 3), 0);
            for (u64 l = 1; l < Ns[j]; ++l) {
                u64 a = ipos(var_index(i));
                u64 b = ipos(l * stride[j]);
                u64 c = ipos((Ns[j] - l) * stride[j]);
                coords[(a * m + b) * m + c] = 1;
            }
            out.elements.push_back(AdditiveCochain{out.split, 3, std::move(coords)});
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                Vec coords(detail::pow_sz(m, 3), 0);
                u64 a = ipos(var_index(i)), b = ipos(var_index(j)), c = ipos(var_index(l));
                coords[(a * m + b) * m + c] = 1;
                out.elements.push_back(AdditiveCochain{out.split, 3, std::move(coords)});
            }
    return out;
}

// ---------------------------------------------------------------------------
// Multiplicative side.

struct MultiplicativeCochain {
    HopfRef base;
    u32 degree;
    TensorElement value;
};

inline MultiplicativeCochain make_mult_cochain(HopfRef base, TensorElement value) {
    if (!base->algebra()->commutative() || !base->cocommutative())
        throw unsupported("multiplicative cochains need a commutative cocommutative base");
    if (value.alg.get() != base->algebra().get())
        throw input_error("multiplicative cochain value lives over the wrong algebra");
    u32 n = value.arity;
    if (n == 1) {
        if (base->algebra()->counit_of(value.coords) != 1)
            throw input_error("multiplicative 1-cochain must have counit 1");
    } else {
        TensorElement u = tensor_unit(base->algebra(), n - 1);
        for (u32 s = 0; s < n; ++s)
            if (!tensor_equal(counit_contract(value, s), u))
                throw input_error("multiplicative cochain is not normalized");
    }
    tensor_invert(value); // must be invertible
    return MultiplicativeCochain{std::move(base), n, std::move(value)};
}

// Degree 2: twist equation (2.12). Degree 3: pentagon with the base Delta.
inline bool is_multiplicative_cocycle(const MultiplicativeCochain& c) {
    if (c.degree == 2) return check_twist(*c.base, c.value).all_passed();
    if (c.degree == 3) return check_pentagon(QuasiData(c.base, c.value)).all_passed();
    throw unsupported("multiplicative cocycle test supports degrees 2 and 3 only");
}

// d(F) = prod_i coface_i(F)^{(-1)^i}: for degree 1, (F (x) F) Delta(F)^{-1};
// for degree 2 the pseudotwist (2.10) of the trivial associator by F^{-1}.
inline MultiplicativeCochain multiplicative_coboundary(const MultiplicativeCochain& c) {
    u32 k = c.degree;
    if (k < 1 || k > 3) throw unsupported("multiplicative coboundary supports degrees 1..3");
    const auto& delta = c.base->delta_table();
    TensorElement result = tensor_unit(c.base->algebra(), k + 1);
    for (u32 i = 0; i <= k + 1; ++i) {
        TensorElement face = (i == 0)       ? insert_unit(c.value, 0)
                             : (i == k + 1) ? insert_unit(c.value, k)
                                            : comul_at(c.value, i - 1, delta);
        if (i % 2 == 1) face = tensor_invert(face);
        result = tensor_multiply(result, face);
    }
    return make_mult_cochain(c.base, std::move(result));
}

// ---------------------------------------------------------------------------
// The additive shadow over the base itself (transpose complex): tensors in
// I_B^{(x)n} against the adapted I-basis of B.

class BaseComplex {
public:
    explicit BaseComplex(HopfRef base)
        : base_(std::move(base)), split_(std::make_shared<AugmentedSplit>(base_->algebra())) {}

    const HopfRef& base() const { return base_; }
    const SplitRef& split() const { return split_; }
    std::size_t idim() const { return split_->idim(); }

    // I-coordinates of a tensor supported on I_B^{(x)n}.
    Vec to_icoords(const TensorElement& t) const {
        TensorElement adapted = apply_slotwise(t, split_->Pinv());
        std::size_t m = idim();
        Vec out(detail::pow_sz(m, t.arity), 0);
        for (const auto& nz : detail::nonzeros(adapted)) {
            u64 idx = 0;
            for (u32 k = 0; k < t.arity; ++k) {
                if (nz.digits[k] == 0)
                    throw input_error("tensor is not supported on I^{(x)n}");
                idx = idx * m + (nz.digits[k] - 1);
            }
            out[idx] = nz.coeff;
        }
        return out;
    }

    TensorElement from_icoords(u32 arity, const Vec& coords) const {
        std::size_t m = idim(), d = base_->algebra()->dim();
        TensorElement padded = tensor_zero(base_->algebra(), arity);
        std::vector<u32> alpha(arity);
        for (u64 i = 0; i < coords.size(); ++i) {
            if (!coords[i]) continue;
            detail::decode(i, m, arity, alpha.data());
            u64 flat = 0;
            for (u32 k = 0; k < arity; ++k) flat = flat * d + (alpha[k] + 1);
            padded.coords[flat] = coords[i];
        }
        return apply_slotwise(padded, split_->P());
    }

    // Additive differential sum_i (-1)^i d_i with the outer unit cofaces; the
    // result lands back in I^{(x)(n+1)}.
    TensorElement differential(const TensorElement& f) const {
        const auto& delta = base_->delta_table();
        u32 n = f.arity;
        TensorElement acc = insert_unit(f, 0); // i = 0, sign +
        for (u32 i = 1; i <= n; ++i) {
            TensorElement face = comul_at(f, i - 1, delta);
            acc = (i % 2 == 1) ? tensor_sub(acc, face) : tensor_add(acc, face);
        }
        TensorElement last = insert_unit(f, n);
        acc = (n % 2 == 0) ? tensor_sub(acc, last) : tensor_add(acc, last);
        return acc;
    }

    // Dense matrix of the differential I^{(x)n} -> I^{(x)(n+1)} in I-coords.
    Matrix differential_matrix(u32 n, u64 size_cap = 16000000) const {
        std::size_t m = idim();
        u64 cols = detail::pow_sz(m, n), rows = detail::pow_sz(m, n + 1);
        if (rows * cols > size_cap)
            throw resource_limit("base-side differential matrix exceeds budget");
        Matrix d(base_->field(), rows, cols);
        std::vector<u32> alpha(n);
        for (u64 c = 0; c < cols; ++c) {
            detail::decode(c, m, n, alpha.data());
            std::vector<Vec> factors;
            for (u32 k = 0; k < n; ++k) factors.push_back(split_->ibasis()[alpha[k]]);
            TensorElement t = tensor_outer(base_->algebra(), factors);
            Vec icoords = to_icoords(differential(t));
            for (u64 r = 0; r < rows; ++r) d.at(r, c) = icoords[r];
        }
        return d;
    }

private:
    HopfRef base_;
    SplitRef split_;
};

struct CoboundaryResult {
    std::optional<TensorElement> witness; // F with d(F) = c
    Vec log_coords;                       // I-coordinates of L(c)
    Vec obstruction_class;                // reduction of log_coords mod coboundaries (empty on success)
};

// Thm 5.4(3) route: c is a coboundary iff L(c) is an additive coboundary;
// on success E maps the additive witness to a multiplicative one exactly.
inline CoboundaryResult is_multiplicative_coboundary(const MultiplicativeCochain& c) {
    u32 n = c.degree;
    if (n == 2) throw unsupported("degree 2 reduction is invalid (E(df) != d(E(f)) can occur)");
    if (n != 3) throw unsupported("is_multiplicative_coboundary handles degree 3 (arity cap)");
    ExpContext ctx(c.base->algebra());
    ctx.require_witness();

    BaseComplex bc(c.base);
    TensorElement phi = trunc_log(ctx, c.value);
    Vec rhs = bc.to_icoords(phi);

    Matrix d = bc.differential_matrix(n - 1);
    auto psi = solve_linear(d, rhs);
    CoboundaryResult out;
    out.log_coords = rhs;
    if (psi) {
        TensorElement f = bc.from_icoords(n - 1, *psi);
        TensorElement F = trunc_exp(ctx, f);
        MultiplicativeCochain witness = make_mult_cochain(c.base, F);
        if (!tensor_equal(multiplicative_coboundary(witness).value, c.value))
            throw internal_error("coboundary witness failed verification");
        out.witness = std::move(witness.value);
        return out;
    }
    Echelon image(c.base->field(), rhs.size());
    for (std::size_t col = 0; col < d.cols(); ++col) {
        Vec v(d.rows(), 0);
        for (std::size_t r = 0; r < d.rows(); ++r) v[r] = d.at(r, col);
        image.insert(std::move(v));
    }
    out.obstruction_class = image.reduce(rhs);
    if (vec_is_zero(out.obstruction_class))
        throw internal_error("obstruction reduced to zero although the solve failed");
    return out;
}

struct BruteH2Report {
    u64 candidates = 0;
    u64 invertible = 0;
    u64 cocycles = 0;
    u64 cocycles_with_witness = 0;
    bool all_trivial = false;
};

// Exhaustive desk-scale check that every normalized multiplicative 2-cocycle
// in 1 + I(x)I has a gauge witness in 1 + I.
inline BruteH2Report brute_force_h2_multiplicative(const HopfRef& b, u64 budget = 1u << 20) {
    if (!b->algebra()->commutative() || !b->cocommutative())
        throw unsupported("brute force H2 needs a commutative cocommutative base");
    const AlgebraRef& A = b->algebra();
    const Fp& F = A->field();
    AugmentedSplit split(A);
    std::size_t m = split.idim();

    u64 total = 1;
    for (std::size_t i = 0; i < m * m; ++i) {
        total *= F.p();
        if (total > budget) throw resource_limit("brute_force_h2: candidate space exceeds budget");
    }

    // gauge coboundaries d(g) = (g (x) g) Delta(g)^{-1} for g in 1 + I
    std::set<Vec> coboundaries;
    u64 gauge_total = 1;
    for (std::size_t i = 0; i < m; ++i) gauge_total *= F.p();
    for (u64 it = 0; it < gauge_total; ++it) {
        Vec g = A->unit();
        u64 x = it;
        for (std::size_t i = 0; i < m; ++i) {
            u32 digit = static_cast<u32>(x % F.p());
            x /= F.p();
            if (digit) vec_axpy(F, g, digit, split.ibasis()[i]);
        }
        try {
            MultiplicativeCochain gc = make_mult_cochain(b, TensorElement{A, 1, g});
            coboundaries.insert(multiplicative_coboundary(gc).value.coords);
        } catch (const not_invertible&) {
            continue;
        }
    }

    // pre-tabulate f_u (x) f_v
    std::vector<Vec> pair_tensors;
    pair_tensors.reserve(m * m);
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
            pair_tensors.push_back(tensor_outer(A, {split.ibasis()[u], split.ibasis()[v]}).coords);

    BruteH2Report rep;
    rep.candidates = total;
    TensorElement unit2 = tensor_unit(A, 2);
    for (u64 it = 0; it < total; ++it) {
        TensorElement J = unit2;
        u64 x = it;
        for (std::size_t i = 0; i < m * m; ++i) {
            u32 digit = static_cast<u32>(x % F.p());
            x /= F.p();
            if (digit) vec_axpy(F, J.coords, digit, pair_tensors[i]);
        }
        bool cocycle = false;
        try {
            cocycle = check_twist(*b, J).all_passed();
            ++rep.invertible;
        } catch (const not_invertible&) {
            continue;
        }
        if (!cocycle) continue;
        ++rep.cocycles;
        if (coboundaries.count(J.coords)) ++rep.cocycles_with_witness;
    }
    rep.all_trivial = rep.cocycles == rep.cocycles_with_witness;
    return rep;
}

struct TrivializeAssociatorResult {
    bool success = false;
    TensorElement pseudotwist; // accumulated F with transform(q, F).associator = 1
    u32 rounds = 0;
    std::size_t obstruction_degree = 0;
    Vec obstruction_coords; // lowest-degree part of Phi - 1, I-coordinates
    Vec obstruction_class;  // its reduction mod coboundaries (nonzero)
};

// Degree-by-degree trivialization for commutative cocommutative radically
// graded bases: peel the lowest radical-degree part of Phi - 1, check it is a
// cocycle, solve it as a coboundary, pseudotwist, repeat. Stops with the
// cohomology class when the solve fails.
inline TrivializeAssociatorResult trivialize_associator(const QuasiData& q) {
    const HopfRef& base = q.hopf;
    if (!base->algebra()->commutative() || !base->cocommutative())
        throw unsupported("trivialize_associator needs a commutative cocommutative base");
    if (q.r_matrix)
        throw unsupported("trivialize_associator does not preserve R-matrices (symmetrization not implemented)");
    if (!radical_grading(*base))
        throw unsupported("trivialize_associator needs a radically graded base");
    if (!check_counit_normalization(q).all_passed())
        throw input_error("trivialize_associator: associator is not counit-normalized");

    BaseComplex bc(base);
    const AugmentedSplit& sp = *bc.split();
    const Fp& F = base->field();
    std::size_t m = sp.idim();
    if (!sp.has_degrees()) throw internal_error("graded base lost its degrees");

    TrivializeAssociatorResult out;
    out.pseudotwist = tensor_unit(base->algebra(), 2);
    QuasiData cur = q;
    TensorElement unit3 = tensor_unit(base->algebra(), 3);

    std::size_t max_rounds = 3 * sp.nil_index() + 2;
    std::size_t last_degree = 0;
    std::vector<u32> alpha(3);
    while (out.rounds < max_rounds) {
        TensorElement body = tensor_sub(cur.associator, unit3);
        if (body.is_zero()) {
            out.success = true;
            // the accumulated pseudotwist must reproduce the trivialization
            if (!tensor_equal(pseudotwist_transform(q, out.pseudotwist).associator, unit3))
                throw internal_error("accumulated pseudotwist does not trivialize the associator");
            return out;
        }
        Vec icoords = bc.to_icoords(body);
        std::size_t lowest = static_cast<std::size_t>(-1);
        for (u64 i = 0; i < icoords.size(); ++i) {
            if (!icoords[i]) continue;
            detail::decode(i, m, 3, alpha.data());
            std::size_t deg = 0;
            for (u32 k = 0; k < 3; ++k) deg += sp.idegree(alpha[k]);
            lowest = std::min(lowest, deg);
        }
        if (out.rounds > 0 && lowest <= last_degree)
            throw internal_error("trivialization failed to raise the degree");
        last_degree = lowest;

        Vec phi(icoords.size(), 0);
        for (u64 i = 0; i < icoords.size(); ++i) {
            if (!icoords[i]) continue;
            detail::decode(i, m, 3, alpha.data());
            std::size_t deg = 0;
            for (u32 k = 0; k < 3; ++k) deg += sp.idegree(alpha[k]);
            if (deg == lowest) phi[i] = icoords[i];
        }
        TensorElement phi_tensor = bc.from_icoords(3, phi);
        if (!bc.differential(phi_tensor).is_zero())
            throw internal_error("lowest-degree part of the associator is not an additive cocycle");

        // graded solve: restrict the pair space to total degree = lowest
        std::vector<u64> cols;
        for (u64 c = 0; c < detail::pow_sz(m, 2); ++c) {
            u64 x = c;
            std::size_t deg = sp.idegree(x % m);
            deg += sp.idegree((x / m) % m);
            if (deg == lowest) cols.push_back(c);
        }
        Matrix full = bc.differential_matrix(2);
        Matrix restricted(F, full.rows(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t r = 0; r < full.rows(); ++r) restricted.at(r, j) = full.at(r, cols[j]);
        auto sol = solve_linear(restricted, phi);
        if (!sol) {
            Echelon image(F, phi.size());
            for (std::size_t c = 0; c < full.cols(); ++c) {
                Vec v(full.rows(), 0);
                for (std::size_t r = 0; r < full.rows(); ++r) v[r] = full.at(r, c);
                image.insert(std::move(v));
            }
            out.obstruction_degree = lowest;
            out.obstruction_coords = phi;
            out.obstruction_class = image.reduce(phi);
            if (vec_is_zero(out.obstruction_class))
                throw internal_error("graded solve failed but the class is a coboundary");
            return out;
        }
        Vec psi(detail::pow_sz(m, 2), 0);
        for (std::size_t j = 0; j < cols.size(); ++j) psi[cols[j]] = (*sol)[j];
        TensorElement f = bc.from_icoords(2, psi);
        TensorElement Fstep = tensor_add(tensor_unit(base->algebra(), 2), f);
        cur = pseudotwist_transform(cur, Fstep);
        out.pseudotwist = tensor_multiply(out.pseudotwist, Fstep);
        ++out.rounds;
    }
    throw internal_error("trivialize_associator exceeded its round budget");
}

} // namespace qhopf
