#pragma once

// Named constructors for the algebras and tensors the theory is exercised
// on: O(alpha_{p,r}) and its dual, cyclic group algebras, restricted
// enveloping algebras of abelian p-Lie algebras, R_epsilon, the dimension-p
// associator family Phi_s, skew twists E(s~), and the scaling automorphism.

#include <map>

#include "qhopf/quasi.hpp"
#include "qhopf/truncexp.hpp"

namespace qhopf {

// O(alpha_{p,r}) = k[x]/(x^{p^r}) with x primitive.
inline HopfRef make_alpha(u32 p, u32 r) {
    Fp F(p);
    if (r < 1) throw input_error("make_alpha: r must be >= 1");
    u64 N = 1;
    for (u32 i = 0; i < r; ++i) {
        N *= p;
        if (N > 4096) throw resource_limit("make_alpha: dimension too large");
    }
    auto alg = std::make_shared<Algebra>(p, N);
    for (u64 i = 0; i < N; ++i) alg->set_label(i, i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (u64 i = 0; i < N; ++i)
        for (u64 j = 0; j < N; ++j)
            if (i + j < N) alg->set_product(i, j, {{static_cast<u32>(i + j), 1}});
    Vec unit(N, 0), counit(N, 0);
    unit[0] = 1;
    counit[0] = 1;
    alg->set_unit(std::move(unit));
    alg->set_counit(std::move(counit));
    alg->set_commutative(true);

    // Delta(x^i) = (x(x)1 + 1(x)x)^i expanded by binomials
    std::vector<Vec> delta(N, Vec(N * N, 0));
    for (u64 i = 0; i < N; ++i)
        for (u64 j = 0; j <= i; ++j) delta[i][j * N + (i - j)] = F.binom_lucas(i, j);
    return make_hopf(std::move(alg), std::move(delta), true);
}

// O(alpha_{p,r}^D): divided-power algebra on the dual basis with
// Delta(x^{i*}) = sum_j x^{j*} (x) x^{(i-j)*}.
inline HopfRef make_alpha_dual(u32 p, u32 r) {
    Fp F(p);
    if (r < 1) throw input_error("make_alpha_dual: r must be >= 1");
    u64 N = 1;
    for (u32 i = 0; i < r; ++i) N *= p;
    auto alg = std::make_shared<Algebra>(p, N);
    for (u64 i = 0; i < N; ++i) alg->set_label(i, "x^{" + std::to_string(i) + "*}");
    for (u64 i = 0; i < N; ++i)
        for (u64 j = 0; j < N; ++j)
            if (i + j < N) {
                u32 c = F.binom_lucas(i + j, i);
                if (c) alg->set_product(i, j, {{static_cast<u32>(i + j), c}});
            }
    Vec unit(N, 0), counit(N, 0);
    unit[0] = 1;
    counit[0] = 1;
    alg->set_unit(std::move(unit));
    alg->set_counit(std::move(counit));
    alg->set_commutative(true);

    std::vector<Vec> delta(N, Vec(N * N, 0));
    for (u64 i = 0; i < N; ++i)
        for (u64 j = 0; j <= i; ++j) delta[i][j * N + (i - j)] = 1;
    return make_hopf(std::move(alg), std::move(delta), true);
}

// k[Z/p^n Z] with grouplike generator g.
inline HopfRef make_cyclic_group_algebra(u32 p, u32 n) {
    Fp F(p);
    u64 N = 1;
    for (u32 i = 0; i < n; ++i) N *= p;
    auto alg = std::make_shared<Algebra>(p, N);
    for (u64 i = 0; i < N; ++i) alg->set_label(i, i == 0 ? "1" : "g^" + std::to_string(i));
    for (u64 i = 0; i < N; ++i)
        for (u64 j = 0; j < N; ++j) alg->set_product(i, j, {{static_cast<u32>((i + j) % N), 1}});
    Vec unit(N, 0), counit(N, 1); // counit(g^i) = 1
    unit[0] = 1;
    alg->set_unit(std::move(unit));
    alg->set_counit(std::move(counit));
    alg->set_commutative(true);

    std::vector<Vec> delta(N, Vec(N * N, 0));
    for (u64 i = 0; i < N; ++i) delta[i][i * N + i] = 1; // g^i grouplike
    return make_hopf(std::move(alg), std::move(delta), true);
}

namespace detail {

// Monomial basis tools for u(g) = k[x_1..x_d]/(x_i^p - x_i^{[p]}).
struct MonomialContext {
    u32 p, d;
    u64 dim;
    std::vector<Vec> ppower; // column v: coordinates of x_v^{[p]} over the variables
    std::map<std::pair<u32, u64>, SparseVec> memo;
    Fp F;

    MonomialContext(u32 p_, u32 d_, std::vector<Vec> pp) : p(p_), d(d_), ppower(std::move(pp)), F(p_) {
        dim = 1;
        for (u32 i = 0; i < d; ++i) dim *= p;
    }

    std::vector<u32> exps(u64 idx) const {
        std::vector<u32> e(d);
        for (u32 k = d; k-- > 0;) {
            e[k] = static_cast<u32>(idx % p);
            idx /= p;
        }
        return e;
    }

    u64 index(const std::vector<u32>& e) const {
        u64 i = 0;
        for (u32 k = 0; k < d; ++k) i = i * p + e[k];
        return i;
    }

    // x_v * x^a expanded over monomials; x_v^p reduces to the linear x_v^{[p]}.
    const SparseVec& mul_var(u32 v, u64 a) {
        auto key = std::make_pair(v, a);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        SparseVec out;
        auto e = exps(a);
        if (e[v] < p - 1) {
            e[v] += 1;
            out.push_back({static_cast<u32>(index(e)), 1});
        } else {
            e[v] = 0;
            u64 b = index(e);
            std::map<u32, u32> acc;
            for (u32 j = 0; j < d; ++j) {
                u32 c = ppower[v][j];
                if (!c) continue;
                for (const auto& t : mul_var(j, b)) {
                    u32 add = F.mul(c, t.coeff);
                    acc[t.index] = F.add(acc.count(t.index) ? acc[t.index] : 0, add);
                }
            }
            for (const auto& [idx, c] : acc)
                if (c) out.push_back({idx, c});
        }
        auto [pos, ok] = memo.emplace(key, std::move(out));
        return pos->second;
    }
};

} // namespace detail

// u(g) for an abelian restricted p-Lie algebra of dimension d; ppower[v] are
// the coordinates of x_v^{[p]} over the variables (empty / zero columns give
// the zero p-power map). Every x_v is primitive.
inline HopfRef make_u_abelian(u32 p, u32 d, std::vector<Vec> ppower = {}) {
    Fp F(p);
    if (d < 1) throw input_error("make_u_abelian: dimension must be >= 1");
    if (ppower.empty()) ppower.assign(d, Vec(d, 0));
    if (ppower.size() != d) throw input_error("make_u_abelian: p-power map needs one column per variable");
    for (auto& col : ppower) {
        if (col.size() != d) throw input_error("make_u_abelian: p-power column has wrong length");
        for (auto& c : col) c %= p;
    }
    detail::MonomialContext ctx(p, d, ppower);
    if (ctx.dim > 4096) throw resource_limit("make_u_abelian: dimension too large");

    auto alg = std::make_shared<Algebra>(p, ctx.dim);
    for (u64 i = 0; i < ctx.dim; ++i) {
        auto e = ctx.exps(i);
        std::string label;
        for (u32 k = 0; k < d; ++k) {
            if (!e[k]) continue;
            if (!label.empty()) label += "*";
            label += "x" + std::to_string(k + 1);
            if (e[k] > 1) label += "^" + std::to_string(e[k]);
        }
        alg->set_label(i, label.empty() ? "1" : label);
    }
    for (u64 a = 0; a < ctx.dim; ++a)
        for (u64 b = 0; b < ctx.dim; ++b) {
            // e_a * e_b: multiply e_a by each variable of e_b in turn
            std::map<u64, u32> poly{{a, 1}};
            auto eb = ctx.exps(b);
            for (u32 v = 0; v < d; ++v)
                for (u32 rep = 0; rep < eb[v]; ++rep) {
                    std::map<u64, u32> next;
                    for (const auto& [idx, c] : poly)
                        for (const auto& t : ctx.mul_var(v, idx)) {
                            u32 add = F.mul(c, t.coeff);
                            auto [it, fresh] = next.emplace(t.index, add);
                            if (!fresh) it->second = F.add(it->second, add);
                        }
                    poly = std::move(next);
                }
            SparseVec sv;
            for (const auto& [idx, c] : poly)
                if (c) sv.push_back({static_cast<u32>(idx), c});
            alg->set_product(a, b, std::move(sv));
        }
    Vec unit(ctx.dim, 0), counit(ctx.dim, 0);
    unit[0] = 1;
    counit[0] = 1;
    alg->set_unit(std::move(unit));
    alg->set_counit(std::move(counit));
    alg->set_commutative(true);

    // Delta(x^a) = prod_v (x_v (x) 1 + 1 (x) x_v)^{a_v} in A (x) A
    std::vector<Vec> delta(ctx.dim);
    std::vector<TensorElement> gen_delta;
    for (u32 v = 0; v < d; ++v) {
        std::vector<u32> e(d, 0);
        e[v] = 1;
        Vec xv = alg->basis_vec(ctx.index(e));
        TensorElement t = tensor_add(tensor_outer(alg, {xv, alg->unit()}),
                                     tensor_outer(alg, {alg->unit(), xv}));
        gen_delta.push_back(std::move(t));
    }
    for (u64 i = 0; i < ctx.dim; ++i) {
        TensorElement t = tensor_unit(alg, 2);
        auto e = ctx.exps(i);
        for (u32 v = 0; v < d; ++v)
            for (u32 rep = 0; rep < e[v]; ++rep) t = tensor_multiply(t, gen_delta[v]);
        delta[i] = std::move(t.coords);
    }
    return make_hopf(std::move(alg), std::move(delta), true);
}

// O(prod_i alpha_{p,r_i}) as an iterated Hopf tensor product.
inline HopfRef make_alpha_product(u32 p, const std::vector<u32>& rs) {
    if (rs.empty()) throw input_error("make_alpha_product: need at least one factor");
    HopfRef h = make_alpha(p, rs[0]);
    for (std::size_t i = 1; i < rs.size(); ++i) h = tensor_product_hopf(*h, *make_alpha(p, rs[i]));
    return h;
}

// k[Z/2Z] over GF(p): the carrier of the grouplike involution eps.
inline HopfRef make_z2_group_algebra(u32 p) {
    auto alg = std::make_shared<Algebra>(p, 2);
    alg->set_label(1, "g");
    alg->set_product(0, 0, {{0, 1}});
    alg->set_product(0, 1, {{1, 1}});
    alg->set_product(1, 0, {{1, 1}});
    alg->set_product(1, 1, {{0, 1}});
    Vec unit{1, 0}, counit{1, 1};
    alg->set_unit(std::move(unit));
    alg->set_counit(std::move(counit));
    alg->set_commutative(true);
    std::vector<Vec> delta(2, Vec(4, 0));
    delta[0][0] = 1;
    delta[1][1 * 2 + 1] = 1;
    return make_hopf(std::move(alg), std::move(delta), true);
}

// R_eps = (1/2)(1(x)1 + 1(x)eps + eps(x)1 - eps(x)eps) for a grouplike
// involution eps.
inline TensorElement r_epsilon(const HopfStructure& h, const Vec& eps) {
    const auto& A = h.algebra();
    const Fp& F = A->field();
    if (F.p() == 2) throw unsupported("R_epsilon needs p > 2 (division by 2)");
    if (!is_grouplike(h, eps)) throw input_error("r_epsilon: eps is not grouplike");
    if (A->mul(eps, eps) != A->unit()) throw input_error("r_epsilon: eps^2 != 1");
    u32 half = F.inv(2);
    TensorElement t = tensor_outer(A, {A->unit(), A->unit()});
    t = tensor_add(t, tensor_outer(A, {A->unit(), eps}));
    t = tensor_add(t, tensor_outer(A, {eps, A->unit()}));
    t = tensor_sub(t, tensor_outer(A, {eps, eps}));
    return tensor_scale(t, half);
}

// Phi_s = 1 + sum_{i=1}^{p-1} (s/i) binom(p-1, i-1) x (x) x^i (x) x^{p-i}
// over O(alpha_p); Phi_1 is the canonical non-trivial associator, Phi_0 = 1.
inline TensorElement associator_phi(const HopfRef& alpha_p1, u32 s) {
    const auto& A = alpha_p1->algebra();
    const Fp& F = A->field();
    u32 p = F.p();
    if (A->dim() != p) throw input_error("associator_phi expects O(alpha_p) of dimension p");
    TensorElement phi = tensor_unit(A, 3);
    s %= p;
    if (s == 0) return phi;
    std::size_t d = A->dim();
    for (u32 i = 1; i <= p - 1; ++i) {
        u32 c = F.mul(F.div(s, i), F.binom_lucas(p - 1, i - 1));
        if (!c) continue;
        u64 flat = (u64(1) * d + i) * d + (p - i);
        phi.coords[flat] = F.add(phi.coords[flat], c);
    }
    return phi;
}

// x -> mu x on O(alpha_p); pushing tensors forward is apply_slotwise.
inline Matrix scaling_automorphism(const HopfRef& alpha_p1, u32 mu) {
    const auto& A = alpha_p1->algebra();
    const Fp& F = A->field();
    if (mu % F.p() == 0) throw input_error("scaling_automorphism: mu must be nonzero");
    Matrix m(F, A->dim(), A->dim());
    for (std::size_t i = 0; i < A->dim(); ++i) m.at(i, i) = F.pow(mu, i);
    return m;
}

// J = E(s~) with s~ = sum s_{ab} x_a* (x) x_b* for antisymmetric s over the
// primitive basis of u(g)*.
inline TensorElement skew_twist(const HopfRef& u_dual, const Matrix& s) {
    const auto& A = u_dual->algebra();
    const Fp& F = A->field();
    std::vector<Vec> prim = primitives(*u_dual);
    if (s.rows() != prim.size() || s.cols() != prim.size())
        throw input_error("skew_twist: matrix must match the primitive space dimension");
    for (std::size_t a = 0; a < prim.size(); ++a) {
        if (s.at(a, a) != 0) throw input_error("skew_twist: matrix must have zero diagonal");
        for (std::size_t b = 0; b < a; ++b)
            if (s.at(a, b) != F.neg(s.at(b, a))) throw input_error("skew_twist: matrix must be antisymmetric");
    }
    ExpContext ctx(A);
    if (!ctx.witness().certified)
        throw unsupported("skew_twist: base does not satisfy x^p = 0 on I");
    TensorElement st = tensor_zero(A, 2);
    for (std::size_t a = 0; a < prim.size(); ++a)
        for (std::size_t b = 0; b < prim.size(); ++b) {
            u32 c = s.at(a, b);
            if (!c) continue;
            st = tensor_add(st, tensor_scale(tensor_outer(A, {prim[a], prim[b]}), c));
        }
    TensorElement j = trunc_exp(ctx, st);
    if (!check_twist(*u_dual, j).all_passed())
        throw internal_error("skew twist failed the twist equation");
    return j;
}

// Minimality of a twist: the left tensorands of J21^{-1} J must span the
// whole algebra, i.e. the dim x dim flattening has full rank.
inline bool minimality_check(const HopfStructure& h, const TensorElement& j) {
    if (!check_twist(h, j).all_passed())
        throw input_error("minimality_check: J does not satisfy the twist equation");
    const auto& A = h.algebra();
    TensorElement r = tensor_multiply(tensor_invert(permute_slots(j, {2, 1})), j);
    std::size_t d = A->dim();
    Matrix m(A->field(), d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t jj = 0; jj < d; ++jj) m.at(i, jj) = r.coords[i * d + jj];
    return rank(m) == d;
}

// Exhaustive grouplike count for desk-sized algebras (the defining equations
// are quadratic, so membership testing plus enumeration is the honest route).
inline u64 count_grouplikes(const HopfStructure& h, u64 budget = 1u << 20) {
    const auto& A = h.algebra();
    const Fp& F = A->field();
    u64 total = 1;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        total *= F.p();
        if (total > budget) throw resource_limit("count_grouplikes: state space exceeds budget");
    }
    u64 count = 0;
    Vec g(A->dim(), 0);
    for (u64 it = 0; it < total; ++it) {
        u64 x = it;
        for (std::size_t i = 0; i < A->dim(); ++i) {
            g[i] = static_cast<u32>(x % F.p());
            x /= F.p();
        }
        if (is_grouplike(h, g)) ++count;
    }
    return count;
}

} // namespace qhopf
