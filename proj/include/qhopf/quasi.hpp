#pragma once

// Associator and R-matrix axioms, pseudotwisting, idempotent lifting,
// square roots of unipotent elements, and R-matrix trivialization.

#include <optional>

#include "qhopf/hopf.hpp"

namespace qhopf {

struct QuasiData {
    HopfRef hopf;
    TensorElement associator;              // arity 3
    std::optional<TensorElement> r_matrix; // arity 2

    QuasiData(HopfRef h, TensorElement phi, std::optional<TensorElement> r = std::nullopt)
        : hopf(std::move(h)), associator(std::move(phi)), r_matrix(std::move(r)) {
        if (associator.arity != 3 || associator.alg.get() != hopf->algebra().get())
            throw input_error("associator must have arity 3 over the Hopf algebra");
        if (r_matrix && (r_matrix->arity != 2 || r_matrix->alg.get() != hopf->algebra().get()))
            throw input_error("R-matrix must have arity 2 over the Hopf algebra");
    }
};

inline QuasiData trivial_quasi(HopfRef h) {
    TensorElement phi = tensor_unit(h->algebra(), 3);
    return QuasiData(std::move(h), std::move(phi));
}

// (id(x)id(x)Delta)(Phi)(Delta(x)id(x)id)(Phi) = (1(x)Phi)(id(x)Delta(x)id)(Phi)(Phi(x)1)
inline AxiomReport check_pentagon(const QuasiData& q) {
    const auto& delta = q.hopf->delta_table();
    const TensorElement& phi = q.associator;
    TensorElement lhs = tensor_multiply(comul_at(phi, 2, delta), comul_at(phi, 0, delta));
    TensorElement rhs = tensor_multiply(tensor_multiply(insert_unit(phi, 0), comul_at(phi, 1, delta)),
                                        insert_unit(phi, 3));
    AxiomReport rep;
    rep.add("pentagon", lhs, rhs);
    return rep;
}

// All three counit contractions of Phi equal 1 (x) 1.
inline AxiomReport check_counit_normalization(const QuasiData& q) {
    AxiomReport rep;
    TensorElement unit2 = tensor_unit(q.hopf->algebra(), 2);
    const char* names[3] = {"counit_slot1", "counit_slot2", "counit_slot3"};
    for (u32 s = 0; s < 3; ++s) rep.add(names[s], counit_contract(q.associator, s), unit2);
    return rep;
}

// Phi (Delta(x)id)(Delta(e_i)) Phi^{-1} = (id(x)Delta)(Delta(e_i)) per basis element.
inline AxiomReport check_quasi_coassoc(const QuasiData& q) {
    const auto& A = q.hopf->algebra();
    const auto& delta = q.hopf->delta_table();
    TensorElement phi_inv = tensor_invert(q.associator);
    AxiomReport rep;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        TensorElement d2 = q.hopf->comul_tensor(A->basis_vec(i));
        TensorElement lhs =
            tensor_multiply(tensor_multiply(q.associator, comul_at(d2, 0, delta)), phi_inv);
        TensorElement rhs = comul_at(d2, 1, delta);
        TensorElement res = tensor_sub(lhs, rhs);
        if (!res.is_zero()) {
            rep.checks.push_back({"quasi_coassociativity", false, res});
            return rep;
        }
    }
    rep.add_flag("quasi_coassociativity", true);
    return rep;
}

// Quasi-cocommutativity (2.4), triangularity (2.5), both hexagons (2.6)-(2.7).
inline AxiomReport check_rmatrix(const QuasiData& q) {
    if (!q.r_matrix) throw input_error("check_rmatrix: no R-matrix attached");
    const auto& A = q.hopf->algebra();
    const auto& delta = q.hopf->delta_table();
    const TensorElement& R = *q.r_matrix;
    const TensorElement& phi = q.associator;
    TensorElement r_inv = tensor_invert(R);
    TensorElement phi_inv = tensor_invert(phi);
    AxiomReport rep;

    bool qc = true;
    TensorElement qc_res = tensor_zero(A, 2);
    for (std::size_t i = 0; i < A->dim(); ++i) {
        TensorElement d = q.hopf->comul_tensor(A->basis_vec(i));
        TensorElement lhs = permute_slots(d, {2, 1});
        TensorElement rhs = tensor_multiply(tensor_multiply(R, d), r_inv);
        TensorElement res = tensor_sub(lhs, rhs);
        if (!res.is_zero()) {
            qc = false;
            qc_res = res;
            break;
        }
    }
    if (qc)
        rep.add_flag("quasi_cocommutativity", true);
    else
        rep.checks.push_back({"quasi_cocommutativity", false, qc_res});

    rep.add("triangularity", permute_slots(R, {2, 1}), r_inv);

    auto R13 = tensor_embed(R, 3, {1, 3});
    auto R23 = tensor_embed(R, 3, {2, 3});
    auto R12 = tensor_embed(R, 3, {1, 2});

    TensorElement hex1_lhs = comul_at(R, 0, delta);
    TensorElement hex1_rhs = tensor_multiply(
        tensor_multiply(tensor_multiply(tensor_multiply(permute_slots(phi, {3, 1, 2}), R13),
                                        permute_slots(phi_inv, {1, 3, 2})),
                        R23),
        phi);
    rep.add("hexagon_1", hex1_lhs, hex1_rhs);

    TensorElement hex2_lhs = comul_at(R, 1, delta);
    TensorElement hex2_rhs = tensor_multiply(
        tensor_multiply(tensor_multiply(tensor_multiply(permute_slots(phi_inv, {2, 3, 1}), R13),
                                        permute_slots(phi, {2, 1, 3})),
                        R12),
        phi_inv);
    rep.add("hexagon_2", hex2_lhs, hex2_rhs);
    return rep;
}

// R12 Phi312 R13 Phi132^{-1} R23 Phi123 = Phi321 R23 Phi231^{-1} R13 Phi213 R12.
inline AxiomReport check_qybe(const QuasiData& q) {
    if (!q.r_matrix) throw input_error("check_qybe: no R-matrix attached");
    const TensorElement& R = *q.r_matrix;
    const TensorElement& phi = q.associator;
    TensorElement phi_inv = tensor_invert(phi);
    auto R12 = tensor_embed(R, 3, {1, 2});
    auto R13 = tensor_embed(R, 3, {1, 3});
    auto R23 = tensor_embed(R, 3, {2, 3});

    TensorElement lhs = R12;
    lhs = tensor_multiply(lhs, permute_slots(phi, {3, 1, 2}));
    lhs = tensor_multiply(lhs, R13);
    lhs = tensor_multiply(lhs, permute_slots(phi_inv, {1, 3, 2}));
    lhs = tensor_multiply(lhs, R23);
    lhs = tensor_multiply(lhs, phi);

    TensorElement rhs = permute_slots(phi, {3, 2, 1});
    rhs = tensor_multiply(rhs, R23);
    rhs = tensor_multiply(rhs, permute_slots(phi_inv, {2, 3, 1}));
    rhs = tensor_multiply(rhs, R13);
    rhs = tensor_multiply(rhs, permute_slots(phi, {2, 1, 3}));
    rhs = tensor_multiply(rhs, R12);

    AxiomReport rep;
    rep.add("qybe", lhs, rhs);
    return rep;
}

// Both counit contractions of J equal the unit.
inline bool is_pseudotwist_normalized(const HopfStructure& h, const TensorElement& j) {
    if (j.arity != 2) return false;
    TensorElement unit1 = tensor_unit(h.algebra(), 1);
    return tensor_equal(counit_contract(j, 0), unit1) && tensor_equal(counit_contract(j, 1), unit1);
}

// Twist equation (2.12): (id(x)Delta)(J)(1(x)J) = (Delta(x)id)(J)(J(x)1).
inline AxiomReport check_twist(const HopfStructure& h, const TensorElement& j) {
    if (!is_pseudotwist_normalized(h, j))
        throw input_error("check_twist: J is not a pseudotwist (counit contractions must be 1)");
    tensor_invert(j); // invertibility is part of the precondition
    const auto& delta = h.delta_table();
    TensorElement lhs = tensor_multiply(comul_at(j, 1, delta), insert_unit(j, 0));
    TensorElement rhs = tensor_multiply(comul_at(j, 0, delta), insert_unit(j, 2));
    AxiomReport rep;
    rep.add("twist_equation", lhs, rhs);
    return rep;
}

// (2.9)-(2.11): Delta^J = J^{-1} Delta J, Phi^J per (2.10), R^J = J21^{-1} R J.
inline QuasiData pseudotwist_transform(const QuasiData& q, const TensorElement& j) {
    const HopfStructure& h = *q.hopf;
    const auto& A = h.algebra();
    TensorElement j_inv = tensor_invert(j); // throws not_invertible when singular
    if (!is_pseudotwist_normalized(h, j))
        throw input_error("pseudotwist_transform: J is not counit-normalized");

    std::size_t d = A->dim();
    std::vector<Vec> new_delta(d);
    for (std::size_t i = 0; i < d; ++i) {
        TensorElement di = h.comul_tensor(A->basis_vec(i));
        new_delta[i] = tensor_multiply(tensor_multiply(j_inv, di), j).coords;
    }
    bool cocomm = true;
    for (std::size_t i = 0; i < d && cocomm; ++i) {
        TensorElement di{A, 2, new_delta[i]};
        cocomm = tensor_equal(permute_slots(di, {2, 1}), di);
    }
    HopfRef twisted = make_hopf(A, std::move(new_delta), cocomm);

    const auto& delta = h.delta_table(); // (2.10) uses the original Delta
    TensorElement phi_j = insert_unit(j_inv, 0);
    phi_j = tensor_multiply(phi_j, comul_at(j_inv, 1, delta));
    phi_j = tensor_multiply(phi_j, q.associator);
    phi_j = tensor_multiply(phi_j, comul_at(j, 0, delta));
    phi_j = tensor_multiply(phi_j, insert_unit(j, 2));

    std::optional<TensorElement> r_j;
    if (q.r_matrix)
        r_j = tensor_multiply(tensor_multiply(tensor_invert(permute_slots(j, {2, 1})), *q.r_matrix), j);
    return QuasiData(std::move(twisted), std::move(phi_j), std::move(r_j));
}

// Radical membership for commutative algebras is nilpotency; repeated
// squaring settles it in log steps.
inline bool element_is_nilpotent(const Algebra& a, Vec h) {
    if (!a.commutative()) throw unsupported("nilpotency test is scoped to commutative algebras");
    std::size_t steps = 1;
    for (std::size_t bound = 1; bound < a.dim(); bound *= 2) ++steps;
    for (std::size_t k = 0; k <= steps; ++k) {
        if (vec_is_zero(h)) return true;
        h = a.mul(h, h);
    }
    return vec_is_zero(h);
}

// Lemma 2.1(1): the unique idempotent lift of e0 along the radical, computed
// by the quadratically convergent iteration e -> 3e^2 - 2e^3.
inline Vec lift_idempotent(const AlgebraRef& a, const Vec& e0) {
    const Fp& F = a->field();
    Vec defect = a->mul(e0, e0);
    vec_sub_inplace(F, defect, e0);
    if (!element_is_nilpotent(*a, defect))
        throw not_idempotent_mod_radical("e0^2 - e0 is not in the radical");
    Vec e = e0;
    for (std::size_t it = 0; it < 8 * sizeof(std::size_t); ++it) {
        Vec e2 = a->mul(e, e);
        if (e2 == e) {
            Vec diff = e;
            vec_sub_inplace(F, diff, e0);
            if (!element_is_nilpotent(*a, diff))
                throw internal_error("idempotent lift drifted mod radical");
            return e;
        }
        Vec e3 = a->mul(e2, e);
        Vec next(a->dim(), 0);
        vec_axpy(F, next, F.reduce(3), e2);
        vec_axpy(F, next, F.neg(F.reduce(2)), e3);
        e = std::move(next);
    }
    throw internal_error("idempotent iteration failed to stabilize");
}

namespace detail {

// binom(1/2, i) mod p via the integer binomial binom((p^{i+1}+1)/2, i).
// The base-p digits of (p^M+1)/2 are (p+1)/2 followed by M-1 copies of
// (p-1)/2, so Lucas' theorem applies without big integers.
inline u32 binom_half(const Fp& F, u64 i) {
    u32 p = F.p();
    if (i == 0) return 1;
    u64 M = i + 1;
    u32 result = 1;
    u64 rem = i;
    for (u64 pos = 0; pos < M; ++pos) {
        u32 cd = (pos == 0) ? (p + 1) / 2 : (p - 1) / 2;
        u32 id = static_cast<u32>(rem % p);
        rem /= p;
        if (id > cd) return 0;
        u32 num = 1, den = 1;
        for (u32 t = 0; t < id; ++t) {
            num = F.mul(num, cd - t);
            den = F.mul(den, t + 1);
        }
        result = F.mul(result, F.div(num, den));
    }
    return rem == 0 ? result : 0;
}

} // namespace detail

// Lemma 2.1(2): the unique s in 1 + I with s^2 = 1 + h, for p > 2 and h in
// the radical.
inline Vec sqrt_one_plus(const AlgebraRef& a, const Vec& h) {
    const Fp& F = a->field();
    if (F.p() == 2) throw unsupported("square roots of 1 + h need p > 2");
    if (!element_is_nilpotent(*a, h)) throw input_error("sqrt_one_plus: h is not in the radical");

    Vec s = a->unit();
    Vec power = a->unit();
    for (u64 i = 1; i <= a->dim(); ++i) {
        power = a->mul(power, h);
        if (vec_is_zero(power)) break;
        vec_axpy(F, s, detail::binom_half(F, i), power);
    }
    Vec check = a->mul(s, s);
    Vec target = a->unit();
    vec_add_inplace(F, target, h);
    if (check != target) throw internal_error("square root identity failed");
    return s;
}

// Remark 3.6 (u = 1 case): J := R21^{1/2} trivializes a unipotent triangular
// R-matrix: J21^{-1} R J = 1 (x) 1.
inline TensorElement trivialize_rmatrix(const QuasiData& q) {
    if (!q.r_matrix) throw input_error("trivialize_rmatrix: no R-matrix attached");
    const auto& A = q.hopf->algebra();
    const Fp& F = A->field();
    if (F.p() == 2) throw unsupported("R-matrix trivialization needs p > 2 (no symmetric square roots)");
    if (!tensor_equal(q.associator, tensor_unit(A, 3)))
        throw input_error("trivialize_rmatrix: associator must be trivial");
    const TensorElement& R = *q.r_matrix;
    if (!tensor_equal(tensor_multiply(R, permute_slots(R, {2, 1})), tensor_unit(A, 2)))
        throw input_error("trivialize_rmatrix: R is not triangular");

    if (!A->commutative())
        throw unsupported("trivialize_rmatrix is scoped to commutative base algebras");
    // work directly in the tensor square; unipotence of R is nilpotence of R21 - 1
    TensorElement h = tensor_sub(permute_slots(R, {2, 1}), tensor_unit(A, 2));
    {
        TensorElement pw = h;
        std::size_t steps = 1;
        for (u64 bound = 1; bound < h.coords.size(); bound *= 2) ++steps;
        for (std::size_t k = 0; k <= steps && !pw.is_zero(); ++k) pw = tensor_multiply(pw, pw);
        if (!pw.is_zero())
            throw input_error("trivialize_rmatrix: R is not unipotent (R != 1 mod radical)");
    }
    TensorElement J = tensor_unit(A, 2);
    {
        TensorElement power = tensor_unit(A, 2);
        for (u64 i = 1; i <= h.coords.size(); ++i) {
            power = tensor_multiply(power, h);
            if (power.is_zero()) break;
            u32 c = detail::binom_half(F, i);
            if (c) J = tensor_add(J, tensor_scale(power, c));
        }
        TensorElement sq = tensor_multiply(J, J);
        if (!tensor_equal(sq, tensor_add(tensor_unit(A, 2), h)))
            throw internal_error("square root identity failed in the tensor square");
    }
    TensorElement lhs =
        tensor_multiply(tensor_multiply(tensor_invert(permute_slots(J, {2, 1})), R), J);
    if (!tensor_equal(lhs, tensor_unit(A, 2)))
        throw internal_error("R-matrix trivialization identity failed");
    return J;
}

// Alt(t) = t312 - t132 + t123 + t231 - t213 - t321 (ordinary even sign rule).
inline TensorElement alt3(const TensorElement& t) {
    if (t.arity != 3) throw input_error("alt3: arity must be 3");
    TensorElement out = permute_slots(t, {3, 1, 2});
    out = tensor_sub(out, permute_slots(t, {1, 3, 2}));
    out = tensor_add(out, t);
    out = tensor_add(out, permute_slots(t, {2, 3, 1}));
    out = tensor_sub(out, permute_slots(t, {2, 1, 3}));
    out = tensor_sub(out, permute_slots(t, {3, 2, 1}));
    return out;
}

} // namespace qhopf
