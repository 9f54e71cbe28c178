#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qhopf/cohomology.hpp"
#include "test_helpers.hpp"

using namespace qhopf;
using namespace qhopf::testing;

namespace {

TensorElement mono2(const AlgebraRef& A, u32 a, u32 b) {
    return tensor_outer(A, {A->basis_vec(a), A->basis_vec(b)});
}

} // namespace

TEST_CASE("certify_nilpotent") {
    REQUIRE(certify_nilpotent(truncated_poly(3, 3)).certified);
    REQUIRE_FALSE(certify_nilpotent(make_alpha(3, 2)->algebra()).certified); // x^3 != 0
    REQUIRE(certify_nilpotent(dual_hopf(*make_alpha(3, 2))->algebra()).certified);
    REQUIRE(certify_nilpotent(make_u_abelian(5, 2)->algebra()).certified);
}

TEST_CASE("trunc_exp on the worked examples") {
    auto A = truncated_poly(3, 3);
    ExpContext ctx(A);

    REQUIRE(tensor_equal(trunc_exp(ctx, tensor_zero(A, 2)), tensor_unit(A, 2)));

    // E(x (x) x) = 1 + x(x)x + 2 x^2(x)x^2
    TensorElement e1 = trunc_exp(ctx, mono2(A, 1, 1));
    TensorElement expect = tensor_unit(A, 2);
    expect.coords[1 * 3 + 1] = 1;
    expect.coords[2 * 3 + 2] = 2;
    REQUIRE(tensor_equal(e1, expect));

    // E(x(x)x + x(x)x^2) = 1 + x(x)x + x(x)x^2 + 2 x^2(x)x^2
    TensorElement t = tensor_add(mono2(A, 1, 1), mono2(A, 1, 2));
    TensorElement e2 = trunc_exp(ctx, t);
    TensorElement expect2 = tensor_unit(A, 2);
    expect2.coords[1 * 3 + 1] = 1;
    expect2.coords[1 * 3 + 2] = 1;
    expect2.coords[2 * 3 + 2] = 2;
    REQUIRE(tensor_equal(e2, expect2));

    REQUIRE_THROWS_AS(trunc_exp(ctx, TensorElement{A, 1, A->basis_vec(1)}), unsupported);
    REQUIRE_THROWS_AS(trunc_exp(ctx, tensor_unit(A, 2)), input_error); // not I-supported

    auto big = make_alpha(3, 2)->algebra(); // x^3 != 0, no witness
    ExpContext bad(big);
    REQUIRE_THROWS_AS(trunc_exp(bad, tensor_zero(big, 2)), unsupported);
}

TEST_CASE("trunc_log inverts trunc_exp on the worked examples") {
    auto A = truncated_poly(3, 3);
    ExpContext ctx(A);

    REQUIRE(trunc_log(ctx, tensor_unit(A, 2)).is_zero());

    TensorElement s = tensor_unit(A, 2);
    s.coords[1 * 3 + 1] = 1;
    s.coords[2 * 3 + 2] = 2;
    REQUIRE(tensor_equal(trunc_log(ctx, s), mono2(A, 1, 1)));

    // on a decomposable image the closed series L(s) = (s-1) - (s-1)^2/2 agrees
    TensorElement s2 = tensor_add(tensor_unit(A, 2), mono2(A, 1, 2));
    TensorElement sm1 = tensor_sub(s2, tensor_unit(A, 2));
    Fp F(3);
    TensorElement series = tensor_sub(sm1, tensor_scale(tensor_multiply(sm1, sm1), F.inv(2)));
    REQUIRE(tensor_equal(trunc_log(ctx, s2), series));
    REQUIRE(tensor_equal(trunc_log(ctx, s2), mono2(A, 1, 2)));
}

TEST_CASE("closed-form log agrees with the iterative log on decomposable images") {
    std::mt19937_64 rng(404);
    for (u32 p : {3u, 5u}) {
        auto A = truncated_poly(p, p);
        ExpContext ctx(A);
        const AugmentedSplit& sp = ctx.split();
        const Fp F(p);
        for (int trial = 0; trial < 25; ++trial) {
            // a scalar multiple of one basis decomposable
            std::uniform_int_distribution<std::size_t> idist(0, sp.idim() - 1);
            std::uniform_int_distribution<u32> cdist(1, p - 1);
            TensorElement t = tensor_scale(
                tensor_outer(A, {sp.ibasis()[idist(rng)], sp.ibasis()[idist(rng)]}), cdist(rng));
            TensorElement s = trunc_exp(ctx, t);
            TensorElement sm1 = tensor_sub(s, tensor_unit(A, 2));
            TensorElement series = tensor_zero(A, 2);
            TensorElement power = tensor_unit(A, 2);
            for (u32 j = 1; j <= p - 1; ++j) {
                power = tensor_multiply(power, sm1);
                if (power.is_zero()) break;
                u32 coeff = F.div(j % 2 == 1 ? 1 : F.neg(1), j);
                series = tensor_add(series, tensor_scale(power, coeff));
            }
            REQUIRE(tensor_equal(series, t));
            REQUIRE(tensor_equal(trunc_log(ctx, s), t));
        }
    }
}

TEST_CASE("E/L round trips and the homomorphism property") {
    std::mt19937_64 rng(1234);
    for (u32 p : {3u, 5u}) {
        std::vector<AlgebraRef> bases = {make_alpha(p, 1)->algebra(),
                                         dual_hopf(*make_u_abelian(p, 2))->algebra()};
        for (const auto& A : bases) {
            ExpContext ctx(A);
            const AugmentedSplit& sp = ctx.split();
            for (int trial = 0; trial < 50; ++trial) {
                TensorElement t = random_i_tensor(rng, sp, 2, 5);
                TensorElement u = random_i_tensor(rng, sp, 2, 5);
                TensorElement Et = trunc_exp(ctx, t);
                REQUIRE(tensor_equal(trunc_log(ctx, Et), t));
                REQUIRE(tensor_equal(trunc_exp(ctx, tensor_add(t, u)),
                                     tensor_multiply(Et, trunc_exp(ctx, u))));
                REQUIRE(tensor_equal(trunc_exp(ctx, trunc_log(ctx, Et)), Et));
            }
            for (int trial = 0; trial < 10; ++trial) {
                TensorElement t = random_i_tensor(rng, sp, 3, 4);
                REQUIRE(tensor_equal(trunc_log(ctx, trunc_exp(ctx, t)), t));
            }
        }
    }
}

TEST_CASE("E is invariant under a change of the I-basis enumeration") {
    // well-definedness: compute E through a scrambled (but equivalent)
    // presentation of the same algebra and compare
    std::mt19937_64 rng(555);
    auto A = truncated_poly(3, 3);
    ExpContext ctx(A);

    // same algebra with basis x' = x + x^2 (an algebra isomorphism)
    auto B = std::make_shared<Algebra>(3, 3);
    // new basis b0 = 1, b1 = x + x^2, b2 = x^2; products: b1*b1 = x^2+2x^3+... = x^2 = b2
    B->set_product(0, 0, {{0, 1}});
    B->set_product(0, 1, {{1, 1}});
    B->set_product(1, 0, {{1, 1}});
    B->set_product(0, 2, {{2, 1}});
    B->set_product(2, 0, {{2, 1}});
    B->set_product(1, 1, {{2, 1}});
    Vec unit{1, 0, 0}, counit{1, 0, 0};
    B->set_unit(unit);
    B->set_counit(counit);
    B->set_commutative(true);
    ExpContext ctxB{AlgebraRef(B)};

    // transport: phi(b1) = x + x^2, phi(b2) = x^2
    Matrix phi(Fp(3), 3, 3);
    phi.at(0, 0) = 1;
    phi.at(1, 1) = 1;
    phi.at(2, 1) = 1;
    phi.at(2, 2) = 1;
    auto transport = [&](const TensorElement& t) {
        return TensorElement{A, t.arity, apply_slotwise(t, phi).coords};
    };
    for (int trial = 0; trial < 20; ++trial) {
        TensorElement t = random_i_tensor(rng, ctxB.split(), 2, 3);
        TensorElement et_b = trunc_exp(ctxB, t);
        TensorElement et_a = trunc_exp(ctx, transport(t));
        REQUIRE(tensor_equal(transport(et_b), et_a));
    }
}

TEST_CASE("p = 2 branch: E(T) = 1 + T on decomposables but E is not the series on sums") {
    auto A = truncated_poly(2, 2); // k[x]/(x^2) at p = 2
    auto AA = tensor_product_algebra(A, A);
    ExpContext ctx(AA);
    // T = (x(x)1')(x)... use the 4-dim algebra k[x]/(x^2) (x) k[x]/(x^2) and
    // decomposables T = u (x) u, U = v (x) v with u = x(x)1, v = 1(x)x
    Vec u(4, 0), v(4, 0);
    u[2] = 1; // x (x) 1
    v[1] = 1; // 1 (x) x
    TensorElement T = tensor_outer(AA, {u, u});
    TensorElement U = tensor_outer(AA, {v, v});
    TensorElement one = tensor_unit(AA, 2);
    REQUIRE(tensor_equal(trunc_exp(ctx, T), tensor_add(one, T)));
    REQUIRE(tensor_equal(trunc_exp(ctx, U), tensor_add(one, U)));
    TensorElement together = trunc_exp(ctx, tensor_add(T, U));
    TensorElement expected = tensor_add(tensor_add(one, T), tensor_add(U, tensor_multiply(T, U)));
    REQUIRE(tensor_equal(together, expected)); // E(T+U) = 1 + T + U + TU
    REQUIRE_FALSE(tensor_equal(together, tensor_add(tensor_add(one, T), U)));
    REQUIRE_FALSE(tensor_multiply(T, U).is_zero());
}

TEST_CASE("scaling compatibility: E(aT) equals the series evaluated at aT") {
    auto A = truncated_poly(5, 5);
    ExpContext ctx(A);
    Fp F(5);
    TensorElement T = mono2(A, 1, 1);
    for (u32 a = 0; a < 5; ++a) {
        TensorElement aT = tensor_scale(T, a);
        TensorElement lhs = trunc_exp(ctx, aT);
        // series with T替换 by aT, evaluated directly
        TensorElement rhs = tensor_unit(A, 2);
        TensorElement pw = tensor_unit(A, 2);
        for (u32 j = 1; j < 5; ++j) {
            pw = tensor_multiply(pw, aT);
            rhs = tensor_add(rhs, tensor_scale(pw, F.inv(F.factorial(j))));
        }
        REQUIRE(tensor_equal(lhs, rhs));
    }
}

TEST_CASE("trunc_exp_extended") {
    auto A = truncated_poly(3, 3);
    ExpContext ctx(A);

    // restriction to I^{(x)3} agrees with trunc_exp
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        TensorElement t = random_i_tensor(rng, ctx.split(), 3, 3);
        REQUIRE(tensor_equal(trunc_exp_extended(ctx, t), trunc_exp(ctx, t)));
    }

    // t = 1 (x) x (x) x: E of the slot-stripped tensor with the unit re-inserted
    TensorElement t = tensor_outer(A, {A->unit(), A->basis_vec(1), A->basis_vec(1)});
    TensorElement expect = tensor_unit(A, 3);
    expect.coords[(0 * 3 + 1) * 3 + 1] = 1;
    expect.coords[(0 * 3 + 2) * 3 + 2] = 2;
    REQUIRE(tensor_equal(trunc_exp_extended(ctx, t), expect));

    // elements of A_1 and A_3 commute through E: product of the exponentials
    TensorElement a1 = tensor_outer(A, {A->unit(), A->basis_vec(1), A->basis_vec(2)});
    TensorElement a3 = tensor_outer(A, {A->basis_vec(1), A->basis_vec(1), A->unit()});
    TensorElement sum = tensor_add(a1, a3);
    TensorElement prod =
        tensor_multiply(trunc_exp_extended(ctx, a1), trunc_exp_extended(ctx, a3));
    TensorElement prod_rev =
        tensor_multiply(trunc_exp_extended(ctx, a3), trunc_exp_extended(ctx, a1));
    REQUIRE(tensor_equal(trunc_exp_extended(ctx, sum), prod));
    REQUIRE(tensor_equal(prod, prod_rev));

    // arity 2 is refused; two unit slots are refused
    REQUIRE_THROWS_AS(trunc_exp_extended(ctx, tensor_unit(A, 2)), unsupported);
    TensorElement bad = tensor_outer(A, {A->unit(), A->unit(), A->basis_vec(1)});
    REQUIRE_THROWS_AS(trunc_exp_extended(ctx, bad), input_error);
}

TEST_CASE("series_exp_element reproduces Remark 5.9's E(1+g) = g at p = 2") {
    auto h = make_cyclic_group_algebra(2, 1);
    const auto& A = h->algebra();
    Vec one_plus_g{1, 1};
    REQUIRE(series_exp_element(A, one_plus_g) == A->basis_vec(1));
}
