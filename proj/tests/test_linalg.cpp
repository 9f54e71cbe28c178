#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qhopf/linalg.hpp"

using namespace qhopf;

namespace {

// Independent oracle: the row span of a matrix over GF(p) has p^rank points.
std::size_t rank_by_span_enumeration(const Matrix& m) {
    const Fp& F = m.field();
    std::set<Vec> span;
    std::size_t rows = m.rows();
    u64 total = 1;
    for (std::size_t i = 0; i < rows; ++i) total *= F.p();
    for (u64 it = 0; it < total; ++it) {
        Vec v(m.cols(), 0);
        u64 x = it;
        for (std::size_t r = 0; r < rows; ++r) {
            u32 c = static_cast<u32>(x % F.p());
            x /= F.p();
            if (c) vec_axpy(F, v, c, m.row(r));
        }
        span.insert(v);
    }
    std::size_t rank = 0;
    u64 size = span.size();
    while (size > 1) {
        size /= F.p();
        ++rank;
    }
    return rank;
}

Matrix random_matrix(std::mt19937_64& rng, u32 p, std::size_t rows, std::size_t cols) {
    Matrix m(p, rows, cols);
    std::uniform_int_distribution<u32> dist(0, p - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    Fp F(5);
    REQUIRE(F.add(3, 4) == 2);
    REQUIRE(F.sub(1, 3) == 3);
    REQUIRE(F.mul(3, 4) == 2);
    for (u32 a = 1; a < 5; ++a) REQUIRE(F.mul(a, F.inv(a)) == 1);
    REQUIRE_THROWS_AS(Fp(4), input_error);
    REQUIRE_THROWS_AS(Fp(1), input_error);
    REQUIRE(F.binom_lucas(10, 5) == Fp(5).reduce(252));
    REQUIRE(Fp(3).binom_lucas(4, 2) == 0); // 6 mod 3
}

TEST_CASE("rank examples") {
    Matrix zero(3, 3, 3);
    REQUIRE(rank(zero) == 0);
    REQUIRE(rank(Matrix::identity(3, 3)) == 3);

    // [[1,2],[2,4]] mod 3: row 2 = 2 * row 1
    Matrix m(3, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4 % 3;
    REQUIRE(rank_by_span_enumeration(m) == 1);
    REQUIRE(rank(m) == 1);
}

TEST_CASE("solve_linear examples") {
    Matrix id(3, 2, 2);
    id.at(0, 0) = id.at(1, 1) = 1;
    auto x = solve_linear(id, {1, 2});
    REQUIRE(x);
    REQUIRE(*x == Vec{1, 2});

    // [[1,1]] mod 3, rhs = (0): solution must lie in the kernel
    Matrix row(3, 1, 2);
    row.at(0, 0) = row.at(0, 1) = 1;
    auto y = solve_linear(row, {0});
    REQUIRE(y);
    std::set<Vec> kernel{{0, 0}, {1, 2}, {2, 1}};
    REQUIRE(kernel.count(*y) == 1);

    // [[1],[2]] mod 3, rhs = (1,1): inconsistent since 2*1 != 1
    Matrix col(3, 2, 1);
    col.at(0, 0) = 1;
    col.at(1, 0) = 2;
    REQUIRE_FALSE(solve_linear(col, {1, 1}));
    REQUIRE_THROWS_AS(solve_linear(col, {1, 1, 1}), input_error);
}

TEST_CASE("kernel_basis examples") {
    REQUIRE(kernel_basis(Matrix::identity(3, 2)).empty());
    REQUIRE(kernel_basis(Matrix(3, 2, 2)).size() == 2);

    Matrix m(3, 1, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    auto kb = kernel_basis(m);
    REQUIRE(kb.size() == 1);
    REQUIRE(m.apply(kb[0]) == Vec{0});
    REQUIRE_FALSE(vec_is_zero(kb[0]));
}

TEST_CASE("solve/kernel/rank properties on random matrices") {
    std::mt19937_64 rng(20240817);
    for (u32 p : {2u, 3u, 5u}) {
        Fp F(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<std::size_t> sz(1, 8);
            std::size_t rows = sz(rng), cols = sz(rng);
            Matrix m = random_matrix(rng, p, rows, cols);

            // solve_linear(m, m x) returns a solution with the same image
            Vec x(cols);
            std::uniform_int_distribution<u32> dist(0, p - 1);
            for (auto& c : x) c = dist(rng);
            Vec rhs = m.apply(x);
            auto sol = solve_linear(m, rhs);
            REQUIRE(sol);
            REQUIRE(m.apply(*sol) == rhs);

            // rank-nullity
            auto kb = kernel_basis(m);
            REQUIRE(rank(m) + kb.size() == cols);
            for (const auto& k : kb) REQUIRE(vec_is_zero(m.apply(k)));

            // rank is invariant under transposition
            REQUIRE(rank(m) == rank(m.transposed()));
        }
        // row permutation invariance on larger samples
        Matrix big = random_matrix(rng, p, 20, 20);
        Matrix shuffled = big;
        std::vector<std::size_t> perm(20);
        for (std::size_t i = 0; i < 20; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < 20; ++i) shuffled.set_row(i, big.row(perm[i]));
        REQUIRE(rank(big) == rank(shuffled));
        REQUIRE(rank(big) == rank(big.transposed()));
    }
}

TEST_CASE("matrix inverse") {
    std::mt19937_64 rng(7);
    Fp F(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(rng, 5, 6, 6);
        if (rank(m) < 6) continue;
        Matrix mi = inverse(m);
        REQUIRE(m.multiply(mi) == Matrix::identity(5, 6));
        REQUIRE(mi.multiply(m) == Matrix::identity(5, 6));
    }
    REQUIRE_THROWS_AS(inverse(Matrix(5, 3, 3)), not_invertible);
}

TEST_CASE("sparse rank agrees with dense rank") {
    std::mt19937_64 rng(99);
    for (u32 p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<std::size_t> sz(1, 12);
            Matrix m = random_matrix(rng, p, sz(rng), sz(rng));
            REQUIRE(SparseMatrix::from_dense(m).rank() == rank(m));
        }
    }
}
