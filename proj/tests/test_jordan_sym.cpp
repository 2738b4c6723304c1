#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jordet/sym2.hpp"

using namespace jordet;

TEST_CASE("matrix units and the Jordan product") {
    QRing q;
    auto e12 = unit(q, 3, 1, 2);
    CHECK(e12.at(0, 1) == 1);
    CHECK_THROWS_AS(unit(q, 3, 4, 1), IndexOutOfRange);
    CHECK_THROWS_AS(unit(q, 2, 0, 1), IndexOutOfRange);

    // e_ps o e_sq = e_pq for p != q
    CHECK(equal(q, jordan(q, unit(q, 3, 1, 3), unit(q, 3, 3, 2)), unit(q, 3, 1, 2)));
    // (1/2 e_ss) o e_ss = e_ss
    auto e11 = unit(q, 3, 1, 1);
    CHECK(equal(q, jordan(q, scale(q, q.from_ratio(1, 2), e11), e11), e11));
    // e_12 o e_21 = e_11 + e_22
    CHECK(equal(q, jordan(q, unit(q, 3, 1, 2), unit(q, 3, 2, 1)),
                add(q, unit(q, 3, 1, 1), unit(q, 3, 2, 2))));
    CHECK_THROWS_AS(jordan(q, unit(q, 2, 1, 1), unit(q, 3, 1, 1)), SizeMismatch);
    CHECK_THROWS_AS(sigma(q, unit(q, 2, 1, 1), unit(q, 3, 1, 1)), SizeMismatch);
}

TEST_CASE("jordan_operator linearizes y -> x o y") {
    FpRing f7(7);
    QRing q;

    // n=2, x=e_11: diag(2,1,1,0) in flattening order (e11,e12,e21,e22)
    auto t = jordan_operator(q, unit(q, 2, 1, 1));
    Matrix<QRing> expect(q, 4, 4);
    expect.at(0, 0) = q.from_int(2);
    expect.at(1, 1) = q.one();
    expect.at(2, 2) = q.one();
    CHECK(equal(q, t, expect));

    // x = I: 2 * identity
    auto ti = jordan_operator(q, identity(q, 3));
    CHECK(equal(q, ti, scale(q, q.from_int(2), identity(q, 9))));

    // consistency with jordan() on random pairs
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        auto x = random_matrix(f7, 3, rng);
        auto y = random_matrix(f7, 3, rng);
        auto top = jordan_operator(f7, x);
        Vec<FpRing> prod(9, 0);
        auto vy = vec(y);
        for (int i = 0; i < 9; ++i) {
            auto acc = f7.zero();
            for (int j = 0; j < 9; ++j) acc = f7.add(acc, f7.mul(top.at(i, j), vy[static_cast<std::size_t>(j)]));
            prod[static_cast<std::size_t>(i)] = acc;
        }
        REQUIRE(prod == vec(jordan(f7, x, y)));
    }
}

TEST_CASE("sym2 dimensions and indexing") {
    CHECK(sym_dim(2) == 10);
    CHECK(sym_dim(3) == 45);
    CHECK(sym_dim(4) == 136);
    // enumeration is lexicographic and covers [0, D)
    for (int n : {2, 3}) {
        long pos = 0;
        for (int a = 1; a <= n * n; ++a)
            for (int b = a; b <= n * n; ++b) REQUIRE(sym_pos(n, a, b) == pos++);
        REQUIRE(pos == sym_dim(n));
    }
    CHECK(flat_index(3, 1, 2) == 2);
    CHECK(unflat_index(3, 2) == std::pair{1, 2});
}

TEST_CASE("sigma coordinates on unit pairs") {
    QRing q;
    int n = 3;
    auto s1 = sigma(q, unit(q, n, 1, 1), unit(q, n, 1, 2));
    long hits = 0;
    for (std::size_t i = 0; i < s1.size(); ++i)
        if (!q.is_zero(s1[i])) {
            ++hits;
            REQUIRE(static_cast<long>(i) == sym_pos_unordered(n, flat_index(n, 1, 1), flat_index(n, 1, 2)));
            REQUIRE(s1[i] == 1);
        }
    CHECK(hits == 1);

    auto s2 = sigma(q, unit(q, n, 1, 1), unit(q, n, 1, 1));
    hits = 0;
    for (std::size_t i = 0; i < s2.size(); ++i)
        if (!q.is_zero(s2[i])) {
            ++hits;
            REQUIRE(static_cast<long>(i) == sym_pos(n, 1, 1));
            REQUIRE(s2[i] == 1);
        }
    CHECK(hits == 1);
}

TEST_CASE("sigma symmetry, bilinearity and the factorization identity") {
    FpRing f7(7);
    QRing q;
    std::mt19937_64 rng(9);

    for (int t = 0; t < 1000; ++t) {
        auto x = random_matrix(f7, 3, rng);
        auto y = random_matrix(f7, 3, rng);
        REQUIRE(sigma(f7, x, y) == sigma(f7, y, x));
        REQUIRE(apply_jordan_sym(f7, 3, sigma(f7, x, y)) == vec(jordan(f7, x, y)));
    }
    for (int t = 0; t < 1000; ++t) {
        auto x = random_matrix(q, 3, rng);
        auto y = random_matrix(q, 3, rng);
        auto lhs = apply_jordan_sym(q, 3, sigma(q, x, y));
        REQUIRE(lhs == vec(jordan(q, x, y)));
    }
    // sigma(ax + b, y) = a sigma(x,y) + sigma(b,y)
    for (int t = 0; t < 200; ++t) {
        auto x = random_matrix(f7, 3, rng);
        auto b = random_matrix(f7, 3, rng);
        auto y = random_matrix(f7, 3, rng);
        auto a = f7.random_element(rng);
        auto lhs = sigma(f7, add(f7, scale(f7, a, x), b), y);
        auto s1 = sigma(f7, x, y);
        auto s2 = sigma(f7, b, y);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            REQUIRE(lhs[i] == f7.add(f7.mul(a, s1[i]), s2[i]));
    }
}

TEST_CASE("functional correspondence: B(e_a, e_b) = lambda{a,b}") {
    FpRing f5(5);
    std::mt19937_64 rng(21);
    int n = 2;
    Vec<FpRing> lambda(static_cast<std::size_t>(sym_dim(n)));
    for (auto& v : lambda) v = f5.random_element(rng);
    for (int alpha = 1; alpha <= n * n; ++alpha)
        for (int beta = alpha; beta <= n * n; ++beta) {
            auto [ai, aj] = unflat_index(n, alpha);
            auto [bi, bj] = unflat_index(n, beta);
            auto b = dot(f5, lambda, sigma(f5, unit(f5, n, ai, aj), unit(f5, n, bi, bj)));
            REQUIRE(b == lambda[static_cast<std::size_t>(sym_pos(n, alpha, beta))]);
        }
}

TEST_CASE("jordan_sym_matrix columns and rank") {
    QRing q;
    FpRing f5(5);

    auto j2 = jordan_sym_matrix(q, 2);
    REQUIRE(j2.rows == 4);
    REQUIRE(j2.cols == 10);
    // column of pair {e_11, e_12} is vec(e_12)
    long col = sym_pos_unordered(2, flat_index(2, 1, 1), flat_index(2, 1, 2));
    for (int r = 0; r < 4; ++r) REQUIRE(j2.at(r, static_cast<int>(col)) == vec(unit(q, 2, 1, 2))[static_cast<std::size_t>(r)]);
    // diagonal column of e_11 is vec(2 e_11)
    long dcol = sym_pos(2, 1, 1);
    for (int r = 0; r < 4; ++r)
        REQUIRE(j2.at(r, static_cast<int>(dcol)) == vec(scale(q, q.from_int(2), unit(q, 2, 1, 1)))[static_cast<std::size_t>(r)]);

    CHECK(rank(q, jordan_sym_matrix(q, 3)) == 9);
    CHECK(kernel_of_jordan(f5, 2).size() == 6);
    auto k3 = kernel_of_jordan(q, 3);
    CHECK(k3.size() == 36);
    for (const auto& v : k3) REQUIRE(in_jordan_kernel(q, 3, v));
    // dim ker J = D - n^2 at n = 4 as well
    CHECK(kernel_of_jordan(f5, 4).size() == 136 - 16);
}
