#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "jordet/linalg.hpp"

using namespace jordet;

namespace {

template <class R>
Matrix<R> from_ints(const R& ring, std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    Matrix<R> m(ring, r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) m.at(i, j++) = ring.from_int(v);
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("rref on the spec examples") {
    QRing q;
    FpRing f5(5);

    auto id3 = identity(q, 3);
    auto r1 = rref(q, id3);
    CHECK(r1.rank == 3);
    CHECK(r1.pivot_cols == std::vector<int>{0, 1, 2});
    CHECK(equal(q, r1.reduced, id3));

    Matrix<FpRing> z(f5, 2, 4);
    auto r2 = rref(f5, z);
    CHECK(r2.rank == 0);
    CHECK(r2.pivot_cols.empty());

    auto prop = from_ints(q, {{1, 2}, {2, 4}});
    auto r3 = rref(q, prop);
    CHECK(r3.rank == 1);
    CHECK(r3.pivot_cols == std::vector<int>{0});
    CHECK(r3.reduced.at(0, 1) == q.from_int(2));
    CHECK(q.is_zero(r3.reduced.at(1, 0)));
}

TEST_CASE("rref idempotence and row/column rank agreement") {
    FpRing f7(7);
    QRing q;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        Matrix<FpRing> m(f7, 4 + static_cast<int>(rng() % 3), 3 + static_cast<int>(rng() % 4));
        for (auto& v : m.a) v = f7.random_element(rng);
        auto r = rref(f7, m);
        auto rr = rref(f7, r.reduced);
        REQUIRE(equal(f7, rr.reduced, r.reduced));
        REQUIRE(r.rank == rank(f7, transpose(f7, m)));
    }
    for (int t = 0; t < 30; ++t) {
        Matrix<QRing> m(q, 4, 5);
        for (auto& v : m.a) v = q.random_element(rng);
        auto r = rref(q, m);
        REQUIRE(equal(q, rref(q, r.reduced).reduced, r.reduced));
        REQUIRE(r.rank == rank(q, transpose(q, m)));
    }
}

TEST_CASE("solve_linear on the spec examples") {
    QRing q;
    FpRing f5(5);

    auto sol1 = solve_linear(q, identity(q, 2), {q.from_int(1), q.from_int(2)});
    REQUIRE(sol1.has_value());
    CHECK(sol1->particular == Vec<QRing>{q.from_int(1), q.from_int(2)});
    CHECK(sol1->kernel_basis.empty());

    auto sol2 = solve_linear(f5, from_ints(f5, {{1, 1}}), {f5.zero()});
    REQUIRE(sol2.has_value());
    CHECK(sol2->particular == Vec<FpRing>{0, 0});
    CHECK(sol2->kernel_basis.size() == 1);

    auto sol3 = solve_linear(q, from_ints(q, {{1}, {1}}), {q.from_int(0), q.from_int(1)});
    CHECK_FALSE(sol3.has_value());

    CHECK_THROWS_AS(solve_linear(q, identity(q, 2), {q.from_int(1)}), DimensionMismatch);
}

TEST_CASE("solve_linear postconditions on random systems") {
    FpRing f7(7);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 80; ++t) {
        int rows = 2 + static_cast<int>(rng() % 5), cols = 2 + static_cast<int>(rng() % 5);
        Matrix<FpRing> a(f7, rows, cols);
        for (auto& v : a.a) v = f7.random_element(rng);
        Vec<FpRing> b(static_cast<std::size_t>(rows));
        for (auto& v : b) v = f7.random_element(rng);
        auto sol = solve_linear(f7, a, b);
        if (!sol) continue;
        for (int i = 0; i < rows; ++i) {
            auto acc = f7.zero();
            for (int j = 0; j < cols; ++j) acc = f7.add(acc, f7.mul(a.at(i, j), sol->particular[static_cast<std::size_t>(j)]));
            REQUIRE(acc == b[static_cast<std::size_t>(i)]);
        }
        for (const auto& k : sol->kernel_basis)
            for (int i = 0; i < rows; ++i) {
                auto acc = f7.zero();
                for (int j = 0; j < cols; ++j) acc = f7.add(acc, f7.mul(a.at(i, j), k[static_cast<std::size_t>(j)]));
                REQUIRE(acc == 0);
            }
        REQUIRE(static_cast<int>(sol->kernel_basis.size()) == cols - rank(f7, a));
    }
}

TEST_CASE("span accumulator basics") {
    QRing q;
    SpanAccumulator<QRing> acc(3);
    CHECK(acc.insert(q, {q.from_int(1), q.zero(), q.zero()}));
    CHECK(acc.rank() == 1);
    CHECK_FALSE(acc.insert(q, {q.from_int(2), q.zero(), q.zero()}));
    CHECK(acc.rank() == 1);
    CHECK(acc.insert(q, {q.zero(), q.from_int(1), q.zero()}));
    CHECK(acc.rank() == 2);

    CHECK(acc.contains(q, {q.from_int(3), q.from_int(-2), q.zero()}));
    CHECK_FALSE(acc.contains(q, {q.zero(), q.zero(), q.from_int(1)}));

    SpanAccumulator<QRing> empty(4);
    CHECK(empty.contains(q, Vec<QRing>(4, q.zero())));
    CHECK_THROWS_AS(empty.contains(q, Vec<QRing>(3, q.zero())), DimensionMismatch);
}

TEST_CASE("span rank and basis are insertion-order independent") {
    FpRing f5(5);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        std::vector<Vec<FpRing>> vs;
        int dim = 6;
        for (int i = 0; i < 8; ++i) {
            Vec<FpRing> v(static_cast<std::size_t>(dim));
            for (auto& x : v) x = f5.random_element(rng);
            vs.push_back(std::move(v));
        }
        SpanAccumulator<FpRing> a1(dim);
        for (const auto& v : vs) a1.insert(f5, v);
        auto shuffled = vs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        SpanAccumulator<FpRing> a2(dim);
        for (const auto& v : shuffled) a2.insert(f5, v);
        REQUIRE(a1.rank() == a2.rank());
        REQUIRE(a1.basis() == a2.basis()); // rref basis is canonical
        // merging is another insertion order
        SpanAccumulator<FpRing> a3(dim);
        a3.merge(f5, a2);
        REQUIRE(a3.basis() == a1.basis());
    }
}

TEST_CASE("null_space returns a canonical basis of the kernel") {
    FpRing f7(7);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        int rows = 3, ambient = 6;
        std::vector<Vec<FpRing>> rs;
        for (int i = 0; i < rows; ++i) {
            Vec<FpRing> v(static_cast<std::size_t>(ambient));
            for (auto& x : v) x = f7.random_element(rng);
            rs.push_back(std::move(v));
        }
        auto ns = null_space(f7, rs, ambient);
        Matrix<FpRing> m(f7, rows, ambient);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < ambient; ++j) m.at(i, j) = rs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        REQUIRE(static_cast<int>(ns.size()) == ambient - rank(f7, m));
        for (const auto& v : ns)
            for (const auto& r : rs) REQUIRE(dot(f7, r, v) == 0);
    }
}
