#include "doctest.h"

#include <cstdint>
#include <random>

#include "gcx/linalg.hpp"
#include "gcx/theorems.hpp"

using namespace gcx;

namespace {

// Plain dense elimination mod p, independent of the library.
int oracle_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
    auto inv = [&](std::int64_t x) {
        std::int64_t r = 1, e = p - 2;
        x %= p;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        while (piv < rows && a[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const std::int64_t iv = inv((a[r][c] % p + p) % p);
        for (int i = r + 1; i < rows; ++i) {
            const std::int64_t f = (a[i][c] % p + p) % p * iv % p;
            if (!f) continue;
            for (int j = c; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

struct Product {
    SparseMatrix m;
    std::vector<std::vector<std::int64_t>> dense;
};

// A (n x inner) times B (inner x n) with entries in [0, range), density `fill`.
Product random_product(int n, int inner, std::uint32_t p, double fill, std::uint64_t seed, Field f) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> val(1, 9);
    std::bernoulli_distribution keep(fill);
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(inner)), b(inner, std::vector<std::int64_t>(n));
    for (auto& row : a)
        for (auto& x : row) x = keep(rng) ? val(rng) : 0;
    for (auto& row : b)
        for (auto& x : row) x = keep(rng) ? val(rng) : 0;
    Product out{SparseMatrix(n, n, f), std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n))};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < inner; ++k) {
            if (!a[i][k]) continue;
            for (int j = 0; j < n; ++j) out.dense[i][j] += a[i][k] * b[k][j];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (f.kind == Field::Kind::prime) out.dense[i][j] %= p;
            if (out.dense[i][j]) out.m.add(i, j, mpq_class(static_cast<long>(out.dense[i][j])));
        }
    out.m.finalize();
    return out;
}

}  // namespace

TEST_CASE("trivial ranks") {
    CHECK(rank(SparseMatrix(5, 7, Field::Fp(32003))) == 0);
    CHECK(rank(SparseMatrix(0, 7)) == 0);
    CHECK(rank(SparseMatrix(7, 0)) == 0);
    for (const Field& f : {Field::Q(), Field::Fp(32003)}) {
        SparseMatrix id(40, 40, f);
        for (int i = 0; i < 40; ++i) id.add(i, i, 1);
        id.finalize();
        CHECK(rank(id) == 40);
    }
}

TEST_CASE("rank of a 50 x 50 product with inner dimension 30") {
    const auto p = random_product(50, 30, 32003, 1.0, 11, Field::Fp(32003));
    const int expect = oracle_rank(p.dense, 32003);
    CHECK(expect == 30);
    CHECK(rank(p.m) == expect);
}

TEST_CASE("sparse elimination path agrees with the dense oracle") {
    const auto p = random_product(700, 260, 65521, 0.02, 5, Field::Fp(65521));
    const int expect = oracle_rank(p.dense, 65521);
    CHECK(expect > 100);
    CHECK(rank(p.m) == expect);
}

TEST_CASE("property: rank over Q equals rank over two primes on small-integer matrices") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int n = 20 + static_cast<int>(seed * 7 % 30);
        const auto p = random_product(n, n / 2 + static_cast<int>(seed % 5), 0, 0.3, seed, Field::Q());
        const int q = rank(p.m);
        CHECK(q == rank_over(p.m, Field::Fp(32003)));
        CHECK(q == rank_over(p.m, Field::Fp(65521)));
        CHECK(q + kernel(p.m).cols() == p.m.cols());
        CHECK(multiply(p.m, kernel(p.m)).is_zero());
    }
    const auto big = random_product(620, 300, 0, 0.01, 3, Field::Q());
    CHECK(rank(big.m) == rank_over(big.m, Field::Fp(32003)));
}

TEST_CASE("a prime dividing an invariant factor lowers the rank") {
    SparseMatrix m(2, 2);
    m.add(0, 0, 1);
    m.add(0, 1, 1);
    m.add(1, 0, 1);
    m.add(1, 1, 3);  // det 2
    m.finalize();
    CHECK(rank(m) == 2);
    CHECK(rank_over(m, Field::Fp(2)) == 1);
}

TEST_CASE("reduction refuses denominators divisible by p") {
    SparseMatrix m(1, 1);
    m.add(0, 0, mpq_class(1, 7));
    m.finalize();
    CHECK_THROWS_AS(m.to_field(Field::Fp(7)), FieldError);
    const SparseMatrix r = m.to_field(Field::Fp(11));
    REQUIRE(r.nnz() == 1);
    CHECK(r.entries()[0].value == 8);  // 7 * 8 = 56 = 1 mod 11
}

TEST_CASE("finalize merges, sorts and drops zeros") {
    SparseMatrix m(3, 3);
    m.add(2, 1, 1);
    m.add(0, 1, 2);
    m.add(2, 1, -1);
    m.add(1, 0, 5);
    m.add(1, 0, 1);
    m.finalize();
    REQUIRE(m.nnz() == 2);
    CHECK(m.entries()[0].row == 1);
    CHECK(m.entries()[0].col == 0);
    CHECK(m.entries()[0].value == 6);
    CHECK(m.entries()[1].col == 1);
    CHECK(m.entries()[1].row == 0);
    SparseMatrix f(1, 1, Field::Fp(5));
    f.add(0, 0, 7);
    f.finalize();
    CHECK(f.entries()[0].value == 2);
}

TEST_CASE("products, stacking and transposes") {
    SparseMatrix a(2, 3), b(3, 2);
    a.add(0, 0, 1);
    a.add(0, 2, 2);
    a.add(1, 1, 3);
    b.add(0, 1, 4);
    b.add(2, 0, 5);
    b.add(1, 1, -1);
    a.finalize();
    b.finalize();
    const SparseMatrix ab = multiply(a, b);
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 2);
    SparseMatrix expect(2, 2);
    expect.add(0, 0, 10);
    expect.add(0, 1, 4);
    expect.add(1, 1, -3);
    expect.finalize();
    CHECK(subtract(ab, expect).is_zero());
    CHECK(transpose(transpose(a)).entries().size() == a.nnz());
    CHECK(subtract(transpose(transpose(a)), a).is_zero());
    const SparseMatrix h = hstack(a, a);
    CHECK(h.cols() == 6);
    CHECK(rank(h) == rank(a));
    CHECK_THROWS(multiply(a, a));
}

TEST_CASE("serialization round trip") {
    SparseMatrix m(3, 4);
    m.add(0, 3, mpq_class(-5, 3));
    m.add(2, 1, 7);
    m.finalize();
    const SparseMatrix back = parse_matrix(serialize_matrix(m));
    CHECK(back.rows() == 3);
    CHECK(back.cols() == 4);
    CHECK(back.field() == m.field());
    CHECK(subtract(back, m).is_zero());
    SparseMatrix f(2, 2, Field::Fp(65521));
    f.add(1, 1, 3);
    f.finalize();
    CHECK(parse_matrix(serialize_matrix(f)).field() == Field::Fp(65521));
}

TEST_CASE("fields") {
    CHECK(parse_field("Q") == Field::Q());
    CHECK(parse_field("Fp:32003") == Field::Fp(32003));
    CHECK(parse_field("65521") == Field::Fp(65521));
    CHECK_THROWS(parse_field("Fp:32004"));
    CHECK_THROWS(parse_field("R"));
    CHECK(Field::Fp(7).tag() == "Fp:7");
}
