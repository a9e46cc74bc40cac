#include "doctest.h"

#include <random>

#include "gcx/brute.hpp"
#include "gcx/canonical.hpp"
#include "gcx/complexes.hpp"
#include "helpers.hpp"

using namespace gcx;
using gcx::test::make;

namespace {
const OrientationRecipe gc2 = recipe_of({Family::GC, 2});
const OrientationRecipe gc3 = recipe_of({Family::GC, 3});
}  // namespace

TEST_CASE("triangle is zero for even d and nonzero for odd d") {
    const LabeledGraph t = test::polygon(3);
    CHECK(canonicalize(t, gc2).is_zero);
    CHECK_FALSE(canonicalize(t, gc3).is_zero);
    CHECK(brute::canonicalize(t, gc2).is_zero);
    CHECK_FALSE(brute::canonicalize(t, gc3).is_zero);
}

TEST_CASE("canonical representative is a fixed point") {
    for (const OrientationRecipe& r : {gc2, gc3}) {
        const CanonicalResult full = canonicalize_full(test::tetrahedron(), r);
        REQUIRE_FALSE(full.form.is_zero);
        const CanonicalForm again = canonicalize(full.graph, r);
        CHECK(again.encoding == full.form.encoding);
        CHECK(again.sign == 1);
        CHECK(encode(full.graph) == full.form.encoding);
    }
}

TEST_CASE("tetrahedron under an even edge permutation, d even") {
    const LabeledGraph t = test::tetrahedron();
    // edges listed as (e2, e0, e1, e5, e3, e4): two 3-cycles, so even
    const LabeledGraph h = make(4, {{0, 3}, {0, 1}, {0, 2}, {2, 3}, {1, 2}, {1, 3}});
    const CanonicalForm a = canonicalize(t, gc2), b = canonicalize(h, gc2);
    CHECK(a.encoding == b.encoding);
    CHECK(a.sign == b.sign);
    // swapping two edges in the list is odd
    LabeledGraph s = t;
    std::swap(s.edges[0], s.edges[1]);
    CHECK(canonicalize(s, gc2).sign == -a.sign);
    // reversing a dotted edge is free for d even
    LabeledGraph f = t;
    std::swap(f.edges[2].tail, f.edges[2].head);
    CHECK(canonicalize(f, gc2).sign == a.sign);
}

TEST_CASE("odd d: vertices are odd and reversal costs a sign") {
    const LabeledGraph t = test::tetrahedron();
    const CanonicalForm a = canonicalize(t, gc3);
    LabeledGraph f = t;
    std::swap(f.edges[2].tail, f.edges[2].head);
    CHECK(canonicalize(f, gc3).sign == -a.sign);
    LabeledGraph s = t;
    std::swap(s.edges[0], s.edges[1]);
    CHECK(canonicalize(s, gc3).sign == a.sign);
    // transposing the labels 0 and 1
    const LabeledGraph h = make(4, {{1, 0}, {1, 2}, {1, 3}, {0, 2}, {0, 3}, {2, 3}});
    CHECK(canonicalize(h, gc3).sign == -a.sign);
}

TEST_CASE("parallel odd edges vanish") {
    CHECK(canonicalize(make(2, {{0, 1}, {0, 1}, {0, 1}}), gc2).is_zero);
    CHECK_FALSE(canonicalize(make(2, {{0, 1}, {0, 1}, {0, 1}}), gc3).is_zero);
}

TEST_CASE("word sign") {
    CHECK(word_sign({0, 1}, {true, true}) == 1);
    CHECK(word_sign({1, 0}, {true, true}) == -1);
    CHECK(word_sign({1, 0}, {true, false}) == 1);
    CHECK(word_sign({2, 0, 1}, {true, true, true}) == 1);
}

TEST_CASE("property: relabeling equivariance") {
    std::mt19937_64 rng(7);
    const std::vector<ComplexId> ids{{Family::GC, 2}, {Family::GC, 3}, {Family::dGC, 2}, {Family::dGC, 3},
                                     {Family::rdGC4edge, 3}, {Family::GC_lambda_t, 2}, {Family::hatOGC, 3}};
    int nonzero = 0;
    for (int iter = 0; iter < 600; ++iter) {
        const ComplexId c = ids[iter % ids.size()];
        const OrientationRecipe r = recipe_of(c);
        const int n = 2 + static_cast<int>(rng() % 5);
        const int m = n - 1 + static_cast<int>(rng() % 4);
        const LabeledGraph g = brute::random_graph(c, n, m, rng);
        const brute::Relabeling h = brute::random_relabel(g, r, rng);
        const CanonicalForm fg = canonicalize(g, r), fh = canonicalize(h.graph, r);
        CHECK(fg.is_zero == fh.is_zero);
        if (fg.is_zero) continue;
        ++nonzero;
        CHECK(fg.encoding == fh.encoding);
        CHECK(fg.sign == h.sign * fh.sign);
    }
    CHECK(nonzero > 100);
}

TEST_CASE("oracle: canonical signs agree with the all-permutations oracle") {
    const brute::FuzzReport r = brute::fuzz_canonicalize(2000, 99);
    CHECK(r.cases == 2000);
    INFO(r.first_failure);
    CHECK(r.ok());
}
