#include "doctest.h"

#include "homalg/multiop.hpp"

#include <random>

using namespace homalg;

namespace {

SpacePtr graded_space() { return make_space("V", {{"a", 0}, {"b", 1}, {"c", 1}, {"d", 2}}); }

// A random homogeneous map V^n -> V of the given degree with small integer coefficients.
MultilinearOp random_op(const SpacePtr& v, int n, int degree, unsigned seed) {
    std::mt19937 rng(seed);
    MultilinearOp op("f", std::vector<SpacePtr>(n, v), {v}, degree);
    for (const auto& k : all_keys(op.domain())) {
        int d = tensor_degree(op.domain(), k) + degree;
        for (int o = 0; o < static_cast<int>(v->dim()); ++o)
            if (v->degree(o) == d && rng() % 2) op.add(k, {o}, static_cast<int>(rng() % 5) - 2);
    }
    return op;
}

}  // namespace

TEST_CASE("degree mismatch is rejected") {
    auto v = graded_space();
    MultilinearOp op("f", {v}, {v}, 0);
    CHECK_THROWS_AS(op.add({0}, {1}, 1), DegreeError);
    op.add({1}, {2}, 3);
    CHECK(op.coefficient({1}, {2}) == 3);
    op.add({1}, {2}, -3);
    CHECK(op.is_zero());
}

TEST_CASE("tensor product of maps follows the Koszul rule") {
    auto v = graded_space();
    auto f = random_op(v, 1, 1, 1);
    auto g = random_op(v, 1, 1, 2);
    Layer layer{Factor::of(f), Factor::of(g)};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            TensorVec got = apply_layer(layer, Key{x, y}, {v->degree(x), v->degree(y)});
            TensorVec expect;
            for (const auto& [fo, fc] : f.apply({{{x}, 1}}))
                for (const auto& [go, gc] : g.apply({{{y}, 1}}))
                    add_term(expect, {fo[0], go[0]}, fc * gc * parity_sign(g.degree() * v->degree(x)));
            CHECK(got == expect);
        }
}

TEST_CASE("permuting inputs is a group action") {
    auto v = graded_space();
    auto f = random_op(v, 3, 1, 3);
    for (const auto& s : all_permutations(3))
        for (const auto& t : all_permutations(3))
            CHECK(permute_inputs(permute_inputs(f, s), t) == permute_inputs(f, compose(s, t)));
    CHECK(permute_inputs(f, identity_permutation(3)) == f);
}

TEST_CASE("permuting a tensor twice composes") {
    auto v = graded_space();
    std::vector<SpacePtr> slots(3, v);
    TensorVec x;
    for (const auto& k : all_keys(slots)) add_term(x, k, static_cast<int>(k[0] + 2 * k[1] - k[2]));
    for (const auto& s : all_permutations(3))
        for (const auto& t : all_permutations(3))
            CHECK(permute_tensor(permute_tensor(x, slots, t), slots, s) == permute_tensor(x, slots, compose(s, t)));
}

TEST_CASE("partial composition matches direct evaluation") {
    auto v = graded_space();
    auto outer = random_op(v, 3, 1, 5);
    auto inner = random_op(v, 2, -1, 6);
    for (int pos = 0; pos < 3; ++pos) {
        auto c = insert_compose(outer, inner, pos, 1);
        CHECK(c.arity() == 4);
        CHECK(c.degree() == 0);
        for (const auto& k : all_keys(c.domain())) {
            // direct: (-1)^{|inner| * (degrees before pos)} outer(.., inner(..), ..), times the extra -1
            Key pre(k.begin(), k.begin() + pos), mid(k.begin() + pos, k.begin() + pos + 2), post(k.begin() + pos + 2, k.end());
            TensorVec expect;
            int before = 0;
            for (int x : pre) before += v->degree(x);
            for (const auto& [o, cval] : inner.apply({{mid, 1}})) {
                Key ok = pre;
                ok.push_back(o[0]);
                ok.insert(ok.end(), post.begin(), post.end());
                add_scaled(expect, outer.apply({{ok, 1}}), -cval * parity_sign(inner.degree() * before));
            }
            const TensorVec* got = c.lookup(k);
            CHECK((got ? *got : TensorVec{}) == expect);
        }
    }
    CHECK_THROWS_AS(insert_compose(outer, inner, 3, 0), StructureError);
}

TEST_CASE("sum of operations") {
    auto v = graded_space();
    auto f = random_op(v, 2, 0, 9);
    auto s = sum_ops({{Scalar(1), &f}, {Scalar(-1), &f}});
    CHECK(s.is_zero());
    auto g = random_op(v, 2, 1, 9);
    CHECK_THROWS_AS(sum_ops({{Scalar(1), &f}, {Scalar(1), &g}}), StructureError);
}

TEST_CASE("conjugation by a permutation") {
    auto v = graded_space();
    MultilinearOp br("br", {v, v}, {v, v}, 1);
    br.add({0, 1}, {1, 1}, 1);
    br.add({1, 2}, {3, 1}, 2);
    auto c = conjugate(conjugate(br, {1, 0}), {1, 0});
    CHECK(c == br);
}
