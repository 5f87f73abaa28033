#include "doctest.h"

#include "homalg/instances.hpp"
#include "homalg/precy.hpp"

using namespace homalg;
using namespace homalg::instances;

namespace {

OpFamily single(const MultilinearOp& t) {
    OpFamily f;
    f.ops[t.arity()] = t;
    return f;
}

bool has_identity(const CheckReport& r, const std::string& id) {
    for (const auto& e : r.entries)
        if (e.identity == id) return true;
    return false;
}

}  // namespace

TEST_CASE("T = 0 gives the square-zero extension") {
    for (const auto& b : {dual_numbers(), graded_dual_numbers(), acyclic_dg()}) {
        auto p = endomorphism_pair(b);
        auto s = build_precy_from_pair(p, OpFamily{}, 2);
        CHECK(s.algebra.m.get(3) == nullptr);
        CHECK(s.algebra.m.get(5) == nullptr);
        CHECK(check_precy_structure(s, 5).passed());
        CHECK(check_precy_cyclicity(s, 3).passed());
        auto f = check_precy_flags(s, 5);
        CHECK(f.good);
        CHECK(f.manageable);
        CHECK(f.special);
        CHECK_FALSE(f.fine);
        CHECK(has_identity(f.witnesses, "fine"));
    }
}

TEST_CASE("pre-CY structure from End(Q[x]/(x^2)) and a cyclic Rota-Baxter derivation") {
    auto p = endomorphism_pair(dual_numbers());
    auto search = find_cyclic_rb_derivation(p, 3);
    REQUIRE(search.found);
    auto s = build_precy_from_pair(p, single(*search.found), 2);
    REQUIRE(s.algebra.m.get(3) != nullptr);
    CHECK_FALSE(s.algebra.m.get(3)->is_zero());
    CHECK(check_precy_structure(s, 5).passed());
    CHECK(check_precy_cyclicity(s, 5).passed());
    auto f = check_precy_flags(s, 5);
    CHECK(f.good);
    CHECK(f.manageable);
    CHECK(f.special);
}

TEST_CASE("hypotheses are enforced") {
    auto p = endomorphism_pair(dual_numbers());
    SpacePtr av = dual_space(p.acting.space);
    // the first basis operator that is not a cyclic derivation
    MultilinearOp bad("T1", {av}, {p.acting.space}, 0);
    for (size_t i = 0; i < av->dim() && bad.is_zero(); ++i)
        for (size_t j = 0; j < p.acting.space->dim(); ++j) {
            MultilinearOp t("T1", {av}, {p.acting.space}, 0);
            if (av->degree(i) != p.acting.space->degree(j)) continue;
            t.add({static_cast<int>(i)}, {static_cast<int>(j)}, 1);
            if (!check_strong_n_derivation(p, t).passed()) {
                bad = t;
                break;
            }
        }
    REQUIRE_FALSE(bad.is_zero());
    CHECK_THROWS_AS(build_precy_from_pair(p, single(bad), 1), PreconditionError);
    try {
        build_precy_from_pair(p, single(bad), 1);
    } catch (const PreconditionError& e) {
        CHECK_FALSE(e.report.passed());
    }
    // unchecked, the output is not an A-infinity algebra or not cyclic
    auto s = build_precy_from_pair(p, single(bad), 1, false);
    bool both = check_precy_structure(s, 3).passed() && check_precy_cyclicity(s, 3).passed();
    CHECK_FALSE(both);
    MultilinearOp wrong("T1", {p.acting.space}, {p.acting.space}, 0);
    CHECK_THROWS_AS(build_precy_from_pair(p, single(wrong), 1), StructureError);
}

TEST_CASE("flag witnesses") {
    auto p = endomorphism_pair(dual_numbers());
    auto s = build_precy_from_pair(p, OpFamily{}, 1);
    SUBCASE("an m3 on a non-alternating pattern breaks good") {
        const SpacePtr& e = s.sum.space;
        MultilinearOp m3("m3", {e, e, e}, {e}, 1);
        int b0 = s.sum.global(0, 0);
        for (int o = 0; o < static_cast<int>(e->dim()) && m3.is_zero(); ++o)
            for (int x = 0; x < static_cast<int>(e->dim()) && m3.is_zero(); ++x)
                if (e->degree(o) == 2 * e->degree(b0) + e->degree(x) + 1) m3.add({b0, b0, x}, {o}, 1);
        REQUIRE_FALSE(m3.is_zero());
        s.algebra.m.ops[3] = m3;
        auto f = check_precy_flags(s, 3);
        CHECK_FALSE(f.good);
        CHECK(has_identity(f.witnesses, "good"));
        // a single entry has no partner under the pair swap
        CHECK_FALSE(f.special);
    }
    SUBCASE("a product that is not the extension one breaks manageable") {
        MultilinearOp m2 = *s.algebra.m.get(2);
        int b0 = s.sum.global(0, 0);
        int d0 = s.sum.global(1, 0);
        m2.add({d0, b0}, {d0}, 1);
        s.algebra.m.ops[2] = m2;
        auto f = check_precy_flags(s, 3);
        CHECK_FALSE(f.manageable);
    }
}

TEST_CASE("module pairs: zero product") {
    auto p = module_pair(dual_numbers());
    auto s = build_precy_from_pair(p, OpFamily{}, 1);
    CHECK(check_precy_structure(s, 4).passed());
    CHECK(check_precy_cyclicity(s, 3).passed());
    auto f = check_precy_flags(s, 3);
    CHECK(f.good);
    CHECK(f.fine);
    CHECK(f.manageable);
    CHECK(f.special);
}
