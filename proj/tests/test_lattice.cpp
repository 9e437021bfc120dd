#include <doctest.h>

#include "lca/lattice.hpp"
#include "support.hpp"

using namespace lca;

namespace {

// Chain 0 < a_1 < ... < a_k < 1 with one incomparable side element b.
// Contains a pentagon exactly when k >= 2.
Lattice chain_with_side(int k) {
    int n = k + 3;  // bottom, chain, top, side
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    int bot = 0, top = k + 1, side = k + 2;
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (int i = 0; i <= k + 1; ++i)
        for (int j = i; j <= k + 1; ++j) leq[i][j] = true;
    leq[bot][side] = true;
    leq[side][top] = true;
    return Lattice::from_leq(leq);
}

}  // namespace

TEST_CASE("subgroup counts of small groups") {
    CHECK(subgroup_lattice(FgAbGroup::from_orders(0, {2, 2})).size() == 5);
    CHECK(subgroup_lattice(FgAbGroup::from_orders(0, {3, 3})).size() == 6);
    CHECK(subgroup_lattice(FgAbGroup::from_orders(0, {2, 4})).size() == 8);
    CHECK(subgroup_lattice(FgAbGroup::from_orders(0, {8})).size() == 4);
    CHECK(subgroup_lattice(FgAbGroup::from_orders(0, {})).size() == 1);
}

TEST_CASE("tables agree with the order relation") {
    auto l = subgroup_lattice(FgAbGroup::from_orders(0, {2, 4}));
    for (std::uint32_t a = 0; a < l.size(); ++a)
        for (std::uint32_t b = 0; b < l.size(); ++b) {
            std::uint32_t j = l.join[a][b];
            std::uint32_t m = l.meet[a][b];
            CHECK(l.leq(a, j));
            CHECK(l.leq(b, j));
            CHECK(l.leq(m, a));
            CHECK(l.leq(m, b));
            CHECK(sub_leq(l.subgroups[m], l.subgroups[a]));
            CHECK(sub_sum(l.subgroups[a], l.subgroups[b]) == l.subgroups[j]);
            CHECK(sub_meet(l.subgroups[a], l.subgroups[b]) == l.subgroups[m]);
        }
    CHECK(l.subgroups[l.top()] == sub_full(FgAbGroup::from_orders(0, {2, 4})));
    CHECK(l.subgroups[l.bottom()] == sub_zero(FgAbGroup::from_orders(0, {2, 4})));
}

TEST_CASE("every abelian group of order at most 32 has a modular lattice") {
    for (const auto& orders : testsupport::abelian_types_up_to(32)) {
        auto g = FgAbGroup::from_orders(0, orders);
        auto l = subgroup_lattice(g);
        CAPTURE(g.order());
        CHECK(!check_modular_law(l).has_value());
        CHECK(!find_pentagon(l).has_value());
    }
}

TEST_CASE("the five-element non-modular lattice is caught") {
    auto n5 = chain_with_side(2);
    REQUIRE(n5.size() == 5);

    auto viol = check_modular_law(n5);
    REQUIRE(viol.has_value());
    CHECK(n5.leq(viol->a, viol->c));
    CHECK(n5.join[viol->a][n5.meet[viol->b][viol->c]] !=
          n5.meet[n5.join[viol->a][viol->b]][viol->c]);

    auto pent = find_pentagon(n5);
    REQUIRE(pent.has_value());
    CHECK(n5.leq(pent->a, pent->c));
    CHECK(pent->a != pent->c);
    CHECK(n5.join[pent->a][pent->b] == pent->top);
    CHECK(n5.join[pent->c][pent->b] == pent->top);
    CHECK(n5.meet[pent->a][pent->b] == pent->bottom);
    CHECK(n5.meet[pent->c][pent->b] == pent->bottom);
}

TEST_CASE("chains with a side element pivot on length two") {
    CHECK(!find_pentagon(chain_with_side(1)).has_value());
    CHECK(!check_modular_law(chain_with_side(1)).has_value());
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(find_pentagon(chain_with_side(k)).has_value());
        CHECK(check_modular_law(chain_with_side(k)).has_value());
    }
}

TEST_CASE("the diamond is modular") {
    // 0, three incomparable atoms, 1
    std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
    for (int i = 0; i < 5; ++i) leq[i][i] = true;
    for (int i = 1; i <= 3; ++i) {
        leq[0][i] = true;
        leq[i][4] = true;
    }
    leq[0][4] = true;
    auto m3 = Lattice::from_leq(leq);
    CHECK(!check_modular_law(m3).has_value());
    CHECK(!find_pentagon(m3).has_value());
}

TEST_CASE("from_leq rejects a bound-free poset") {
    // two maximal elements: no least upper bound for the antichain
    std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
    for (int i = 0; i < 3; ++i) leq[i][i] = true;
    leq[0][1] = true;
    leq[0][2] = true;
    CHECK_THROWS_AS(Lattice::from_leq(leq), std::invalid_argument);
}

TEST_CASE("bounds are enforced") {
    try {
        subgroup_lattice(FgAbGroup::from_orders(0, {2, 2, 2, 2, 2, 2}), 100);
        FAIL("expected TooLarge");
    } catch (const TooLarge& e) {
        CHECK(e.bound == 100);
        CHECK(e.value > 100);
    }
    CHECK_THROWS_AS(subgroup_lattice(FgAbGroup::from_orders(0, {251}), 250), TooLarge);
    CHECK_THROWS_AS(subgroup_lattice(FgAbGroup::free_group(1)), std::domain_error);
}
