#include <doctest.h>

#include <numeric>
#include <random>

#include "lca/fgab.hpp"
#include "support.hpp"

using namespace lca;
using testsupport::SetModel;
using testsupport::abelian_types_up_to;
using testsupport::pick;
using testsupport::subgroup_elems;

namespace {

Mat random_mat(std::mt19937_64& rng, int rows, int cols) {
    Mat a(rows, std::vector<long long>(cols));
    for (auto& row : a)
        for (auto& x : row) x = pick(rng, -9, 9);
    return a;
}

// Product of elementary row operations: swaps, negations, additions.
Mat random_unimodular(std::mt19937_64& rng, int n) {
    Mat u = identity_mat(n);
    for (int step = 0; step < 12; ++step) {
        int i = static_cast<int>(pick(rng, 0, n - 1));
        int j = static_cast<int>(pick(rng, 0, n - 1));
        switch (pick(rng, 0, 2)) {
            case 0:
                std::swap(u[i], u[j]);
                break;
            case 1:
                for (auto& x : u[i]) x = -x;
                break;
            default:
                if (i != j) {
                    long long c = pick(rng, -3, 3);
                    for (int t = 0; t < n; ++t) u[i][t] += c * u[j][t];
                }
        }
    }
    return u;
}

long long det(const Mat& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    long long s = 0, sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(a[r][cc]);
            minor.push_back(std::move(row));
        }
        s += sign * a[0][c] * det(minor);
        sign = -sign;
    }
    return s;
}

// gcd of all k x k minors; 0 when they all vanish.
long long minors_gcd(const Mat& a, int k) {
    std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    std::vector<int> rsel(k), csel(k);
    long long g = 0;
    auto next_subset = [](std::vector<int>& sel, int limit) {
        int k2 = static_cast<int>(sel.size());
        int i = k2 - 1;
        while (i >= 0 && sel[i] == limit - k2 + i) --i;
        if (i < 0) return false;
        ++sel[i];
        for (int j = i + 1; j < k2; ++j) sel[j] = sel[j - 1] + 1;
        return true;
    };
    std::iota(rsel.begin(), rsel.end(), 0);
    do {
        std::iota(csel.begin(), csel.end(), 0);
        do {
            Mat sub(k, std::vector<long long>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[i][j] = a[rsel[i]][csel[j]];
            g = std::gcd(g, det(sub));
        } while (next_subset(csel, static_cast<int>(cols)));
    } while (next_subset(rsel, static_cast<int>(rows)));
    return g;
}

}  // namespace

TEST_CASE("hnf is canonical on the row space") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        int rows = static_cast<int>(pick(rng, 1, 4));
        int cols = static_cast<int>(pick(rng, 1, 4));
        Mat a = random_mat(rng, rows, cols);
        Mat u = random_unimodular(rng, rows);
        CHECK(hnf(a) == hnf(mat_mul(u, a)));
        CHECK(hnf(hnf(a)) == hnf(a));
    }
}

TEST_CASE("hnf shape invariants") {
    Mat h = hnf({{4, 0}, {2, 2}});
    // pivots positive, entry above each pivot reduced
    CHECK(h == Mat{{2, 2}, {0, 4}});
    CHECK(hnf({{0, 0}, {0, 0}}).empty());
}

TEST_CASE("hnf_with_transform returns a left inverse witness") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Mat a = random_mat(rng, static_cast<int>(pick(rng, 1, 4)),
                           static_cast<int>(pick(rng, 1, 4)));
        auto [h, u] = hnf_with_transform(a);
        Mat ua = mat_mul(u, a);
        Mat padded = h;
        while (padded.size() < a.size())
            padded.emplace_back(a[0].size(), 0);
        CHECK(ua == padded);
    }
}

TEST_CASE("left_kernel rows annihilate and span") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = static_cast<int>(pick(rng, 1, 4));
        int cols = static_cast<int>(pick(rng, 1, 4));
        Mat a = random_mat(rng, rows, cols);
        Mat k = left_kernel(a);
        for (const auto& row : k) {
            for (std::size_t c = 0; c < a[0].size(); ++c) {
                long long s = 0;
                for (std::size_t r = 0; r < a.size(); ++r) s += row[r] * a[r][c];
                CHECK(s == 0);
            }
        }
        std::size_t rank = hnf(a).size();
        CHECK(k.size() == a.size() - rank);
    }
}

TEST_CASE("snf matches the gcd-of-minors invariants") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = static_cast<int>(pick(rng, 1, 4));
        int cols = static_cast<int>(pick(rng, 1, 4));
        Mat a = random_mat(rng, rows, cols);
        SnfResult res = snf(a);

        // l * a * r reproduces the diagonal
        CHECK(mat_mul(mat_mul(res.l, a), res.r) == res.s);

        std::vector<long long> diag;
        for (std::size_t i = 0; i < res.s.size() && i < res.s[0].size(); ++i)
            if (res.s[i][i] != 0) diag.push_back(std::llabs(res.s[i][i]));
        for (std::size_t i = 0; i + 1 < diag.size(); ++i)
            CHECK(diag[i + 1] % diag[i] == 0);

        long long prev = 1;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            long long g = minors_gcd(a, static_cast<int>(i) + 1);
            REQUIRE(g != 0);
            CHECK(diag[i] == g / prev);
            prev = g;
        }
        if (diag.size() < std::min(a.size(), a[0].size()))
            CHECK(minors_gcd(a, static_cast<int>(diag.size()) + 1) == 0);
    }
}

TEST_CASE("from_orders canonicalizes to invariant factors") {
    CHECK(FgAbGroup::from_orders(0, {4, 9}) == FgAbGroup::from_orders(0, {36}));
    CHECK(FgAbGroup::from_orders(0, {2, 3}).torsion_orders == std::vector<long long>{6});
    CHECK(FgAbGroup::from_orders(0, {2, 3, 4}).torsion_orders == std::vector<long long>{2, 12});
    CHECK(FgAbGroup::from_orders(0, {1, 1, 5}).torsion_orders == std::vector<long long>{5});
    CHECK(FgAbGroup::from_orders(2, {}).rank == 2);
    CHECK(FgAbGroup::from_orders(0, {8}).order() == 8);
}

TEST_CASE("zero and full subgroups") {
    auto g = FgAbGroup::from_orders(0, {4});
    CHECK(sub_zero(g).basis == Mat{{4}});
    CHECK(member({0}, sub_zero(g)));
    CHECK(member({4}, sub_zero(g)));
    CHECK(!member({2}, sub_zero(g)));
    CHECK(subgroup_index(sub_zero(g), sub_full(g)) == 4);
    CHECK(quotient_group(sub_from_generators(g, {{2}})) == FgAbGroup::from_orders(0, {2}));
}

TEST_CASE("socle and frattini of Z4 x Z2") {
    auto g = FgAbGroup::from_orders(0, {2, 4});
    SetModel m(g);
    auto soc = subgroup_elems(m, socle(g, 2));
    CHECK(soc.size() == 4);
    for (const auto& v : soc) CHECK(m.reduce({2 * v[0], 2 * v[1]}) == std::vector<long long>{0, 0});

    auto frat = subgroup_elems(m, frattini(g));
    // squares of the generators: only the order-4 coordinate contributes
    CHECK(frat.size() == 2);
    for (const auto& v : frat) CHECK(v[0] == 0);
}

TEST_CASE("subgroup arithmetic agrees with the set model") {
    std::mt19937_64 rng(17);
    long long checked_pairs = 0;
    for (const auto& orders : abelian_types_up_to(60)) {
        auto g = FgAbGroup::from_orders(0, orders);
        SetModel m(g);
        if (m.elems.empty()) continue;
        for (int trial = 0; trial < 6; ++trial) {
            Mat gens_x, gens_y;
            for (int i = 0; i < 2; ++i) {
                gens_x.push_back(m.elems[pick(rng, 0, m.elems.size() - 1)]);
                gens_y.push_back(m.elems[pick(rng, 0, m.elems.size() - 1)]);
            }
            auto x = sub_from_generators(g, gens_x);
            auto y = sub_from_generators(g, gens_y);
            auto ex = m.closure(gens_x);
            auto ey = m.closure(gens_y);

            CHECK(subgroup_elems(m, x) == ex);

            Mat both(ex.begin(), ex.end());
            both.insert(both.end(), ey.begin(), ey.end());
            CHECK(subgroup_elems(m, sub_sum(x, y)) == m.closure(both));

            std::set<std::vector<long long>> em;
            for (const auto& v : ex)
                if (ey.count(v)) em.insert(v);
            CHECK(subgroup_elems(m, sub_meet(x, y)) == em);

            CHECK(sub_leq(sub_meet(x, y), x));
            CHECK(sub_leq(x, sub_sum(x, y)));
            CHECK(subgroup_index(x, sub_full(g)) == m.elems.size() / ex.size());
            ++checked_pairs;
        }
    }
    CHECK(checked_pairs > 500);
}

TEST_CASE("all_elements enumerates exactly order() tuples") {
    auto g = FgAbGroup::from_orders(0, {2, 6});
    auto elems = all_elements(g);
    CHECK(elems.size() == 12);
    CHECK(FgAbGroup::free_group(1).finite() == false);
    CHECK_THROWS_AS(all_elements(FgAbGroup::free_group(1)), std::domain_error);
}
