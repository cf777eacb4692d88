#include <doctest.h>

#include "resonf/genericity.hpp"

using namespace resonf;

namespace {

TangentialSet generic4() { return TangentialSet(2, {{30, 30}, {2, -10}, {-34, 31}, {7, 40}}); }

const Catalog& catalog21()
{
    static const Catalog c = enumerate_catalog(2, 1);
    return c;
}

}  // namespace

TEST_CASE("box scan visits exactly the vectors of the box")
{
    for (int m = 1; m <= 3; ++m)
        for (Int mass : {-2, 0, 1}) {
            std::size_t brute = 0;
            IVec v(m, -5);
            while (true) {
                Int l1 = 0, s = 0;
                for (Int x : v) l1 += x < 0 ? -x : x, s += x;
                if (s == mass && l1 >= 1 && l1 <= 5) ++brute;
                int i = 0;
                while (i < m && v[i] == 5) v[i++] = -5;
                if (i == m) break;
                ++v[i];
            }
            auto any = [](const IVec&) { return false; };
            CHECK(scan_box(m, 1, 5, mass, any, false).checked == brute);
            CHECK(scan_box(m, 1, 5, mass, any, true).checked == brute);
        }
}

TEST_CASE("parallel and serial scans report the same witnesses")
{
    auto bad = [](const IVec& a) { return (a[0] + 2 * a[1] - a[2]) % 5 == 0; };
    auto s = scan_box(4, 1, 6, 0, bad, false, 50), p = scan_box(4, 1, 6, 0, bad, true, 50);
    CHECK(s.hits == p.hits);
    CHECK(s.witnesses == p.witnesses);
}

TEST_CASE("a vanishing mass-zero combination of sites is reported")
{
    // v3 - v1 = v4 - v2 = (1,1)
    TangentialSet S(2, {{1, 0}, {0, 1}, {2, 1}, {1, 2}});
    auto v = check_constraint_1(S, 1);
    CHECK_FALSE(v.pass);
    bool item_i = false;
    for (const auto& w : v.violations)
        if (w.item == "i") {
            item_i = true;
            CHECK(mass(w.witness) == 0);
            CHECK(is_zero(momentum(w.witness, S)));
        }
    CHECK(item_i);
    // the set {(1,0),(0,1),(1,1),(2,2)} only has the relation (1,1,-3,1), outside the scanned box
    TangentialSet T(2, {{1, 0}, {0, 1}, {1, 1}, {2, 2}});
    for (const auto& w : check_constraint_1(T, 1).violations) CHECK(w.item != "i");
}

TEST_CASE("the red-radius check never fires on distinct sites for q=1")
{
    TangentialSet S(2, {{1, 0}, {0, 1}, {1, 1}, {2, 2}});
    for (const auto& w : check_constraint_1(S, 1).violations) CHECK(w.item != "iv");
}

TEST_CASE("generic sites pass every constraint family")
{
    auto S = generic4();
    auto r = check_all(S, 1, catalog21());
    for (const auto& v : r.verdicts) {
        INFO(v.name);
        CHECK(v.pass);
        CHECK(v.checked > 0);
    }
    CHECK(r.pass());
}

TEST_CASE("completeness examples")
{
    auto tri = check_completeness_integrability(TangentialSet(2, {{0, 1}, {0, 0}, {1, 0}}), 1);
    CHECK_FALSE(tri.complete);
    CHECK(tri.missing == IVec{1, 1});
    auto rect = check_completeness_integrability(TangentialSet(2, {{0, 1}, {0, 0}, {1, 0}, {1, 1}}), 1);
    CHECK(rect.complete);
    CHECK_FALSE(rect.integrable);
    auto gen = check_completeness_integrability(generic4(), 1);
    CHECK(gen.constraint_pass);
    CHECK(gen.complete);
    CHECK(gen.integrable);
}

TEST_CASE("q=1 completeness agrees with the right-angle oracle")
{
    // (v_a - v_b, v_c - v_b) = 0 forces the fourth corner v_a + v_c - v_b into S.
    std::vector<std::vector<IVec>> sets{{{0, 1}, {0, 0}, {1, 0}},
                                        {{0, 1}, {0, 0}, {1, 0}, {1, 1}},
                                        {{2, 1}, {0, 0}, {-1, 2}, {5, 5}},
                                        {{2, 1}, {0, 0}, {-1, 2}, {1, 3}},
                                        {{3, 0}, {0, 4}, {7, 7}}};
    for (const auto& sites : sets) {
        TangentialSet S(2, sites);
        bool complete = true;
        for (int a = 0; a < S.m(); ++a)
            for (int b = 0; b < S.m(); ++b)
                for (int c = 0; c < S.m(); ++c) {
                    if (b == a || b == c) continue;
                    if (dot(sub(S.site(a), S.site(b)), sub(S.site(c), S.site(b))) != 0) continue;
                    if (!S.contains(sub(add(S.site(a), S.site(c)), S.site(b)))) complete = false;
                }
        CHECK(check_completeness_integrability(S, 1).complete == complete);
    }
}

TEST_CASE("co4 witnesses vanish and the box is monotone")
{
    CHECK(check_constraint_4(TangentialSet(2, {{1, 0}, {0, 1}, {2, 0}}), 1).pass);
    TangentialSet S(2, {{1, 0}, {0, 1}, {2, 0}, {3, 0}});
    auto small = check_constraint_4(S, 1, 4), big = check_constraint_4(S, 1);
    CHECK_FALSE(small.pass);
    CHECK_FALSE(big.pass);
    CHECK(big.failures >= small.failures);
    for (const auto& w : big.violations) {
        CHECK(mass(w.witness) == 0);
        CHECK(is_zero(momentum(w.witness, S)));
    }
}

TEST_CASE("co5 exemptions are exactly a = -2e_i on l = -e_i - e_j for q=1")
{
    int m = 4;
    std::vector<IVec> reds;
    for (const auto& e : enumerate_edges(1, m))
        if (e.color() == Color::Red) reds.push_back(e.coeffs);
    std::size_t exempt = 0;
    scan_box(m, 0, 8, -2, [&](const IVec& a) {
        for (const auto& l : reds) {
            bool listed = false;
            for (int i = 0; i < m; ++i)
                if (l[i] == -1 && a == scale(unit(m, i), -2)) listed = true;
            CHECK(co5_tag(a, l).is_zero() == listed);
            exempt += listed;
        }
        return false;
    }, false);
    CHECK(exempt == 2 * reds.size());
}

TEST_CASE("co5 witnesses satisfy the relation")
{
    TangentialSet S(2, {{1, 0}, {2, 0}, {3, 0}});
    auto v = check_constraint_5(S, 1);
    CHECK_FALSE(v.pass);
    for (const auto& w : v.violations) CHECK(mass(w.witness) == -2);
}

TEST_CASE("collinear sites fail co8 with a graph witness")
{
    TangentialSet S(2, {{1, 0}, {2, 0}, {3, 0}});
    auto r = check_constraint_6_8(S, 1, catalog21());
    REQUIRE(r.size() == 2);
    CHECK(r[1].name == "co8");
    CHECK_FALSE(r[1].pass);
    REQUIRE_FALSE(r[1].violations.empty());
    CHECK_FALSE(r[1].violations[0].graph.empty());
}

TEST_CASE("catalog dimensions must match")
{
    auto c1 = enumerate_catalog(1, 1);
    CHECK_THROWS_AS(check_constraint_6_8(generic4(), 1, c1), InputError);
}

TEST_CASE("co7 passes on generic sites and the pool is reproducible")
{
    std::size_t special = 0;
    auto v = check_constraint_7(generic4(), 1, catalog21(), &special);
    CHECK(v.pass);
    auto a = random_pool(2, 4), b = random_pool(2, 4);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].sites() == b[i].sites());
}
