#include <doctest.h>

#include <map>
#include <set>

#include "qfscan/bt_orbital.hpp"
#include "qfscan/fields.hpp"
#include "qfscan/ingest.hpp"

using namespace qfscan;
using namespace qfscan::bt_orbital;

TEST_CASE("tree enumeration sizes and dedup") {
    CHECK(enumerate_tree(2, 1).size() == 4);
    CHECK(enumerate_tree(3, 2).size() == 17);
    CHECK(enumerate_tree(5, 3).size() == 187);
    CHECK_THROWS_AS(enumerate_tree(2, 13), SizeGuardError);

    // BFS agrees with the closed sphere sizes level by level
    for (i64 p : {2LL, 3LL, 5LL}) {
        auto verts = enumerate_tree(p, 4);
        std::map<int, u64> by_level;
        for (auto& v : verts) ++by_level[v.level];
        for (int n = 0; n <= 4; ++n) CHECK(by_level[n] == sphere_size(p, n));
        // and with the direct parametrization: primitive [[p^i, c], [0, p^j]]
        std::set<std::tuple<i64, i64, i64>> bfs;
        for (auto& v : verts) bfs.insert({v.a, v.b, v.c});
        u64 direct = 0;
        for (int n = 0; n <= 4; ++n)
            for (int i = 0; i <= n; ++i) {
                i64 a = 1, b = 1;
                for (int k = 0; k < i; ++k) a *= p;
                for (int k = 0; k < n - i; ++k) b *= p;
                for (i64 c = 0; c < a; ++c) {
                    if (i > 0 && n - i > 0 && c % p == 0) continue;
                    ++direct;
                    CHECK(bfs.count({a, b, c}) == 1);
                }
            }
        CHECK(direct == verts.size());
    }
}

TEST_CASE("closed form evaluations") {
    CHECK(orbital_closed_form(3, 2, false) == 17);
    CHECK(orbital_closed_form(7, 0, false) == 1);
    CHECK(orbital_closed_form(2, 0, false) == 1);
    CHECK(orbital_closed_form(3, 1, true) == 8);
    CHECK(orbital_closed_form(3, 1, false) == 5);
    CHECK(orbital_closed_form(5, 1, false) == 7);
}

TEST_CASE("local type classification") {
    // disc = -36 = 3^2 * (-4): valuation 2, unit part -4 nonsquare mod 3
    Mat2 g{{{0, -10}, {1, 2}}};
    auto t = local_type(g, 3);
    CHECK(t.type == SplittingType::Unramified);
    CHECK(t.disc_valuation == 2);
    CHECK(t.conductor == 1);

    // disc = -3: ramified at 3, conductor 0
    Mat2 r{{{0, -1}, {1, 1}}};
    auto tr = local_type(r, 3);
    CHECK(tr.type == SplittingType::Ramified);
    CHECK(tr.conductor == 0);

    // split: disc = 1
    Mat2 s{{{0, -2}, {1, 3}}};
    CHECK(local_type(s, 3).type == SplittingType::Split);
    CHECK(local_type(s, 5).type == SplittingType::Split);

    Mat2 nonreg{{{1, 1}, {0, 1}}};
    CHECK_THROWS_AS(local_type(nonreg, 3), DomainError);
}

TEST_CASE("fixed-vertex count: direct hand-checkable cases") {
    // valuation-2 unramified at p = 3 fixes the radius-1 ball: 5 vertices,
    // the conductor-1 closed form (not the valuation-2 one)
    Mat2 g{{{0, -10}, {1, 2}}};
    auto fc = count_fixed_vertices(g, 3, 6);
    CHECK_FALSE(fc.split_signal);
    CHECK(fc.count == 5);
    CHECK((i64)fc.count == orbital_closed_form(3, local_type(g, 3).conductor, false));

    // conductor-0 ramified at p = 3 fixes an edge: 2 vertices
    Mat2 r{{{0, -1}, {1, 1}}};
    CHECK(count_fixed_vertices(r, 3, 4).count == 2);

    // split element signals instead of counting
    Mat2 s{{{0, -2}, {1, 3}}};
    CHECK(count_fixed_vertices(s, 3, 4).split_signal);

    // det must be a unit
    Mat2 bad{{{0, -3}, {1, 3}}};
    CHECK_THROWS_AS(count_fixed_vertices(bad, 3, 4), DomainError);
}

TEST_CASE("oracle equality: tree count equals the closed form") {
    for (i64 p : {2LL, 3LL, 5LL}) {
        for (int c = 0; c <= 2; ++c) {
            for (int variant = 0; variant < 3; ++variant) {
                Mat2 g = centered_elliptic(p, c, variant);
                auto lt = local_type(g, p);
                CHECK(lt.type == SplittingType::Unramified);
                CHECK(lt.conductor == c);
                auto fc = count_fixed_vertices(g, p, c + 2);
                CHECK((i64)fc.count == orbital_closed_form(p, c, false));
            }
        }
    }
}

TEST_CASE("depth stability at d_gamma + 2 versus d_gamma + 4") {
    for (i64 p : {2LL, 3LL}) {
        for (int c = 0; c <= 2; ++c) {
            Mat2 g = centered_elliptic(p, c, 0);
            CHECK(count_fixed_vertices(g, p, c + 2).count ==
                  count_fixed_vertices(g, p, c + 4).count);
        }
    }
}

TEST_CASE("conjugation invariance") {
    // k in GL2(Z) with unit determinant and integral inverse
    std::vector<Mat2> ks = {Mat2{{{1, 1}, {0, 1}}}, Mat2{{{0, 1}, {-1, 0}}},
                            Mat2{{{2, 1}, {1, 1}}}};
    for (i64 p : {2LL, 3LL, 5LL}) {
        for (int c = 0; c <= 1; ++c) {
            Mat2 g = centered_elliptic(p, c, 1);
            u64 base = count_fixed_vertices(g, p, 2 * c + 3).count;
            for (const auto& k : ks) {
                i64 det = k.det();
                REQUIRE((det == 1 || det == -1));
                // k g k^{-1} with k^{-1} = adj(k)/det
                Mat2 adj{{{k.e[1][1], -k.e[0][1]}, {-k.e[1][0], k.e[0][0]}}};
                Mat2 kg{};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        kg.e[i][j] = 0;
                        for (int l = 0; l < 2; ++l) kg.e[i][j] += k.e[i][l] * g.e[l][j];
                    }
                Mat2 conj{};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        conj.e[i][j] = 0;
                        for (int l = 0; l < 2; ++l) conj.e[i][j] += kg.e[i][l] * adj.e[l][j];
                        conj.e[i][j] /= det;
                    }
                // deeper window: conjugation can move the fixed ball off-center
                CHECK(count_fixed_vertices(conj, p, 2 * c + 3).count == base);
            }
        }
    }
}

TEST_CASE("conductor zero fixes exactly the root class") {
    for (i64 p : {2LL, 3LL, 5LL, 7LL})
        for (int variant = 0; variant < 3; ++variant)
            CHECK(count_fixed_vertices(centered_elliptic(p, 0, variant), p, 3).count == 1);
}

TEST_CASE("ramified closed form against the tree (experimental path)") {
    for (i64 p : {3LL, 5LL}) {
        for (int c = 0; c <= 1; ++c) {
            for (int variant = 0; variant < 3; ++variant) {
                Mat2 g = ramified_elliptic(p, c, variant);
                auto lt = local_type(g, p);
                CHECK(lt.type == SplittingType::Ramified);
                CHECK(lt.conductor == c);
                auto fc = count_fixed_vertices(g, p, 2 * c + 2);
                CHECK((i64)fc.count == orbital_closed_form(p, c, true));
            }
        }
    }
    CHECK_THROWS_AS(ramified_elliptic(2, 0, 0), UnsupportedRegimeError);
}

TEST_CASE("split local orbital values") {
    CHECK(split_local_orbital(7, 0, 1).value == doctest::Approx(1.0));
    CHECK(split_local_orbital(3, 1, 1).value == doctest::Approx(3.0));
    CHECK(split_local_orbital(5, 0, 5).value == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(split_local_orbital(3, 6, 3, 1).value == doctest::Approx(3.0));  // val(6-3) = 1
    CHECK_THROWS_AS(split_local_orbital(3, 4, 4, 1), DomainError);
}

TEST_CASE("dot export lists the fixed ball") {
    Mat2 g = centered_elliptic(3, 1, 0);
    auto dot = fixed_subtree_dot(g, 3, 3);
    CHECK(dot.find("graph fixed_subtree") != std::string::npos);
    // 5 fixed vertices -> 5 node lines
    size_t nodes = 0;
    for (size_t pos = dot.find("label="); pos != std::string::npos;
         pos = dot.find("label=", pos + 1))
        ++nodes;
    CHECK(nodes == 5);
}

TEST_CASE("elliptic class bound with ingested quartic invariants") {
    auto inv = fields::field_invariants(-4);
    // X^2 - X + 1 over Q(i): splitting field has discriminant 144
    sigma::PolynomialClass p;
    p.A = QuadInteger{0, -1, 0};
    p.B = QuadInteger{0, 1, 0};
    p.home_disc = 0;
    ingest::IngestedField quartic;
    quartic.label = "4.0.144.1";
    quartic.degree = 4;
    quartic.disc = 144;
    quartic.r1 = 0;
    quartic.r2 = 2;
    quartic.h = 1;
    quartic.R = 1.3169578969248166;
    quartic.w = 12;
    auto rep = global_elliptic_bound(GroupKind::GL2, inv, p, &quartic, 10.0);
    CHECK(rep.pass);
    CHECK(rep.note.empty());  // exact-residue path
    // residue of the splitting field from its class number formula:
    // (2 pi)^2 * 1 * R / (12 * 12) = 0.3610871...
    bool bound_only = true;
    auto val = elliptic_class_value(GroupKind::GL2, inv, p, &quartic, &bound_only);
    CHECK_FALSE(bound_only);
    // Delta_r = |N(-3)| = 9; value = 9 * res * sqrt(144) * 4^{-3/2}
    double res144 = std::pow(2 * 3.14159265358979, 2) * 1.3169578969248166 / (12.0 * 12.0);
    CHECK(val.value == doctest::Approx(9.0 * res144 * 12.0 / 8.0).epsilon(1e-6));

    // without the table: bound-only flag
    auto rep2 = global_elliptic_bound(GroupKind::SL2, inv, p, nullptr, 1e6);
    CHECK(rep2.note == "bound-only (order-discriminant path)");
}
