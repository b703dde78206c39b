#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"
#include "tropical/realize1.hpp"

using namespace testing_support;

namespace {

// cycle 0 =(2)= 1 =(3)= 0 plus extra edges/rays; all values 0
BalancedFn genus1(std::initializer_list<E> extra, std::initializer_list<R> rays, int nverts) {
    TropicalCurve c;
    std::map<int, Q> val;
    std::map<int, long> rs;
    for (int v = 0; v < nverts; ++v) {
        c.add_vertex(v);
        val[v] = 0;
    }
    c.add_edge(100, 0, 1, Q(2));
    c.add_edge(101, 0, 1, Q(3));
    for (auto& e : extra) c.add_edge(e.id, e.u, e.v, parse_q(e.len));
    for (auto& r : rays) {
        c.add_ray(r.id, r.base);
        rs[r.id] = r.slope;
    }
    return from_values(c, val, rs);
}

HModCertificate cert_of(const BalancedFn& F) {
    auto r = certify_well_spaced(F);
    REQUIRE(std::holds_alternative<HModCertificate>(r));
    return std::get<HModCertificate>(r);
}

}  // namespace

TEST_CASE("one simple minimal leg is not realizable") {
    auto F = genus1({{10, 0, 2, "1"}}, {{20, 2, 1}, {21, 2, -1}}, 3);
    CHECK_FALSE(is_well_spaced(F));
    auto d = decide_genus1(F);
    CHECK(d.verdict == Genus1Verdict::NOT_REALIZABLE);
    REQUIRE(d.witness_path);
    CHECK(d.witness_path->length == Q(1));
    CHECK(d.witness_path->start == CurvePoint::vertex(2));
    CHECK_THROWS_AS(certify_well_spaced(F), std::invalid_argument);
}

TEST_CASE("two equal disjoint legs") {
    auto F = genus1({{10, 0, 2, "1"}, {11, 1, 3, "1"}}, {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}}, 4);
    CHECK(is_well_spaced(F));
    CHECK(decide_genus1(F).verdict == Genus1Verdict::REALIZABLE);
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("unequal legs: the shorter is a lone simple minimal path") {
    auto F = genus1({{10, 0, 2, "1"}, {11, 1, 3, "3/2"}}, {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}}, 4);
    CHECK_FALSE(is_well_spaced(F));
}

TEST_CASE("Y-shaped minimal tree") {
    // arms 2-4, 3-4 of length 1, stem 4-0 of length 2
    auto F = genus1({{10, 2, 4, "1"}, {11, 3, 4, "1"}, {12, 0, 4, "2"}},
                    {{20, 2, 1}, {21, 2, -1}, {22, 3, 2}, {23, 3, -2}}, 5);
    CHECK(is_well_spaced(F));
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("three flags at the minimal critical point") {
    auto F = genus1({{10, 0, 2, "1"}}, {{20, 2, 1}, {21, 2, 1}, {22, 2, -2}}, 3);
    CHECK(is_well_spaced(F));
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("Y tree with a short cycle attachment pins the stem") {
    // lambda(B1) = 1 + 2*2 = 5, attachment at vertex 1 of length 4
    auto F = genus1({{10, 2, 4, "1"}, {11, 3, 4, "1"}, {12, 0, 4, "2"}, {13, 1, 5, "4"}},
                    {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}, {24, 5, 1}, {25, 5, -1}}, 6);
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("Y tree with a stem attachment adds a knot") {
    // stem 4-5-0 lengths 2,2; attachment at 5 of length 7/2 < lambda(5) = 5
    auto F = genus1({{10, 2, 4, "1"}, {11, 3, 4, "1"}, {12, 4, 5, "2"}, {13, 0, 5, "2"}, {14, 5, 6, "7/2"}},
                    {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}, {24, 6, 1}, {25, 6, -1}}, 7);
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("two legs with long and short cycle attachments") {
    // cycle 0 =2= 1 =3= 0; legs at 0 and 1 of length 1; vertex 7 splits edge 101
    TropicalCurve c;
    std::map<int, Q> val;
    std::map<int, long> rs;
    for (int v = 0; v < 10; ++v) {
        c.add_vertex(v);
        val[v] = 0;
    }
    c.add_edge(100, 0, 1, Q(2));
    c.add_edge(101, 0, 7, Q(3, 2));
    c.add_edge(102, 1, 7, Q(3, 2));
    c.add_edge(10, 0, 2, Q(1));
    c.add_edge(11, 1, 3, Q(1));
    c.add_edge(12, 7, 8, Q(3, 2));  // 3/2 < level 7/4 of vertex 7: new anchor
    int r = 20;
    for (int v : {2, 3, 8}) {
        c.add_ray(r, v);
        rs[r++] = 1;
        c.add_ray(r, v);
        rs[r++] = -1;
    }
    c.vertices.erase(4), c.vertices.erase(5), c.vertices.erase(6), c.vertices.erase(9);
    auto F = from_values(c, val, rs);
    CHECK(accepted(F, cert_of(F)));
}

TEST_CASE("three tied minimal paths give a limit verdict") {
    auto F = genus1({{10, 0, 2, "1"}, {11, 1, 3, "1"}, {12, 0, 4, "1"}},
                    {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}, {24, 4, 1}, {25, 4, -1}}, 5);
    auto r = certify_well_spaced(F);
    REQUIRE(std::holds_alternative<LimitRealizable>(r));
    CHECK_FALSE(std::get<LimitRealizable>(r).perturbation.edge_coefficients.empty());
}

TEST_CASE("random generic instances are certified") {
    std::mt19937 g(7);
    for (int i = 0; i < 60; ++i) {
        Genus1Options o;
        o.cycle_vertices = 2 + i % 3;
        auto F = random_genus1(g, o);
        CAPTURE(i);
        auto r = certify_well_spaced(F);
        REQUIRE(std::holds_alternative<HModCertificate>(r));
        CHECK(minimal_paths_slope_one(F, std::get<HModCertificate>(r)));
    }
}

TEST_CASE("necessity probe finds nothing for a lone simple minimal path") {
    std::mt19937 g(11);
    for (int i = 0; i < 10; ++i) {
        Genus1Options o;
        o.two_minimal = false;
        auto F = random_genus1(g, o);
        REQUIRE_FALSE(is_well_spaced(F));
        auto r = necessity_probe(F, 3, 4);
        CHECK_FALSE(r.found);
        CHECK(r.candidates_tried >= 4);
    }
}

TEST_CASE("necessity probe does find certificates for well-spaced input") {
    auto F = genus1({{10, 0, 2, "1"}}, {{20, 2, 1}, {21, 2, 1}, {22, 2, -2}}, 3);
    CHECK(necessity_probe(F, 3, 4).found);
}
