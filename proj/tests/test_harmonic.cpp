#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

// segment 0 -(2)- 1 and a source edge of length 2 mapped onto 0 -(1)- 2 -(1)- 1
CoarseMap two_step(Q source_len, long slope) {
    CoarseMap c;
    c.source.add_vertex(0);
    c.source.add_vertex(1);
    c.source.add_edge(5, 0, 1, source_len);
    c.target.add_vertex(0);
    c.target.add_vertex(1);
    c.target.add_vertex(2);
    c.target.add_edge(7, 0, 2, Q(1));
    c.target.add_edge(8, 1, 2, Q(1));
    c.vmap = {{0, 0}, {1, 1}};
    c.elem_image[5] = {{{7, 0}, {8, 1}}, slope};
    return c;
}

// a cycle of two edges, each mapped with slope 1 onto the segment 0 -(1)- 1:
// the 2:1 fold of a circle onto an interval
HarmonicMap cycle_cover() {
    HarmonicMap m;
    m.target.add_vertex(0);
    m.target.add_vertex(1);
    m.target.add_edge(0, 0, 1, Q(1));
    m.source.add_vertex(0);
    m.source.add_vertex(1);
    m.source.add_edge(0, 0, 1, Q(1));
    m.source.add_edge(1, 0, 1, Q(1));
    m.vmap = {{0, 0}, {1, 1}};
    for (int e : {0, 1}) {
        m.fmap[{e, 0}] = {false, {0, 0}, 1};
        m.fmap[{e, 1}] = {false, {0, 1}, 1};
    }
    return m;
}

}  // namespace

TEST_CASE("balancing") {
    // vertex 0 has slopes +2 (edge), -1, -1 (rays)
    auto ok = fn({{0, "0"}, {1, "2"}}, {{5, 0, 1, "1"}}, {{6, 0, -1}, {7, 0, -1}, {8, 1, 2}});
    CHECK(is_balanced(ok).ok());
    auto bad = fn({{0, "0"}, {1, "1"}, {2, "0"}}, {{5, 0, 1, "1"}, {6, 1, 2, "1"}}, {{7, 0, -1}, {8, 2, -1}});
    auto rep = is_balanced(bad);
    CHECK_FALSE(rep.ok());
    CHECK(rep.bad_vertices == std::vector<int>{1});  // slopes -1 and -1 at a 2-valent vertex
    CHECK(is_balanced(three_legs().F).ok());
}

TEST_CASE("common refinement") {
    HarmonicMap m = common_refinement(two_step(Q(2), 1));
    CHECK(m.source.edges.size() == 2);
    for (auto& [id, e] : m.source.edges) CHECK(e.len == Q(1));
    CHECK(check_normal_form(m).empty());
    // idempotent
    HarmonicMap again = common_refinement(coarsen(m));
    CHECK(again.source == m.source);
    CHECK(again.fmap == m.fmap);
    CHECK_THROWS_WITH_AS(common_refinement(two_step(Q(1), 3)), doctest::Contains("metric inconsistency"),
                         std::invalid_argument);
}

TEST_CASE("local degrees") {
    // z -> z^s: two flags of slope s over the two target flags
    HarmonicMap m;
    m.target = real_line();
    m.source.add_vertex(0);
    m.source.add_ray(0, 0);
    m.source.add_ray(1, 0);
    m.vmap[0] = 0;
    m.fmap[{0, 0}] = {false, {0, 0}, 3};
    m.fmap[{1, 0}] = {false, {1, 0}, 3};
    CHECK(local_degree(m, CurvePoint::vertex(0), {0, 0}) == 3);
    CHECK(local_degree(m, CurvePoint::vertex(0), {1, 0}) == 3);
    CHECK(is_harmonic(m).ok());

    HarmonicMap e = common_refinement(two_step(Q(2, 3), 3));
    int piece = e.source.edges.begin()->first;
    CHECK(local_degree(e, {CurvePoint::OnEdge, piece, Q(1, 6)}, {7, 0}) == 3);
    CHECK(local_degree(e, {CurvePoint::OnEdge, piece, Q(1, 6)}, {7, 1}) == 3);
    CHECK(local_degree(e, CurvePoint::vertex(0), {8, 0}) == 0);
}

TEST_CASE("harmonicity") {
    auto t = three_legs();
    HarmonicMap id = identity_map(t.F.domain);
    CHECK(is_harmonic(id).ok());
    CHECK(is_finite(id));

    // a lift from a genus-1 two-leg construction
    auto F = fn({{0, "0"}, {1, "0"}, {2, "0"}, {3, "0"}},
                {{100, 0, 1, "2"}, {101, 0, 1, "3"}, {10, 0, 2, "1"}, {11, 1, 3, "1"}},
                {{20, 2, 1}, {21, 2, -1}, {22, 3, 1}, {23, 3, -1}});
    auto cert = std::get<HModCertificate>(certify_well_spaced(F));
    CHECK(is_harmonic(cert.lift).ok());
    CHECK(is_finite(cert.lift));
    CHECK_FALSE(is_finite(retraction(cert.domain_mod)));

    // slopes {1} over one direction and {2} over the other
    HarmonicMap bad;
    bad.target = real_line();
    bad.source.add_vertex(0);
    bad.source.add_ray(0, 0);
    bad.source.add_ray(1, 0);
    bad.vmap[0] = 0;
    bad.fmap[{0, 0}] = {false, {0, 0}, 1};
    bad.fmap[{1, 0}] = {false, {1, 0}, 2};
    auto rep = is_harmonic(bad);
    CHECK_FALSE(rep.ok());
    CHECK(rep.problems.front().find("vertex 0") != std::string::npos);
}

TEST_CASE("pullbacks") {
    HarmonicMap m = common_refinement(two_step(Q(1), 2));
    BalancedFn c;
    c.domain = m.target;
    for (int v : m.target.vertices) c.values[v] = Q(4);
    for (Flag f : m.target.all_flags()) c.slopes[f] = 0;
    BalancedFn pc = pullback(m, c);
    for (auto& [f, s] : pc.slopes) CHECK(s == 0);

    BalancedFn x = from_values(m.target, {{0, Q(0)}, {2, Q(1)}, {1, Q(2)}});
    BalancedFn px = pullback(m, x);
    for (auto& [id, e] : px.domain.edges) CHECK(std::labs(px.slope({id, 0})) == 2);

    HarmonicMap cyc = cycle_cover();
    BalancedFn y;
    y.domain = cyc.target;
    y.domain.add_ray(5, 0);
    y.domain.add_ray(6, 1);
    // extend the cover by rays of slope 2 so it stays harmonic
    cyc.target = y.domain;
    cyc.source.add_ray(5, 0);
    cyc.source.add_ray(6, 1);
    cyc.fmap[{5, 0}] = {false, {5, 0}, 2};
    cyc.fmap[{6, 0}] = {false, {6, 0}, 2};
    REQUIRE(is_harmonic(cyc).ok());
    y = from_values(y.domain, {{0, Q(0)}, {1, Q(3)}}, {{5, -3}, {6, 3}});
    REQUIRE(is_balanced(y).ok());
    CHECK(is_balanced(pullback(cyc, y)).ok());
}

TEST_CASE("harmonic iff pullbacks stay balanced, on random maps") {
    std::mt19937 g(11);
    for (int trial = 0; trial < 60; ++trial) {
        bool want = trial % 2 == 0;
        HarmonicMap m = random_segment_map(g, want);
        REQUIRE(check_normal_form(m).empty());
        bool all_balanced = true;
        for (int k = 0; k < 50 && all_balanced; ++k)
            all_balanced = is_balanced(pullback(m, random_target_fn(g, m.target))).ok();
        CHECK(is_harmonic(m).ok() == want);
        CHECK(all_balanced == want);
    }
}

TEST_CASE("path lifting and turning points") {
    auto t = three_legs();
    HarmonicMap id = identity_map(t.F.domain);
    GraphPath p = unique_path(t.F.domain, CurvePoint::vertex(t.A[0]), CurvePoint::vertex(t.B[0]));
    GraphPath l = lift_path(id, p, t.B[0]);
    CHECK(l.flags == p.flags);
    CHECK(turning_points(id, p).empty());

    // the 2:1 cycle cover: lifting the segment to vertex 1 avoiding one edge takes the other
    HarmonicMap cyc = cycle_cover();
    GraphPath seg;
    seg.start = CurvePoint::vertex(0);
    seg.end = CurvePoint::vertex(1);
    seg.flags = {{0, 0}};
    seg.length = 1;
    GraphPath a = lift_path(cyc, seg, 1);
    GraphPath b = lift_path(cyc, seg, 1, a.flags.back());
    CHECK(a.flags.back() != b.flags.back());
    for (auto* q : {&a, &b}) CHECK(cyc.fmap.at(q->flags.back()).target == Flag{0, 0});

    // going around the cycle: out along one edge and back along the other turns at vertex 1
    GraphPath round;
    round.start = round.end = CurvePoint::vertex(0);
    round.flags = {{0, 0}, {1, 1}};
    round.length = 2;
    auto tp = turning_points(cyc, round);
    REQUIRE(tp.size() == 1);
    CHECK(tp[0] == CurvePoint::vertex(1));
}
