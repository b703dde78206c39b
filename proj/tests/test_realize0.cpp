#include "doctest.h"
#include "support.hpp"
#include "tropical/realize0.hpp"

using namespace testing_support;

TEST_CASE("segment with slopes +-1 gives a degree-1 certificate") {
    auto F = fn({{0, "0"}, {1, "1"}}, {{10, 0, 1, "1"}}, {{20, 0, -1}, {21, 1, 1}});
    auto c = certify_no_contracted_edges(F);
    CHECK(accepted(F, c));
    for (auto& [v, w] : c.lift.vmap) CHECK(vertex_degree(c.lift, v) == 1);
}

TEST_CASE("star with slopes 2,-1,-1") {
    auto F = fn({{0, "0"}}, {}, {{1, 0, 2}, {2, 0, -1}, {3, 0, -1}});
    auto c = certify_no_contracted_edges(F);
    CHECK(accepted(F, c));
    auto p = extract_local_problem(c.lift, 0);
    CHECK(p.degree == 2);
}

TEST_CASE("contracted edge between two critical vertices folds at the midpoint") {
    auto F = fn({{0, "0"}, {1, "0"}}, {{10, 0, 1, "2"}}, {{20, 0, 1}, {21, 0, -1}, {22, 1, 1}, {23, 1, -1}});
    ContractedTree t{{0, 1}, {10}};
    auto c = certify_contracted_tree(F, t);
    CHECK(accepted(F, c));
}

TEST_CASE("path with leaves at distinct distances") {
    // 0 --1-- 2 --3-- 1, vertex 2 carries nothing critical
    auto F = fn({{0, "0"}, {1, "0"}, {2, "0"}, {3, "0"}}, {{10, 0, 2, "1"}, {11, 2, 1, "3"}, {12, 2, 3, "2"}},
                {{20, 0, 1}, {21, 0, -1}, {22, 1, 1}, {23, 1, -1}, {24, 3, 2}, {25, 3, -2}});
    ContractedTree t{{0, 1, 2, 3}, {10, 11, 12}};
    auto c = certify_contracted_tree(F, t);
    CHECK(accepted(F, c));
}
