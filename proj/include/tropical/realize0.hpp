#pragma once

#include <set>

#include "tropical/construct.hpp"

namespace tropical {

// a compact contracted subtree, given by its edges (may be empty: a single vertex)
struct ContractedTree {
    std::set<int> vertices;
    std::set<int> edges;
};

// maximal connected pieces of the F-contracted edges (isolated vertices omitted)
std::vector<ContractedTree> contracted_components(const BalancedFn& F);
bool has_contracted_cycle(const BalancedFn& F);

HModCertificate certify_no_contracted_edges(const BalancedFn& F, int max_degree = 8);
HModCertificate certify_contracted_tree(const BalancedFn& F, const ContractedTree& T1, int max_degree = 8);
HModCertificate certify_no_contracted_cycles(const BalancedFn& F, int max_degree = 8);

// building blocks shared with the genus-1/2 constructions

// place a contracted tree (edge ids of b.dom.ext) whose critical vertices all
// map to target vertex x; slope 1 on every edge of the tree
void place_tree(CertBuilder& b, std::set<int> tree_edges, std::set<int> critical, int x);
// the same, where the leaf `anchor` already has an image y above x; the tree
// is pulled up the geodesic toward y and folds beyond it.  Needs every walk
// through the anchor to be long compared to the distance from x to y.
void place_tree_anchored(CertBuilder& b, std::set<int> tree_edges, std::set<int> critical, int x, int anchor);
// contracted rays go up fresh target rays with slope 1
void place_contracted_rays(CertBuilder& b);

}  // namespace tropical
