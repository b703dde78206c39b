#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "tropical/realize1.hpp"

namespace tropical {

// maximal chain of core edges between branch vertices
struct CoreEdge {
    int from = -1, to = -1;
    std::vector<Flag> walk;
    std::vector<int> verts;  // from .. to
    std::vector<Q> marks;    // distance from `from` at each entry of verts
    Q length = 0;
};

struct Location {
    int critical = -1;  // critical vertex of the path
    int vertex = -1;    // where the path meets the core
    int edge = -1;      // index of the core edge; -1 when vertex is u or v
    Q offset = 0;       // distance from u along that edge
};

struct ThetaGeometry {
    int u = -1, v = -1;
    std::array<CoreEdge, 3> edges;  // each from u to v
    std::vector<Location> locations;
};

struct DumbbellGeometry {
    int u = -1, v = -1;
    CoreEdge loop_u, loop_v, bridge;  // bridge runs from u to v
};

enum class CoreType { THETA, DUMBBELL };
struct Genus2Core {
    CoreType type = CoreType::THETA;
    ThetaGeometry theta;
    DumbbellGeometry dumbbell;
};

// throws "not genus 2", or "not a dumbbell" for two loops at one vertex
Genus2Core classify_genus2(const TropicalCurve& c);
// Θ geometry with the location of every critical path of F
ThetaGeometry theta_geometry(const BalancedFn& F);

enum class PairKind { CONJUGATE, WEIERSTRASS_PAIR_COINCIDENT, NEITHER };
// p, q points of the core; the involution is a -> l - a on every edge
PairKind conjugate_or_weierstrass(const ThetaGeometry& g, const CurvePoint& p, const CurvePoint& q);

// base constructions; each throws std::invalid_argument("precondition: ...")
HModCertificate certify_theta_three_legs(const BalancedFn& F, int max_degree = 8);
// a coincident pair at a Weierstrass point is handed to the Y construction
HModCertificate certify_theta_conjugate(const BalancedFn& F, int max_degree = 8);
HModCertificate certify_theta_weierstrass_Y(const BalancedFn& F, int max_degree = 8);
// critical paths: one onto each loop and one onto the interior of the bridge;
// each loop sees two paths of equal length
HModCertificate certify_dumbbell(const BalancedFn& F, int max_degree = 8);

struct HangingTree {
    int connecting_edge = -1;
    int frame_vertex = -1, tree_vertex = -1;
    std::set<int> elems;  // tree elements, connecting edge excluded
};
struct Frame {
    std::set<int> elems;  // frame subgraph
    std::vector<HangingTree> trees;
    HModCertificate cert;  // certificate of restrict_fn(F, elems, {})
};
// cut Γ at the given contracted edges; the side without `root` is a hanging tree
Frame make_frame(const BalancedFn& F, const std::vector<int>& connecting_edges, int root);
BalancedFn frame_function(const BalancedFn& F, const Frame& frame);

struct EdgeBound {
    int edge;
    Q length, bound;  // the construction needs length > bound
};
struct ThresholdFail {
    std::vector<EdgeBound> bounds;
};
// distance from the image of the frame vertex to the farthest target vertex
// of the frame certificate reachable without moving along the line
Q footprint_radius(const BalancedFn& F, const Frame& frame, int frame_vertex);
std::variant<HModCertificate, ThresholdFail> append_long_trees(const BalancedFn& F, const Frame& frame,
                                                               int max_degree = 8);

enum class HypothesisVerdict { HYPOTHESES_MET, PART_I_FAILS, LENGTHS_BELOW_THRESHOLD };
struct HypothesisReport {
    HypothesisVerdict verdict = HypothesisVerdict::PART_I_FAILS;
    std::string detail;
    std::vector<EdgeBound> bounds;  // every connecting edge with its threshold
    std::optional<HModCertificate> certificate;
};
HypothesisReport check_theorem_A(const BalancedFn& F, int max_degree = 8);
HypothesisReport check_theorem_B(const BalancedFn& F, int max_degree = 8);

std::string to_string(CoreType t);
std::string to_string(PairKind k);
std::string to_string(HypothesisVerdict v);

}  // namespace tropical
