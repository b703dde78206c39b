#pragma once

#include <optional>
#include <string>
#include <variant>

#include "tropical/construct.hpp"

namespace tropical {

struct CriticalPath {
    int critical;            // critical vertex
    int flag_number;         // n(V)
    int cycle_point;         // where the path meets the cycle
    std::vector<int> vertices;  // critical .. cycle_point
    std::vector<int> edges;     // edge ids along the path
    Q length = 0;
};

struct CriticalStructure {
    std::set<int> cycle_vertices, cycle_edges;
    std::set<int> contracted_component;  // edge ids of the contracted part holding the cycle
    std::vector<CriticalPath> paths;     // sorted by (length, critical id)
    Q minimal_length = 0;
    Q value = 0;  // F on the cycle

    std::vector<const CriticalPath*> minimal() const;
};

// throws "route to realize0" when the cycle is not contracted, and
// "cycle not contracted on a neighborhood" when a cycle vertex is critical
CriticalStructure critical_structure(const BalancedFn& F);
// the same over any contracted core; `what` names it in errors
CriticalStructure critical_structure_over(const BalancedFn& F, const TropicalCurve& core, const std::string& what);

bool is_well_spaced(const BalancedFn& F);

enum class Genus1Verdict { REALIZABLE, NOT_REALIZABLE };
struct Genus1Decision {
    Genus1Verdict verdict;
    std::optional<GraphPath> witness_path;  // the unique minimal simple path
};
Genus1Decision decide_genus1(const BalancedFn& F);

// one-parameter family F_eps converging to F; lengths l_e + coeff_e * eps
struct Perturbation {
    std::string reason;
    std::map<int, Q> edge_coefficients;
};
struct LimitRealizable {
    Perturbation perturbation;
};

// empty string when the generic construction applies
std::string genericity_failure(const BalancedFn& F, const CriticalStructure& cs);

std::variant<HModCertificate, LimitRealizable> certify_well_spaced(const BalancedFn& F, int max_degree = 8);

// bounded search for a certificate on a (presumably) non-well-spaced instance;
// a falsification probe, not a proof
struct ProbeResult {
    bool found = false;
    long candidates_tried = 0;
    std::optional<HModCertificate> certificate;
};
ProbeResult necessity_probe(const BalancedFn& F, int depth = 3, int max_degree = 4);

}  // namespace tropical
