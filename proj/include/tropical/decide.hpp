#pragma once

// One entry point for the r = 1 decision: dispatch on genus and on the shape
// of the contracted part, returning a verdict with whatever evidence exists.

#include "tropical/realize0.hpp"
#include "tropical/realize2.hpp"

namespace tropical {

enum class Verdict { REALIZABLE, NOT_REALIZABLE, LIMIT_REALIZABLE, THRESHOLD_FAIL, UNKNOWN };

enum class Route { GENUS0, GENUS1, THETA, DUMBBELL, HIGHER_GENUS };

struct Decision {
    Verdict verdict = Verdict::UNKNOWN;
    Route route = Route::GENUS0;
    std::string detail;
    std::optional<HModCertificate> certificate;
    std::optional<GraphPath> witness_path;       // NOT_REALIZABLE in genus 1
    std::optional<Perturbation> perturbation;    // LIMIT_REALIZABLE
    std::vector<EdgeBound> bounds;               // THRESHOLD_FAIL
    std::vector<std::pair<std::string, HypothesisReport>> hypotheses;  // Θ route
};

// throws std::invalid_argument only for malformed input (invalid curve, unbalanced F)
Decision decide(const BalancedFn& F, int max_degree = 8);

// 0 REALIZABLE, 1 NOT_REALIZABLE, 2 otherwise
int exit_code(Verdict v);

std::string to_string(Verdict v);
std::string to_string(Route r);

}  // namespace tropical
