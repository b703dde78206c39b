#pragma once

#include "tropical/decide.hpp"

namespace tropical {

using IntVec = std::vector<long>;

struct TropicalMapRr {
    TropicalCurve domain;
    int r = 1;
    std::map<int, std::vector<Q>> values;  // vertex -> length-r vector
    std::map<Flag, IntVec> slopes;         // flag -> length-r vector
};

struct TropicalMapReport {
    std::vector<std::string> problems;      // structural problems, then per-coordinate ones
    std::vector<int> failing_coordinates;   // 0-based
    bool ok() const { return problems.empty(); }
};

// structural checks plus balancing of every coordinate projection
TropicalMapReport is_tropical_map(const TropicalMapRr& Fr);

// coordinate i as a BalancedFn (no balancing check)
BalancedFn coordinate(const TropicalMapRr& Fr, int i);
// <chi, Fr>; throws "not a tropical map" on an unbalanced input
BalancedFn project(const TropicalMapRr& Fr, const IntVec& chi);
bool is_constant(const BalancedFn& F);

// exact integer determinant (Bareiss)
long long determinant(const std::vector<IntVec>& m);

enum class CombinedVerdict { REALIZABLE, CONDITIONALLY_REALIZABLE, CONDITIONALLY_REALIZABLE_LIMIT, NOT_REALIZABLE, UNKNOWN };

struct CharacterResult {
    IntVec chi;
    bool degenerate = false;  // constant projection
    Decision decision;
};

struct MultirankReport {
    std::vector<CharacterResult> characters;
    CombinedVerdict verdict = CombinedVerdict::UNKNOWN;
    bool conditional = false;        // relies on the unverified local-codimension hypothesis
    bool maximally_degenerate = false;  // trivalent domain with all vertices of genus 0
    std::string assumption;          // stated whenever conditional
};

// basis: r integer vectors of length r with determinant +-1; empty = standard basis
MultirankReport coordinatewise_report(const TropicalMapRr& Fr, std::vector<IntVec> basis = {}, int max_degree = 8);

int exit_code(CombinedVerdict v);
std::string to_string(CombinedVerdict v);

}  // namespace tropical
