#pragma once

#include <optional>
#include <vector>

#include "tropical/harmonic.hpp"

namespace tropical {

using Perm = std::vector<int>;       // 0-based images: p[i] = image of i
using Partition = std::vector<int>;  // sorted descending

struct LocalHurwitzProblem {
    int degree = 0;
    std::vector<Partition> profiles;  // one per target flag at the image vertex
    int extra_budget = 0;             // 2d - 2 - sum(part - 1)

    // recompute the budget from degree and profiles
    static LocalHurwitzProblem make(int d, std::vector<Partition> profiles);
    std::vector<std::string> problems() const;  // invariant check
};

// sigma_1..sigma_m then tau_1..tau_k; the product composed left to right
// (apply sigma_1 first) must be the identity.
struct HurwitzWitness {
    std::vector<Perm> sigmas;
    std::vector<Perm> taus;
};

struct DegreeBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int rh_defect(const LocalHurwitzProblem& p);

// lexicographically first witness; nullopt = UNSOLVABLE
std::optional<HurwitzWitness> solve(const LocalHurwitzProblem& p, int max_degree = 8);
bool verify_witness(const LocalHurwitzProblem& p, const HurwitzWitness& w);

// throws if the vertex is contracted or not of pure degree
LocalHurwitzProblem extract_local_problem(const HarmonicMap& m, int vertex);

Partition cycle_type(const Perm& p);
Perm compose(const Perm& a, const Perm& b);  // a first, then b
bool transitive(int d, const std::vector<const Perm*>& gens);

// unpruned existence check by forward reachability over (product, orbit
// partition) states -- used as an oracle in the tests
bool exists_by_reachability(const LocalHurwitzProblem& p);
// literal enumeration of every tuple; only sensible for tiny instances
bool exists_by_enumeration(const LocalHurwitzProblem& p);

std::vector<Partition> partitions_of(int n);

}  // namespace tropical
