#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropical/curve.hpp"

namespace tropical {

// Piecewise-linear integer-slope function to the real line.
struct BalancedFn {
    TropicalCurve domain;
    std::map<int, Q> values;       // vertex -> value
    std::map<Flag, long> slopes;   // outgoing slope per flag

    long slope(Flag f) const;
    Q value_at(const CurvePoint& p) const;
    bool contracted(int elem) const { return slope({elem, 0}) == 0; }
};

struct BalanceReport {
    std::vector<int> bad_vertices;
    std::vector<std::string> problems;  // edge inconsistencies and vertex sums
    bool ok() const { return problems.empty(); }
};

// slopes read off from vertex values; rays need theirs given.  Throws on
// non-integer slopes; balancing is not checked.
BalancedFn from_values(const TropicalCurve& c, const std::map<int, Q>& values,
                       const std::map<int, long>& ray_slopes = {});

// edge consistency plus zero sums at every vertex
BalanceReport is_balanced(const BalancedFn& fn);

struct FlagImage {
    bool contracted = true;
    Flag target{};
    long slope = 0;
    bool operator==(const FlagImage&) const = default;
};

// Stored in refined normal form: each source edge covers exactly one target
// edge (or is contracted), rays cover rays.
struct HarmonicMap {
    TropicalCurve source, target;
    std::map<int, int> vmap;
    std::map<Flag, FlagImage> fmap;

    const FlagImage& image(Flag f) const { return fmap.at(f); }
};

// coarse input for common_refinement: every source edge maps onto a target
// walk with one slope; rays onto a walk ending in a target ray
struct CoarseMap {
    TropicalCurve source, target;
    std::map<int, int> vmap;
    struct Img {
        std::vector<Flag> walk;  // empty = contracted
        long slope = 0;
    };
    std::map<int, Img> elem_image;  // oriented from side 0 of the source element
};

// throws "metric inconsistency" when slope * length disagrees with the walk
HarmonicMap common_refinement(const CoarseMap& m);
CoarseMap coarsen(const HarmonicMap& m);

// structural check of the normal form (vertex incidences, lengths, rays)
std::vector<std::string> check_normal_form(const HarmonicMap& m);

// sum of slopes over source flags at `point` mapped to `dir`
long local_degree(const HarmonicMap& m, const CurvePoint& point, Flag dir);

struct HarmonicReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};
HarmonicReport is_harmonic(const HarmonicMap& m);
bool is_finite(const HarmonicMap& m);

// degree at a source vertex (max directional local degree); 0 if no flags
long vertex_degree(const HarmonicMap& m, int v);

BalancedFn pullback(const HarmonicMap& m, const BalancedFn& g);

// lift target_path (flags of the target) backwards from `terminal`; throws "not liftable"
GraphPath lift_path(const HarmonicMap& m, const GraphPath& target_path, int terminal,
                    std::optional<Flag> avoid = std::nullopt);

// interior vertices of `path` carrying another flag with the incoming flag's image
std::vector<CurvePoint> turning_points(const HarmonicMap& m, const GraphPath& path);

HarmonicMap identity_map(const TropicalCurve& c);

}  // namespace tropical
