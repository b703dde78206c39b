#pragma once

// Assembling certificates: constructions place a few key points and rays,
// the builder fills in geodesic edge images and completes harmonicity by
// attaching slope-1 filler rays pointing away from the line.

#include <map>
#include <stdexcept>
#include <vector>

#include "tropical/modify.hpp"

namespace tropical {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class CertBuilder {
public:
    explicit CertBuilder(const BalancedFn& F);

    const BalancedFn& F;
    Modification dom, tgt;
    std::map<int, int> img;                        // dom ext vertex -> tgt ext vertex
    std::map<int, std::pair<int, long>> ray_img;   // dom ext ray -> (tgt ray, slope)

    // target side
    int line_vertex(const Q& x);
    int tgt_ray(int tv);                         // fresh ray at a target vertex
    int tgt_toward(int a, int b, const Q& d);    // vertex at distance d on the geodesic a -> b
    int tgt_along_ray(int ray, const Q& d);      // vertex at distance d from the ray's base
    int tgt_toward_end(int a, int ray, const Q& d);  // like tgt_toward, heading out along `ray`
    std::vector<Flag> tgt_geodesic(int a, int b) const;
    Q tgt_dist(int a, int b) const;
    int line_origin() const { return 0; }

    // domain side
    int dom_ray(int dv) { return dom.ext.add_ray(dv); }
    // vertex at distance d along a walk of ext flags (computed fresh by the caller)
    int dom_along(const std::vector<Flag>& walk, const Q& d);
    Q walk_length(const std::vector<Flag>& walk) const;

    HModCertificate finish(int max_degree = 8);

    // filler rays added during completion (for diagnostics and tests)
    int fillers_added = 0;

private:
    void default_images();
    void refine_edges();
    bool complete_once();
    HarmonicMap build_map() const;
    std::map<int, Q> tgt_levels() const;  // distance to the line part
};

// copy a certificate of a restriction of B.F (same ids) into the builder
void import_certificate(CertBuilder& B, const HModCertificate& cert);

}  // namespace tropical
