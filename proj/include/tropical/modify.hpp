#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropical/harmonic.hpp"
#include "tropical/hurwitz.hpp"

namespace tropical {

// Where an element of the extended curve sits inside the base.  For edges,
// `from`/`to` are the offsets along `elem` of the ext edge's side-0 and
// side-1 endpoints; for rays only `from` (distance of the ray's base).
struct BaseTag {
    int elem;
    Q from, to;
};

struct Modification {
    TropicalCurve base, ext;
    std::map<int, CurvePoint> vbase;  // ext vertex -> base point (base part only)
    std::map<int, BaseTag> etag;      // ext element -> base piece (base part only)

    static Modification trivial(const TropicalCurve& c);
    bool in_base(int ext_elem) const { return etag.count(ext_elem) > 0; }

    // tag-aware split of an ext element; t measured from ext side 0 (or ray base)
    int split(int ext_elem, const Q& t);
    // ext vertex sitting at a base point, splitting if needed
    int vertex_at(const CurvePoint& base_point);
    // base point an ext vertex retracts to
    CurvePoint retract(int ext_vertex) const;
};

std::vector<std::string> check_modification(const Modification& m);

// ray attached at a point of the extended curve
Modification attach_ray(const Modification& m, const CurvePoint& at);
// ext -> base subdivided at every retraction image; contracted exactly on ext \ base
HarmonicMap retraction(const Modification& m);

// the real line: vertex 0, ray 0 toward -inf, ray 1 toward +inf
TropicalCurve real_line();
Q line_coordinate(const CurvePoint& p);  // p a point of real_line()
CurvePoint line_point(const Q& x);

struct HModCertificate {
    Modification domain_mod, target_mod;
    HarmonicMap lift;
    std::map<int, HurwitzWitness> witnesses;
    std::string instance_hash;  // filled by serialization
};

struct CertVerdict {
    bool accept = false;
    std::string diagnostic;  // first failing clause with location
    std::vector<std::string> all;
};

CertVerdict verify_certificate(const BalancedFn& F, const HModCertificate& cert, int max_degree = 8);

// the instance F' lives on ext.ext; F' = F on the base and constant on added trees
BalancedFn induced_function(const BalancedFn& F, const Modification& ext);
HModCertificate transport(const BalancedFn& F, const HModCertificate& cert, const Modification& ext,
                          int max_degree = 8);

// restriction of F to a union of elements (plus half-edges, which become rays
// keeping the edge id).  half_edges lists (edge id, vertex) pairs.
BalancedFn restrict_fn(const BalancedFn& F, const std::set<int>& elems,
                       const std::vector<std::pair<int, int>>& half_edges);

struct GluePiece {
    std::set<int> elems;                           // full edges/rays of Gamma in the piece
    std::vector<std::pair<int, int>> half_edges;   // (edge, vertex) half-edges
    HModCertificate cert;                          // certificate for restrict_fn(F, piece)
};
HModCertificate glue(const BalancedFn& F, const GluePiece& a, const GluePiece& b, int max_degree = 8);

}  // namespace tropical
