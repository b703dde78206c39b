#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropical/rational.hpp"

namespace tropical {

// A flag is a half-edge: (element id, side).  Edges have sides 0 and 1,
// side 0 sitting at ends[0] (the lower vertex id).  Rays have only side 0.
struct Flag {
    int elem = -1;
    int side = 0;
    auto operator<=>(const Flag&) const = default;
};

std::string flag_str(Flag f);
Flag parse_flag(const std::string& s);

struct Edge {
    int id;
    int u, v;  // u <= v
    Q len;
};

struct Ray {
    int id;
    int base;
};

struct CurvePoint {
    enum Kind { Vertex, OnEdge, OnRay };
    Kind kind = Vertex;
    int id = -1;  // vertex, edge or ray id
    Q t = 0;      // offset from ends[0] / distance from base

    static CurvePoint vertex(int v) { return {Vertex, v, Q(0)}; }
    bool operator==(const CurvePoint&) const = default;
};

std::string point_str(const CurvePoint& p);

// Edges and rays share one id namespace ("elements").
class TropicalCurve {
public:
    std::set<int> vertices;
    std::map<int, Edge> edges;
    std::map<int, Ray> rays;

    int add_vertex();
    void add_vertex(int id);
    int add_edge(int a, int b, const Q& len);
    void add_edge(int id, int a, int b, const Q& len);
    int add_ray(int base);
    void add_ray(int id, int base);

    int next_vertex_id() const { return vertices.empty() ? 0 : *vertices.rbegin() + 1; }
    int next_elem_id() const;

    bool is_edge(int elem) const { return edges.count(elem) > 0; }
    bool is_ray(int elem) const { return rays.count(elem) > 0; }
    bool has_flag(Flag f) const;

    int flag_vertex(Flag f) const;   // vertex the flag is based at
    int far_vertex(Flag f) const;    // other endpoint (edges only)
    Flag reverse(Flag f) const { return {f.elem, 1 - f.side}; }

    std::vector<Flag> flags_at(int v) const;
    std::vector<Flag> all_flags() const;
    int valence(int v) const { return static_cast<int>(flags_at(v).size()); }

    // canonical form of a point: endpoints collapse to the vertex form
    CurvePoint normalize(const CurvePoint& p) const;

    bool operator==(const TropicalCurve&) const;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

ValidationReport validate(const TropicalCurve& c);
bool is_connected(const TropicalCurve& c);

// |E| - |V| + 1, rays ignored; throws "not connected"
int first_betti(const TropicalCurve& c);

// In-place split.  Edge: the edge keeps its id and the piece at ends[0];
// the far piece gets a fresh id.  Ray: a fresh edge runs from the old base
// to the new vertex and the ray keeps its id, rebased.  Returns the vertex;
// *new_elem receives the fresh element id.
int subdivide_inplace(TropicalCurve& c, const CurvePoint& at, int* new_elem = nullptr);
std::pair<TropicalCurve, int> subdivide(const TropicalCurve& c, const CurvePoint& at);

// leaf-pruned, rayless subgraph of the same genus; throws "no core" in genus 0
TropicalCurve core(const TropicalCurve& c);

struct GraphPath {
    CurvePoint start, end;
    std::vector<Flag> flags;  // direction of travel; partial first/last edges allowed
    Q length = 0;
};

// unique non-backtracking path; throws "path not unique" when a cycle offers two
GraphPath unique_path(const TropicalCurve& c, const CurvePoint& from, const CurvePoint& to);
// path from a point off `sub` to the nearest vertex of `sub` (sub given by vertex set)
GraphPath unique_path_to(const TropicalCurve& c, const CurvePoint& from, const std::set<int>& sub);

// shortest distances from a vertex, optionally restricted to a set of elements
std::map<int, Q> distances_from(const TropicalCurve& c, int src,
                                const std::set<int>* allowed_elems = nullptr);

}  // namespace tropical
