#pragma once

// Symbolic images for constructions over a contracted core.  A target point is
// a branch of a tree hanging above one line vertex x, plus a level (distance
// from x).  Branch 0 is the spine.  Branches turn into real target rays only
// when realized, so unused ones cost nothing.

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "tropical/construct.hpp"

namespace tropical::levels {

struct TP {
    int br = 0;
    Q lv = 0;
    bool operator==(const TP&) const = default;
};

struct Branches {
    std::vector<std::pair<int, Q>> b{{-1, Q(0)}};  // parent, level where it leaves the parent

    int add(TP at) {
        at = norm(at);
        b.push_back({at.br, at.lv});
        return static_cast<int>(b.size()) - 1;
    }
    TP norm(TP p) const {
        while (p.br != 0 && p.lv == b[p.br].second) p.br = b[p.br].first;
        return p;
    }
    // the point at level l below q
    TP chain_at(TP q, const Q& l) const {
        if (l > q.lv || l < 0) throw ConstructionError("level " + format_q(l) + " not below point");
        while (q.br != 0 && b[q.br].second >= l) q = {b[q.br].first, b[q.br].second};
        return norm({q.br, l});
    }
    // a fresh branch at p, and the point at `up` above p on it
    TP above(TP p, const Q& up) {
        if (up == 0) return norm(p);
        return {add(p), norm(p).lv + up};
    }
};

inline Q flen(const TropicalCurve& c, Flag f) { return c.edges.at(f.elem).len; }

inline Q walk_len(const TropicalCurve& c, const std::vector<Flag>& w) {
    Q s = 0;
    for (Flag f : w) s += flen(c, f);
    return s;
}

// base point at distance d along a walk starting at `from`
CurvePoint walk_point(const TropicalCurve& c, int from, const std::vector<Flag>& w, Q d);

std::vector<Flag> reverse_walk(const TropicalCurve& c, const std::vector<Flag>& w);

// walk along the edges of a path given by its vertex sequence
std::vector<Flag> path_walk(const TropicalCurve& c, const std::vector<int>& verts, const std::vector<int>& edges);

class SymMap {
public:
    explicit SymMap(const TropicalCurve& c) : c(c) {}

    const TropicalCurve& c;
    Branches br;
    std::map<int, TP> vsym;
    std::vector<std::pair<CurvePoint, TP>> psym;

    void set(const CurvePoint& p, TP t);
    void set_vertex(int v, TP t) { set(CurvePoint::vertex(v), t); }
    TP at(int v) const;
    void along(const std::vector<Flag>& w, int from, const std::function<TP(const Q&)>& img);
    // walk rising from the image of `from` to apex with slope 1, then falling
    // with slope 1; the far end lands at the level that makes the lengths add up
    void arc(const std::vector<Flag>& w, int from, TP apex);
    // walk from a point at level 0 straight up to `top`
    void rise(const std::vector<Flag>& w, int from, TP top);

    // images in the builder; returns x
    int realize(CertBuilder& B, const Q& value);
    // contracted edges of `component` not yet placed go straight up, slope 1
    void lift_rest(CertBuilder& B, const std::set<int>& component);

private:
    std::map<int, std::pair<int, int>> real_;  // branch -> (base vertex, ray)
};

// other contracted trees, critical points off contracted edges, contracted rays
void place_remaining(CertBuilder& B, const std::set<int>& core_component);

}  // namespace tropical::levels
