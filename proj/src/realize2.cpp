#include "tropical/realize2.hpp"

#include <algorithm>

namespace tropical {

namespace {

CoreEdge chain_from(const TropicalCurve& k, int b, Flag f, const std::set<int>& branch) {
    CoreEdge ce;
    ce.from = b;
    ce.verts.push_back(b);
    ce.marks.push_back(0);
    while (true) {
        ce.walk.push_back(f);
        ce.length += k.edges.at(f.elem).len;
        int x = k.far_vertex(f);
        ce.verts.push_back(x);
        ce.marks.push_back(ce.length);
        if (branch.count(x)) {
            ce.to = x;
            return ce;
        }
        for (Flag g : k.flags_at(x))
            if (g != k.reverse(f)) {
                f = g;
                break;
            }
    }
}

std::set<int> edge_set(const CoreEdge& e) {
    std::set<int> s;
    for (Flag f : e.walk) s.insert(f.elem);
    return s;
}

// (edge index, offset from u) for every way p sits on the Θ
std::vector<std::pair<int, Q>> positions(const ThetaGeometry& g, const CurvePoint& p) {
    std::vector<std::pair<int, Q>> out;
    for (int i = 0; i < 3; ++i) {
        const CoreEdge& e = g.edges[i];
        if (p.kind == CurvePoint::Vertex) {
            for (size_t k = 0; k < e.verts.size(); ++k)
                if (e.verts[k] == p.id) out.push_back({i, e.marks[k]});
        } else if (p.kind == CurvePoint::OnEdge) {
            for (size_t k = 0; k < e.walk.size(); ++k)
                if (e.walk[k].elem == p.id) {
                    Q len = e.marks[k + 1] - e.marks[k];
                    out.push_back({i, e.marks[k] + (e.walk[k].side == 0 ? p.t : len - p.t)});
                }
        }
    }
    if (out.empty()) throw std::invalid_argument("point " + point_str(p) + " is not on the core");
    return out;
}

}  // namespace

Genus2Core classify_genus2(const TropicalCurve& c) {
    if (first_betti(c) != 2) throw std::invalid_argument("not genus 2");
    TropicalCurve k = core(c);
    std::set<int> branch;
    for (int v : k.vertices)
        if (k.valence(v) >= 3) branch.insert(v);
    if (branch.size() == 1) throw std::invalid_argument("not a dumbbell: the bridge has length zero");
    if (branch.size() != 2) throw std::invalid_argument("core has an unexpected shape");
    int u = *branch.begin(), v = *branch.rbegin();
    std::vector<CoreEdge> chains;
    std::set<std::set<int>> seen;
    for (int b : {u, v})
        for (Flag f : k.flags_at(b)) {
            CoreEdge ce = chain_from(k, b, f, branch);
            if (ce.from == v && ce.to == u) continue;  // already walked from u
            if (seen.insert(edge_set(ce)).second) chains.push_back(ce);
        }
    Genus2Core out;
    std::vector<CoreEdge> through, loop_u, loop_v;
    for (auto& ce : chains) (ce.to != ce.from ? through : ce.from == u ? loop_u : loop_v).push_back(ce);
    if (through.size() == 3) {
        out.type = CoreType::THETA;
        out.theta.u = u;
        out.theta.v = v;
        for (int i = 0; i < 3; ++i) out.theta.edges[i] = through[i];
        return out;
    }
    if (through.size() == 1 && loop_u.size() == 1 && loop_v.size() == 1) {
        out.type = CoreType::DUMBBELL;
        out.dumbbell = {u, v, loop_u[0], loop_v[0], through[0]};
        return out;
    }
    throw std::invalid_argument("core has an unexpected shape");
}

ThetaGeometry theta_geometry(const BalancedFn& F) {
    Genus2Core k = classify_genus2(F.domain);
    if (k.type != CoreType::THETA) throw std::invalid_argument("core is not a theta graph");
    ThetaGeometry g = k.theta;
    CriticalStructure cs = critical_structure_over(F, core(F.domain), "core");
    for (auto& p : cs.paths) {
        Location l;
        l.critical = p.critical;
        l.vertex = p.cycle_point;
        if (p.cycle_point != g.u && p.cycle_point != g.v) {
            auto pos = positions(g, CurvePoint::vertex(p.cycle_point));
            l.edge = pos.front().first;
            l.offset = pos.front().second;
        }
        g.locations.push_back(l);
    }
    return g;
}

PairKind conjugate_or_weierstrass(const ThetaGeometry& g, const CurvePoint& p, const CurvePoint& q) {
    auto pp = positions(g, p), pq = positions(g, q);
    for (auto& [i, a] : pp)
        for (auto& [j, b] : pq)
            if (i == j && a == b && 2 * a == g.edges[i].length) return PairKind::WEIERSTRASS_PAIR_COINCIDENT;
    for (auto& [i, a] : pp)
        for (auto& [j, b] : pq)
            if (i == j && a == g.edges[i].length - b) return PairKind::CONJUGATE;
    return PairKind::NEITHER;
}

std::string to_string(CoreType t) { return t == CoreType::THETA ? "THETA" : "DUMBBELL"; }

std::string to_string(PairKind k) {
    switch (k) {
        case PairKind::CONJUGATE: return "CONJUGATE";
        case PairKind::WEIERSTRASS_PAIR_COINCIDENT: return "WEIERSTRASS_PAIR_COINCIDENT";
        default: return "NEITHER";
    }
}

std::string to_string(HypothesisVerdict v) {
    switch (v) {
        case HypothesisVerdict::HYPOTHESES_MET: return "HYPOTHESES_MET";
        case HypothesisVerdict::PART_I_FAILS: return "PART_I_FAILS";
        default: return "LENGTHS_BELOW_THRESHOLD";
    }
}

}  // namespace tropical
