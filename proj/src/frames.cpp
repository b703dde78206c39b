// Frames with long hanging trees, and the hypothesis checks built on them.

#include <algorithm>
#include <functional>
#include <numeric>

#include "tropical/realize0.hpp"
#include "tropical/realize2.hpp"

namespace tropical {

namespace {

std::set<int> side_of(const TropicalCurve& c, int start, int cut) {
    std::set<int> seen{start};
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Flag f : c.flags_at(v)) {
            if (f.elem == cut || !c.is_edge(f.elem)) continue;
            int w = c.far_vertex(f);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return seen;
}

bool contracted_cycle_in(const BalancedFn& F, const std::set<int>& elems) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        return it->second = find(it->second);
    };
    for (int e : elems) {
        if (!F.domain.is_edge(e) || !F.contracted(e)) continue;
        const Edge& ed = F.domain.edges.at(e);
        int a = find(ed.u), b = find(ed.v);
        if (a == b) return true;
        parent[a] = b;
    }
    return false;
}

}  // namespace

Frame make_frame(const BalancedFn& F, const std::vector<int>& connecting_edges, int root) {
    const TropicalCurve& c = F.domain;
    Frame fr;
    std::set<int> taken(connecting_edges.begin(), connecting_edges.end());
    for (int e : connecting_edges) {
        if (!c.is_edge(e) || !F.contracted(e))
            throw std::invalid_argument("connecting edge " + std::to_string(e) + " is not a contracted edge");
        const Edge& ed = c.edges.at(e);
        std::set<int> su = side_of(c, ed.u, e);
        if (su.count(ed.v)) throw std::invalid_argument("connecting edge " + std::to_string(e) + " is not a bridge");
        bool root_u = su.count(root) > 0;
        HangingTree t;
        t.connecting_edge = e;
        t.frame_vertex = root_u ? ed.u : ed.v;
        t.tree_vertex = root_u ? ed.v : ed.u;
        std::set<int> tv = root_u ? side_of(c, ed.v, e) : su;
        for (auto& [id, x] : c.edges)
            if (id != e && tv.count(x.u)) t.elems.insert(id);
        for (auto& [id, r] : c.rays)
            if (tv.count(r.base)) t.elems.insert(id);
        for (int x : t.elems)
            if (!taken.insert(x).second) throw std::invalid_argument("hanging trees overlap at element " + std::to_string(x));
        fr.trees.push_back(std::move(t));
    }
    for (auto& [id, x] : c.edges)
        if (!taken.count(id)) fr.elems.insert(id);
    for (auto& [id, r] : c.rays)
        if (!taken.count(id)) fr.elems.insert(id);
    return fr;
}

BalancedFn frame_function(const BalancedFn& F, const Frame& frame) { return restrict_fn(F, frame.elems, {}); }

Q footprint_radius(const BalancedFn& F, const Frame& frame, int frame_vertex) {
    (void)F;
    const Modification& Dm = frame.cert.domain_mod;
    int x = -1;
    for (auto& [v, p] : Dm.vbase)
        if (p == CurvePoint::vertex(frame_vertex)) x = v;
    if (x < 0) throw std::invalid_argument("vertex " + std::to_string(frame_vertex) + " is not in the frame");
    const Modification& T = frame.cert.target_mod;
    int y = frame.cert.lift.vmap.at(x);
    // the trees over the point below y, never moving along the line
    std::map<int, Q> dist{{y, Q(0)}};
    std::vector<int> stack{y};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Flag f : T.ext.flags_at(v)) {
            if (T.in_base(f.elem) || !T.ext.is_edge(f.elem)) continue;
            int w = T.ext.far_vertex(f);
            if (dist.count(w)) continue;
            dist[w] = dist[v] + T.ext.edges.at(f.elem).len;
            stack.push_back(w);
        }
    }
    Q r = 0;
    for (auto& [v, d] : dist) r = std::max(r, d);
    return r;
}

std::variant<HModCertificate, ThresholdFail> append_long_trees(const BalancedFn& F, const Frame& frame,
                                                               int max_degree) {
    BalancedFn F0 = frame_function(F, frame);
    CertVerdict v0 = verify_certificate(F0, frame.cert, max_degree);
    if (!v0.accept) throw std::invalid_argument("frame certificate rejected: " + v0.diagnostic);
    if (frame.trees.empty()) return frame.cert;
    ThresholdFail fail;
    bool short_edge = false;
    for (auto& t : frame.trees) {
        if (contracted_cycle_in(F, t.elems))
            throw std::invalid_argument("hanging tree at edge " + std::to_string(t.connecting_edge) + " contains a contracted cycle");
        Q len = F.domain.edges.at(t.connecting_edge).len;
        Q bound = footprint_radius(F, frame, t.frame_vertex);
        fail.bounds.push_back({t.connecting_edge, len, bound});
        short_edge |= len <= bound;
    }
    if (short_edge) return fail;

    CertBuilder B(F);
    import_certificate(B, frame.cert);
    auto critical = [&](int v) {
        for (Flag f : F.domain.flags_at(v))
            if (F.slope(f) != 0) return true;
        return false;
    };
    for (auto& t : frame.trees) {
        // contracted piece reached through the connecting edge
        std::set<int> K{t.connecting_edge}, crit, seen{t.tree_vertex};
        std::vector<int> stack{t.tree_vertex};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (critical(v)) crit.insert(v);
            for (Flag f : F.domain.flags_at(v)) {
                if (!t.elems.count(f.elem) || !F.domain.is_edge(f.elem) || !F.contracted(f.elem)) continue;
                K.insert(f.elem);
                int w = F.domain.far_vertex(f);
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        int x = B.line_vertex(F.values.at(t.frame_vertex));
        place_tree_anchored(B, K, crit, x, B.dom.vertex_at(CurvePoint::vertex(t.frame_vertex)));
        for (auto& comp : contracted_components(F)) {
            int e0 = *comp.edges.begin();
            if (!t.elems.count(e0) || K.count(e0)) continue;
            std::set<int> cc;
            for (int w : comp.vertices)
                if (critical(w)) cc.insert(w);
            place_tree(B, comp.edges, cc, B.line_vertex(F.values.at(*cc.begin())));
        }
    }
    for (int v : F.domain.vertices)
        if (!B.img.count(v) && critical(v)) B.img[v] = B.line_vertex(F.values.at(v));
    place_contracted_rays(B);
    HModCertificate cert = B.finish(max_degree);
    CertVerdict v = verify_certificate(F, cert, max_degree);
    if (!v.accept) throw ConstructionError("appended certificate rejected: " + v.diagnostic);
    return cert;
}

namespace {

HypothesisReport check_theorem(const BalancedFn& F, int max_degree, bool conjugate_form) {
    ThetaGeometry g = theta_geometry(F);
    CriticalStructure cs = critical_structure_over(F, core(F.domain), "core");
    auto mins = cs.minimal();
    auto loc = [&](const CriticalPath* p) -> const Location& {
        for (auto& l : g.locations)
            if (l.critical == p->critical) return l;
        throw std::logic_error("missing location");
    };
    HypothesisReport rep;
    std::vector<const CriticalPath*> chosen;
    if (!conjugate_form) {
        for (int i = 0; i < 3; ++i) {
            auto it = std::find_if(mins.begin(), mins.end(), [&](auto* p) { return loc(p).edge == i; });
            if (it == mins.end()) {
                rep.detail = "no minimal critical path located inside core edge " + std::to_string(i);
                return rep;
            }
            chosen.push_back(*it);
        }
    } else {
        for (size_t i = 0; i < mins.size() && chosen.empty(); ++i)
            for (size_t j = i + 1; j < mins.size() && chosen.empty(); ++j) {
                const Location &a = loc(mins[i]), &b = loc(mins[j]);
                if (a.edge < 0 || b.edge < 0) continue;
                auto k = conjugate_or_weierstrass(g, CurvePoint::vertex(a.vertex), CurvePoint::vertex(b.vertex));
                if (k != PairKind::NEITHER) chosen = {mins[i], mins[j]};
            }
        if (chosen.empty()) {
            rep.detail = "no two minimal critical paths at conjugate locations";
            return rep;
        }
    }
    std::set<int> S = cs.cycle_vertices, SE = cs.cycle_edges;
    for (auto* p : chosen) {
        S.insert(p->vertices.begin(), p->vertices.end());
        SE.insert(p->edges.begin(), p->edges.end());
    }
    std::vector<int> conn;
    for (int e : cs.contracted_component) {
        const Edge& ed = F.domain.edges.at(e);
        if (!SE.count(e) && (S.count(ed.u) != S.count(ed.v))) conn.push_back(e);
    }
    Frame fr = make_frame(F, conn, g.u);
    BalancedFn F0 = frame_function(F, fr);
    fr.cert = conjugate_form ? certify_theta_conjugate(F0, max_degree) : certify_theta_three_legs(F0, max_degree);
    bool ok = true;
    for (auto& t : fr.trees) {
        Q len = F.domain.edges.at(t.connecting_edge).len;
        Q bound = footprint_radius(F, fr, t.frame_vertex);
        rep.bounds.push_back({t.connecting_edge, len, bound});
        if (len <= bound) {
            if (ok) rep.detail = "connecting edge " + std::to_string(t.connecting_edge) + " has length " + format_q(len) +
                                 ", needs more than " + format_q(bound);
            ok = false;
        }
    }
    if (!ok) {
        rep.verdict = HypothesisVerdict::LENGTHS_BELOW_THRESHOLD;
        return rep;
    }
    rep.verdict = HypothesisVerdict::HYPOTHESES_MET;
    rep.certificate = std::get<HModCertificate>(append_long_trees(F, fr, max_degree));
    return rep;
}

}  // namespace

HypothesisReport check_theorem_A(const BalancedFn& F, int max_degree) { return check_theorem(F, max_degree, false); }
HypothesisReport check_theorem_B(const BalancedFn& F, int max_degree) { return check_theorem(F, max_degree, true); }

}  // namespace tropical
