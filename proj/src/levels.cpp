#include "levels.hpp"

#include "tropical/realize0.hpp"

namespace tropical::levels {

CurvePoint walk_point(const TropicalCurve& c, int from, const std::vector<Flag>& w, Q d) {
    int v = from;
    for (Flag f : w) {
        if (d == 0) return CurvePoint::vertex(v);
        Q L = flen(c, f);
        if (d < L) return c.normalize({CurvePoint::OnEdge, f.elem, f.side == 0 ? d : L - d});
        d -= L;
        v = c.far_vertex(f);
    }
    if (d == 0) return CurvePoint::vertex(v);
    throw ConstructionError("point beyond the end of a walk");
}

std::vector<Flag> reverse_walk(const TropicalCurve& c, const std::vector<Flag>& w) {
    std::vector<Flag> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(c.reverse(*it));
    return r;
}

std::vector<Flag> path_walk(const TropicalCurve& c, const std::vector<int>& verts, const std::vector<int>& edges) {
    std::vector<Flag> w;
    for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = c.edges.at(edges[i]);
        w.push_back({e.id, e.u == verts[i] ? 0 : 1});
    }
    return w;
}

void SymMap::set(const CurvePoint& p, TP t) {
    t = br.norm(t);
    if (p.kind == CurvePoint::Vertex) {
        auto it = vsym.find(p.id);
        if (it != vsym.end()) {
            if (!(it->second == t)) throw ConstructionError("inconsistent image at vertex " + std::to_string(p.id));
            return;
        }
        vsym[p.id] = t;
    }
    psym.push_back({p, t});
}

TP SymMap::at(int v) const {
    auto it = vsym.find(v);
    if (it == vsym.end()) throw ConstructionError("vertex " + std::to_string(v) + " has no image yet");
    return it->second;
}

void SymMap::along(const std::vector<Flag>& w, int from, const std::function<TP(const Q&)>& img) {
    Q d = 0;
    set_vertex(from, img(d));
    int v = from;
    for (Flag f : w) {
        d += flen(c, f);
        v = c.far_vertex(f);
        set_vertex(v, img(d));
    }
}

void SymMap::arc(const std::vector<Flag>& w, int from, TP apex) {
    TP s = at(from);
    Q L = walk_len(c, w), lp = s.lv;
    Q lq = 2 * apex.lv - L - lp;
    if (lq < 0 || lq > apex.lv || !(br.chain_at(apex, lp) == s))
        throw ConstructionError("arc from vertex " + std::to_string(from) + " cannot reach its apex");
    Q r = apex.lv - lp;
    along(w, from, [&](const Q& d) { return d <= r ? br.chain_at(apex, lp + d) : br.chain_at(apex, lq + (L - d)); });
    if (0 < r && r < L) set(walk_point(c, from, w, r), apex);
}

void SymMap::rise(const std::vector<Flag>& w, int from, TP top) {
    Q L = walk_len(c, w);
    if (L != top.lv) throw ConstructionError("path from vertex " + std::to_string(from) + " has the wrong length");
    along(w, from, [&](const Q& d) { return br.chain_at(top, d); });
}

int SymMap::realize(CertBuilder& B, const Q& value) {
    int x = B.line_vertex(value);
    std::function<int(TP)> real = [&](TP p) -> int {
        p = br.norm(p);
        if (p.br == 0 && p.lv == 0) return x;
        auto it = real_.find(p.br);
        if (it == real_.end()) {
            int Vb = p.br == 0 ? x : real(TP{br.b[p.br].first, br.b[p.br].second});
            it = real_.emplace(p.br, std::make_pair(Vb, B.tgt_ray(Vb))).first;
        }
        Q start = br.b[p.br].second;
        return p.lv == start ? it->second.first : B.tgt_toward_end(it->second.first, it->second.second, p.lv - start);
    };
    for (auto& [pt, t] : psym) {
        int y = real(t);
        B.img[B.dom.vertex_at(pt)] = y;
    }
    return x;
}

void SymMap::lift_rest(CertBuilder& B, const std::set<int>& component) {
    std::set<int> done;
    for (auto& [v, t] : vsym) done.insert(v);
    for (bool more = true; more;) {
        more = false;
        for (int e : component) {
            const Edge& ed = c.edges.at(e);
            bool iu = done.count(ed.u), iv = done.count(ed.v);
            if (iu == iv) continue;
            int p = iu ? ed.u : ed.v, w = iu ? ed.v : ed.u;
            int pv = B.dom.vertex_at(CurvePoint::vertex(p)), wv = B.dom.vertex_at(CurvePoint::vertex(w));
            B.img[wv] = B.tgt_along_ray(B.tgt_ray(B.img.at(pv)), ed.len);
            done.insert(w);
            more = true;
        }
    }
}

void place_remaining(CertBuilder& B, const std::set<int>& core_component) {
    const BalancedFn& F = B.F;
    for (auto& t : contracted_components(F)) {
        if (core_component.count(*t.edges.begin())) continue;
        std::set<int> crit;
        for (int v : t.vertices)
            for (Flag f : F.domain.flags_at(v))
                if (F.slope(f) != 0) crit.insert(v);
        if (crit.empty()) throw ConstructionError("contracted tree without critical vertices");
        place_tree(B, t.edges, crit, B.line_vertex(F.values.at(*crit.begin())));
    }
    for (int v : F.domain.vertices)
        for (Flag f : F.domain.flags_at(v))
            if (F.slope(f) != 0 && !B.img.count(v)) B.img[v] = B.line_vertex(F.values.at(v));
    place_contracted_rays(B);
}

}  // namespace tropical::levels
