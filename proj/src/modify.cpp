#include "tropical/modify.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace tropical {

namespace {

int sgn(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

CurvePoint base_point(const TropicalCurve& base, int elem, const Q& t) {
    CurvePoint p{base.is_ray(elem) ? CurvePoint::OnRay : CurvePoint::OnEdge, elem, t};
    return base.normalize(p);
}

}  // namespace

Modification Modification::trivial(const TropicalCurve& c) {
    Modification m;
    m.base = c;
    m.ext = c;
    for (int v : c.vertices) m.vbase[v] = CurvePoint::vertex(v);
    for (auto& [id, e] : c.edges) m.etag[id] = {id, Q(0), e.len};
    for (auto& [id, r] : c.rays) m.etag[id] = {id, Q(0), Q(0)};
    return m;
}

int Modification::split(int ext_elem, const Q& t) {
    auto tag = etag.find(ext_elem);
    std::optional<BaseTag> old;
    if (tag != etag.end()) old = tag->second;
    CurvePoint at{ext.is_ray(ext_elem) ? CurvePoint::OnRay : CurvePoint::OnEdge, ext_elem, t};
    at = ext.normalize(at);
    if (at.kind == CurvePoint::Vertex) return at.id;
    bool ray = ext.is_ray(ext_elem);
    int fresh = -1;
    int w = subdivide_inplace(ext, at, &fresh);
    if (!old) return w;
    const BaseTag& b = *old;
    if (ray) {
        Q pos = b.from + t;
        etag[fresh] = {b.elem, b.from, pos};
        etag[ext_elem] = {b.elem, pos, pos};
        vbase[w] = base_point(base, b.elem, pos);
    } else {
        Q pos = b.from + sgn(b.to - b.from) * t;
        etag[ext_elem] = {b.elem, b.from, pos};
        etag[fresh] = {b.elem, b.to, pos};  // the far piece starts at the old side-1 end
        vbase[w] = base_point(base, b.elem, pos);
    }
    return w;
}

int Modification::vertex_at(const CurvePoint& p0) {
    CurvePoint p = base.normalize(p0);
    for (auto& [v, q] : vbase)
        if (q == p) return v;
    if (p.kind == CurvePoint::Vertex) throw std::invalid_argument("base vertex missing from modification");
    for (auto& [e, tag] : etag) {
        if (tag.elem != p.id) continue;
        if (ext.is_ray(e)) {
            if (p.t > tag.from) return split(e, p.t - tag.from);
            continue;
        }
        Q lo = std::min(tag.from, tag.to), hi = std::max(tag.from, tag.to);
        if (lo < p.t && p.t < hi) return split(e, abs(p.t - tag.from));
    }
    throw std::invalid_argument("point " + point_str(p) + " not covered by modification");
}

CurvePoint Modification::retract(int x) const {
    auto it = vbase.find(x);
    if (it != vbase.end()) return it->second;
    std::set<int> seen{x};
    std::queue<int> q;
    q.push(x);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (Flag f : ext.flags_at(v)) {
            if (!ext.is_edge(f.elem) || in_base(f.elem)) continue;
            int w = ext.far_vertex(f);
            auto jt = vbase.find(w);
            if (jt != vbase.end()) return jt->second;
            if (seen.insert(w).second) q.push(w);
        }
    }
    throw std::invalid_argument("vertex " + std::to_string(x) + " does not retract to the base");
}

std::vector<std::string> check_modification(const Modification& m) {
    std::vector<std::string> out;
    for (auto& s : validate(m.base).problems) out.push_back("base: " + s);
    for (auto& s : validate(m.ext).problems) out.push_back("extended: " + s);
    if (!out.empty()) return out;

    std::map<CurvePoint, int, bool (*)(const CurvePoint&, const CurvePoint&)> seen_pts(
        [](const CurvePoint& a, const CurvePoint& b) {
            return std::tie(a.kind, a.id, a.t) < std::tie(b.kind, b.id, b.t);
        });
    for (auto& [v, p] : m.vbase) {
        if (!m.ext.vertices.count(v)) {
            out.push_back("embedding names unknown vertex " + std::to_string(v));
            continue;
        }
        bool okp = (p.kind == CurvePoint::Vertex && m.base.vertices.count(p.id)) ||
                   (p.kind == CurvePoint::OnEdge && m.base.is_edge(p.id)) ||
                   (p.kind == CurvePoint::OnRay && m.base.is_ray(p.id));
        if (!okp || !(m.base.normalize(p) == p)) {
            out.push_back("vertex " + std::to_string(v) + " embedded at invalid point");
            continue;
        }
        if (p.kind == CurvePoint::OnEdge && (p.t <= 0 || p.t >= m.base.edges.at(p.id).len))
            out.push_back("vertex " + std::to_string(v) + " embedded outside its edge");
        if (!seen_pts.emplace(p, v).second) out.push_back("two vertices embedded at " + point_str(p));
    }
    for (int v : m.base.vertices)
        if (!seen_pts.count(CurvePoint::vertex(v)))
            out.push_back("base vertex " + std::to_string(v) + " not embedded");
    if (!out.empty()) return out;

    // tagged pieces: consistent endpoints and exact coverage
    std::map<int, std::vector<std::pair<Q, Q>>> cover;
    std::map<int, int> ray_pieces;
    for (auto& [e, tag] : m.etag) {
        std::string where = "element " + std::to_string(e);
        if (!m.ext.is_edge(e) && !m.ext.is_ray(e)) {
            out.push_back("embedding names unknown " + where);
            continue;
        }
        bool base_ray = m.base.is_ray(tag.elem);
        if (!base_ray && !m.base.is_edge(tag.elem)) {
            out.push_back(where + " tagged with unknown base element");
            continue;
        }
        if (m.ext.is_ray(e)) {
            if (!base_ray) {
                out.push_back(where + ": ray inside a bounded edge");
                continue;
            }
            ++ray_pieces[tag.elem];
            auto it = m.vbase.find(m.ext.rays.at(e).base);
            if (it == m.vbase.end() || !(it->second == base_point(m.base, tag.elem, tag.from)))
                out.push_back(where + ": ray base misplaced");
            cover[tag.elem].push_back({tag.from, tag.from});
            continue;
        }
        const Edge& x = m.ext.edges.at(e);
        Q lo = std::min(tag.from, tag.to), hi = std::max(tag.from, tag.to);
        if (hi - lo != x.len) out.push_back(where + ": length disagrees with base piece");
        if (lo < 0 || (!base_ray && hi > m.base.edges.at(tag.elem).len)) {
            out.push_back(where + ": piece outside base element");
            continue;
        }
        auto iu = m.vbase.find(x.u), iv = m.vbase.find(x.v);
        if (iu == m.vbase.end() || iv == m.vbase.end() ||
            !(iu->second == base_point(m.base, tag.elem, tag.from)) ||
            !(iv->second == base_point(m.base, tag.elem, tag.to)))
            out.push_back(where + ": endpoints misplaced");
        cover[tag.elem].push_back({lo, hi});
    }
    auto check_cover = [&](int b, Q total, bool ray) {
        auto& v = cover[b];
        std::sort(v.begin(), v.end());
        Q at = 0;
        for (auto& [lo, hi] : v) {
            if (lo != at) {
                out.push_back("base element " + std::to_string(b) + " not covered exactly");
                return;
            }
            at = hi;
        }
        if (!ray && at != total) out.push_back("base element " + std::to_string(b) + " not covered exactly");
    };
    for (auto& [id, e] : m.base.edges) check_cover(id, e.len, false);
    for (auto& [id, r] : m.base.rays) {
        if (ray_pieces[id] != 1) out.push_back("base ray " + std::to_string(id) + " needs exactly one ray piece");
        check_cover(id, 0, true);
    }
    if (!out.empty()) return out;

    // added part: a forest of trees, each meeting the base at one vertex
    for (int v : m.ext.vertices) {
        if (m.vbase.count(v)) continue;
        for (Flag f : m.ext.flags_at(v))
            if (m.in_base(f.elem)) out.push_back("vertex " + std::to_string(v) + " is not embedded but carries a base piece");
        if (m.ext.valence(v) < 2) out.push_back("added vertex " + std::to_string(v) + " is a leaf");
    }
    std::set<int> done;
    for (int v0 : m.ext.vertices) {
        if (m.vbase.count(v0) || done.count(v0)) continue;
        std::set<int> comp{v0}, attach, elems;
        std::vector<int> stack{v0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (Flag f : m.ext.flags_at(v)) {
                if (m.in_base(f.elem)) continue;
                elems.insert(f.elem);
                if (!m.ext.is_edge(f.elem)) continue;
                int w = m.ext.far_vertex(f);
                if (m.vbase.count(w)) {
                    attach.insert(w);
                } else if (comp.insert(w).second) {
                    stack.push_back(w);
                }
            }
        }
        done.insert(comp.begin(), comp.end());
        size_t edges = 0;
        for (int e : elems) edges += m.ext.is_edge(e);
        std::string where = "added tree at vertex " + std::to_string(v0);
        if (attach.size() != 1) out.push_back(where + " meets the base " + std::to_string(attach.size()) + " times");
        else if (edges != comp.size()) out.push_back(where + " is not a tree");
    }
    // rays attached directly to base vertices are trees on their own and need no check
    for (auto& [id, e] : m.ext.edges)
        if (!m.in_base(id) && m.vbase.count(e.u) && m.vbase.count(e.v))
            out.push_back("added edge " + std::to_string(id) + " joins two base points");
    return out;
}

Modification attach_ray(const Modification& m0, const CurvePoint& at) {
    Modification m = m0;
    CurvePoint p = m.ext.normalize(at);
    int v = p.kind == CurvePoint::Vertex ? p.id : m.split(p.id, p.t);
    if (!m.ext.vertices.count(v)) throw std::invalid_argument("point not in extended curve");
    m.ext.add_ray(v);
    return m;
}

HarmonicMap retraction(const Modification& m) {
    HarmonicMap h;
    h.source = m.ext;
    // the base subdivided at every embedded vertex, carried with the extended ids
    for (auto& [v, p] : m.vbase) h.target.add_vertex(v);
    for (auto& [id, e] : m.ext.edges)
        if (m.in_base(id)) h.target.add_edge(id, e.u, e.v, e.len);
    for (auto& [id, r] : m.ext.rays)
        if (m.in_base(id)) h.target.add_ray(id, r.base);
    for (int v : m.ext.vertices) {
        if (m.vbase.count(v)) {
            h.vmap[v] = v;
            continue;
        }
        CurvePoint p = m.retract(v);
        for (auto& [w, q] : m.vbase)
            if (q == p) h.vmap[v] = w;
    }
    for (Flag f : m.ext.all_flags())
        h.fmap[f] = m.in_base(f.elem) ? FlagImage{false, f, 1} : FlagImage{};
    return h;
}

TropicalCurve real_line() {
    TropicalCurve c;
    c.add_vertex(0);
    c.add_ray(0, 0);
    c.add_ray(1, 0);
    return c;
}

Q line_coordinate(const CurvePoint& p) {
    if (p.kind == CurvePoint::Vertex) return 0;
    if (p.kind != CurvePoint::OnRay || (p.id != 0 && p.id != 1)) throw std::invalid_argument("not a point of the line");
    return p.id == 0 ? Q(-p.t) : p.t;
}

CurvePoint line_point(const Q& x) {
    if (x == 0) return CurvePoint::vertex(0);
    return x < 0 ? CurvePoint{CurvePoint::OnRay, 0, -x} : CurvePoint{CurvePoint::OnRay, 1, x};
}

BalancedFn restrict_fn(const BalancedFn& F, const std::set<int>& elems,
                       const std::vector<std::pair<int, int>>& half_edges) {
    BalancedFn r;
    auto keep_vertex = [&](int v) {
        r.domain.vertices.insert(v);
        r.values[v] = F.values.at(v);
    };
    for (int e : elems) {
        if (F.domain.is_edge(e)) {
            const Edge& x = F.domain.edges.at(e);
            keep_vertex(x.u);
            keep_vertex(x.v);
            r.domain.add_edge(e, x.u, x.v, x.len);
            r.slopes[{e, 0}] = F.slope({e, 0});
            r.slopes[{e, 1}] = F.slope({e, 1});
        } else if (F.domain.is_ray(e)) {
            int b = F.domain.rays.at(e).base;
            keep_vertex(b);
            r.domain.add_ray(e, b);
            r.slopes[{e, 0}] = F.slope({e, 0});
        } else {
            throw std::invalid_argument("unknown element " + std::to_string(e));
        }
    }
    for (auto [e, v] : half_edges) {
        if (!F.domain.is_edge(e) || elems.count(e)) throw std::invalid_argument("bad half-edge " + std::to_string(e));
        const Edge& x = F.domain.edges.at(e);
        if (v != x.u && v != x.v) throw std::invalid_argument("half-edge " + std::to_string(e) + " not at vertex");
        keep_vertex(v);
        r.domain.add_ray(e, v);
        r.slopes[{e, 0}] = F.slope({e, v == x.u ? 0 : 1});
    }
    return r;
}

BalancedFn induced_function(const BalancedFn& F, const Modification& m) {
    BalancedFn g;
    g.domain = m.ext;
    for (int v : m.ext.vertices) g.values[v] = F.value_at(m.retract(v));
    for (Flag f : m.ext.all_flags()) {
        long s = 0;
        auto it = m.etag.find(f.elem);
        if (it != m.etag.end()) {
            s = F.slope({it->second.elem, 0});
            if (m.ext.is_edge(f.elem)) {
                s *= sgn(it->second.to - it->second.from);
                if (f.side == 1) s = -s;
            }
        }
        g.slopes[f] = s;
    }
    return g;
}

}  // namespace tropical
