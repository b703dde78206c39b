#include "tropical/curve.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace tropical {

std::string flag_str(Flag f) { return std::to_string(f.elem) + ":" + std::to_string(f.side); }

Flag parse_flag(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) return {std::stoi(s), 0};
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
}

std::string point_str(const CurvePoint& p) {
    switch (p.kind) {
        case CurvePoint::Vertex: return "vertex " + std::to_string(p.id);
        case CurvePoint::OnEdge: return "edge " + std::to_string(p.id) + "@" + format_q(p.t);
        case CurvePoint::OnRay: return "ray " + std::to_string(p.id) + "@" + format_q(p.t);
    }
    return "?";
}

int TropicalCurve::add_vertex() {
    int id = next_vertex_id();
    vertices.insert(id);
    return id;
}
void TropicalCurve::add_vertex(int id) { vertices.insert(id); }

int TropicalCurve::next_elem_id() const {
    int m = -1;
    if (!edges.empty()) m = std::max(m, edges.rbegin()->first);
    if (!rays.empty()) m = std::max(m, rays.rbegin()->first);
    return m + 1;
}

int TropicalCurve::add_edge(int a, int b, const Q& len) {
    int id = next_elem_id();
    add_edge(id, a, b, len);
    return id;
}
void TropicalCurve::add_edge(int id, int a, int b, const Q& len) {
    if (a > b) std::swap(a, b);
    edges[id] = Edge{id, a, b, len};
}
int TropicalCurve::add_ray(int base) {
    int id = next_elem_id();
    add_ray(id, base);
    return id;
}
void TropicalCurve::add_ray(int id, int base) { rays[id] = Ray{id, base}; }

bool TropicalCurve::has_flag(Flag f) const {
    if (is_edge(f.elem)) return f.side == 0 || f.side == 1;
    if (is_ray(f.elem)) return f.side == 0;
    return false;
}

int TropicalCurve::flag_vertex(Flag f) const {
    if (auto it = edges.find(f.elem); it != edges.end()) return f.side == 0 ? it->second.u : it->second.v;
    if (auto it = rays.find(f.elem); it != rays.end()) return it->second.base;
    throw std::out_of_range("no such flag " + flag_str(f));
}

int TropicalCurve::far_vertex(Flag f) const {
    auto it = edges.find(f.elem);
    if (it == edges.end()) throw std::out_of_range("far_vertex of a ray flag");
    return f.side == 0 ? it->second.v : it->second.u;
}

std::vector<Flag> TropicalCurve::flags_at(int v) const {
    std::vector<Flag> out;
    for (auto& [id, e] : edges) {
        if (e.u == v) out.push_back({id, 0});
        if (e.v == v) out.push_back({id, 1});
    }
    for (auto& [id, r] : rays)
        if (r.base == v) out.push_back({id, 0});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flag> TropicalCurve::all_flags() const {
    std::vector<Flag> out;
    for (auto& [id, e] : edges) {
        out.push_back({id, 0});
        out.push_back({id, 1});
    }
    for (auto& [id, r] : rays) out.push_back({id, 0});
    std::sort(out.begin(), out.end());
    return out;
}

CurvePoint TropicalCurve::normalize(const CurvePoint& p) const {
    if (p.kind == CurvePoint::OnEdge) {
        const Edge& e = edges.at(p.id);
        if (p.t == 0) return CurvePoint::vertex(e.u);
        if (p.t == e.len) return CurvePoint::vertex(e.v);
    } else if (p.kind == CurvePoint::OnRay) {
        if (p.t == 0) return CurvePoint::vertex(rays.at(p.id).base);
    }
    return p;
}

bool TropicalCurve::operator==(const TropicalCurve& o) const {
    if (vertices != o.vertices || edges.size() != o.edges.size() || rays.size() != o.rays.size())
        return false;
    for (auto& [id, e] : edges) {
        auto it = o.edges.find(id);
        if (it == o.edges.end() || it->second.u != e.u || it->second.v != e.v || it->second.len != e.len)
            return false;
    }
    for (auto& [id, r] : rays) {
        auto it = o.rays.find(id);
        if (it == o.rays.end() || it->second.base != r.base) return false;
    }
    return true;
}

ValidationReport validate(const TropicalCurve& c) {
    ValidationReport rep;
    for (auto& [id, e] : c.edges) {
        if (e.len <= 0) rep.problems.push_back("edge " + std::to_string(id) + ": non-positive length");
        if (!c.vertices.count(e.u) || !c.vertices.count(e.v))
            rep.problems.push_back("edge " + std::to_string(id) + ": dangling endpoint");
        if (e.u > e.v) rep.problems.push_back("edge " + std::to_string(id) + ": endpoints not ordered");
        if (c.rays.count(id)) rep.problems.push_back("element " + std::to_string(id) + ": both edge and ray");
    }
    for (auto& [id, r] : c.rays)
        if (!c.vertices.count(r.base)) rep.problems.push_back("ray " + std::to_string(id) + ": dangling base");
    if (c.vertices.empty()) rep.problems.push_back("no vertices");
    return rep;
}

bool is_connected(const TropicalCurve& c) {
    if (c.vertices.empty()) return false;
    std::set<int> seen{*c.vertices.begin()};
    std::vector<int> stack{*c.vertices.begin()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Flag f : c.flags_at(v)) {
            if (!c.is_edge(f.elem)) continue;
            int w = c.far_vertex(f);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return seen.size() == c.vertices.size();
}

int first_betti(const TropicalCurve& c) {
    if (!is_connected(c)) throw std::invalid_argument("not connected");
    return static_cast<int>(c.edges.size()) - static_cast<int>(c.vertices.size()) + 1;
}

int subdivide_inplace(TropicalCurve& c, const CurvePoint& at0, int* new_elem) {
    CurvePoint at = c.normalize(at0);
    if (at.kind == CurvePoint::Vertex) throw std::invalid_argument("already a vertex");
    int w = c.add_vertex();
    int fresh = c.next_elem_id();
    if (at.kind == CurvePoint::OnEdge) {
        Edge e = c.edges.at(at.id);
        if (at.t <= 0 || at.t >= e.len) throw std::invalid_argument("offset outside edge");
        c.edges.erase(at.id);
        c.add_edge(at.id, e.u, w, at.t);
        c.add_edge(fresh, w, e.v, e.len - at.t);
    } else {
        Ray r = c.rays.at(at.id);
        if (at.t <= 0) throw std::invalid_argument("distance must be positive");
        c.add_edge(fresh, r.base, w, at.t);
        c.rays[at.id].base = w;
    }
    if (new_elem) *new_elem = fresh;
    return w;
}

std::pair<TropicalCurve, int> subdivide(const TropicalCurve& c, const CurvePoint& at) {
    TropicalCurve copy = c;
    int v = subdivide_inplace(copy, at);
    return {copy, v};
}

TropicalCurve core(const TropicalCurve& c) {
    if (first_betti(c) == 0) throw std::invalid_argument("no core");
    TropicalCurve k = c;
    k.rays.clear();
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = k.vertices.begin(); it != k.vertices.end();) {
            int v = *it;
            auto fl = k.flags_at(v);
            if (fl.size() <= 1) {
                for (Flag f : fl) k.edges.erase(f.elem);
                it = k.vertices.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return k;
}

std::map<int, Q> distances_from(const TropicalCurve& c, int src, const std::set<int>* allowed) {
    std::map<int, Q> dist;
    using Item = std::pair<Q, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = 0;
    pq.push({Q(0), src});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (Flag f : c.flags_at(v)) {
            if (!c.is_edge(f.elem)) continue;
            if (allowed && !allowed->count(f.elem)) continue;
            int w = c.far_vertex(f);
            Q nd = d + c.edges.at(f.elem).len;
            auto it = dist.find(w);
            if (it == dist.end() || nd < it->second) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    return dist;
}

namespace {

// Work on a copy where both endpoints are vertices; remember where the new
// pieces came from so flags can be reported against the original curve.
struct Sub {
    TropicalCurve c;
    std::map<int, std::pair<int, bool>> origin;  // elem -> (original elem, reversed)

    explicit Sub(const TropicalCurve& base) : c(base) {
        for (auto& [id, e] : c.edges) origin[id] = {id, false};
        for (auto& [id, r] : c.rays) origin[id] = {id, false};
    }
    int place(const CurvePoint& p0) {
        CurvePoint p = c.normalize(p0);
        if (p.kind == CurvePoint::Vertex) return p.id;
        // p refers to the original curve; it may have been split already
        int elem = p.id;
        Q t = p.t;
        if (p.kind == CurvePoint::OnEdge) {
            // locate the piece still carrying the original id: it starts at ends[0]
            const Edge& e = c.edges.at(elem);
            if (t < e.len) {
                int fresh;
                int w = subdivide_inplace(c, {CurvePoint::OnEdge, elem, t}, &fresh);
                origin[fresh] = {origin[elem].first, !origin[elem].second};
                return w;
            }
            throw std::invalid_argument("cannot place two points on one edge");
        }
        int fresh;
        int w = subdivide_inplace(c, {CurvePoint::OnRay, elem, t}, &fresh);
        origin[fresh] = {elem, false};
        return w;
    }
    Flag orig(Flag f) const {
        auto [e, rev] = origin.at(f.elem);
        return {e, rev ? 1 - f.side : f.side};
    }
};

// all vertex-simple paths from s until `stop(v)` holds; stops after two
void enumerate_paths(const TropicalCurve& c, int s, const std::function<bool(int)>& stop,
                     const std::function<bool(int)>& blocked, std::vector<std::vector<Flag>>& found) {
    std::set<int> on_path{s};
    std::vector<Flag> cur;
    std::function<void(int)> dfs = [&](int v) {
        if (found.size() >= 2) return;
        if (stop(v)) {
            found.push_back(cur);
            return;
        }
        for (Flag f : c.flags_at(v)) {
            if (!c.is_edge(f.elem)) continue;
            int w = c.far_vertex(f);
            if (on_path.count(w) || (blocked(w) && !stop(w))) continue;
            on_path.insert(w);
            cur.push_back(f);
            dfs(w);
            cur.pop_back();
            on_path.erase(w);
        }
    };
    dfs(s);
}

GraphPath finish(const Sub& sub, const CurvePoint& from, const CurvePoint& to, const std::vector<Flag>& raw) {
    GraphPath g;
    g.start = from;
    g.end = to;
    for (Flag f : raw) {
        g.length += sub.c.edges.at(f.elem).len;
        Flag o = sub.orig(f);
        if (g.flags.empty() || g.flags.back() != o) g.flags.push_back(o);
    }
    return g;
}

}  // namespace

GraphPath unique_path(const TropicalCurve& c, const CurvePoint& from, const CurvePoint& to) {
    Sub sub(c);
    CurvePoint a = c.normalize(from), b = c.normalize(to);
    if (a == b) return GraphPath{a, b, {}, Q(0)};
    if (a.kind != CurvePoint::Vertex && b.kind != CurvePoint::Vertex && a.kind == b.kind && a.id == b.id) {
        // same element: order the two splits so the second lands on the fresh piece
        if (a.kind == CurvePoint::OnEdge) {
            const CurvePoint& lo = a.t < b.t ? a : b;
            const CurvePoint& hi = a.t < b.t ? b : a;
            int wl = sub.place(lo);
            // the far piece now starts at wl (reversed); offset measured from its ends[0]
            int fresh = -1;
            for (auto& [id, o] : sub.origin)
                if (o.first == lo.id && id != lo.id) fresh = id;
            const Edge& fe = sub.c.edges.at(fresh);
            Q off = fe.u == wl ? hi.t - lo.t : fe.len - (hi.t - lo.t);
            int fr2;
            int wh = subdivide_inplace(sub.c, {CurvePoint::OnEdge, fresh, off}, &fr2);
            sub.origin[fr2] = {lo.id, !sub.origin[fresh].second};
            int s = a.t < b.t ? wl : wh, t = a.t < b.t ? wh : wl;
            std::vector<std::vector<Flag>> found;
            enumerate_paths(sub.c, s, [&](int v) { return v == t; }, [](int) { return false; }, found);
            if (found.size() != 1) throw std::invalid_argument(found.empty() ? "no path" : "path not unique");
            return finish(sub, a, b, found[0]);
        }
        throw std::invalid_argument("both points on one ray: use distances directly");
    }
    int s = sub.place(a), t = sub.place(b);
    std::vector<std::vector<Flag>> found;
    enumerate_paths(sub.c, s, [&](int v) { return v == t; }, [](int) { return false; }, found);
    if (found.empty()) throw std::invalid_argument("no path");
    if (found.size() > 1) throw std::invalid_argument("path not unique");
    return finish(sub, a, b, found[0]);
}

GraphPath unique_path_to(const TropicalCurve& c, const CurvePoint& from, const std::set<int>& target) {
    Sub sub(c);
    CurvePoint a = c.normalize(from);
    if (a.kind == CurvePoint::Vertex && target.count(a.id)) return GraphPath{a, a, {}, Q(0)};
    int s = sub.place(a);
    std::vector<std::vector<Flag>> found;
    auto in = [&](int v) { return target.count(v) > 0; };
    enumerate_paths(sub.c, s, in, in, found);
    if (found.empty()) throw std::invalid_argument("no path");
    if (found.size() > 1) throw std::invalid_argument("path not unique");
    GraphPath g = finish(sub, a, a, found[0]);
    int endv = sub.c.far_vertex(found[0].back());
    g.end = CurvePoint::vertex(endv);
    return g;
}

}  // namespace tropical
