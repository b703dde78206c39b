#include "tropical/construct.hpp"

#include <algorithm>
#include <queue>

namespace tropical {

namespace {

// geodesic in a tree-like part of a curve, as flags in direction of travel
std::vector<Flag> tree_path(const TropicalCurve& c, int a, int b) {
    if (a == b) return {};
    std::map<int, Flag> via;  // vertex -> flag used to enter it (at the previous vertex)
    std::queue<int> q;
    q.push(a);
    via[a] = Flag{};
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (Flag f : c.flags_at(v)) {
            if (!c.is_edge(f.elem)) continue;
            int w = c.far_vertex(f);
            if (via.count(w)) continue;
            via[w] = f;
            if (w == b) {
                std::vector<Flag> out;
                for (int x = b; x != a; x = c.flag_vertex(via[x])) out.push_back(via[x]);
                std::reverse(out.begin(), out.end());
                return out;
            }
            q.push(w);
        }
    }
    throw ConstructionError("no path between target vertices " + std::to_string(a) + " and " + std::to_string(b));
}

Q flag_len(const TropicalCurve& c, Flag f) { return c.edges.at(f.elem).len; }

// vertex at distance d along a walk, splitting one element if needed
int point_on_walk(Modification& m, const std::vector<Flag>& walk, int start, const Q& d) {
    if (d < 0) throw ConstructionError("negative distance along walk");
    if (d == 0) return start;
    Q acc = 0;
    for (Flag f : walk) {
        if (m.ext.is_ray(f.elem)) return m.split(f.elem, d - acc);
        Q L = flag_len(m.ext, f);
        if (d < acc + L) return m.split(f.elem, f.side == 0 ? d - acc : L - (d - acc));
        acc += L;
        if (d == acc) return m.ext.far_vertex(f);
    }
    throw ConstructionError("walk shorter than requested distance");
}

}  // namespace

CertBuilder::CertBuilder(const BalancedFn& f)
    : F(f), dom(Modification::trivial(f.domain)), tgt(Modification::trivial(real_line())) {}

int CertBuilder::line_vertex(const Q& x) { return tgt.vertex_at(line_point(x)); }

int CertBuilder::tgt_ray(int tv) { return tgt.ext.add_ray(tv); }

std::vector<Flag> CertBuilder::tgt_geodesic(int a, int b) const { return tree_path(tgt.ext, a, b); }

Q CertBuilder::tgt_dist(int a, int b) const {
    Q d = 0;
    for (Flag f : tgt_geodesic(a, b)) d += flag_len(tgt.ext, f);
    return d;
}

int CertBuilder::tgt_toward(int a, int b, const Q& d) {
    return point_on_walk(tgt, tgt_geodesic(a, b), a, d);
}

int CertBuilder::tgt_along_ray(int ray, const Q& d) {
    if (d == 0) return tgt.ext.rays.at(ray).base;
    return tgt.split(ray, d);
}

int CertBuilder::tgt_toward_end(int a, int ray, const Q& d) {
    auto walk = tgt_geodesic(a, tgt.ext.rays.at(ray).base);
    walk.push_back({ray, 0});
    return point_on_walk(tgt, walk, a, d);
}

int CertBuilder::dom_along(const std::vector<Flag>& walk, const Q& d) {
    if (walk.empty()) throw ConstructionError("empty walk");
    return point_on_walk(dom, walk, dom.ext.flag_vertex(walk.front()), d);
}

Q CertBuilder::walk_length(const std::vector<Flag>& walk) const {
    Q d = 0;
    for (Flag f : walk) {
        if (dom.ext.is_ray(f.elem)) throw ConstructionError("walk along a ray has no length");
        d += flag_len(dom.ext, f);
    }
    return d;
}

void CertBuilder::default_images() {
    for (int v : dom.ext.vertices) {
        if (img.count(v) || !dom.vbase.count(v)) continue;
        for (Flag f : dom.ext.flags_at(v)) {
            auto it = dom.etag.find(f.elem);
            if (it != dom.etag.end() && !F.contracted(it->second.elem)) {
                img[v] = line_vertex(F.value_at(dom.vbase.at(v)));
                break;
            }
        }
    }
    for (auto& [r, ray] : dom.ext.rays) {
        if (ray_img.count(r)) continue;
        auto it = dom.etag.find(r);
        if (it == dom.etag.end()) continue;
        long s = F.slope({it->second.elem, 0});
        if (s != 0) ray_img[r] = {s > 0 ? 1 : 0, std::labs(s)};
    }
    // unplaced 2-valent chains map linearly between their placed ends
    for (int v : std::vector<int>(dom.ext.vertices.begin(), dom.ext.vertices.end())) {
        if (img.count(v)) continue;
        auto fl = dom.ext.flags_at(v);
        if (fl.size() != 2 || fl[0].elem == fl[1].elem || !dom.ext.is_edge(fl[0].elem) || !dom.ext.is_edge(fl[1].elem))
            continue;
        // (vertex, distance from v) on one side; returns the placed end and its distance
        auto walk_out = [&](Flag f, std::vector<std::pair<int, Q>>& seen) -> std::pair<int, Q> {
            Q d = 0;
            while (dom.ext.is_edge(f.elem)) {
                d += dom.ext.edges.at(f.elem).len;
                int w = dom.ext.far_vertex(f);
                if (img.count(w)) return {w, d};
                auto fw = dom.ext.flags_at(w);
                if (w == v || fw.size() != 2) break;
                seen.push_back({w, d});
                f = fw[0] == dom.ext.reverse(f) ? fw[1] : fw[0];
            }
            return {-1, d};
        };
        std::vector<std::pair<int, Q>> left, right;
        auto [a, da] = walk_out(fl[0], left);
        auto [b, db] = walk_out(fl[1], right);
        if (a < 0 || b < 0) continue;
        Q s = tgt_dist(img.at(a), img.at(b)) / (da + db);
        if (s == 0 || !is_integer(s)) continue;  // refine_edges reports it
        int ia = img.at(a), ib = img.at(b);
        std::vector<std::pair<int, Q>> placed{{v, da}};  // distance from a
        for (auto& [w, d] : left) placed.push_back({w, da - d});
        for (auto& [w, d] : right) placed.push_back({w, da + d});
        for (auto& [w, t] : placed) img[w] = tgt_toward(ia, ib, s * t);
    }
}

void CertBuilder::refine_edges() {
    std::vector<int> edge_ids, ray_ids;
    for (auto& [id, e] : dom.ext.edges) edge_ids.push_back(id);
    for (auto& [id, r] : dom.ext.rays) ray_ids.push_back(id);
    auto image_of = [&](int v) {
        auto it = img.find(v);
        if (it == img.end()) throw ConstructionError("no image for vertex " + std::to_string(v));
        return it->second;
    };
    for (int id : edge_ids) {
        Edge e = dom.ext.edges.at(id);
        int a = image_of(e.u), b = image_of(e.v);
        auto path = tgt_geodesic(a, b);
        if (path.empty()) throw ConstructionError("edge " + std::to_string(id) + " would be contracted");
        Q D = 0;
        std::vector<std::pair<Q, int>> stops;  // target distance from a, target vertex
        for (Flag g : path) {
            D += flag_len(tgt.ext, g);
            stops.push_back({D, tgt.ext.far_vertex(g)});
        }
        stops.pop_back();
        Q s = D / e.len;
        if (!is_integer(s)) throw ConstructionError("edge " + std::to_string(id) + " gets non-integer slope " + format_q(s));
        // largest offset first: the edge keeps its id on the piece at side 0
        for (auto it = stops.rbegin(); it != stops.rend(); ++it) img[dom.split(id, it->first / s)] = it->second;
    }
    for (int id : ray_ids) {
        auto ri = ray_img.find(id);
        if (ri == ray_img.end()) throw ConstructionError("no image for ray " + std::to_string(id));
        auto [R, s] = ri->second;
        int a = image_of(dom.ext.rays.at(id).base);
        auto path = tgt_geodesic(a, tgt.ext.rays.at(R).base);
        for (Flag g : path) img[dom.split(id, flag_len(tgt.ext, g) / s)] = tgt.ext.far_vertex(g);
    }
}

HarmonicMap CertBuilder::build_map() const {
    HarmonicMap h;
    h.source = dom.ext;
    h.target = tgt.ext;
    for (int v : dom.ext.vertices) {
        auto it = img.find(v);
        if (it == img.end()) throw ConstructionError("no image for vertex " + std::to_string(v));
        h.vmap[v] = it->second;
    }
    for (auto& [id, e] : dom.ext.edges) {
        auto path = tgt_geodesic(h.vmap[e.u], h.vmap[e.v]);
        if (path.size() != 1) throw ConstructionError("edge " + std::to_string(id) + " not refined");
        Q s = flag_len(tgt.ext, path[0]) / e.len;
        if (!is_integer(s)) throw ConstructionError("edge " + std::to_string(id) + " gets non-integer slope");
        long sl = static_cast<long>(numerator(s));
        h.fmap[{id, 0}] = {false, path[0], sl};
        h.fmap[{id, 1}] = {false, tgt.ext.reverse(path[0]), sl};
    }
    for (auto& [id, r] : dom.ext.rays) {
        auto [R, s] = ray_img.at(id);
        if (h.vmap[r.base] != tgt.ext.rays.at(R).base) throw ConstructionError("ray " + std::to_string(id) + " not refined");
        h.fmap[{id, 0}] = {false, {R, 0}, s};
    }
    return h;
}

std::map<int, Q> CertBuilder::tgt_levels() const {
    std::map<int, Q> lev;
    std::queue<int> q;
    for (auto& [v, p] : tgt.vbase) {
        lev[v] = 0;
        q.push(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (Flag f : tgt.ext.flags_at(v)) {
            if (!tgt.ext.is_edge(f.elem) || tgt.in_base(f.elem)) continue;
            int w = tgt.ext.far_vertex(f);
            if (lev.count(w)) continue;
            lev[w] = lev[v] + flag_len(tgt.ext, f);
            q.push(w);
        }
    }
    return lev;
}

bool CertBuilder::complete_once() {
    HarmonicMap h = build_map();
    auto lev = tgt_levels();
    bool added = false;
    for (int v : std::set<int>(dom.ext.vertices)) {
        int w = h.vmap.at(v);
        std::map<Flag, long> sums;
        for (Flag g : tgt.ext.flags_at(w)) sums[g] = 0;
        for (Flag f : h.source.flags_at(v)) sums[h.fmap.at(f).target] += h.fmap.at(f).slope;
        long d = 0;
        for (auto& [g, s] : sums) d = std::max(d, s);
        for (auto& [g, s] : sums) {
            if (s == d) continue;
            bool away = !tgt.in_base(g.elem) && (tgt.ext.is_ray(g.elem) || lev.at(tgt.ext.far_vertex(g)) > lev.at(w));
            if (!away)
                throw ConstructionError("cannot complete at vertex " + std::to_string(v) + ": deficit toward " +
                                        flag_str(g));
            // walk outward to some end of the target
            Flag cur = g;
            while (!tgt.ext.is_ray(cur.elem)) {
                int x = tgt.ext.far_vertex(cur);
                std::optional<Flag> next;
                for (Flag k : tgt.ext.flags_at(x)) {
                    if (k.elem == cur.elem) continue;
                    if (tgt.ext.is_ray(k.elem)) {
                        next = k;
                        break;
                    }
                    if (!next && lev.at(tgt.ext.far_vertex(k)) > lev.at(x)) next = k;
                }
                if (!next) throw ConstructionError("target tree has a finite leaf");
                cur = *next;
            }
            for (long i = s; i < d; ++i) {
                ray_img[dom_ray(v)] = {cur.elem, 1};
                ++fillers_added;
            }
            added = true;
        }
    }
    return added;
}

HModCertificate CertBuilder::finish(int max_degree) {
    default_images();
    for (int round = 0;; ++round) {
        if (round > 10000) throw ConstructionError("completion does not terminate");
        refine_edges();
        if (!complete_once()) break;
    }
    HModCertificate c;
    c.lift = build_map();
    c.domain_mod = dom;
    c.target_mod = tgt;
    for (int v : dom.ext.vertices) {
        auto p = extract_local_problem(c.lift, v);
        auto w = solve(p, max_degree);
        if (!w) throw ConstructionError("no local realization at vertex " + std::to_string(v));
        c.witnesses[v] = *w;
    }
    return c;
}

}  // namespace tropical
