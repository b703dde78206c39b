#include "tropical/harmonic.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropical {

long BalancedFn::slope(Flag f) const {
    auto it = slopes.find(f);
    return it == slopes.end() ? 0 : it->second;
}

Q BalancedFn::value_at(const CurvePoint& p0) const {
    CurvePoint p = domain.normalize(p0);
    switch (p.kind) {
        case CurvePoint::Vertex: return values.at(p.id);
        case CurvePoint::OnEdge: {
            const Edge& e = domain.edges.at(p.id);
            return values.at(e.u) + slope({p.id, 0}) * p.t;
        }
        case CurvePoint::OnRay: return values.at(domain.rays.at(p.id).base) + slope({p.id, 0}) * p.t;
    }
    return 0;
}

BalancedFn from_values(const TropicalCurve& c, const std::map<int, Q>& values,
                       const std::map<int, long>& ray_slopes) {
    BalancedFn f;
    f.domain = c;
    for (int v : c.vertices) f.values[v] = values.at(v);
    for (auto& [id, e] : c.edges) {
        Q s = (values.at(e.v) - values.at(e.u)) / e.len;
        if (!is_integer(s)) throw std::invalid_argument("edge " + std::to_string(id) + ": non-integer slope");
        long sl = static_cast<long>(numerator(s));
        f.slopes[{id, 0}] = sl;
        f.slopes[{id, 1}] = -sl;
    }
    for (auto& [id, r] : c.rays) {
        auto it = ray_slopes.find(id);
        f.slopes[{id, 0}] = it == ray_slopes.end() ? 0 : it->second;
    }
    return f;
}

BalanceReport is_balanced(const BalancedFn& fn) {
    BalanceReport rep;
    const auto& c = fn.domain;
    for (auto& [id, e] : c.edges) {
        long a = fn.slope({id, 0}), b = fn.slope({id, 1});
        if (a != -b) rep.problems.push_back("edge " + std::to_string(id) + ": opposite slopes disagree");
        if (!fn.values.count(e.u) || !fn.values.count(e.v)) {
            rep.problems.push_back("edge " + std::to_string(id) + ": missing vertex value");
            continue;
        }
        if (fn.values.at(e.v) - fn.values.at(e.u) != a * e.len)
            rep.problems.push_back("edge " + std::to_string(id) + ": value difference != slope*length");
    }
    for (int v : c.vertices) {
        long s = 0;
        for (Flag f : c.flags_at(v)) s += fn.slope(f);
        if (s != 0) {
            rep.bad_vertices.push_back(v);
            rep.problems.push_back("vertex " + std::to_string(v) + ": outgoing slopes sum to " + std::to_string(s));
        }
    }
    return rep;
}

HarmonicMap identity_map(const TropicalCurve& c) {
    HarmonicMap m;
    m.source = m.target = c;
    for (int v : c.vertices) m.vmap[v] = v;
    for (Flag f : c.all_flags()) m.fmap[f] = FlagImage{false, f, 1};
    return m;
}

std::vector<std::string> check_normal_form(const HarmonicMap& m) {
    std::vector<std::string> out;
    const auto& S = m.source;
    const auto& T = m.target;
    for (int v : S.vertices) {
        auto it = m.vmap.find(v);
        if (it == m.vmap.end() || !T.vertices.count(it->second))
            out.push_back("vertex " + std::to_string(v) + ": no image vertex");
    }
    if (!out.empty()) return out;
    for (Flag f : S.all_flags()) {
        auto it = m.fmap.find(f);
        if (it == m.fmap.end()) {
            out.push_back("flag " + flag_str(f) + ": no image");
            continue;
        }
        const FlagImage& im = it->second;
        int v = S.flag_vertex(f);
        if (im.contracted) {
            if (S.is_edge(f.elem) && m.vmap.at(S.far_vertex(f)) != m.vmap.at(v))
                out.push_back("flag " + flag_str(f) + ": contracted edge joins different image vertices");
            continue;
        }
        if (im.slope <= 0) {
            out.push_back("flag " + flag_str(f) + ": non-positive slope");
            continue;
        }
        if (!T.has_flag(im.target)) {
            out.push_back("flag " + flag_str(f) + ": image flag missing in target");
            continue;
        }
        if (T.flag_vertex(im.target) != m.vmap.at(v))
            out.push_back("flag " + flag_str(f) + ": image flag not based at image vertex");
        if (S.is_edge(f.elem)) {
            if (!T.is_edge(im.target.elem)) {
                out.push_back("flag " + flag_str(f) + ": edge mapped onto a ray");
                continue;
            }
            if (T.far_vertex(im.target) != m.vmap.at(S.far_vertex(f)))
                out.push_back("flag " + flag_str(f) + ": far endpoint image mismatch");
            if (T.edges.at(im.target.elem).len != im.slope * S.edges.at(f.elem).len)
                out.push_back("edge " + std::to_string(f.elem) + ": metric inconsistency");
        } else if (!T.is_ray(im.target.elem)) {
            out.push_back("flag " + flag_str(f) + ": ray mapped onto an edge");
        }
    }
    // the two flags of an edge must agree
    for (auto& [id, e] : S.edges) {
        auto a = m.fmap.find({id, 0}), b = m.fmap.find({id, 1});
        if (a == m.fmap.end() || b == m.fmap.end()) continue;
        const FlagImage &x = a->second, &y = b->second;
        if (x.contracted != y.contracted ||
            (!x.contracted && (x.slope != y.slope || y.target != T.reverse(x.target))))
            out.push_back("edge " + std::to_string(id) + ": flag images disagree");
    }
    return out;
}

namespace {
std::map<Flag, long> directional_sums(const HarmonicMap& m, int v) {
    std::map<Flag, long> sums;
    int w = m.vmap.at(v);
    for (Flag g : m.target.flags_at(w)) sums[g] = 0;
    for (Flag f : m.source.flags_at(v)) {
        const FlagImage& im = m.fmap.at(f);
        if (!im.contracted) sums[im.target] += im.slope;
    }
    return sums;
}
}  // namespace

long vertex_degree(const HarmonicMap& m, int v) {
    long d = 0;
    for (auto& [g, s] : directional_sums(m, v)) d = std::max(d, s);
    return d;
}

long local_degree(const HarmonicMap& m, const CurvePoint& p0, Flag dir) {
    CurvePoint p = m.source.normalize(p0);
    if (p.kind == CurvePoint::Vertex) {
        long s = 0;
        for (Flag f : m.source.flags_at(p.id)) {
            const FlagImage& im = m.fmap.at(f);
            if (!im.contracted && im.target == dir) s += im.slope;
        }
        return s;
    }
    // interior point: the element's slope in both directions of its image
    const FlagImage& im = m.fmap.at({p.id, 0});
    if (im.contracted) return 0;
    Flag fwd = im.target, back = m.target.reverse(im.target);
    if (dir.elem == fwd.elem && (dir.side == fwd.side || dir.side == back.side)) return im.slope;
    return 0;
}

HarmonicReport is_harmonic(const HarmonicMap& m) {
    HarmonicReport rep;
    for (auto& s : check_normal_form(m)) rep.problems.push_back(s);
    if (!rep.ok()) return rep;
    // surjectivity on flags
    std::set<Flag> hit;
    for (auto& [f, im] : m.fmap)
        if (!im.contracted) hit.insert(im.target);
    for (Flag g : m.target.all_flags())
        if (!hit.count(g)) rep.problems.push_back("target flag " + flag_str(g) + ": no preimage (not surjective)");
    for (int w : m.target.vertices) {
        bool any = false;
        for (auto& [v, img] : m.vmap) any = any || img == w;
        if (!any) rep.problems.push_back("target vertex " + std::to_string(w) + ": no preimage (not surjective)");
    }
    // pure degree at every source vertex
    for (int v : m.source.vertices) {
        auto sums = directional_sums(m, v);
        long lo = -1, hi = -1;
        for (auto& [g, s] : sums) {
            lo = lo < 0 ? s : std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (lo != hi) {
            std::string d;
            for (auto& [g, s] : sums) d += " " + flag_str(g) + "=" + std::to_string(s);
            rep.problems.push_back("vertex " + std::to_string(v) + ": not harmonic, local degrees" + d);
        }
    }
    return rep;
}

bool is_finite(const HarmonicMap& m) {
    for (auto& [f, im] : m.fmap)
        if (im.contracted) return false;
    return true;
}

BalancedFn pullback(const HarmonicMap& m, const BalancedFn& g) {
    BalancedFn out;
    out.domain = m.source;
    for (int v : m.source.vertices) out.values[v] = g.values.at(m.vmap.at(v));
    for (Flag f : m.source.all_flags()) {
        const FlagImage& im = m.fmap.at(f);
        out.slopes[f] = im.contracted ? 0 : im.slope * g.slope(im.target);
    }
    return out;
}

GraphPath lift_path(const HarmonicMap& m, const GraphPath& tp, int terminal, std::optional<Flag> avoid) {
    const auto& S = m.source;
    const auto& T = m.target;
    GraphPath out;
    out.end = CurvePoint::vertex(terminal);
    std::vector<Flag> rev;  // built backwards
    int cur = terminal;
    for (size_t i = tp.flags.size(); i-- > 0;) {
        Flag g = tp.flags[i];
        if (!T.is_edge(g.elem)) throw std::invalid_argument("not liftable: target path uses a ray");
        Flag back = T.reverse(g);  // at the image of cur, pointing back along the path
        if (m.vmap.at(cur) != T.flag_vertex(back)) throw std::invalid_argument("not liftable: endpoint mismatch");
        std::optional<Flag> pick;
        for (Flag f : S.flags_at(cur)) {
            const FlagImage& im = m.fmap.at(f);
            if (im.contracted || im.target != back || !S.is_edge(f.elem)) continue;
            if (i + 1 == tp.flags.size() && avoid && S.reverse(f) == *avoid) {
                if (!pick) pick = f;  // keep as fallback
                continue;
            }
            pick = f;
            break;
        }
        if (!pick) throw std::invalid_argument("not liftable at vertex " + std::to_string(cur));
        rev.push_back(S.reverse(*pick));
        out.length += S.edges.at(pick->elem).len;
        cur = S.far_vertex(*pick);
    }
    std::reverse(rev.begin(), rev.end());
    out.flags = rev;
    out.start = CurvePoint::vertex(cur);
    return out;
}

std::vector<CurvePoint> turning_points(const HarmonicMap& m, const GraphPath& p) {
    std::vector<CurvePoint> out;
    const auto& S = m.source;
    for (size_t i = 0; i + 1 < p.flags.size(); ++i) {
        Flag in = S.reverse(p.flags[i]);  // incoming edge seen from the interior vertex
        int v = S.flag_vertex(in);
        const FlagImage& im = m.fmap.at(in);
        if (im.contracted) continue;
        for (Flag f : S.flags_at(v)) {
            if (f == in) continue;
            const FlagImage& o = m.fmap.at(f);
            if (!o.contracted && o.target == im.target) {
                out.push_back(CurvePoint::vertex(v));
                break;
            }
        }
    }
    return out;
}

CoarseMap coarsen(const HarmonicMap& m) {
    CoarseMap c;
    c.source = m.source;
    c.target = m.target;
    c.vmap = m.vmap;
    for (auto& [id, e] : m.source.edges) {
        const FlagImage& im = m.fmap.at({id, 0});
        c.elem_image[id] = im.contracted ? CoarseMap::Img{} : CoarseMap::Img{{im.target}, im.slope};
    }
    for (auto& [id, r] : m.source.rays) {
        const FlagImage& im = m.fmap.at({id, 0});
        c.elem_image[id] = im.contracted ? CoarseMap::Img{} : CoarseMap::Img{{im.target}, im.slope};
    }
    return c;
}

HarmonicMap common_refinement(const CoarseMap& cm) {
    HarmonicMap m;
    m.source = cm.source;
    m.target = cm.target;
    m.vmap = cm.vmap;
    const auto& T = cm.target;
    for (auto& [id, img] : cm.elem_image) {
        bool is_edge = cm.source.is_edge(id);
        if (img.walk.empty()) {
            m.fmap[{id, 0}] = FlagImage{};
            if (is_edge) m.fmap[{id, 1}] = FlagImage{};
            continue;
        }
        if (img.slope <= 0) throw std::invalid_argument("metric inconsistency: non-positive slope");
        // check the walk is connected and starts at the image of side 0
        int start = cm.vmap.at(is_edge ? cm.source.edges.at(id).u : cm.source.rays.at(id).base);
        int at = start;
        Q total = 0;
        for (size_t i = 0; i < img.walk.size(); ++i) {
            Flag g = img.walk[i];
            if (T.flag_vertex(g) != at) throw std::invalid_argument("metric inconsistency: walk not connected");
            if (T.is_ray(g.elem)) {
                if (is_edge || i + 1 != img.walk.size())
                    throw std::invalid_argument("metric inconsistency: ray inside walk");
                break;
            }
            total += T.edges.at(g.elem).len;
            at = T.far_vertex(g);
        }
        if (is_edge) {
            const Edge& e = cm.source.edges.at(id);
            if (at != cm.vmap.at(e.v) || total != img.slope * e.len)
                throw std::invalid_argument("metric inconsistency on edge " + std::to_string(id));
        } else if (!T.is_ray(img.walk.back().elem)) {
            throw std::invalid_argument("metric inconsistency: ray walk must end in a ray");
        }
    }
    // split source elements at the walk's intermediate vertices
    for (auto& [id, img] : cm.elem_image) {
        if (img.walk.empty()) continue;
        bool is_edge = m.source.is_edge(id);
        int cur_elem = id;
        bool rev = false;  // orientation of cur_elem relative to travel
        Q consumed = 0;
        for (size_t i = 0; i < img.walk.size(); ++i) {
            Flag g = img.walk[i];
            bool last = i + 1 == img.walk.size();
            if (last) {
                Flag f = rev ? Flag{cur_elem, 1} : Flag{cur_elem, 0};
                m.fmap[f] = FlagImage{false, g, img.slope};
                if (is_edge || m.source.is_edge(cur_elem))
                    m.fmap[m.source.reverse(f)] = FlagImage{false, T.reverse(g), img.slope};
                break;
            }
            Q piece = T.edges.at(g.elem).len / img.slope;
            int fresh;
            CurvePoint at;
            if (m.source.is_ray(cur_elem)) {
                at = {CurvePoint::OnRay, cur_elem, piece};
                int w = subdivide_inplace(m.source, at, &fresh);
                m.vmap[w] = T.far_vertex(g);
                m.fmap[{fresh, 0}] = FlagImage{false, g, img.slope};
                m.fmap[{fresh, 1}] = FlagImage{false, T.reverse(g), img.slope};
                // ray keeps its id, now based at w
            } else {
                const Edge& e = m.source.edges.at(cur_elem);
                Q off = rev ? e.len - piece : piece;
                int w = subdivide_inplace(m.source, {CurvePoint::OnEdge, cur_elem, off}, &fresh);
                m.vmap[w] = T.far_vertex(g);
                // cur_elem now runs ends[0]..w, fresh runs w..old ends[1] (normalized)
                if (!rev) {
                    Flag f{cur_elem, 0};
                    if (m.source.edges.at(cur_elem).u != m.source.flag_vertex(f)) f.side = 1;
                    m.fmap[f] = FlagImage{false, g, img.slope};
                    m.fmap[m.source.reverse(f)] = FlagImage{false, T.reverse(g), img.slope};
                    cur_elem = fresh;
                    rev = m.source.edges.at(fresh).u != w;
                } else {
                    // travelling from ends[1] toward ends[0]: the fresh piece is first
                    const Edge& fe = m.source.edges.at(fresh);
                    Flag f{fresh, fe.u == w ? 1 : 0};
                    m.fmap[f] = FlagImage{false, g, img.slope};
                    m.fmap[m.source.reverse(f)] = FlagImage{false, T.reverse(g), img.slope};
                    rev = true;  // cur_elem still ends at w from its ends[0] side
                }
            }
            consumed += piece;
        }
    }
    for (int v : m.source.vertices)
        if (!m.vmap.count(v)) throw std::invalid_argument("metric inconsistency: unmapped vertex");
    auto nf = check_normal_form(m);
    if (!nf.empty()) throw std::invalid_argument("metric inconsistency: " + nf.front());
    return m;
}

}  // namespace tropical
