// transport along a modification of the domain, and gluing of two pieces.
// Both copy existing certificates into a fresh builder and let completion
// restore harmonicity.

#include <functional>
#include <optional>
#include <queue>

#include "tropical/construct.hpp"

namespace tropical {

namespace {

// ext point sitting over a base point, without modifying anything
CurvePoint locate(const Modification& m, const CurvePoint& p0) {
    CurvePoint p = m.base.normalize(p0);
    for (auto& [v, q] : m.vbase)
        if (q == p) return CurvePoint::vertex(v);
    for (auto& [e, tag] : m.etag) {
        if (tag.elem != p.id || p.kind == CurvePoint::Vertex) continue;
        if (m.ext.is_ray(e)) {
            if (p.t > tag.from) return {CurvePoint::OnRay, e, p.t - tag.from};
            continue;
        }
        Q lo = std::min(tag.from, tag.to), hi = std::max(tag.from, tag.to);
        if (lo < p.t && p.t < hi) return {CurvePoint::OnEdge, e, abs(p.t - tag.from)};
    }
    throw std::invalid_argument("point " + point_str(p) + " not covered by modification");
}

// base point under an ext point of the base part
CurvePoint base_of(const Modification& m, const CurvePoint& p) {
    if (p.kind == CurvePoint::Vertex) return m.vbase.at(p.id);
    const BaseTag& tag = m.etag.at(p.id);
    Q t = p.kind == CurvePoint::OnRay ? tag.from + p.t : tag.from + (tag.to > tag.from ? p.t : -p.t);
    CurvePoint q{m.base.is_ray(tag.elem) ? CurvePoint::OnRay : CurvePoint::OnEdge, tag.elem, t};
    return m.base.normalize(q);
}

struct Merger {
    CertBuilder& B;
    const HModCertificate& C;
    std::map<int, int> TV;  // cert target vertex -> builder target vertex
    std::map<int, int> TR;  // cert target ray -> builder target ray
    std::map<int, int> DV;  // cert domain vertex -> builder domain vertex

    Merger(CertBuilder& b, const HModCertificate& c) : B(b), C(c) {}

    void copy_target() {
        const Modification& T = C.target_mod;
        std::queue<int> q;
        for (auto& [v, p] : T.vbase) {
            TV[v] = B.line_vertex(line_coordinate(p));
            q.push(v);
        }
        for (auto& [r, tag] : T.etag)
            if (T.ext.is_ray(r)) TR[r] = tag.elem;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (Flag f : T.ext.flags_at(v)) {
                if (T.in_base(f.elem)) continue;
                if (T.ext.is_ray(f.elem)) {
                    TR[f.elem] = B.tgt.ext.add_ray(TV[v]);
                    continue;
                }
                int w = T.ext.far_vertex(f);
                if (TV.count(w)) continue;
                TV[w] = B.tgt.ext.add_vertex();
                B.tgt.ext.add_edge(TV[v], TV[w], T.ext.edges.at(f.elem).len);
                q.push(w);
            }
        }
    }

    void set_img(int v, int y) {
        auto it = B.img.find(v);
        if (it != B.img.end() && it->second != y)
            throw std::invalid_argument("incompatible certificates at vertex " + std::to_string(v));
        B.img[v] = y;
    }

    // phi: cert base point -> builder base point (nullopt: not owned here)
    void copy_domain(const std::function<std::optional<CurvePoint>(const CurvePoint&)>& phi,
                     const std::function<std::optional<int>(int)>& phi_ray) {
        const Modification& D = C.domain_mod;
        const HarmonicMap& h = C.lift;
        for (auto& [x, p] : D.vbase) {
            auto q = phi(p);
            if (!q) continue;
            int v = B.dom.vertex_at(*q);
            DV[x] = v;
            set_img(v, TV.at(h.vmap.at(x)));
        }
        // added trees hanging off included vertices
        std::queue<int> q;
        for (auto& [x, v] : DV) q.push(x);
        std::set<int> seen;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (Flag f : D.ext.flags_at(x)) {
                if (D.in_base(f.elem) || !seen.insert(f.elem).second) continue;
                const FlagImage& im = h.fmap.at(f);
                if (D.ext.is_ray(f.elem)) {
                    B.ray_img[B.dom.ext.add_ray(DV[x])] = {TR.at(im.target.elem), im.slope};
                    continue;
                }
                int y = D.ext.far_vertex(f);
                DV[y] = B.dom.ext.add_vertex();
                B.dom.ext.add_edge(DV[x], DV[y], D.ext.edges.at(f.elem).len);
                B.img[DV[y]] = TV.at(h.vmap.at(y));
                q.push(y);
            }
        }
        for (auto& [r, tag] : D.etag) {
            if (!D.ext.is_ray(r)) continue;
            auto er = phi_ray(tag.elem);
            if (!er) continue;
            for (auto& [br, btag] : B.dom.etag)
                if (B.dom.ext.is_ray(br) && btag.elem == *er && !B.ray_img.count(br))
                    B.ray_img[br] = {TR.at(h.fmap.at({r, 0}).target.elem), h.fmap.at({r, 0}).slope};
        }
    }

    // builder image of a cert base point (which may sit inside a cert element)
    int image_of(const CurvePoint& p) {
        CurvePoint e = locate(C.domain_mod, p);
        const HarmonicMap& h = C.lift;
        if (e.kind == CurvePoint::Vertex) return TV.at(h.vmap.at(e.id));
        const FlagImage& im = h.fmap.at({e.id, 0});
        if (e.kind == CurvePoint::OnRay) {
            int base = C.domain_mod.ext.rays.at(e.id).base;
            return B.tgt_toward_end(TV.at(h.vmap.at(base)), TR.at(im.target.elem), e.t * im.slope);
        }
        const Edge& x = C.domain_mod.ext.edges.at(e.id);
        return B.tgt_toward(TV.at(h.vmap.at(x.u)), TV.at(h.vmap.at(x.v)), e.t * im.slope);
    }
};

// every F'-contracted tree added by `ext` goes up fresh target rays with slope 1
void lift_added_trees(CertBuilder& B, const Modification& ext) {
    std::function<void(int, int, int, std::optional<int>)> up = [&](int x, int X, int parent,
                                                                   std::optional<int> cont) {
        for (Flag f : ext.ext.flags_at(x)) {
            if (ext.in_base(f.elem) || f.elem == parent) continue;
            int R = cont ? *cont : B.tgt_ray(X);
            cont.reset();
            if (ext.ext.is_ray(f.elem)) {
                B.ray_img[f.elem] = {R, 1};
                continue;
            }
            int y = ext.ext.far_vertex(f);
            int Y = B.tgt_along_ray(R, ext.ext.edges.at(f.elem).len);
            B.img[y] = Y;
            up(y, Y, f.elem, R);
        }
    };
    for (auto& [x, p] : ext.vbase) {
        bool has_tree = false;
        for (Flag f : ext.ext.flags_at(x)) has_tree |= !ext.in_base(f.elem);
        if (!has_tree) continue;
        if (!B.img.count(x)) B.img[x] = B.line_vertex(B.F.value_at(CurvePoint::vertex(x)));
        up(x, B.img.at(x), -1, std::nullopt);
    }
}

}  // namespace

HModCertificate transport(const BalancedFn& F, const HModCertificate& cert, const Modification& ext,
                          int max_degree) {
    if (!(ext.base == F.domain)) throw std::invalid_argument("modification not based on the curve of F");
    if (auto p = check_modification(ext); !p.empty()) throw std::invalid_argument("invalid modification: " + p.front());
    BalancedFn G = induced_function(F, ext);
    CertBuilder B(G);
    Merger M(B, cert);
    M.copy_target();
    M.copy_domain([&](const CurvePoint& q) { return std::optional<CurvePoint>(locate(ext, q)); },
                  [&](int r) -> std::optional<int> {
                      for (auto& [e, tag] : ext.etag)
                          if (ext.ext.is_ray(e) && tag.elem == r) return e;
                      return std::nullopt;
                  });
    // points where ext subdivided the old curve
    for (auto& [v, p] : std::map<int, CurvePoint>(B.dom.vbase)) {
        if (B.img.count(v)) continue;
        CurvePoint e = p;
        bool old_part = e.kind == CurvePoint::Vertex ? ext.vbase.count(e.id) > 0 : ext.in_base(e.id);
        if (old_part) B.img[v] = M.image_of(base_of(ext, e));
    }
    lift_added_trees(B, ext);
    return B.finish(max_degree);
}

HModCertificate glue(const BalancedFn& F, const GluePiece& a, const GluePiece& b, int max_degree) {
    auto members = [&](const GluePiece& p) {
        std::set<int> s = p.elems;
        for (auto [e, v] : p.half_edges) s.insert(e);
        return s;
    };
    std::set<int> ma = members(a), mb = members(b);
    for (auto& [id, e] : F.domain.edges)
        if (!ma.count(id) && !mb.count(id)) throw std::invalid_argument("decomposition invalid: edge " + std::to_string(id) + " uncovered");
    for (auto& [id, r] : F.domain.rays)
        if (!ma.count(id) && !mb.count(id)) throw std::invalid_argument("decomposition invalid: ray " + std::to_string(id) + " uncovered");
    for (int e : ma)
        if (mb.count(e) && F.contracted(e))
            throw std::invalid_argument("decomposition invalid: contracted element " + std::to_string(e) + " in the overlap");
    if (ma.empty()) return b.cert;
    if (mb.empty()) return a.cert;

    CertBuilder B(F);
    for (const GluePiece* p : {&a, &b}) {
        BalancedFn Fp = restrict_fn(F, p->elems, p->half_edges);
        if (!(p->cert.domain_mod.base == Fp.domain))
            throw std::invalid_argument("certificate does not match its piece");
        std::map<int, int> half_at;
        for (auto [e, v] : p->half_edges) half_at[e] = v;
        Merger M(B, p->cert);
        M.copy_target();
        M.copy_domain(
            [&](const CurvePoint& q) -> std::optional<CurvePoint> {
                if (q.kind != CurvePoint::OnRay || !half_at.count(q.id)) return q;
                const Edge& x = F.domain.edges.at(q.id);
                if (q.t >= x.len) return std::nullopt;
                return CurvePoint{CurvePoint::OnEdge, q.id, half_at[q.id] == x.u ? q.t : x.len - q.t};
            },
            [&](int r) -> std::optional<int> {
                if (F.domain.is_ray(r)) return r;
                return std::nullopt;
            });
    }
    return B.finish(max_degree);
}

void import_certificate(CertBuilder& B, const HModCertificate& cert) {
    Merger M(B, cert);
    M.copy_target();
    M.copy_domain([](const CurvePoint& q) { return std::optional<CurvePoint>(q); },
                  [&](int r) -> std::optional<int> {
                      if (B.F.domain.is_ray(r)) return r;
                      return std::nullopt;
                  });
}

}  // namespace tropical
