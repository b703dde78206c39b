// Base constructions over a contracted genus-2 core.  Critical paths run
// straight up the spine; the core is cut at the locations into pieces, each
// rising from its ends to one apex on a branch of its own.

#include <algorithm>

#include "levels.hpp"
#include "tropical/realize2.hpp"

namespace tropical {

namespace {

using namespace levels;

[[noreturn]] void pre(const std::string& what) { throw std::invalid_argument("precondition: " + what); }

struct Setup {
    const BalancedFn& F;
    CriticalStructure cs;
    SymMap sm;

    explicit Setup(const BalancedFn& F)
        : F(F), cs(critical_structure_over(F, core(F.domain), "core")), sm(F.domain) {}

    std::vector<Flag> leg(const CriticalPath& p) const { return path_walk(F.domain, p.vertices, p.edges); }

    HModCertificate finish(int max_degree, const char* name) {
        CertBuilder B(F);
        sm.realize(B, cs.value);
        sm.lift_rest(B, cs.contracted_component);
        place_remaining(B, cs.contracted_component);
        HModCertificate cert = B.finish(max_degree);
        CertVerdict v = verify_certificate(F, cert, max_degree);
        if (!v.accept) throw ConstructionError(std::string(name) + " construction rejected: " + v.diagnostic);
        return cert;
    }
};

// pieces of a core edge on either side of one of its vertices
std::pair<std::vector<Flag>, std::vector<Flag>> cut(const CoreEdge& e, int at) {
    auto it = std::find(e.verts.begin(), e.verts.end(), at);
    if (it == e.verts.end()) throw ConstructionError("vertex " + std::to_string(at) + " not on core edge");
    size_t k = it - e.verts.begin();
    return {{e.walk.begin(), e.walk.begin() + k}, {e.walk.begin() + k, e.walk.end()}};
}

Q offset_of(const CoreEdge& e, int at) {
    auto it = std::find(e.verts.begin(), e.verts.end(), at);
    return e.marks[it - e.verts.begin()];
}

const Location& location_of(const ThetaGeometry& g, int critical) {
    for (auto& l : g.locations)
        if (l.critical == critical) return l;
    throw ConstructionError("no location for vertex " + std::to_string(critical));
}

// u and v both at R; every core edge except `skip` folds over its own branch
void fold_other_edges(Setup& s, const ThetaGeometry& g, int skip, TP R) {
    for (int j = 0; j < 3; ++j) {
        if (j == skip) continue;
        const CoreEdge& e = g.edges[j];
        s.sm.arc(e.walk, g.u, s.sm.br.above(R, e.length / 2));
    }
}

}  // namespace

HModCertificate certify_theta_three_legs(const BalancedFn& F, int max_degree) {
    ThetaGeometry g = theta_geometry(F);
    Setup s(F);
    auto& paths = s.cs.paths;
    if (paths.size() != 3) pre("exactly three critical paths needed, found " + std::to_string(paths.size()));
    Q ell = paths[0].length;
    for (auto& p : paths)
        if (p.length != ell) pre("critical paths have unequal lengths");
    std::set<int> used;
    for (auto& p : paths) {
        const Location& l = location_of(g, p.critical);
        if (l.edge < 0) pre("location at a core vertex");
        if (!used.insert(l.edge).second) pre("two locations on one core edge");
    }
    TP P{0, ell};
    for (auto& p : paths) s.sm.rise(s.leg(p), p.critical, P);
    // the component around u, then the one around v
    for (int side = 0; side < 2; ++side) {
        std::vector<std::pair<int, std::vector<Flag>>> arms;  // (B, walk B -> w)
        for (auto& p : paths) {
            const CoreEdge& e = g.edges[location_of(g, p.critical).edge];
            auto [to_u, to_v] = cut(e, p.cycle_point);
            arms.push_back({p.cycle_point, side == 0 ? reverse_walk(F.domain, to_u) : to_v});
        }
        Q m = walk_len(F.domain, arms[0].second);
        for (auto& [b, w2] : arms) m = std::min(m, walk_len(F.domain, w2));
        TP W = s.sm.br.above(P, m);
        for (auto& [b, walk] : arms) {
            Q a = walk_len(F.domain, walk);
            s.sm.arc(walk, b, a == m ? W : s.sm.br.above(W, (a - m) / 2));
        }
    }
    return s.finish(max_degree, "three-leg");
}

HModCertificate certify_theta_conjugate(const BalancedFn& F, int max_degree) {
    ThetaGeometry g = theta_geometry(F);
    Setup s(F);
    auto& paths = s.cs.paths;
    if (paths.size() != 2) pre("exactly two critical paths needed, found " + std::to_string(paths.size()));
    if (paths[0].length != paths[1].length) pre("critical paths have unequal lengths");
    if (paths[0].cycle_point == paths[1].cycle_point) return certify_theta_weierstrass_Y(F, max_degree);
    const Location& l1 = location_of(g, paths[0].critical);
    const Location& l2 = location_of(g, paths[1].critical);
    if (l1.edge < 0 || l2.edge < 0) pre("location at a core vertex");
    if (conjugate_or_weierstrass(g, CurvePoint::vertex(l1.vertex), CurvePoint::vertex(l2.vertex)) != PairKind::CONJUGATE)
        pre("locations are not conjugate");
    const CoreEdge& e = g.edges[l1.edge];
    int B1 = l1.offset < l2.offset ? l1.vertex : l2.vertex;
    int B2 = B1 == l1.vertex ? l2.vertex : l1.vertex;
    Q a = offset_of(e, B1), ell = paths[0].length;
    TP P{0, ell}, R{0, ell + a};
    for (auto& p : paths) s.sm.rise(s.leg(p), p.critical, P);
    auto [u_to_b1, b1_to_v] = cut(e, B1);
    auto [u_to_b2, b2_to_v] = cut(e, B2);
    s.sm.arc(reverse_walk(F.domain, u_to_b1), B1, R);
    s.sm.arc(b2_to_v, B2, R);
    std::vector<Flag> mid(u_to_b2.begin() + u_to_b1.size(), u_to_b2.end());
    s.sm.arc(mid, B1, s.sm.br.above(P, walk_len(F.domain, mid) / 2));
    fold_other_edges(s, g, l1.edge, R);
    return s.finish(max_degree, "conjugate");
}

HModCertificate certify_theta_weierstrass_Y(const BalancedFn& F, int max_degree) {
    ThetaGeometry g = theta_geometry(F);
    Setup s(F);
    auto& paths = s.cs.paths;
    if (paths.size() != 2) pre("exactly two critical paths needed, found " + std::to_string(paths.size()));
    const CriticalPath &p1 = paths[0], &p2 = paths[1];
    if (p1.cycle_point != p2.cycle_point) pre("the critical paths do not share their location");
    const Location& l = location_of(g, p1.critical);
    if (l.edge < 0 || 2 * l.offset != g.edges[l.edge].length) pre("location is not a Weierstrass point");
    // C: where the two paths merge
    size_t k = 0;
    while (k < p1.vertices.size() && k < p2.vertices.size() &&
           p1.vertices[p1.vertices.size() - 1 - k] == p2.vertices[p2.vertices.size() - 1 - k])
        ++k;
    size_t c1 = p1.vertices.size() - k, c2 = p2.vertices.size() - k;
    Q a1 = 0, a2 = 0;
    for (size_t i = 0; i < c1; ++i) a1 += F.domain.edges.at(p1.edges[i]).len;
    for (size_t i = 0; i < c2; ++i) a2 += F.domain.edges.at(p2.edges[i]).len;
    if (a1 != a2) pre("the arms of the Y have unequal lengths");
    TP C{0, a1};
    s.sm.rise(path_walk(F.domain, p1.vertices, {p1.edges.begin(), p1.edges.begin() + c1}), p1.critical, C);
    s.sm.rise(path_walk(F.domain, p2.vertices, {p2.edges.begin(), p2.edges.begin() + c2}), p2.critical, C);
    // stem at slope 2
    Q h = 0;
    for (size_t i = c1; i < p1.edges.size(); ++i) {
        h += F.domain.edges.at(p1.edges[i]).len;
        s.sm.set_vertex(p1.vertices[i + 1], TP{0, a1 + 2 * h});
    }
    const CoreEdge& e = g.edges[l.edge];
    TP R{0, a1 + 2 * h + e.length / 2};
    auto [to_u, to_v] = cut(e, l.vertex);
    s.sm.arc(reverse_walk(F.domain, to_u), l.vertex, R);
    s.sm.arc(to_v, l.vertex, R);
    fold_other_edges(s, g, l.edge, R);
    return s.finish(max_degree, "Weierstrass");
}

HModCertificate certify_dumbbell(const BalancedFn& F, int max_degree) {
    Genus2Core k = classify_genus2(F.domain);
    if (k.type != CoreType::DUMBBELL) pre("core is not a dumbbell");
    const DumbbellGeometry& d = k.dumbbell;
    Setup s(F);
    auto& paths = s.cs.paths;
    if (paths.size() != 3) pre("exactly three critical paths needed, found " + std::to_string(paths.size()));
    auto interior = [&](const CoreEdge& e, int v) {
        return std::find(e.verts.begin() + 1, e.verts.end() - 1, v) != e.verts.end() - 1;
    };
    const CriticalPath *pu = nullptr, *pv = nullptr, *pb = nullptr;
    for (auto& p : paths) {
        const CriticalPath** slot = interior(d.loop_u, p.cycle_point)   ? &pu
                                    : interior(d.loop_v, p.cycle_point) ? &pv
                                    : interior(d.bridge, p.cycle_point) ? &pb
                                                                        : nullptr;
        if (!slot) pre("location at a core vertex");
        if (*slot) pre("two critical paths on one part of the core");
        *slot = &p;
    }
    Q t = offset_of(d.bridge, pb->cycle_point);
    Q hb = pb->length;
    if (pu->length != hb + t) pre("the two paths onto the first loop have unequal lengths");
    if (pv->length != hb + d.bridge.length - t) pre("the two paths onto the second loop have unequal lengths");
    // shared leg up the spine; the bridge splits at its location
    TP D{0, hb};
    TP Pu{0, pu->length}, Pv{s.sm.br.add(D), pv->length};
    s.sm.rise(s.leg(*pb), pb->critical, D);
    s.sm.rise(s.leg(*pu), pu->critical, Pu);
    s.sm.rise(s.leg(*pv), pv->critical, Pv);
    auto [to_u, to_v] = cut(d.bridge, pb->cycle_point);
    s.sm.arc(reverse_walk(F.domain, to_u), pb->cycle_point, Pu);
    s.sm.arc(to_v, pb->cycle_point, Pv);
    // each loop: two arcs between the bridge end and the location
    for (auto [loop, B, P] : {std::tuple{&d.loop_u, pu->cycle_point, Pu}, std::tuple{&d.loop_v, pv->cycle_point, Pv}}) {
        auto [first, second] = cut(*loop, B);
        s.sm.arc(first, loop->from, s.sm.br.above(P, walk_len(F.domain, first) / 2));
        s.sm.arc(second, B, s.sm.br.above(P, walk_len(F.domain, second) / 2));
    }
    return s.finish(max_degree, "dumbbell");
}

}  // namespace tropical
