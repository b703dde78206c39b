// Genus-1 construction for well-spaced instances.
//
// Every point of the contracted part around the cycle gets a symbolic image:
// a branch of a tree hanging above x (the image of the critical points) and
// a level, the distance from x.  Critical paths are attached in order of
// length; a path either runs straight up to the image of its attachment
// point, or overshoots and folds back along a fresh branch.  Attachments to
// the cycle that arrive below the current image become anchors, which cut the
// cycle into arcs, each rising to one maximum and falling back.  Branches only
// become real target rays once the plan is final, so nothing unused is built.

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>

#include "tropical/realize0.hpp"
#include "tropical/realize1.hpp"
#include "levels.hpp"

namespace tropical {

namespace {

using namespace levels;

struct Arc {
    int P, Qv;
    Flag f0;  // first flag out of P
    Q len;
    TP M;     // image of the maximum
};

struct Attachment {
    std::vector<int> verts;  // critical .. attachment point
    std::vector<Flag> walk;
    Q mu;
    int B;
};

// alternative base choices, used by the necessity probe
struct Hypothesis {
    int partner = -1;     // critical vertex whose path is forced to act as a second leg
    long stem_slope = 2;  // slope of the stem below a Y or 3-flag point
};

class Genus1Plan {
public:
    Genus1Plan(const BalancedFn& F, const CriticalStructure& cs, Hypothesis hyp = {})
        : F(F), cs(cs), c(F.domain), hyp(hyp), ks(hyp.stem_slope) {}

    void plan();
    void build(CertBuilder& B);

private:
    const BalancedFn& F;
    const CriticalStructure& cs;
    const TropicalCurve& c;
    Hypothesis hyp;
    long ks;  // stem slope
    SymMap sm{c};
    Branches& br = sm.br;

    bool y_shape = false;  // Y or single 3-flag path; otherwise two disjoint legs
    std::vector<const CriticalPath*> mins;
    int C = -1;
    std::vector<int> stem;             // C .. B1
    std::map<int, Q> stem_coord;
    Q h = 0;
    std::vector<std::pair<Q, Q>> knots;  // (stem coordinate, level); slope 2 resumes below each
    std::optional<Q> pin;                // level forced on B1 by a cycle anchor
    int B1 = -1, B2 = -1;
    Q ell = 0;

    std::map<int, TP> anchors;
    std::vector<Arc> arcs;
    std::set<int> S;
    std::vector<Attachment> attachments;

    Flag cycle_flag_at(int v, std::optional<Flag> not_this = std::nullopt) const {
        for (Flag f : c.flags_at(v))
            if (cs.cycle_edges.count(f.elem) && (!not_this || f != *not_this)) return f;
        throw ConstructionError("vertex " + std::to_string(v) + " is not on the cycle");
    }
    std::vector<Flag> arc_walk(const Arc& a) const {
        std::vector<Flag> w;
        Flag f = a.f0;
        while (true) {
            w.push_back(f);
            int v = c.far_vertex(f);
            if (v == a.Qv || w.size() > c.edges.size()) return w;
            f = cycle_flag_at(v, c.reverse(f));
        }
    }
    Q lam(int v) const { return anchors.at(v).lv; }
    Q arc_level(const Arc& a, const Q& t) const {
        Q r = a.M.lv - lam(a.P);
        return t <= r ? lam(a.P) + t : a.M.lv - (t - r);
    }
    // arc holding cycle vertex v in its interior: (index, distance from P, flag leaving v)
    std::tuple<size_t, Q, Flag> find_arc(int v) const {
        for (size_t i = 0; i < arcs.size(); ++i) {
            auto w = arc_walk(arcs[i]);
            Q d = 0;
            for (size_t k = 0; k + 1 < w.size(); ++k) {
                d += flen(c, w[k]);
                if (c.far_vertex(w[k]) == v) return {i, d, w[k + 1]};
            }
        }
        throw ConstructionError("cycle vertex " + std::to_string(v) + " not inside any arc");
    }

    Q stem_level(const Q& s) const;
    Q stretch(const Q& lj, const Q& sj, const Q& nl, const Q& ns) const;
    void reset_single_arc();
    void add_knot(int B, const Q& mu);
    void pin_at(int B, const Q& mu);
    void two_anchors(int P, int Qv, const Q& l);
    void insert_anchor(int B, const Q& mu);
};

Q Genus1Plan::stem_level(const Q& s) const {
    size_t j = 0;
    while (j + 1 < knots.size() && knots[j + 1].first <= s) ++j;
    auto [sj, lj] = knots[j];
    Q ns, nl;
    if (j + 1 < knots.size()) {
        std::tie(ns, nl) = knots[j + 1];
    } else if (pin) {
        ns = h;
        nl = *pin;
    } else {
        return lj + ks * (s - sj);
    }
    Q e = stretch(lj, sj, nl, ns);
    Q d = s - sj;
    return d <= e ? lj + ks * d : lj + ks * e + (d - e);
}

// length run at the stem slope between two knots, the rest at slope 1
Q Genus1Plan::stretch(const Q& lj, const Q& sj, const Q& nl, const Q& ns) const {
    Q extra = nl - lj - (ns - sj);
    if (extra == 0) return 0;
    if (ks <= 1 || extra < 0 || extra > (ks - 1) * (ns - sj)) throw ConstructionError("stem cannot reach the required level");
    return extra / (ks - 1);
}

void Genus1Plan::reset_single_arc() {
    Q l = stem_level(h);
    anchors = {{B1, TP{0, l}}};
    arcs = {Arc{B1, B1, cycle_flag_at(B1), ell, TP{0, l + ell / 2}}};
}

void Genus1Plan::add_knot(int B, const Q& mu) {
    Q s = stem_coord.at(B);
    auto [sl, ll] = knots.back();
    if (pin || anchors.size() > 1 || s <= sl || mu < ll + (s - sl))
        throw ConstructionError("cannot lower the stem at vertex " + std::to_string(B));
    knots.push_back({s, mu});
    reset_single_arc();
}

void Genus1Plan::pin_at(int B, const Q& mu) {
    auto [sl, ll] = knots.back();
    if (anchors.size() != 1 || mu < ll + (h - sl))
        throw ConstructionError("cannot pin the cycle at vertex " + std::to_string(B));
    pin = mu;
    two_anchors(B1, B, mu);
}

// two anchors at the same point of the spine; one arc continues the spine,
// the other leaves along a fresh branch
void Genus1Plan::two_anchors(int P, int Qv, const Q& l) {
    anchors = {{P, TP{0, l}}, {Qv, TP{0, l}}};
    Flag f0 = cycle_flag_at(P);
    auto w = arc_walk(Arc{P, Qv, f0, 0, {}});
    Q t = 0;
    for (Flag f : w) t += flen(c, f);
    Flag fq = cycle_flag_at(Qv, c.reverse(w.back()));
    arcs = {Arc{P, Qv, f0, t, TP{0, l + t / 2}}, Arc{Qv, P, fq, ell - t, TP{br.add({0, l}), l + (ell - t) / 2}}};
}

void Genus1Plan::insert_anchor(int B, const Q& mu) {
    auto [i, t, fB] = find_arc(B);
    Arc a = arcs[i];
    Q lp = lam(a.P), lq = lam(a.Qv), m = a.M.lv;
    Q t2 = a.len - t;
    Q m1 = (t + lp + mu) / 2, m2 = (t2 + mu + lq) / 2;
    if (lp > mu || lq > mu || m1 < mu || m2 < mu)
        throw ConstructionError("cannot anchor the cycle at vertex " + std::to_string(B));
    TP y = br.chain_at(a.M, mu);
    TP M1, M2;
    if (t <= m - lp) {  // rising side: the far arc keeps heading for the old maximum
        M2 = br.chain_at(a.M, m2);
        M1 = m1 == mu ? y : TP{br.add(y), m1};
    } else {
        M1 = br.chain_at(a.M, m1);
        M2 = m2 == mu ? y : TP{br.add(y), m2};
    }
    anchors[B] = y;
    arcs[i] = Arc{a.P, B, a.f0, t, M1};
    arcs.push_back(Arc{B, a.Qv, fB, t2, M2});
}

void Genus1Plan::plan() {
    mins = cs.minimal();
    S = cs.cycle_vertices;
    for (auto* p : mins) S.insert(p->vertices.begin(), p->vertices.end());
    for (int e : cs.cycle_edges) ell += c.edges.at(e).len;

    if (hyp.partner >= 0) {
        auto it = std::find_if(cs.paths.begin(), cs.paths.end(),
                               [&](const CriticalPath& p) { return p.critical == hyp.partner; });
        if (it == cs.paths.end() || it->cycle_point == mins[0]->cycle_point || mins.size() != 1)
            throw ConstructionError("unusable partner path");
        B1 = mins[0]->cycle_point;
        B2 = it->cycle_point;
        two_anchors(B1, B2, cs.minimal_length);
    } else if (mins.size() == 1 || mins[0]->cycle_point == mins[1]->cycle_point) {
        y_shape = true;
        const CriticalPath& p = *mins[0];
        size_t ci = 0;
        Q a = 0;
        if (mins.size() == 2) {
            auto& v1 = p.vertices;
            auto& v2 = mins[1]->vertices;
            size_t k = 0;
            while (k < v1.size() && k < v2.size() && v1[v1.size() - 1 - k] == v2[v2.size() - 1 - k]) ++k;
            ci = v1.size() - k;
            for (size_t i = 0; i < ci; ++i) a += c.edges.at(p.edges[i]).len;
        }
        C = p.vertices[ci];
        stem.assign(p.vertices.begin() + ci, p.vertices.end());
        Q s = 0;
        stem_coord[C] = 0;
        for (size_t i = ci; i < p.edges.size(); ++i) {
            s += c.edges.at(p.edges[i]).len;
            stem_coord[p.vertices[i + 1]] = s;
        }
        h = s;
        B1 = stem.back();
        knots = {{Q(0), a}};
        reset_single_arc();
    } else {
        B1 = mins[0]->cycle_point;
        B2 = mins[1]->cycle_point;
        two_anchors(B1, B2, cs.minimal_length);
    }

    for (auto& p : cs.paths) {
        if (std::find(mins.begin(), mins.end(), &p) != mins.end()) continue;
        size_t k = 0;
        while (!S.count(p.vertices[k])) ++k;
        if (k == 0) throw ConstructionError("critical vertex " + std::to_string(p.critical) + " already placed");
        Attachment at;
        at.B = p.vertices[k];
        at.mu = 0;
        for (size_t i = 0; i < k; ++i) {
            const Edge& e = c.edges.at(p.edges[i]);
            at.walk.push_back({e.id, e.u == p.vertices[i] ? 0 : 1});
            at.mu += e.len;
        }
        at.verts.assign(p.vertices.begin(), p.vertices.begin() + k + 1);
        S.insert(at.verts.begin(), at.verts.end());
        if (cs.cycle_vertices.count(at.B)) {
            if (!anchors.count(at.B)) {
                auto [i, t, f] = find_arc(at.B);
                if (at.mu < arc_level(arcs[i], t)) {
                    if (y_shape && !pin && at.mu < lam(B1))
                        pin_at(at.B, at.mu);
                    else
                        insert_anchor(at.B, at.mu);
                }
            }
        } else if (y_shape && stem_coord.count(at.B)) {
            if (at.mu < stem_level(stem_coord.at(at.B))) add_knot(at.B, at.mu);
        }
        attachments.push_back(std::move(at));
    }
}

void Genus1Plan::build(CertBuilder& B) {
    if (y_shape) {
        for (auto* p : mins) {
            Q d = 0;
            sm.set(CurvePoint::vertex(p->vertices[0]), TP{0, 0});
            for (size_t i = 0; p->vertices[i] != C; ++i) {
                d += c.edges.at(p->edges[i]).len;
                sm.set(CurvePoint::vertex(p->vertices[i + 1]), TP{0, d});
            }
        }
        std::vector<Flag> sw;
        for (size_t i = 0; i + 1 < stem.size(); ++i) {
            for (Flag f : c.flags_at(stem[i]))
                if (c.is_edge(f.elem) && c.far_vertex(f) == stem[i + 1] && cs.contracted_component.count(f.elem)) {
                    sw.push_back(f);
                    break;
                }
        }
        for (int v : stem) sm.set(CurvePoint::vertex(v), TP{0, stem_level(stem_coord.at(v))});
        for (size_t j = 0; j < knots.size(); ++j) {
            auto [sj, lj] = knots[j];
            Q ns, nl;
            if (j + 1 < knots.size())
                std::tie(ns, nl) = knots[j + 1];
            else if (pin)
                ns = h, nl = *pin;
            else
                continue;
            Q e = stretch(lj, sj, nl, ns);
            if (0 < e && e < ns - sj) sm.set(walk_point(c, C, sw, sj + e), TP{0, lj + ks * e});
        }
    } else {
        for (auto* p : mins) {
            Q d = 0;
            sm.set(CurvePoint::vertex(p->vertices[0]), TP{0, 0});
            for (size_t i = 0; i < p->edges.size(); ++i) {
                d += c.edges.at(p->edges[i]).len;
                sm.set(CurvePoint::vertex(p->vertices[i + 1]), TP{0, d});
            }
        }
    }

    for (auto& a : arcs) {
        auto w = arc_walk(a);
        Q lp = lam(a.P), lq = lam(a.Qv), r = a.M.lv - lp;
        sm.set(CurvePoint::vertex(a.P), anchors.at(a.P));
        sm.set(CurvePoint::vertex(a.Qv), anchors.at(a.Qv));
        sm.along(w, a.P, [&](const Q& d) {
            return d <= r ? br.chain_at(a.M, lp + d) : br.chain_at(a.M, lq + (a.len - d));
        });
        if (0 < r && r < a.len) sm.set(walk_point(c, a.P, w, r), a.M);
    }

    for (auto& at : attachments) {
        TP b = sm.vsym.at(at.B);
        Q lb = b.lv;
        int A = at.verts.front();
        if (at.mu < lb)
            throw ConstructionError("critical path of vertex " + std::to_string(A) + " ends below its attachment image");
        if (at.mu == lb) {
            sm.along(at.walk, A, [&](const Q& d) { return br.chain_at(b, d); });
            continue;
        }
        int fresh = br.add(b);
        Q dM = lb + (at.mu - lb) / 2;
        sm.along(at.walk, A, [&](const Q& d) -> TP {
            if (d <= lb) return br.chain_at(b, d);
            if (d <= dM) return br.norm({fresh, d});
            return br.norm({fresh, lb + at.mu - d});
        });
        if (lb > 0) sm.set(walk_point(c, A, at.walk, lb), b);
        sm.set(walk_point(c, A, at.walk, dM), TP{fresh, dM});
    }

    sm.realize(B, cs.value);
    sm.lift_rest(B, cs.contracted_component);
}

Perturbation perturbation_for(const CriticalStructure& cs, const std::string& reason) {
    Perturbation p;
    p.reason = reason;
    // separate tied paths by lengthening the first edge of all but one (two at the minimum)
    std::map<Q, int> seen;
    for (auto& path : cs.paths) {
        int k = seen[path.length]++;
        int keep = path.length == cs.minimal_length ? 2 : 1;
        if (k >= keep && !path.edges.empty()) p.edge_coefficients[path.edges.front()] += Q(k - keep + 1);
    }
    return p;
}

}  // namespace

std::variant<HModCertificate, LimitRealizable> certify_well_spaced(const BalancedFn& F, int max_degree) {
    CriticalStructure cs = critical_structure(F);
    int n = 0;
    for (auto* p : cs.minimal()) n += p->flag_number;
    if (n < 3) throw std::invalid_argument("precondition: F is not well-spaced");
    if (auto why = genericity_failure(F, cs); !why.empty()) return LimitRealizable{perturbation_for(cs, why)};
    Genus1Plan plan(F, cs);
    plan.plan();
    CertBuilder B(F);
    plan.build(B);
    place_remaining(B, cs.contracted_component);
    HModCertificate cert = B.finish(max_degree);
    CertVerdict v = verify_certificate(F, cert, max_degree);
    if (!v.accept) throw ConstructionError("genus-1 construction rejected: " + v.diagnostic);
    return cert;
}

}  // namespace tropical

namespace tropical {

ProbeResult necessity_probe(const BalancedFn& F, int depth, int max_degree) {
    CriticalStructure cs = critical_structure(F);
    std::vector<Hypothesis> hyps;
    for (long k = 1; k <= max_degree; ++k) hyps.push_back({-1, k});
    int partners = 0;
    for (auto& p : cs.paths) {
        if (p.length == cs.minimal_length || partners >= depth) continue;
        ++partners;
        for (long k = 1; k <= max_degree; ++k) hyps.push_back({p.critical, k});
    }
    ProbeResult out;
    for (const Hypothesis& h : hyps) {
        ++out.candidates_tried;
        try {
            Genus1Plan plan(F, cs, h);
            plan.plan();
            CertBuilder B(F);
            plan.build(B);
            place_remaining(B, cs.contracted_component);
            HModCertificate cert = B.finish(max_degree);
            if (verify_certificate(F, cert, max_degree).accept) {
                out.found = true;
                out.certificate = cert;
                return out;
            }
        } catch (const std::exception&) {
            // this candidate cannot even be assembled harmonically
        }
    }
    return out;
}

}  // namespace tropical
