#include "tropical/realize0.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace tropical {

namespace {

int val_in(const TropicalCurve& c, int v, const std::set<int>& E) {
    int n = 0;
    for (Flag f : c.flags_at(v)) n += E.count(f.elem) > 0;
    return n;
}

std::set<int> verts_of(const TropicalCurve& c, const std::set<int>& E) {
    std::set<int> out;
    for (int e : E) {
        out.insert(c.edges.at(e).u);
        out.insert(c.edges.at(e).v);
    }
    return out;
}

// edges of E reachable from v without passing through `block`
std::set<int> branch(const TropicalCurve& c, const std::set<int>& E, Flag start, int block) {
    std::set<int> out{start.elem};
    std::vector<int> stack{c.far_vertex(start)};
    std::set<int> seen{block, c.far_vertex(start)};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Flag f : c.flags_at(v)) {
            if (!E.count(f.elem) || out.count(f.elem)) continue;
            out.insert(f.elem);
            int w = c.far_vertex(f);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return out;
}

// from a leaf, through 2-valent vertices, to the first vertex of other valency
std::vector<Flag> leaf_walk(const TropicalCurve& c, const std::set<int>& E, int leaf) {
    std::vector<Flag> walk;
    int v = leaf;
    int from = -1;
    while (true) {
        std::optional<Flag> next;
        for (Flag f : c.flags_at(v))
            if (E.count(f.elem) && f.elem != from) next = f;
        walk.push_back(*next);
        from = next->elem;
        v = c.far_vertex(*next);
        if (val_in(c, v, E) != 2) return walk;
    }
}

// dom_along, keeping E closed under the split
int split_tracked(CertBuilder& b, const std::vector<Flag>& walk, const Q& d, std::set<int>& E) {
    std::set<int> before;
    for (auto& [id, e] : b.dom.ext.edges) before.insert(id);
    int v = b.dom_along(walk, d);
    for (auto& [id, e] : b.dom.ext.edges)
        if (!before.count(id)) E.insert(id);
    return v;
}

// a non-critical leaf whose image is already fixed at y, above x
struct Anchor {
    int v, y;
};

void place_rec(CertBuilder& b, std::set<int> E, std::set<int> C, int x, std::optional<Anchor> an) {
    const TropicalCurve& c = b.dom.ext;
    if (an && b.tgt_dist(x, an->y) == 0) {
        C.insert(an->v);
        an.reset();
    }
    if (E.empty()) return;
    for (int v : C) b.img[v] = x;
    // (i) a critical vertex inside the tree: each branch on its own
    for (int v : C) {
        if (val_in(c, v, E) < 2) continue;
        for (Flag f : c.flags_at(v)) {
            if (!E.count(f.elem)) continue;
            std::set<int> Ej = branch(c, E, f, v);
            std::set<int> Cj{v};
            std::set<int> Vj = verts_of(c, Ej);
            for (int w : Vj)
                if (C.count(w)) Cj.insert(w);
            place_rec(b, Ej, Cj, x, an && Vj.count(an->v) ? an : std::nullopt);
        }
        return;
    }
    Q budget = an ? b.tgt_dist(x, an->y) : Q(0);
    std::vector<int> leaves;
    for (int v : verts_of(c, E))
        if (val_in(c, v, E) == 1) {
            if (!C.count(v) && !(an && an->v == v))
                throw ConstructionError("contracted tree has a non-critical leaf " + std::to_string(v));
            leaves.push_back(v);
        }
    std::vector<std::pair<std::vector<Flag>, Q>> walks;
    for (int a : leaves) {
        auto w = leaf_walk(c, E, a);
        walks.push_back({w, b.walk_length(w) + (an && an->v == a ? budget : Q(0))});
    }
    // (ii) a path between two leaves: fold at the midpoint, beyond the anchor if there is one
    if (leaves.size() == 2 && val_in(c, c.far_vertex(walks[0].first.back()), E) == 1) {
        if (!an) {
            Q half = walks[0].second / 2;
            int m = b.dom_along(walks[0].first, half);
            b.img[m] = b.tgt_along_ray(b.tgt_ray(x), half);
            return;
        }
        size_t i = leaves[0] == an->v ? 0 : 1;
        Q L = b.walk_length(walks[0].first) + budget;
        if (L / 2 < budget) throw ConstructionError("connecting edge too short at vertex " + std::to_string(an->v));
        Q r = L / 2 - budget;
        int m = b.dom_along(walks[i].first, r);
        b.img[m] = r == 0 ? an->y : b.tgt_along_ray(b.tgt_ray(an->y), r);
        return;
    }
    // (iii) move every leaf in by the shortest leaf length; ties land together.
    // An anchor pulls the whole group toward its image.
    Q a = walks[0].second;
    for (auto& [w, L] : walks) a = std::min(a, L);
    if (an) a = std::min(a, budget);
    int n = an ? b.tgt_toward(x, an->y, a) : b.tgt_along_ray(b.tgt_ray(x), a);
    std::set<int> next;
    for (size_t i = 0; i < walks.size(); ++i) {
        if (an && leaves[i] == an->v) continue;  // it stays put; the group closes in on it
        int bv = split_tracked(b, walks[i].first, a, E);
        b.img[bv] = n;
        next.insert(bv);
        // drop the segment leaf..bv; edges are erased as we go, so the next step is unique
        int v = leaves[i];
        while (v != bv) {
            Flag step{};
            for (Flag f : c.flags_at(v))
                if (E.count(f.elem)) {
                    step = f;
                    break;
                }
            E.erase(step.elem);
            v = c.far_vertex(step);
        }
    }
    place_rec(b, E, next, n, an);
}

void place_pruned(CertBuilder& b, std::set<int>& E, const std::set<int>& C, std::optional<int> keep,
                  const std::function<void()>& place) {
    const TropicalCurve& c = b.dom.ext;
    // non-critical leaves hang off the rest; they go up their own rays afterwards
    std::vector<std::pair<int, int>> pruned;  // (edge, leaf)
    for (bool again = true; again;) {
        again = false;
        for (int v : verts_of(c, E))
            if (val_in(c, v, E) == 1 && !C.count(v) && v != keep) {
                for (Flag f : c.flags_at(v))
                    if (E.count(f.elem)) {
                        pruned.push_back({f.elem, v});
                        E.erase(f.elem);
                        break;
                    }
                again = true;
                break;
            }
    }
    place();
    for (auto it = pruned.rbegin(); it != pruned.rend(); ++it) {
        auto [e, w] = *it;
        const Edge& ed = c.edges.at(e);
        int p = ed.u == w ? ed.v : ed.u;
        b.img[w] = b.tgt_along_ray(b.tgt_ray(b.img.at(p)), ed.len);
    }
}

}  // namespace

void place_tree(CertBuilder& b, std::set<int> E, std::set<int> C, int x) {
    if (C.empty()) throw ConstructionError("contracted tree without critical vertices");
    place_pruned(b, E, C, std::nullopt, [&] {
        for (int v : C) b.img[v] = x;
        place_rec(b, E, C, x, std::nullopt);
    });
}

void place_tree_anchored(CertBuilder& b, std::set<int> E, std::set<int> C, int x, int anchor) {
    int y = b.img.at(anchor);
    place_pruned(b, E, C, anchor, [&] {
        for (int v : C) b.img[v] = x;
        place_rec(b, E, C, x, Anchor{anchor, y});
    });
}

void place_contracted_rays(CertBuilder& b) {
    for (auto& [r, ray] : b.dom.ext.rays) {
        if (b.ray_img.count(r)) continue;
        auto it = b.dom.etag.find(r);
        if (it == b.dom.etag.end() || !b.F.contracted(it->second.elem)) continue;
        auto im = b.img.find(ray.base);
        if (im == b.img.end()) throw ConstructionError("contracted ray " + std::to_string(r) + " has an unplaced base");
        b.ray_img[r] = {b.tgt_ray(im->second), 1};
    }
}

std::vector<ContractedTree> contracted_components(const BalancedFn& F) {
    const TropicalCurve& c = F.domain;
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        return it->second = find(it->second);
    };
    for (auto& [id, e] : c.edges)
        if (F.contracted(id)) parent[find(e.u)] = find(e.v);
    std::map<int, ContractedTree> comps;
    for (auto& [id, e] : c.edges)
        if (F.contracted(id)) {
            auto& t = comps[find(e.u)];
            t.edges.insert(id);
            t.vertices.insert(e.u);
            t.vertices.insert(e.v);
        }
    std::vector<ContractedTree> out;
    for (auto& [r, t] : comps) out.push_back(t);
    return out;
}

bool has_contracted_cycle(const BalancedFn& F) {
    for (auto& t : contracted_components(F))
        if (t.edges.size() >= t.vertices.size()) return true;
    return false;
}

namespace {

void check_not_constant(const BalancedFn& F) {
    for (auto& [f, s] : F.slopes)
        if (s != 0) return;
    throw std::invalid_argument("F is constant; nothing to realize");
}

HModCertificate certify_forest(const BalancedFn& F, const std::vector<ContractedTree>& trees, int max_degree) {
    CertBuilder b(F);
    for (auto& t : trees) {
        std::set<int> crit;
        for (int v : t.vertices)
            for (Flag f : F.domain.flags_at(v))
                if (F.slope(f) != 0) crit.insert(v);
        if (crit.empty()) throw std::invalid_argument("F is constant; nothing to realize");
        int x = b.line_vertex(F.values.at(*crit.begin()));
        place_tree(b, t.edges, crit, x);
    }
    // critical points not on any contracted edge still need images for their contracted rays
    for (int v : F.domain.vertices)
        for (Flag f : F.domain.flags_at(v))
            if (F.slope(f) != 0 && !b.img.count(v)) b.img[v] = b.line_vertex(F.values.at(v));
    place_contracted_rays(b);
    return b.finish(max_degree);
}

}  // namespace

HModCertificate certify_no_contracted_edges(const BalancedFn& F, int max_degree) {
    for (Flag f : F.domain.all_flags())
        if (F.slope(f) == 0) throw std::invalid_argument("not applicable: element " + std::to_string(f.elem) + " is contracted");
    CertBuilder b(F);
    return b.finish(max_degree);
}

HModCertificate certify_contracted_tree(const BalancedFn& F, const ContractedTree& T1, int max_degree) {
    check_not_constant(F);
    const TropicalCurve& c = F.domain;
    if (T1.vertices.empty()) throw std::invalid_argument("empty tree");
    for (int e : T1.edges) {
        if (!c.is_edge(e) || !F.contracted(e)) throw std::invalid_argument("edge " + std::to_string(e) + " is not a contracted edge");
        if (!T1.vertices.count(c.edges.at(e).u) || !T1.vertices.count(c.edges.at(e).v))
            throw std::invalid_argument("edge " + std::to_string(e) + " leaves the tree");
    }
    if (T1.edges.size() + 1 != T1.vertices.size()) throw std::invalid_argument("not a tree");
    for (auto& [id, e] : c.edges) {
        if (T1.edges.count(id)) continue;
        if (F.contracted(id) || (!T1.vertices.count(e.u) && !T1.vertices.count(e.v)))
            throw std::invalid_argument("stars do not cover: edge " + std::to_string(id));
    }
    for (auto& [id, r] : c.rays)
        if (F.contracted(id) || !T1.vertices.count(r.base))
            throw std::invalid_argument("stars do not cover: ray " + std::to_string(id));
    auto comps = contracted_components(F);
    if (comps.size() > 1 || (comps.size() == 1 && comps[0].edges != T1.edges))
        throw std::invalid_argument("stars do not cover: other contracted edges present");
    if (T1.edges.empty()) return certify_forest(F, {}, max_degree);
    return certify_forest(F, {T1}, max_degree);
}

HModCertificate certify_no_contracted_cycles(const BalancedFn& F, int max_degree) {
    if (has_contracted_cycle(F)) throw std::invalid_argument("contracted cycle present");
    check_not_constant(F);
    return certify_forest(F, contracted_components(F), max_degree);
}

}  // namespace tropical
