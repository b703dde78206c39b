#include "tropical/realize1.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "tropical/realize0.hpp"

namespace tropical {

std::vector<const CriticalPath*> CriticalStructure::minimal() const {
    std::vector<const CriticalPath*> out;
    for (auto& p : paths)
        if (p.length == minimal_length) out.push_back(&p);
    return out;
}

namespace {

int flag_number(const BalancedFn& F, int v) {
    int n = 0;
    for (Flag f : F.domain.flags_at(v)) n += F.slope(f) != 0;
    return n;
}

}  // namespace

CriticalStructure critical_structure(const BalancedFn& F) {
    if (first_betti(F.domain) != 1) throw std::invalid_argument("curve does not have genus 1");
    return critical_structure_over(F, core(F.domain), "cycle");
}

CriticalStructure critical_structure_over(const BalancedFn& F, const TropicalCurve& k, const std::string& what) {
    const TropicalCurve& c = F.domain;
    CriticalStructure cs;
    cs.cycle_vertices = k.vertices;
    for (auto& [id, e] : k.edges) {
        cs.cycle_edges.insert(id);
        if (!F.contracted(id)) throw std::invalid_argument("route to realize0: the " + what + " is not contracted");
    }
    for (int v : cs.cycle_vertices)
        if (flag_number(F, v) > 0)
            throw std::invalid_argument(what + " not contracted on a neighborhood: vertex " + std::to_string(v));
    cs.value = F.values.at(*cs.cycle_vertices.begin());

    // contracted component holding the cycle
    std::set<int> seen = cs.cycle_vertices;
    std::queue<int> q;
    for (int v : seen) q.push(v);
    std::map<int, Flag> parent;  // vertex -> flag from it toward the cycle
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (Flag f : c.flags_at(v)) {
            if (!c.is_edge(f.elem) || !F.contracted(f.elem)) continue;
            cs.contracted_component.insert(f.elem);
            int w = c.far_vertex(f);
            if (seen.insert(w).second) {
                parent[w] = c.reverse(f);
                q.push(w);
            }
        }
    }
    for (int v : seen) {
        if (cs.cycle_vertices.count(v) || flag_number(F, v) == 0) continue;
        CriticalPath p;
        p.critical = v;
        p.flag_number = flag_number(F, v);
        int w = v;
        p.vertices.push_back(w);
        while (!cs.cycle_vertices.count(w)) {
            Flag f = parent.at(w);
            p.edges.push_back(f.elem);
            p.length += c.edges.at(f.elem).len;
            w = c.far_vertex(f);
            p.vertices.push_back(w);
        }
        p.cycle_point = w;
        cs.paths.push_back(std::move(p));
    }
    if (cs.paths.empty()) throw std::invalid_argument("F is constant; nothing to realize");
    std::sort(cs.paths.begin(), cs.paths.end(), [](const CriticalPath& a, const CriticalPath& b) {
        return a.length != b.length ? a.length < b.length : a.critical < b.critical;
    });
    cs.minimal_length = cs.paths.front().length;
    return cs;
}

bool is_well_spaced(const BalancedFn& F) {
    CriticalStructure cs = critical_structure(F);
    int n = 0;
    for (auto* p : cs.minimal()) n += p->flag_number;
    return n >= 3;
}

namespace {

GraphPath as_graph_path(const BalancedFn& F, const CriticalPath& p) {
    GraphPath g;
    g.start = CurvePoint::vertex(p.critical);
    g.end = CurvePoint::vertex(p.cycle_point);
    for (size_t i = 0; i < p.edges.size(); ++i) {
        const Edge& e = F.domain.edges.at(p.edges[i]);
        g.flags.push_back({e.id, e.u == p.vertices[i] ? 0 : 1});
    }
    g.length = p.length;
    return g;
}

}  // namespace

Genus1Decision decide_genus1(const BalancedFn& F) {
    CriticalStructure cs = critical_structure(F);
    auto mins = cs.minimal();
    int n = 0;
    for (auto* p : mins) n += p->flag_number;
    if (n >= 3) return {Genus1Verdict::REALIZABLE, std::nullopt};
    // n < 3 forces a single minimal path with a simple critical point
    return {Genus1Verdict::NOT_REALIZABLE, as_graph_path(F, *mins.front())};
}

std::string genericity_failure(const BalancedFn& F, const CriticalStructure& cs) {
    auto mins = cs.minimal();
    if (mins.size() > 2) return "more than two minimal critical paths";
    std::set<int> essential = cs.cycle_vertices;
    for (auto& p : cs.paths) essential.insert(p.vertices.begin(), p.vertices.end());
    for (int v : essential) {
        if (mins.size() == 1 && v == mins.front()->critical) continue;
        if (F.domain.valence(v) > 3)
            return "vertex " + std::to_string(v) + " has valence " + std::to_string(F.domain.valence(v));
    }
    for (size_t i = mins.size(); i + 1 < cs.paths.size(); ++i)
        if (cs.paths[i].length == cs.paths[i + 1].length)
            return "critical paths of vertices " + std::to_string(cs.paths[i].critical) + " and " +
                   std::to_string(cs.paths[i + 1].critical) + " have equal length";
    return "";
}

}  // namespace tropical
