#include "tropical/hurwitz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace tropical {

LocalHurwitzProblem LocalHurwitzProblem::make(int d, std::vector<Partition> profiles) {
    LocalHurwitzProblem p;
    p.degree = d;
    for (auto& q : profiles) std::sort(q.begin(), q.end(), std::greater<int>());
    p.profiles = std::move(profiles);
    p.extra_budget = rh_defect(p);
    return p;
}

int rh_defect(const LocalHurwitzProblem& p) {
    int k = 2 * p.degree - 2;
    for (auto& q : p.profiles)
        for (int part : q) k -= part - 1;
    return k;
}

std::vector<std::string> LocalHurwitzProblem::problems() const {
    std::vector<std::string> out;
    if (degree <= 0) out.push_back("degree must be positive");
    for (size_t i = 0; i < profiles.size(); ++i) {
        int s = 0;
        for (int part : profiles[i]) {
            if (part <= 0) out.push_back("profile " + std::to_string(i) + ": non-positive part");
            s += part;
        }
        if (s != degree) out.push_back("profile " + std::to_string(i) + " sums to " + std::to_string(s));
    }
    if (out.empty() && extra_budget != rh_defect(*this)) out.push_back("stored budget disagrees with formula");
    return out;
}

Partition cycle_type(const Perm& p) {
    int d = static_cast<int>(p.size());
    std::vector<bool> seen(d, false);
    Partition out;
    for (int i = 0; i < d; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
}

namespace {

Perm identity(int d) {
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

// union-find labels, canonicalized so each element carries its orbit's minimum
std::vector<int> join(std::vector<int> lab, const Perm& g) {
    int d = static_cast<int>(g.size());
    std::function<int(int)> find = [&](int x) { return lab[x] == x ? x : lab[x] = find(lab[x]); };
    for (int i = 0; i < d; ++i) {
        int a = find(i), b = find(g[i]);
        if (a != b) lab[std::max(a, b)] = std::min(a, b);
    }
    for (int i = 0; i < d; ++i) lab[i] = find(i);
    return lab;
}

bool single_orbit(const std::vector<int>& lab) {
    for (int x : lab)
        if (x != 0) return false;
    return true;
}

// all permutations of the given cycle type, lexicographic
const std::vector<Perm>& conjugacy_class(int d, const Partition& type) {
    static std::map<std::pair<int, Partition>, std::vector<Perm>> cache;
    auto key = std::make_pair(d, type);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Perm> out;
    Perm p = identity(d);
    do {
        if (cycle_type(p) == type) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache[key] = std::move(out);
}

std::vector<Partition> factor_types(const LocalHurwitzProblem& p) {
    std::vector<Partition> f = p.profiles;
    Partition tr{2};
    for (int i = 2; i < p.degree; ++i) tr.push_back(1);
    for (int i = 0; i < p.extra_budget; ++i) f.push_back(tr);
    return f;
}

std::string key_of(size_t i, const Perm& prod, const std::vector<int>& lab) {
    std::string k(1 + prod.size() + lab.size(), '\0');
    k[0] = static_cast<char>(i);
    for (size_t j = 0; j < prod.size(); ++j) k[1 + j] = static_cast<char>(prod[j]);
    for (size_t j = 0; j < lab.size(); ++j) k[1 + prod.size() + j] = static_cast<char>(lab[j]);
    return k;
}

}  // namespace

bool transitive(int d, const std::vector<const Perm*>& gens) {
    std::vector<int> lab(d);
    std::iota(lab.begin(), lab.end(), 0);
    for (auto* g : gens) lab = join(lab, *g);
    return single_orbit(lab);
}

std::optional<HurwitzWitness> solve(const LocalHurwitzProblem& p, int max_degree) {
    if (!p.problems().empty()) throw std::invalid_argument("invalid Hurwitz problem: " + p.problems().front());
    if (p.degree > max_degree) throw DegreeBoundExceeded("degree bound exceeded");
    if (p.extra_budget < 0) return std::nullopt;
    int d = p.degree;
    auto types = factor_types(p);
    // parity: a product equal to the identity is even
    int parity = 0;
    for (auto& t : types) parity += d - static_cast<int>(t.size());
    if (parity % 2 != 0) return std::nullopt;
    if (types.empty()) {
        if (d != 1) return std::nullopt;
        return HurwitzWitness{};
    }

    std::unordered_set<std::string> dead;
    std::vector<Perm> chosen;
    std::function<bool(size_t, const Perm&, const std::vector<int>&)> dfs =
        [&](size_t i, const Perm& prod, const std::vector<int>& lab) -> bool {
        if (i + 1 == types.size()) {
            Perm last = inverse(prod);
            if (cycle_type(last) != types[i]) return false;
            if (!single_orbit(join(lab, last))) return false;
            chosen.push_back(last);
            return true;
        }
        std::string k = key_of(i, prod, lab);
        if (dead.count(k)) return false;
        for (const Perm& g : conjugacy_class(d, types[i])) {
            chosen.push_back(g);
            if (dfs(i + 1, compose(prod, g), join(lab, g))) return true;
            chosen.pop_back();
        }
        dead.insert(k);
        return false;
    };
    std::vector<int> lab(d);
    std::iota(lab.begin(), lab.end(), 0);
    if (!dfs(0, identity(d), lab)) return std::nullopt;
    HurwitzWitness w;
    for (size_t i = 0; i < chosen.size(); ++i)
        (i < p.profiles.size() ? w.sigmas : w.taus).push_back(chosen[i]);
    return w;
}

bool verify_witness(const LocalHurwitzProblem& p, const HurwitzWitness& w) {
    if (!p.problems().empty() || p.extra_budget < 0) return false;
    int d = p.degree;
    if (w.sigmas.size() != p.profiles.size() || static_cast<int>(w.taus.size()) != p.extra_budget) return false;
    Partition tr{2};
    for (int i = 2; i < d; ++i) tr.push_back(1);
    std::vector<const Perm*> all;
    auto okperm = [&](const Perm& g) {
        if (static_cast<int>(g.size()) != d) return false;
        std::vector<bool> seen(d, false);
        for (int x : g) {
            if (x < 0 || x >= d || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    };
    for (size_t i = 0; i < w.sigmas.size(); ++i) {
        if (!okperm(w.sigmas[i]) || cycle_type(w.sigmas[i]) != p.profiles[i]) return false;
        all.push_back(&w.sigmas[i]);
    }
    for (auto& t : w.taus) {
        if (!okperm(t) || cycle_type(t) != tr) return false;
        all.push_back(&t);
    }
    Perm prod = identity(d);
    for (auto* g : all) prod = compose(prod, *g);
    if (prod != identity(d)) return false;
    return transitive(d, all);
}

LocalHurwitzProblem extract_local_problem(const HarmonicMap& m, int v) {
    int w = m.vmap.at(v);
    std::map<Flag, Partition> parts;
    for (Flag g : m.target.flags_at(w)) parts[g];
    for (Flag f : m.source.flags_at(v)) {
        const FlagImage& im = m.fmap.at(f);
        if (im.contracted) throw std::invalid_argument("map not finite at vertex " + std::to_string(v));
        parts[im.target].push_back(static_cast<int>(im.slope));
    }
    int d = -1;
    std::vector<Partition> profiles;
    for (auto& [g, q] : parts) {
        int s = std::accumulate(q.begin(), q.end(), 0);
        if (d < 0) d = s;
        if (s != d || s == 0) throw std::invalid_argument("map not harmonic at vertex " + std::to_string(v));
        profiles.push_back(q);
    }
    if (d <= 0) throw std::invalid_argument("isolated vertex " + std::to_string(v));
    return LocalHurwitzProblem::make(d, profiles);
}

bool exists_by_reachability(const LocalHurwitzProblem& p) {
    if (p.extra_budget < 0) return false;
    int d = p.degree;
    auto types = factor_types(p);
    std::set<std::pair<Perm, std::vector<int>>> states;
    std::vector<int> lab(d);
    std::iota(lab.begin(), lab.end(), 0);
    states.insert({identity(d), lab});
    for (auto& t : types) {
        std::set<std::pair<Perm, std::vector<int>>> next;
        for (auto& [prod, l] : states)
            for (const Perm& g : conjugacy_class(d, t)) next.insert({compose(prod, g), join(l, g)});
        states.swap(next);
    }
    for (auto& [prod, l] : states)
        if (prod == identity(d) && single_orbit(l)) return true;
    return false;
}

bool exists_by_enumeration(const LocalHurwitzProblem& p) {
    if (p.extra_budget < 0) return false;
    int d = p.degree;
    auto types = factor_types(p);
    std::vector<const std::vector<Perm>*> cls;
    for (auto& t : types) cls.push_back(&conjugacy_class(d, t));
    std::vector<size_t> idx(types.size(), 0);
    while (true) {
        std::vector<const Perm*> gens;
        Perm prod = identity(d);
        for (size_t i = 0; i < idx.size(); ++i) {
            gens.push_back(&(*cls[i])[idx[i]]);
            prod = compose(prod, *gens.back());
        }
        if (prod == identity(d) && transitive(d, gens)) return true;
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == cls[i]->size()) idx[i++] = 0;
        if (i == idx.size()) return false;
    }
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxp) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(rest, maxp); x >= 1; --x) {
            cur.push_back(x);
            rec(rest - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

}  // namespace tropical
