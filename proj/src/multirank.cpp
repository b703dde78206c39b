#include "tropical/multirank.hpp"

namespace tropical {

namespace {

void structural(const TropicalMapRr& Fr, std::vector<std::string>& out) {
    if (Fr.r < 1) out.push_back("rank must be positive");
    ValidationReport vr = validate(Fr.domain);
    out.insert(out.end(), vr.problems.begin(), vr.problems.end());
    for (int v : Fr.domain.vertices) {
        auto it = Fr.values.find(v);
        if (it == Fr.values.end())
            out.push_back("vertex " + std::to_string(v) + " has no value");
        else if ((int)it->second.size() != Fr.r)
            out.push_back("value at vertex " + std::to_string(v) + " has length " + std::to_string(it->second.size()));
    }
    for (Flag f : Fr.domain.all_flags()) {
        auto it = Fr.slopes.find(f);
        if (it == Fr.slopes.end()) {
            if (Fr.domain.is_ray(f.elem)) out.push_back("ray flag " + flag_str(f) + " has no slope");
        } else if ((int)it->second.size() != Fr.r) {
            out.push_back("slope at " + flag_str(f) + " has length " + std::to_string(it->second.size()));
        }
    }
}

BalancedFn combine(const TropicalMapRr& Fr, const IntVec& chi) {
    BalancedFn F;
    F.domain = Fr.domain;
    for (auto& [v, x] : Fr.values) {
        Q s = 0;
        for (int i = 0; i < Fr.r; ++i) s += chi[i] * x[i];
        F.values[v] = s;
    }
    for (Flag f : Fr.domain.all_flags()) {
        auto it = Fr.slopes.find(f);
        if (it != Fr.slopes.end()) {
            long s = 0;
            for (int i = 0; i < Fr.r; ++i) s += chi[i] * it->second[i];
            F.slopes[f] = s;
            continue;
        }
        // edge flag without a stored slope: read it off the values
        const Edge& e = Fr.domain.edges.at(f.elem);
        int a = f.side == 0 ? e.u : e.v, b = f.side == 0 ? e.v : e.u;
        Q s = (F.values.at(b) - F.values.at(a)) / e.len;
        if (!is_integer(s)) throw std::invalid_argument("non-integer slope on edge " + std::to_string(f.elem));
        F.slopes[f] = static_cast<long>(numerator(s));
    }
    return F;
}

}  // namespace

BalancedFn coordinate(const TropicalMapRr& Fr, int i) {
    IntVec e(Fr.r, 0);
    e.at(i) = 1;
    return combine(Fr, e);
}

TropicalMapReport is_tropical_map(const TropicalMapRr& Fr) {
    TropicalMapReport rep;
    structural(Fr, rep.problems);
    if (!rep.ok()) return rep;
    for (int i = 0; i < Fr.r; ++i) {
        BalanceReport br;
        try {
            br = is_balanced(coordinate(Fr, i));
        } catch (const std::exception& e) {
            br.problems.push_back(e.what());
        }
        if (br.ok()) continue;
        rep.failing_coordinates.push_back(i);
        for (auto& p : br.problems) rep.problems.push_back("coordinate " + std::to_string(i) + ": " + p);
    }
    return rep;
}

BalancedFn project(const TropicalMapRr& Fr, const IntVec& chi) {
    if ((int)chi.size() != Fr.r) throw std::invalid_argument("character has length " + std::to_string(chi.size()));
    TropicalMapReport rep = is_tropical_map(Fr);
    if (!rep.ok()) throw std::invalid_argument("not a tropical map: " + rep.problems.front());
    return combine(Fr, chi);
}

bool is_constant(const BalancedFn& F) {
    for (auto& [f, s] : F.slopes)
        if (s != 0) return false;
    return true;
}

long long determinant(const std::vector<IntVec>& m) {
    size_t n = m.size();
    std::vector<std::vector<Z>> a(n);
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("basis matrix is not square");
        for (long x : m[i]) a[i].push_back(Z(x));
    }
    Z sign = 1, prev = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return static_cast<long long>(sign * a[n - 1][n - 1]);
}

MultirankReport coordinatewise_report(const TropicalMapRr& Fr, std::vector<IntVec> basis, int max_degree) {
    TropicalMapReport tm = is_tropical_map(Fr);
    if (!tm.ok()) throw std::invalid_argument("not a tropical map: " + tm.problems.front());
    if (basis.empty())
        for (int i = 0; i < Fr.r; ++i) {
            basis.push_back(IntVec(Fr.r, 0));
            basis.back()[i] = 1;
        }
    if ((int)basis.size() != Fr.r) throw std::invalid_argument("basis needs " + std::to_string(Fr.r) + " characters");
    long long det = determinant(basis);
    if (det != 1 && det != -1) throw std::invalid_argument("basis is not unimodular (determinant " + std::to_string(det) + ")");

    MultirankReport rep;
    rep.maximally_degenerate = true;
    for (int v : Fr.domain.vertices) {
        int k = Fr.domain.valence(v);
        if (k != 2 && k != 3) rep.maximally_degenerate = false;
    }

    bool any_not = false, all_real = true, any_limit = false;
    for (auto& chi : basis) {
        CharacterResult cr;
        cr.chi = chi;
        BalancedFn F = project(Fr, chi);
        if (is_constant(F)) {
            // any realization of Fr composes to a constant: no obstruction here
            cr.degenerate = true;
            cr.decision.verdict = Verdict::REALIZABLE;
            cr.decision.detail = "constant projection";
        } else {
            cr.decision = decide(F, max_degree);
        }
        Verdict v = cr.decision.verdict;
        any_not |= v == Verdict::NOT_REALIZABLE;
        any_limit |= v == Verdict::LIMIT_REALIZABLE;
        all_real &= v == Verdict::REALIZABLE || v == Verdict::LIMIT_REALIZABLE;
        rep.characters.push_back(std::move(cr));
    }

    bool genus0 = first_betti(Fr.domain) == 0;
    if (any_not) {
        rep.verdict = CombinedVerdict::NOT_REALIZABLE;
    } else if (!all_real) {
        rep.verdict = CombinedVerdict::UNKNOWN;
    } else if (any_limit) {
        rep.verdict = CombinedVerdict::CONDITIONALLY_REALIZABLE_LIMIT;
        rep.conditional = true;
    } else if (genus0 || Fr.r == 1) {
        rep.verdict = CombinedVerdict::REALIZABLE;
    } else {
        rep.verdict = CombinedVerdict::CONDITIONALLY_REALIZABLE;
        rep.conditional = true;
    }
    if (rep.conditional)
        rep.assumption =
            "the realization space of each projection has codimension rg near the map (not verified)";
    return rep;
}

int exit_code(CombinedVerdict v) {
    switch (v) {
        case CombinedVerdict::REALIZABLE:
        case CombinedVerdict::CONDITIONALLY_REALIZABLE: return 0;
        case CombinedVerdict::NOT_REALIZABLE: return 1;
        default: return 2;
    }
}

std::string to_string(CombinedVerdict v) {
    switch (v) {
        case CombinedVerdict::REALIZABLE: return "REALIZABLE";
        case CombinedVerdict::CONDITIONALLY_REALIZABLE: return "CONDITIONALLY_REALIZABLE";
        case CombinedVerdict::CONDITIONALLY_REALIZABLE_LIMIT: return "CONDITIONALLY_REALIZABLE(LIMIT)";
        case CombinedVerdict::NOT_REALIZABLE: return "NOT_REALIZABLE";
        default: return "UNKNOWN";
    }
}

}  // namespace tropical
