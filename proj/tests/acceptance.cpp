// Acceptance run: one PASS/FAIL line per criterion.  Usage: acceptance <fixture dir>

#define DOCTEST_CONFIG_DISABLE
#include "doctest.h"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>

#include "generators.hpp"
#include "tropical/decide.hpp"
#include "tropical/io.hpp"

using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

fs::path fixture_dir;

io::Instance load(const std::string& name) {
    return io::instance_from_json(io::read_json_file((fixture_dir / (name + ".json")).string()));
}

const std::map<std::string, std::string> expected = {
    {"g0_tree", "REALIZABLE"},
    {"g1_one_leg", "NOT_REALIZABLE"},
    {"g1_three_flag", "REALIZABLE"},
    {"g1_two_legs_equal", "REALIZABLE"},
    {"g1_two_legs_unequal", "NOT_REALIZABLE"},
    {"g1_y_equal_arms", "REALIZABLE"},
    {"g2_theta_three_legs", "REALIZABLE"},
    {"g2_theta_conjugate", "REALIZABLE"},
    {"g2_dumbbell", "REALIZABLE"},
    {"g2_theta_frame_tree", "REALIZABLE"},
    {"g2_theta_frame_short", "THRESHOLD_FAIL"},
    {"r2_two_legs", "CONDITIONALLY_REALIZABLE"},
    {"r2_one_leg_projection", "NOT_REALIZABLE"},
};

// accepted certificates of the realizable rank-1 fixtures
std::vector<std::pair<BalancedFn, HModCertificate>> fixture_certificates() {
    std::vector<std::pair<BalancedFn, HModCertificate>> out;
    for (auto& [name, want] : expected) {
        io::Instance in = load(name);
        if (in.rank != 1) continue;
        Decision d = decide(in.fn);
        if (d.certificate) out.emplace_back(in.fn, *d.certificate);
    }
    return out;
}

Outcome fixture_suite() {
    auto t0 = std::chrono::steady_clock::now();
    std::string bad;
    int certs = 0;
    for (auto& [name, want] : expected) {
        io::Instance in = load(name);
        std::string got;
        if (in.rank > 1) {
            got = to_string(coordinatewise_report(in.map).verdict);
        } else {
            Decision d = decide(in.fn);
            got = to_string(d.verdict);
            if (d.certificate) {
                ++certs;
                auto v = verify_certificate(in.fn, *d.certificate);
                if (!v.accept) bad += " " + name + ": certificate rejected (" + v.diagnostic + ")";
            }
            if (d.verdict == Verdict::REALIZABLE && !d.certificate) bad += " " + name + ": no certificate";
        }
        if (got != want) bad += " " + name + ": " + got + " (want " + want + ")";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 10) bad += " took " + std::to_string(secs) + "s";
    return {bad.empty(), bad.empty() ? std::to_string(expected.size()) + " fixtures, " + std::to_string(certs) +
                                           " certificates verified in " + std::to_string(secs).substr(0, 4) + "s"
                                     : bad};
}

Outcome hurwitz_oracle() {
    int n = 0, disagree = 0, solvable = 0;
    for (int d = 1; d <= 5; ++d) {
        auto parts = partitions_of(d);
        int np = (int)parts.size();
        // multisets of 1..4 profiles
        std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& idx) {
            if (!idx.empty()) {
                std::vector<Partition> prof;
                for (int i : idx) prof.push_back(parts[i]);
                auto p = LocalHurwitzProblem::make(d, prof);
                bool s = solve(p).has_value();
                bool oracle = d <= 3 ? exists_by_enumeration(p) : exists_by_reachability(p);
                if (s) {
                    ++solvable;
                    if (!verify_witness(p, *solve(p))) ++disagree;
                }
                disagree += s != oracle;
                ++n;
            }
            if (idx.size() == 4) return;
            for (int i = idx.empty() ? 0 : idx.back(); i < np; ++i) {
                idx.push_back(i);
                rec(idx);
                idx.pop_back();
            }
        };
        std::vector<int> idx;
        rec(idx);
    }
    return {disagree == 0, std::to_string(n) + " problems, " + std::to_string(solvable) + " solvable, " +
                               std::to_string(disagree) + " disagreements"};
}

Outcome harmonic_pullbacks() {
    std::mt19937 g(2024);
    int wrong = 0;
    for (int trial = 0; trial < 200; ++trial) {
        HarmonicMap m = random_segment_map(g, trial % 2 == 0);
        bool all = true;
        for (int k = 0; k < 50; ++k) all &= is_balanced(pullback(m, random_target_fn(g, m.target))).ok();
        wrong += is_harmonic(m).ok() != all;
    }
    return {wrong == 0, "200 maps x 50 pullbacks, " + std::to_string(wrong) + " mismatches"};
}

Outcome generic_genus1() {
    std::mt19937 g(77);
    int bad = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        Genus1Options o;
        o.cycle_vertices = 2 + i % 4;
        o.decorate = i % 3 == 0;
        BalancedFn F = random_genus1(g, o);
        auto r = certify_well_spaced(F);
        const HModCertificate* c = std::get_if<HModCertificate>(&r);
        std::string why;
        if (!c)
            why = "limit verdict";
        else if (auto v = verify_certificate(F, *c); !v.accept)
            why = v.diagnostic;
        else if (!minimal_paths_slope_one(F, *c))
            why = "minimal path not slope 1";
        if (!why.empty() && first.empty()) first = " (first: instance " + std::to_string(i) + ": " + why + ")";
        bad += !why.empty();
    }
    return {bad == 0, "100 instances, " + std::to_string(bad) + " failures" + first};
}

using Mutation = std::function<bool(HModCertificate&)>;  // false: not applicable

int first_ray_flag(const HarmonicMap& h) {
    for (auto& [f, im] : h.fmap)
        if (h.source.is_ray(f.elem) && !im.contracted) return f.elem;
    return -1;
}

const std::vector<std::pair<std::string, Mutation>> catalog = {
    {"ray slope +1",
     [](HModCertificate& c) {
         int r = first_ray_flag(c.lift);
         if (r < 0) return false;
         c.lift.fmap.at({r, 0}).slope += 1;
         return true;
     }},
    {"edge flag slope +1",
     [](HModCertificate& c) {
         for (auto& [f, im] : c.lift.fmap)
             if (c.lift.source.is_edge(f.elem) && !im.contracted) {
                 im.slope += 1;
                 return true;
             }
         return false;
     }},
    {"domain edge length doubled",
     [](HModCertificate& c) {
         if (c.domain_mod.ext.edges.empty()) return false;
         auto& e = c.domain_mod.ext.edges.begin()->second;
         e.len *= 2;
         c.lift.source.edges.at(c.domain_mod.ext.edges.begin()->first).len = e.len;
         return true;
     }},
    {"target edge length halved",
     [](HModCertificate& c) {
         if (c.target_mod.ext.edges.empty()) return false;
         auto& e = c.target_mod.ext.edges.begin()->second;
         e.len /= 2;
         c.lift.target.edges.at(c.target_mod.ext.edges.begin()->first).len = e.len;
         return true;
     }},
    {"witness sigma replaced by the identity",
     [](HModCertificate& c) {
         for (auto& [v, w] : c.witnesses)
             for (auto& s : w.sigmas)
                 if (cycle_type(s).front() > 1) {
                     for (size_t i = 0; i < s.size(); ++i) s[i] = (int)i;
                     return true;
                 }
         return false;
     }},
    {"witness transposition dropped",
     [](HModCertificate& c) {
         for (auto& [v, w] : c.witnesses)
             if (!w.taus.empty()) {
                 w.taus.pop_back();
                 return true;
             }
         return false;
     }},
    {"vertex sent to another target vertex",
     [](HModCertificate& c) {
         for (auto& [v, w] : c.lift.vmap)
             for (int x : c.lift.target.vertices)
                 if (x != w) {
                     w = x;
                     return true;
                 }
         return false;
     }},
    {"flag contracted",
     [](HModCertificate& c) {
         int r = first_ray_flag(c.lift);
         if (r < 0) return false;
         c.lift.fmap.at({r, 0}) = FlagImage{};
         return true;
     }},
    {"added domain ray removed",
     [](HModCertificate& c) {
         for (auto& [id, r] : c.domain_mod.ext.rays)
             if (!c.domain_mod.in_base(id)) {
                 c.domain_mod.ext.rays.erase(id);
                 return true;
             }
         return false;
     }},
    {"base element untagged",
     [](HModCertificate& c) {
         if (c.domain_mod.etag.empty()) return false;
         c.domain_mod.etag.erase(c.domain_mod.etag.begin());
         return true;
     }},
};

Outcome mutation_catalog() {
    auto certs = fixture_certificates();
    std::string bad;
    int applied = 0;
    for (auto& [name, mut] : catalog) {
        int used = 0;
        for (auto& [F, cert] : certs) {
            HModCertificate c = cert;
            if (!mut(c)) continue;
            ++used;
            auto v = verify_certificate(F, c);
            if (v.accept || v.diagnostic.empty()) bad += " [" + name + "] accepted";
        }
        if (!used) bad += " [" + name + "] never applicable";
        applied += used;
    }
    return {bad.empty(), std::to_string(catalog.size()) + " mutations, " + std::to_string(applied) +
                             " mutated certificates over " + std::to_string(certs.size()) + " fixtures" + bad};
}

Outcome probe_negative() {
    std::mt19937 g(5);
    int found = 0, not_ws = 0;
    long tried = 0;
    for (int i = 0; i < 50; ++i) {
        Genus1Options o;
        o.two_minimal = false;
        o.cycle_vertices = 2 + i % 3;
        BalancedFn F = random_genus1(g, o);
        not_ws += !is_well_spaced(F);
        auto r = necessity_probe(F, 3, 4);
        found += r.found;
        tried += r.candidates_tried;
    }
    return {found == 0 && not_ws == 50, "50 instances (" + std::to_string(not_ws) + " not well-spaced), " +
                                            std::to_string(tried) + " candidates, " + std::to_string(found) +
                                            " certificates found"};
}

// ---- invariance transforms

// every original edge split at its midpoint
BalancedFn subdivided(const BalancedFn& F) {
    TropicalCurve c = F.domain;
    std::map<int, Q> values = F.values;
    std::map<int, long> rays;
    for (auto& [id, r] : c.rays) rays[id] = F.slope({id, 0});
    for (auto& [id, e] : F.domain.edges) {
        CurvePoint mid{CurvePoint::OnEdge, id, e.len / 2};
        values[subdivide_inplace(c, mid)] = F.value_at(mid);
    }
    return from_values(c, values, rays);
}

BalancedFn scaled(const BalancedFn& F, const Q& k) {
    TropicalCurve c = F.domain;
    for (auto& [id, e] : c.edges) e.len *= k;
    std::map<int, Q> values;
    std::map<int, long> rays;
    for (int v : c.vertices) values[v] = F.values.at(v) * k;
    for (auto& [id, r] : c.rays) rays[id] = F.slope({id, 0});
    return from_values(c, values, rays);
}

BalancedFn relabeled(const BalancedFn& F) {
    auto V = [](int v) { return 7000 - 3 * v; };
    auto X = [](int x) { return 9000 - 5 * x; };
    TropicalCurve c;
    std::map<int, Q> values;
    std::map<int, long> rays;
    for (int v : F.domain.vertices) {
        c.add_vertex(V(v));
        values[V(v)] = F.values.at(v);
    }
    for (auto& [id, e] : F.domain.edges) c.add_edge(X(id), V(e.u), V(e.v), e.len);
    for (auto& [id, r] : F.domain.rays) {
        c.add_ray(X(id), V(r.base));
        rays[X(id)] = F.slope({id, 0});
    }
    return from_values(c, values, rays);
}

std::string signature(const BalancedFn& F, int genus) {
    auto guard = [](auto f) -> std::string {
        try {
            return f();
        } catch (const std::exception&) {
            return "error";
        }
    };
    if (genus == 1)
        return guard([&] { return std::to_string((int)decide_genus1(F).verdict); }) + "/" +
               guard([&] { return std::to_string(is_well_spaced(F)); });
    return guard([&] { return std::to_string((int)check_theorem_A(F).verdict); }) + "/" +
           guard([&] { return std::to_string((int)check_theorem_B(F).verdict); });
}

Outcome invariance() {
    std::string bad;
    int checked = 0, errors = 0;
    for (auto& [name, want] : expected) {
        int genus = name[1] - '0';
        if (name[0] != 'g' || (genus != 1 && genus != 2)) continue;
        if (name.find("dumbbell") != std::string::npos) continue;  // no Θ theorem applies
        BalancedFn F = load(name).fn;
        std::string s0 = signature(F, genus);
        errors += s0.find("error") != std::string::npos;
        for (auto& [how, G] : std::vector<std::pair<std::string, BalancedFn>>{
                 {"subdivision", subdivided(F)}, {"scaling", scaled(F, Q(3, 7))}, {"relabeling", relabeled(F)}}) {
            ++checked;
            std::string s = signature(G, genus);
            if (s != s0) bad += " " + name + " under " + how + ": " + s0 + " -> " + s;
        }
    }
    return {bad.empty(), std::to_string(checked) + " transformed instances, " + std::to_string(errors) +
                             " baselines with a throwing check" + bad};
}

Outcome frame_threshold() {
    BalancedFn F = load("g2_theta_frame_tree").fn;
    auto with_len = [&](const Q& L) {
        BalancedFn G = F;
        G.domain.edges.at(19).len = L;
        return G;
    };
    std::string bad;
    // well above the threshold
    Decision hi = decide(with_len(Q(10)));
    if (hi.verdict != Verdict::REALIZABLE || !hi.certificate ||
        !verify_certificate(with_len(Q(10)), *hi.certificate).accept)
        bad += " long edge not accepted;";
    // below it: a positive bound on edge 19 exceeding the length
    Decision lo = decide(with_len(Q(1, 2)));
    Q bound = -1;
    for (auto& b : lo.bounds)
        if (b.edge == 19) bound = b.bound;
    if (lo.verdict != Verdict::THRESHOLD_FAIL || bound <= 0 || bound <= Q(1, 2))
        bad += " short edge: " + to_string(lo.verdict) + ", bound " + format_q(bound) + ";";
    // monotone in the length
    bool seen_ok = false;
    std::string seq;
    for (Q L : {Q(1, 4), Q(1), bound + Q(1, 4), Q(3), Q(20)}) {
        Decision d = decide(with_len(L));
        bool ok = d.verdict == Verdict::REALIZABLE;
        seq += format_q(L) + ":" + to_string(d.verdict) + " ";
        if (seen_ok && !ok) bad += " not monotone;";
        if ((L > bound) != ok) bad += " verdict at " + format_q(L) + " disagrees with bound;";
        seen_ok |= ok;
    }
    return {bad.empty(), "bound " + format_q(bound) + "; " + seq + bad};
}

}  // namespace

int main(int argc, char** argv) {
    fixture_dir = argc > 1 ? argv[1] : "fixtures";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"fixture verdicts and certificates", fixture_suite},
        {"Hurwitz solver agrees with exhaustive oracle", hurwitz_oracle},
        {"harmonic iff every pullback is balanced", harmonic_pullbacks},
        {"generic genus-1 certificates verify with slope-1 minimal paths", generic_genus1},
        {"mutated certificates are rejected", mutation_catalog},
        {"necessity probe finds nothing on non-well-spaced input", probe_negative},
        {"verdicts invariant under subdivision, scaling, relabeling", invariance},
        {"frame threshold and monotonicity", frame_threshold},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
                  << o.detail << ")" << std::endl;
    }
    return failed ? 1 : 0;
}
