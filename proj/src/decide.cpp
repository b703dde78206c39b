#include "tropical/decide.hpp"

namespace tropical {

namespace {

void genus1(const BalancedFn& F, int max_degree, Decision& d) {
    Genus1Decision g = decide_genus1(F);
    if (g.verdict == Genus1Verdict::NOT_REALIZABLE) {
        d.verdict = Verdict::NOT_REALIZABLE;
        d.witness_path = g.witness_path;
        d.detail = "not well-spaced";
        return;
    }
    auto r = certify_well_spaced(F, max_degree);
    if (auto* c = std::get_if<HModCertificate>(&r)) {
        d.verdict = Verdict::REALIZABLE;
        d.certificate = *c;
        d.detail = "well-spaced";
    } else {
        d.verdict = Verdict::LIMIT_REALIZABLE;
        d.perturbation = std::get<LimitRealizable>(r).perturbation;
        d.detail = "well-spaced, non-generic: " + d.perturbation->reason;
    }
}

bool core_contracted(const BalancedFn& F) {
    TropicalCurve k = core(F.domain);
    for (auto& [id, e] : k.edges)
        if (!F.contracted(id)) return false;
    return true;
}

void theta(const BalancedFn& F, int max_degree, Decision& d) {
    for (auto [name, check] : {std::pair{"A", &check_theorem_A}, std::pair{"B", &check_theorem_B}}) {
        HypothesisReport rep;
        try {
            rep = check(F, max_degree);
        } catch (const std::exception& e) {
            rep.verdict = HypothesisVerdict::PART_I_FAILS;
            rep.detail = e.what();
        }
        d.hypotheses.push_back({name, rep});
        if (rep.verdict == HypothesisVerdict::HYPOTHESES_MET) {
            d.verdict = Verdict::REALIZABLE;
            d.certificate = rep.certificate;
            d.detail = std::string("hypotheses of theorem ") + name + " met";
            return;
        }
    }
    for (auto& [name, rep] : d.hypotheses)
        if (rep.verdict == HypothesisVerdict::LENGTHS_BELOW_THRESHOLD) {
            d.verdict = Verdict::THRESHOLD_FAIL;
            d.bounds = rep.bounds;
            d.detail = "theorem " + name + ": " + rep.detail;
            return;
        }
    d.verdict = Verdict::UNKNOWN;
    d.detail = "clause (i) fails for both theorems";
}

}  // namespace

Decision decide(const BalancedFn& F, int max_degree) {
    ValidationReport vr = validate(F.domain);
    if (!vr.ok()) throw std::invalid_argument("invalid curve: " + vr.problems.front());
    BalanceReport br = is_balanced(F);
    if (!br.ok()) throw std::invalid_argument("not balanced: " + br.problems.front());

    Decision d;
    int g = first_betti(F.domain);
    try {
        if (!has_contracted_cycle(F)) {
            d.route = Route::GENUS0;
            d.certificate = certify_no_contracted_cycles(F, max_degree);
            d.verdict = Verdict::REALIZABLE;
            d.detail = "no contracted cycle";
        } else if (g == 1) {
            d.route = Route::GENUS1;
            genus1(F, max_degree, d);
        } else if (g == 2) {
            Genus2Core k = classify_genus2(F.domain);
            d.route = k.type == CoreType::THETA ? Route::THETA : Route::DUMBBELL;
            if (!core_contracted(F)) {
                d.detail = "core only partly contracted";
            } else if (k.type == CoreType::THETA) {
                theta(F, max_degree, d);
            } else {
                d.certificate = certify_dumbbell(F, max_degree);
                d.verdict = Verdict::REALIZABLE;
                d.detail = "dumbbell with both length equalities";
            }
        } else {
            d.route = Route::HIGHER_GENUS;
            d.detail = "contracted cycles in genus " + std::to_string(g);
        }
    } catch (const std::exception& e) {
        // preconditions and construction failures: no claim either way
        d.verdict = Verdict::UNKNOWN;
        d.certificate.reset();
        d.detail = e.what();
    }
    return d;
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::REALIZABLE: return 0;
        case Verdict::NOT_REALIZABLE: return 1;
        default: return 2;
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::REALIZABLE: return "REALIZABLE";
        case Verdict::NOT_REALIZABLE: return "NOT_REALIZABLE";
        case Verdict::LIMIT_REALIZABLE: return "LIMIT_REALIZABLE";
        case Verdict::THRESHOLD_FAIL: return "THRESHOLD_FAIL";
        default: return "UNKNOWN";
    }
}

std::string to_string(Route r) {
    switch (r) {
        case Route::GENUS0: return "genus0";
        case Route::GENUS1: return "genus1";
        case Route::THETA: return "theta";
        case Route::DUMBBELL: return "dumbbell";
        default: return "higher_genus";
    }
}

}  // namespace tropical
