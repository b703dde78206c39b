// Independent certificate checker.  Uses nothing from the constructions.

#include <stdexcept>

#include "tropical/modify.hpp"

namespace tropical {

namespace {

int sgn(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// derivative of "base offset" when moving along an ext flag
int tag_direction(const Modification& m, Flag f) {
    auto it = m.etag.find(f.elem);
    if (it == m.etag.end()) return 0;
    if (m.ext.is_ray(f.elem)) return 1;
    int s = sgn(it->second.to - it->second.from);
    return f.side == 0 ? s : -s;
}

// derivative of the line coordinate along a target flag; 0 off the line
int coord_direction(const Modification& t, Flag g) {
    int d = tag_direction(t, g);
    if (d == 0) return 0;
    return t.etag.at(g.elem).elem == 0 ? -d : d;  // ray 0 points to -inf
}

}  // namespace

CertVerdict verify_certificate(const BalancedFn& F, const HModCertificate& c, int max_degree) {
    CertVerdict out;
    auto fail = [&](const std::string& s) { out.all.push_back(s); };
    auto done = [&]() {
        out.accept = out.all.empty();
        if (!out.accept) out.diagnostic = out.all.front();
        return out;
    };

    const Modification& D = c.domain_mod;
    const Modification& T = c.target_mod;
    const HarmonicMap& h = c.lift;
    if (!(D.base == F.domain)) fail("domain base mismatch: modification not based on the curve of F");
    if (!(T.base == real_line())) fail("target base mismatch: modification not based on the line");
    if (!out.all.empty()) return done();
    for (auto& s : check_modification(D)) fail("domain modification invalid: " + s);
    for (auto& s : check_modification(T)) fail("target modification invalid: " + s);
    if (!out.all.empty()) return done();
    if (!(h.source == D.ext)) fail("lift source is not the modified domain");
    if (!(h.target == T.ext)) fail("lift target is not the modified target");
    if (!out.all.empty()) return done();
    for (auto& s : check_normal_form(h)) fail("lift malformed: " + s);
    if (!out.all.empty()) return done();

    for (Flag f : h.source.all_flags())
        if (h.fmap.at(f).contracted) {
            fail("not finite at element " + std::to_string(f.elem));
            break;
        }

    // harmonicity: equal positive local degree in every direction
    bool harmonic = true;
    for (int v : h.source.vertices) {
        int w = h.vmap.at(v);
        std::map<Flag, long> sums;
        for (Flag g : h.target.flags_at(w)) sums[g] = 0;
        for (Flag f : h.source.flags_at(v)) {
            const FlagImage& im = h.fmap.at(f);
            if (!im.contracted) sums[im.target] += im.slope;
        }
        long d = -1;
        bool ok = true;
        for (auto& [g, s] : sums) {
            if (d < 0) d = s;
            if (s != d || s <= 0) ok = false;
        }
        if (!ok) {
            std::string msg = "not harmonic at vertex " + std::to_string(v) + " (local degrees";
            for (auto& [g, s] : sums) msg += " " + flag_str(g) + "=" + std::to_string(s);
            fail(msg + ")");
            harmonic = false;
        }
    }
    if (harmonic)
        for (auto& s : is_harmonic(h).problems) fail("not harmonic: " + s);

    // the square commutes at vertices ...
    for (int v : D.ext.vertices) {
        Q lhs = F.value_at(D.retract(v));
        Q rhs = line_coordinate(T.retract(h.vmap.at(v)));
        if (lhs != rhs)
            fail("square does not commute at vertex " + std::to_string(v) + ": " + format_q(lhs) +
                 " vs " + format_q(rhs));
    }
    // ... and on slopes
    for (Flag f : D.ext.all_flags()) {
        if (f.side != 0) continue;
        long lhs = 0;
        auto it = D.etag.find(f.elem);
        if (it != D.etag.end()) lhs = F.slope({it->second.elem, 0}) * tag_direction(D, f);
        const FlagImage& im = h.fmap.at(f);
        long rhs = im.contracted ? 0 : im.slope * coord_direction(T, im.target);
        if (lhs != rhs)
            fail("square does not commute on element " + std::to_string(f.elem) + ": slope " +
                 std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
    if (!out.all.empty()) return done();

    for (int v : h.source.vertices) {
        std::string where = "vertex " + std::to_string(v);
        LocalHurwitzProblem p;
        try {
            p = extract_local_problem(h, v);
        } catch (const std::exception& e) {
            fail(std::string("no local problem at ") + where + ": " + e.what());
            continue;
        }
        if (p.degree > max_degree) {
            fail("degree bound exceeded at " + where);
            continue;
        }
        auto w = c.witnesses.find(v);
        if (w != c.witnesses.end()) {
            if (!verify_witness(p, w->second)) fail("witness invalid at " + where);
        } else if (!solve(p, max_degree)) {
            fail("no local realization at " + where);
        }
    }
    return done();
}

}  // namespace tropical
