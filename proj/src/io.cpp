#include "tropical/io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace tropical::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + ": missing \"" + key + "\"");
    return *it;
}

Q q_of(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Q(j.get<long long>());
    if (!j.is_string()) bad(where + ": expected a rational string");
    try {
        return parse_q(j.get<std::string>());
    } catch (const std::exception&) {
        bad(where + ": bad rational \"" + j.get<std::string>() + "\"");
    }
}

long long int_of(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where + ": expected an integer");
    return j.get<long long>();
}

int key_int(const std::string& k, const std::string& where) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(k, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != k.size()) bad(where + ": bad id \"" + k + "\"");
    return v;
}

Flag flag_of(const std::string& s, const std::string& where) {
    auto c = s.find(':');
    Flag f{key_int(s.substr(0, c), where), c == std::string::npos ? 0 : key_int(s.substr(c + 1), where)};
    if (f.side != 0 && f.side != 1) bad(where + ": bad flag side in \"" + s + "\"");
    return f;
}

const json& object_of(const json& j, const std::string& where) {
    if (!j.is_object()) bad(where + ": expected an object");
    return j;
}

const json& array_of(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": expected an array");
    return j;
}

std::vector<long> ivec(const json& j, const std::string& where) {
    std::vector<long> out;
    for (auto& x : array_of(j, where)) out.push_back(int_of(x, where));
    return out;
}

json perm_list(const std::vector<Perm>& ps) {
    json a = json::array();
    for (auto& p : ps) a.push_back(p);
    return a;
}

std::vector<Perm> perms_of(const json& j, const std::string& where) {
    std::vector<Perm> out;
    for (auto& p : array_of(j, where)) {
        Perm q;
        for (auto& x : array_of(p, where)) q.push_back((int)int_of(x, where));
        out.push_back(q);
    }
    return out;
}

}  // namespace

json to_json(const TropicalCurve& c) {
    json j;
    j["vertices"] = json::array();
    for (int v : c.vertices) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (auto& [id, e] : c.edges) j["edges"].push_back({{"id", id}, {"ends", {e.u, e.v}}, {"length", format_q(e.len)}});
    j["rays"] = json::array();
    for (auto& [id, r] : c.rays) j["rays"].push_back({{"id", id}, {"base", r.base}});
    return j;
}

TropicalCurve curve_from_json(const json& j) {
    TropicalCurve c;
    try {
        for (auto& v : array_of(field(j, "vertices", "curve"), "vertices")) c.add_vertex((int)int_of(v, "vertices"));
        for (auto& e : array_of(field(j, "edges", "curve"), "edges")) {
            int id = (int)int_of(field(e, "id", "edge"), "edge id");
            std::string w = "edge " + std::to_string(id);
            auto& ends = array_of(field(e, "ends", w), w + " ends");
            if (ends.size() != 2) bad(w + ": needs two ends");
            c.add_edge(id, (int)int_of(ends[0], w), (int)int_of(ends[1], w), q_of(field(e, "length", w), w + " length"));
        }
        if (j.contains("rays"))
            for (auto& r : array_of(j["rays"], "rays")) {
                int id = (int)int_of(field(r, "id", "ray"), "ray id");
                c.add_ray(id, (int)int_of(field(r, "base", "ray " + std::to_string(id)), "ray base"));
            }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("curve: ") + e.what());
    }
    ValidationReport vr = validate(c);
    if (!vr.ok()) bad("invalid curve: " + vr.problems.front());
    return c;
}

json to_json(const CurvePoint& p) {
    static const char* kinds[] = {"vertex", "edge", "ray"};
    json j{{"kind", kinds[p.kind]}, {"id", p.id}};
    if (p.kind != CurvePoint::Vertex) j["t"] = format_q(p.t);
    return j;
}

CurvePoint point_from_json(const json& j) {
    std::string k = field(j, "kind", "point").get<std::string>();
    CurvePoint p;
    p.id = (int)int_of(field(j, "id", "point"), "point id");
    if (k == "vertex") return CurvePoint::vertex(p.id);
    if (k == "edge") p.kind = CurvePoint::OnEdge;
    else if (k == "ray") p.kind = CurvePoint::OnRay;
    else bad("point: unknown kind \"" + k + "\"");
    p.t = q_of(field(j, "t", "point"), "point offset");
    return p;
}

Instance instance_from_json(const json& j) {
    Instance in;
    const json& cj = j.contains("curve") ? j["curve"] : j;
    TropicalCurve c = curve_from_json(cj);
    const json& fj = j.contains("function") ? j["function"] : j;
    const json& vals = object_of(field(fj, "values", "instance"), "values");
    const json& slopes = fj.contains("slopes") ? object_of(fj["slopes"], "slopes") : json::object();
    bool vector_valued = false;
    for (auto& [k, v] : vals.items()) vector_valued |= v.is_array();
    in.rank = j.contains("rank") ? (int)int_of(j["rank"], "rank") : 1;
    if (in.rank < 1) bad("rank must be positive");
    if (in.rank > 1 || vector_valued) {
        if (!vector_valued && in.rank > 1) bad("rank " + std::to_string(in.rank) + " needs vector values");
        TropicalMapRr& M = in.map;
        M.domain = c;
        M.r = in.rank;
        for (auto& [k, v] : vals.items()) {
            std::vector<Q> x;
            for (auto& e : array_of(v, "value at " + k)) x.push_back(q_of(e, "value at " + k));
            M.values[key_int(k, "values")] = x;
        }
        for (auto& [k, v] : slopes.items()) M.slopes[flag_of(k, "slopes")] = ivec(v, "slope at " + k);
        TropicalMapReport rep = is_tropical_map(M);
        if (!rep.ok()) bad("not a tropical map: " + rep.problems.front());
        if (in.rank == 1) in.fn = coordinate(M, 0);
        return in;
    }
    std::map<int, Q> values;
    for (auto& [k, v] : vals.items()) values[key_int(k, "values")] = q_of(v, "value at " + k);
    for (int v : c.vertices)
        if (!values.count(v)) bad("vertex " + std::to_string(v) + " has no value");
    std::map<int, long> ray_slopes;
    std::map<Flag, long> given;
    for (auto& [k, v] : slopes.items()) {
        Flag f = flag_of(k, "slopes");
        if (!c.has_flag(f)) bad("slope given for unknown flag " + k);
        given[f] = (long)int_of(v, "slope at " + k);
        if (c.is_ray(f.elem)) ray_slopes[f.elem] = given[f];
    }
    for (auto& [id, r] : c.rays)
        if (!ray_slopes.count(id)) bad("ray " + std::to_string(id) + " has no slope");
    try {
        in.fn = from_values(c, values, ray_slopes);
    } catch (const std::exception& e) {
        bad(e.what());
    }
    for (auto& [f, s] : given)
        if (in.fn.slope(f) != s)
            bad("slope at " + flag_str(f) + " is " + std::to_string(s) + ", values give " +
                std::to_string(in.fn.slope(f)));
    BalanceReport br = is_balanced(in.fn);
    if (!br.ok()) bad("not balanced: " + br.problems.front());
    return in;
}

json instance_to_json(const BalancedFn& F) {
    json j = to_json(F.domain);
    j["values"] = json::object();
    for (auto& [v, x] : F.values) j["values"][std::to_string(v)] = format_q(x);
    j["slopes"] = json::object();
    for (auto& [id, r] : F.domain.rays) j["slopes"][flag_str({id, 0})] = F.slope({id, 0});
    return j;
}

json instance_to_json(const TropicalMapRr& M) {
    json j = to_json(M.domain);
    j["rank"] = M.r;
    j["values"] = json::object();
    for (auto& [v, x] : M.values) {
        json a = json::array();
        for (auto& q : x) a.push_back(format_q(q));
        j["values"][std::to_string(v)] = a;
    }
    j["slopes"] = json::object();
    for (auto& [id, r] : M.domain.rays) j["slopes"][flag_str({id, 0})] = M.slopes.at({id, 0});
    return j;
}

json instance_to_json(const Instance& in) { return in.rank > 1 ? instance_to_json(in.map) : instance_to_json(in.fn); }

std::string instance_hash(const Instance& in) { return sha256_hex(canonical(instance_to_json(in))); }

json to_json(const Modification& m) {
    json j{{"base", to_json(m.base)}, {"ext", to_json(m.ext)}, {"vbase", json::object()}, {"etag", json::object()}};
    for (auto& [v, p] : m.vbase) j["vbase"][std::to_string(v)] = to_json(p);
    for (auto& [e, t] : m.etag)
        j["etag"][std::to_string(e)] = {{"elem", t.elem}, {"from", format_q(t.from)}, {"to", format_q(t.to)}};
    return j;
}

Modification modification_from_json(const json& j) {
    Modification m;
    m.base = curve_from_json(field(j, "base", "modification"));
    m.ext = curve_from_json(field(j, "ext", "modification"));
    for (auto& [k, v] : object_of(field(j, "vbase", "modification"), "vbase").items())
        m.vbase[key_int(k, "vbase")] = point_from_json(v);
    for (auto& [k, v] : object_of(field(j, "etag", "modification"), "etag").items())
        m.etag[key_int(k, "etag")] = {(int)int_of(field(v, "elem", "etag"), "etag elem"), q_of(field(v, "from", "etag"), "etag"),
                                      q_of(field(v, "to", "etag"), "etag")};
    return m;
}

json to_json(const HarmonicMap& m) {
    json j{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"vertex_map", json::object()},
           {"flag_map", json::object()}};
    for (auto& [a, b] : m.vmap) j["vertex_map"][std::to_string(a)] = b;
    for (auto& [f, im] : m.fmap) {
        json x{{"slope", im.slope}};
        if (!im.contracted) x["target"] = flag_str(im.target);
        j["flag_map"][flag_str(f)] = x;
    }
    return j;
}

HarmonicMap harmonic_map_from_json(const json& j) {
    HarmonicMap m;
    m.source = curve_from_json(field(j, "source", "lift"));
    m.target = curve_from_json(field(j, "target", "lift"));
    for (auto& [k, v] : object_of(field(j, "vertex_map", "lift"), "vertex_map").items())
        m.vmap[key_int(k, "vertex_map")] = (int)int_of(v, "vertex_map");
    for (auto& [k, v] : object_of(field(j, "flag_map", "lift"), "flag_map").items()) {
        FlagImage im;
        im.slope = (long)int_of(field(v, "slope", "flag_map " + k), "flag_map slope");
        if (v.contains("target")) {
            im.contracted = false;
            im.target = flag_of(v["target"].get<std::string>(), "flag_map target");
        }
        m.fmap[flag_of(k, "flag_map")] = im;
    }
    return m;
}

json to_json(const HModCertificate& c) {
    json j{{"domain_mod", to_json(c.domain_mod)}, {"target_mod", to_json(c.target_mod)}, {"lift", to_json(c.lift)},
           {"witnesses", json::object()}};
    for (auto& [v, w] : c.witnesses) j["witnesses"][std::to_string(v)] = to_json(w);
    if (!c.instance_hash.empty()) j["instance_sha256"] = c.instance_hash;
    return j;
}

HModCertificate certificate_from_json(const json& j) {
    HModCertificate c;
    try {
        c.domain_mod = modification_from_json(field(j, "domain_mod", "certificate"));
        c.target_mod = modification_from_json(field(j, "target_mod", "certificate"));
        c.lift = harmonic_map_from_json(field(j, "lift", "certificate"));
        for (auto& [k, v] : object_of(field(j, "witnesses", "certificate"), "witnesses").items()) {
            HurwitzWitness w;
            w.sigmas = perms_of(field(v, "sigmas", "witness " + k), "sigmas");
            w.taus = perms_of(field(v, "taus", "witness " + k), "taus");
            c.witnesses[key_int(k, "witnesses")] = w;
        }
        if (j.contains("instance_sha256")) c.instance_hash = j["instance_sha256"].get<std::string>();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("certificate: ") + e.what());
    }
    return c;
}

LocalHurwitzProblem hurwitz_problem_from_json(const json& j) {
    int d = (int)int_of(field(j, "degree", "problem"), "degree");
    std::vector<Partition> ps;
    for (auto& p : array_of(field(j, "profiles", "problem"), "profiles")) {
        Partition q;
        for (auto& x : array_of(p, "profile")) q.push_back((int)int_of(x, "profile"));
        ps.push_back(q);
    }
    LocalHurwitzProblem P = LocalHurwitzProblem::make(d, ps);
    auto probs = P.problems();
    if (!probs.empty()) bad("hurwitz problem: " + probs.front());
    return P;
}

json to_json(const HurwitzWitness& w) { return {{"sigmas", perm_list(w.sigmas)}, {"taus", perm_list(w.taus)}}; }

json to_json(const GraphPath& p) {
    json f = json::array();
    for (Flag x : p.flags) f.push_back(flag_str(x));
    return {{"start", to_json(p.start)}, {"end", to_json(p.end)}, {"flags", f}, {"length", format_q(p.length)}};
}

json to_json(const EdgeBound& b) {
    return {{"edge", b.edge}, {"length", format_q(b.length)}, {"bound", format_q(b.bound)}};
}

json to_json(const HypothesisReport& r, bool with_certificate) {
    json j{{"verdict", to_string(r.verdict)}, {"detail", r.detail}, {"bounds", json::array()}};
    for (auto& b : r.bounds) j["bounds"].push_back(to_json(b));
    if (with_certificate && r.certificate) j["certificate"] = to_json(*r.certificate);
    return j;
}

json to_json(const Decision& d) {
    json j{{"verdict", to_string(d.verdict)}, {"route", to_string(d.route)}, {"detail", d.detail}};
    if (d.witness_path) j["witness_path"] = to_json(*d.witness_path);
    if (d.perturbation) {
        json c = json::object();
        for (auto& [e, k] : d.perturbation->edge_coefficients) c[std::to_string(e)] = format_q(k);
        j["perturbation"] = {{"reason", d.perturbation->reason}, {"edge_coefficients", c}};
    }
    if (!d.bounds.empty()) {
        j["bounds"] = json::array();
        for (auto& b : d.bounds) j["bounds"].push_back(to_json(b));
    }
    if (!d.hypotheses.empty()) {
        j["hypotheses"] = json::object();
        for (auto& [name, rep] : d.hypotheses) j["hypotheses"]["theorem_" + name] = to_json(rep);
    }
    return j;
}

json to_json(const MultirankReport& r) {
    json j{{"verdict", to_string(r.verdict)},
           {"conditional", r.conditional},
           {"maximally_degenerate", r.maximally_degenerate},
           {"characters", json::array()}};
    if (r.conditional) j["assumption"] = r.assumption;
    for (auto& c : r.characters) {
        json x = to_json(c.decision);
        x["character"] = c.chi;
        x["degenerate"] = c.degenerate;
        j["characters"].push_back(x);
    }
    return j;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < n; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string canonical(const json& j) { return j.dump(); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace tropical::io
