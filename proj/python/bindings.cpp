// JSON-in, JSON-out bindings; the Python side parses and wraps.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropical/io.hpp"

namespace py = pybind11;
using namespace tropical;
using io::json;

namespace {

io::Instance parse_instance(const std::string& s) { return io::instance_from_json(json::parse(s)); }

// verdict report, and the certificate (canonical JSON) when one exists
std::pair<std::string, std::optional<std::string>> check(const std::string& instance, int max_degree,
                                                         const std::vector<IntVec>& basis) {
    io::Instance in = parse_instance(instance);
    std::string h = io::instance_hash(in);
    if (in.rank > 1) {
        MultirankReport rep = coordinatewise_report(in.map, basis, max_degree);
        json j = io::to_json(rep);
        j["instance_sha256"] = h;
        j["exit_code"] = exit_code(rep.verdict);
        return {j.dump(), std::nullopt};
    }
    Decision d;
    {
        py::gil_scoped_release nogil;
        d = decide(in.fn, max_degree);
    }
    json j = io::to_json(d);
    j["instance_sha256"] = h;
    j["exit_code"] = exit_code(d.verdict);
    std::optional<std::string> cert;
    if (d.certificate) {
        HModCertificate c = *d.certificate;
        c.instance_hash = h;
        cert = io::canonical(io::to_json(c));
    }
    return {j.dump(), cert};
}

std::string verify(const std::string& instance, const std::string& certificate, int max_degree) {
    io::Instance in = parse_instance(instance);
    if (in.rank > 1) throw io::InputError("certificates exist only for rank 1 instances");
    HModCertificate c = io::certificate_from_json(json::parse(certificate));
    std::string h = io::instance_hash(in);
    if (c.instance_hash != h)
        return json{{"verdict", "REJECT"},
                    {"diagnostic", "base mismatch: certificate references instance " + c.instance_hash + ", got " + h}}
            .dump();
    CertVerdict v = verify_certificate(in.fn, c, max_degree);
    json j = {{"verdict", v.accept ? "ACCEPT" : "REJECT"}, {"instance_sha256", h}};
    if (!v.accept) {
        j["diagnostic"] = v.diagnostic;
        j["all"] = v.all;
    }
    return j.dump();
}

std::string hurwitz(const std::string& problem, int max_degree) {
    LocalHurwitzProblem p = io::hurwitz_problem_from_json(json::parse(problem));
    try {
        auto w = solve(p, max_degree);
        if (!w) return json{{"result", "UNSOLVABLE"}}.dump();
        return json{{"result", "SOLVABLE"}, {"witness", io::to_json(*w)}}.dump();
    } catch (const DegreeBoundExceeded& e) {
        return json{{"result", "LIMIT"}, {"detail", e.what()}}.dump();
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "realizability of tropical maps (JSON interface)";
    py::register_exception<json::exception>(m, "JSONError", PyExc_ValueError);
    m.def("check", &check, py::arg("instance"), py::arg("max_degree") = 8, py::arg("basis") = std::vector<IntVec>{});
    m.def("verify", &verify, py::arg("instance"), py::arg("certificate"), py::arg("max_degree") = 8);
    m.def("hurwitz", &hurwitz, py::arg("problem"), py::arg("max_degree") = 8);
    m.def("instance_hash", [](const std::string& s) { return io::instance_hash(parse_instance(s)); });
    m.def("to_dot", [](const std::string& s) {
        json j = json::parse(s);
        if (j.contains("domain_mod")) return io::to_dot(io::certificate_from_json(j));
        io::Instance in = io::instance_from_json(j);
        return in.rank > 1 ? io::to_dot(in.map) : io::to_dot(in.fn);
    });
}
