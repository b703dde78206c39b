// tropical: decide, certify and verify realizability of tropical maps

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "tropical/io.hpp"

using namespace tropical;
using io::json;

namespace {

constexpr int EXIT_INPUT = 3;

struct Options {
    int max_degree = 8;
    int search_depth = 3;
    int rank = 0;  // 0: take it from the instance
    std::string basis;
    bool probe = false;
};

std::vector<IntVec> parse_basis(const std::string& s) {
    std::vector<IntVec> rows;
    if (s.empty()) return rows;
    std::stringstream rs(s);
    std::string row;
    while (std::getline(rs, row, ';')) {
        IntVec r;
        std::stringstream cs(row);
        std::string x;
        while (std::getline(cs, x, ',')) {
            try {
                r.push_back(std::stol(x));
            } catch (const std::exception&) {
                throw io::InputError("bad basis entry \"" + x + "\"");
            }
        }
        rows.push_back(r);
    }
    return rows;
}

io::Instance load(const std::string& path, const Options& o) {
    io::Instance in = io::instance_from_json(io::read_json_file(path));
    if (o.rank && o.rank != in.rank)
        throw io::InputError("--rank " + std::to_string(o.rank) + " but the instance has rank " + std::to_string(in.rank));
    return in;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int check(const std::string& path, const Options& o, const std::string& cert_out) {
    io::Instance in = load(path, o);
    if (in.rank > 1) {
        MultirankReport rep = coordinatewise_report(in.map, parse_basis(o.basis), o.max_degree);
        json j = io::to_json(rep);
        j["instance_sha256"] = io::instance_hash(in);
        print(j);
        return exit_code(rep.verdict);
    }
    Decision d = decide(in.fn, o.max_degree);
    json j = io::to_json(d);
    j["instance_sha256"] = io::instance_hash(in);
    if (o.probe && d.verdict == Verdict::NOT_REALIZABLE && d.route == Route::GENUS1) {
        ProbeResult p = necessity_probe(in.fn, o.search_depth, std::min(o.max_degree, 4));
        j["probe"] = {{"found", p.found}, {"candidates_tried", p.candidates_tried}, {"depth", o.search_depth}};
    }
    if (!cert_out.empty() && d.certificate) {
        HModCertificate c = *d.certificate;
        c.instance_hash = io::instance_hash(in);
        io::write_text_file(cert_out, io::canonical(io::to_json(c)) + "\n");
        j["certificate_file"] = cert_out;
    }
    print(j);
    return exit_code(d.verdict);
}

int verify(const std::string& inst_path, const std::string& cert_path, const Options& o) {
    io::Instance in = load(inst_path, o);
    if (in.rank > 1) throw io::InputError("certificates exist only for rank 1 instances");
    HModCertificate c = io::certificate_from_json(io::read_json_file(cert_path));
    std::string h = io::instance_hash(in);
    json j;
    if (c.instance_hash != h) {
        j = {{"verdict", "REJECT"},
             {"diagnostic", "base mismatch: certificate references instance " +
                                (c.instance_hash.empty() ? std::string("(none)") : c.instance_hash) + ", got " + h}};
        print(j);
        return 1;
    }
    CertVerdict v = verify_certificate(in.fn, c, o.max_degree);
    j = {{"verdict", v.accept ? "ACCEPT" : "REJECT"}, {"instance_sha256", h}};
    if (!v.accept) {
        j["diagnostic"] = v.diagnostic;
        j["all"] = v.all;
    }
    print(j);
    return v.accept ? 0 : 1;
}

int hurwitz(const std::string& path, const Options& o) {
    LocalHurwitzProblem p = io::hurwitz_problem_from_json(io::read_json_file(path));
    try {
        auto w = solve(p, o.max_degree);
        if (!w) {
            print({{"result", "UNSOLVABLE"}});
            return 1;
        }
        print({{"result", "SOLVABLE"}, {"witness", io::to_json(*w)}});
        return 0;
    } catch (const DegreeBoundExceeded& e) {
        print({{"result", "LIMIT"}, {"detail", e.what()}});
        return 2;
    }
}

int export_dot(const std::string& path, const std::string& out, const Options& o) {
    json j = io::read_json_file(path);
    std::string dot;
    if (j.contains("domain_mod")) {
        dot = io::to_dot(io::certificate_from_json(j));
    } else {
        io::Instance in = load(path, o);
        dot = in.rank > 1 ? io::to_dot(in.map) : io::to_dot(in.fn);
    }
    if (out.empty() || out == "-")
        std::cout << dot;
    else
        io::write_text_file(out, dot);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Realizability of tropical maps: decide, certify, verify"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--max-degree", o.max_degree, "bound on local degrees (Hurwitz search)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--search-depth", o.search_depth, "depth of the necessity probe")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--rank", o.rank, "expected target dimension r")->check(CLI::PositiveNumber);

    std::string input, cert, out;
    auto* c_check = app.add_subcommand("check", "print the verdict for an instance");
    c_check->add_option("instance", input, "instance JSON")->required();
    c_check->add_option("--basis", o.basis, "unimodular basis for rank > 1, rows as \"1,0;0,1\"");
    c_check->add_flag("--probe", o.probe, "on NOT_REALIZABLE, also run the bounded necessity probe");

    auto* c_cert = app.add_subcommand("certify", "decide and write a certificate when realizable");
    c_cert->add_option("instance", input, "instance JSON")->required();
    c_cert->add_option("-o,--output", out, "certificate path (default: <instance>.cert.json)");
    c_cert->add_option("--basis", o.basis, "unimodular basis for rank > 1");

    auto* c_verify = app.add_subcommand("verify-cert", "check a certificate against an instance");
    c_verify->add_option("instance", input, "instance JSON")->required();
    c_verify->add_option("certificate", cert, "certificate JSON")->required();

    auto* c_hur = app.add_subcommand("hurwitz", "solve a local Hurwitz problem");
    c_hur->add_option("problem", input, "{\"degree\":d,\"profiles\":[[...],...]}")->required();

    auto* c_exp = app.add_subcommand("export", "render an instance or certificate");
    c_exp->add_option("input", input, "instance or certificate JSON")->required();
    std::string format = "dot";
    c_exp->add_option("--format", format, "output format")->check(CLI::IsMember({"dot"}));
    c_exp->add_option("-o,--output", out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_INPUT;
    }

    try {
        if (*c_check) return check(input, o, "");
        if (*c_cert) {
            if (out.empty()) {
                std::filesystem::path p(input);
                out = (p.parent_path() / (p.stem().string() + ".cert.json")).string();
            }
            return check(input, o, out);
        }
        if (*c_verify) return verify(input, cert, o);
        if (*c_hur) return hurwitz(input, o);
        if (*c_exp) return export_dot(input, out, o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return EXIT_INPUT;
}
