#pragma once

// JSON formats.  Rationals are "p/q" strings, flags "elem:side", object keys
// sorted (nlohmann's default map), so dump() is canonical.

#include <stdexcept>

#include <json.hpp>

#include "tropical/multirank.hpp"

namespace tropical::io {

using json = nlohmann::json;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json to_json(const TropicalCurve& c);
TropicalCurve curve_from_json(const json& j);

json to_json(const CurvePoint& p);
CurvePoint point_from_json(const json& j);

// an instance file: curve keys plus "values", "slopes" and optionally "rank"
struct Instance {
    int rank = 1;
    BalancedFn fn;       // rank 1
    TropicalMapRr map;   // rank > 1
};
Instance instance_from_json(const json& j);
json instance_to_json(const BalancedFn& F);
json instance_to_json(const TropicalMapRr& M);
json instance_to_json(const Instance& in);
// SHA-256 of the canonical re-serialisation; layout and key order of the file do not matter
std::string instance_hash(const Instance& in);

json to_json(const Modification& m);
Modification modification_from_json(const json& j);
json to_json(const HarmonicMap& m);
HarmonicMap harmonic_map_from_json(const json& j);
json to_json(const HModCertificate& c);
HModCertificate certificate_from_json(const json& j);

LocalHurwitzProblem hurwitz_problem_from_json(const json& j);
json to_json(const HurwitzWitness& w);

json to_json(const GraphPath& p);
json to_json(const EdgeBound& b);
json to_json(const HypothesisReport& r, bool with_certificate = false);
// verdict report without the certificate body
json to_json(const Decision& d);
json to_json(const MultirankReport& r);

std::string sha256_hex(const std::string& bytes);
std::string canonical(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tropical::io

namespace tropical::io {

// Graphviz renderings: contracted elements dashed, modification parts coloured
std::string to_dot(const BalancedFn& F);
std::string to_dot(const TropicalMapRr& M);
std::string to_dot(const HModCertificate& c);

}  // namespace tropical::io
