#include <functional>
#include <sstream>

#include "tropical/io.hpp"

namespace tropical::io {

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// one curve; `style` picks the attributes of each element
template <class Style>
void curve_body(std::ostream& out, const TropicalCurve& c, const std::string& prefix,
                const std::map<int, std::string>& vertex_labels, Style style) {
    for (int v : c.vertices) {
        auto it = vertex_labels.find(v);
        out << "  " << quoted(prefix + std::to_string(v)) << " [label="
            << quoted(it == vertex_labels.end() ? std::to_string(v) : it->second) << "];\n";
    }
    for (auto& [id, e] : c.edges)
        out << "  " << quoted(prefix + std::to_string(e.u)) << " -- " << quoted(prefix + std::to_string(e.v)) << " ["
            << style(id, "e" + std::to_string(id) + " " + format_q(e.len)) << "];\n";
    for (auto& [id, r] : c.rays) {
        std::string end = prefix + "r" + std::to_string(id);
        out << "  " << quoted(end) << " [shape=none,label=\"\",width=0,height=0];\n";
        out << "  " << quoted(prefix + std::to_string(r.base)) << " -- " << quoted(end) << " [dir=forward,"
            << style(id, "r" + std::to_string(id)) << "];\n";
    }
}

std::string fn_dot(const TropicalCurve& c, const std::map<int, std::string>& labels,
                   const std::function<std::string(Flag)>& slope_str, const std::function<bool(int)>& contracted) {
    std::ostringstream out;
    out << "graph instance {\n  node [shape=circle,fontsize=10];\n  edge [fontsize=9];\n";
    curve_body(out, c, "v", labels, [&](int id, const std::string& name) {
        std::string s = "label=" + quoted(name + " s=" + slope_str({id, 0}));
        if (contracted(id)) s += ",style=dashed,color=gray40";
        return s;
    });
    out << "}\n";
    return out.str();
}

}  // namespace

std::string to_dot(const BalancedFn& F) {
    std::map<int, std::string> labels;
    for (auto& [v, x] : F.values) labels[v] = std::to_string(v) + "\\n" + format_q(x);
    return fn_dot(
        F.domain, labels, [&](Flag f) { return std::to_string(F.slope(f)); },
        [&](int id) { return F.contracted(id); });
}

std::string to_dot(const TropicalMapRr& M) {
    auto vec = [](const auto& xs, auto fmt) {
        std::string s = "(";
        for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt(xs[i]);
        return s + ")";
    };
    std::map<int, std::string> labels;
    for (auto& [v, x] : M.values) labels[v] = std::to_string(v) + "\\n" + vec(x, [](const Q& q) { return format_q(q); });
    auto slopes = [&](Flag f) -> IntVec {
        auto it = M.slopes.find(f);
        if (it != M.slopes.end()) return it->second;
        IntVec s(M.r);
        for (int i = 0; i < M.r; ++i) s[i] = coordinate(M, i).slope(f);
        return s;
    };
    return fn_dot(
        M.domain, labels, [&](Flag f) { return vec(slopes(f), [](long x) { return std::to_string(x); }); },
        [&](int id) {
            for (long x : slopes({id, 0}))
                if (x != 0) return false;
            return true;
        });
}

std::string to_dot(const HModCertificate& c) {
    std::ostringstream out;
    out << "graph certificate {\n  node [shape=circle,fontsize=10];\n  edge [fontsize=9];\n";
    auto style_for = [](const Modification& m, const char* added_colour) {
        return [&m, added_colour](int id, const std::string& name) {
            std::string s = "label=" + quoted(name);
            if (!m.in_base(id)) s += std::string(",color=") + added_colour + ",fontcolor=" + added_colour;
            return s;
        };
    };
    out << "  subgraph cluster_domain {\n  label=\"domain modification\";\n";
    curve_body(out, c.domain_mod.ext, "d", {}, style_for(c.domain_mod, "blue"));
    out << "  }\n  subgraph cluster_target {\n  label=\"target modification\";\n";
    curve_body(out, c.target_mod.ext, "t", {}, style_for(c.target_mod, "red"));
    out << "  }\n}\n";
    return out.str();
}

}  // namespace tropical::io
