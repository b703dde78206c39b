#pragma once

#include <initializer_list>
#include <tuple>

#include "tropical/construct.hpp"
#include "tropical/modify.hpp"

namespace testing_support {

using namespace tropical;

struct E {
    int id, u, v;
    const char* len;
};
struct R {
    int id, base;
    long slope;
};

// curve plus function from vertex values; ray slopes given
inline BalancedFn fn(std::initializer_list<std::pair<int, const char*>> vals, std::initializer_list<E> edges,
                     std::initializer_list<R> rays) {
    TropicalCurve c;
    std::map<int, Q> values;
    std::map<int, long> rs;
    for (auto [v, x] : vals) {
        c.add_vertex(v);
        values[v] = parse_q(x);
    }
    for (auto& e : edges) c.add_edge(e.id, e.u, e.v, parse_q(e.len));
    for (auto& r : rays) {
        c.add_ray(r.id, r.base);
        rs[r.id] = r.slope;
    }
    return from_values(c, values, rs);
}

inline bool accepted(const BalancedFn& F, const HModCertificate& c) {
    auto v = verify_certificate(F, c);
    if (!v.accept) MESSAGE("verifier: " << v.diagnostic);
    return v.accept;
}

}  // namespace testing_support
