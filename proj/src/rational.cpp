#include "tropical/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropical {

namespace {
Z parse_int(const std::string& s, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw std::invalid_argument("bad rational: '" + s + "'");
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("bad rational: '" + s + "'");
    return Z(s);
}
}  // namespace

Q parse_q(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Q(parse_int(s, true));
    Z p = parse_int(s.substr(0, slash), true);
    Z q = parse_int(s.substr(slash + 1), false);
    if (q == 0) throw std::invalid_argument("bad rational: zero denominator in '" + s + "'");
    return Q(p, q);
}

std::string format_q(const Q& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace tropical
