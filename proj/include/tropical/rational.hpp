#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tropical {

// exact lengths, values, coordinates; never a double in sight
// expression templates off: plain value semantics, ?: and auto behave
using Q = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                        boost::multiprecision::et_off>;
using Z = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                        boost::multiprecision::et_off>;

// "p/q" or "p" (sign allowed); throws std::invalid_argument
Q parse_q(const std::string& s);
// canonical: lowest terms, "p" when q == 1
std::string format_q(const Q& x);

inline bool is_integer(const Q& x) { return denominator(x) == 1; }

}  // namespace tropical
