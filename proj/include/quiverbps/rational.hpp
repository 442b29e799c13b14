#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "quiverbps/errors.hpp"

namespace qbps {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int to_integer(const Rat& r) {
    if (!is_integer(r)) throw check_error("expected an integer, got " + r.str());
    return rat_num(r);
}

inline Int int_pow(const Int& base, unsigned exp) {
    Int acc = 1, b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

}  // namespace qbps
