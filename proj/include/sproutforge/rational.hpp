#ifndef SPROUTFORGE_RATIONAL_HPP
#define SPROUTFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "sproutforge/errors.hpp"

namespace sforge {

// Exact scalar type of the whole engine.  GMP keeps values in lowest terms
// with a positive denominator; every arithmetic result is canonical.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Lowest-terms "p" or "p/q" form; the on-disk coefficient format.
inline std::string rat_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || (s.find('/') != std::string::npos && q.get_den() == 0))
        throw FormatError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace sforge

#endif
