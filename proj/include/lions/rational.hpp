#pragma once

#include <gmpxx.h>

#include <string>

namespace lions {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "3", "-3/4"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

} // namespace lions
