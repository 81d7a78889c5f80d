#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace dirac1c {

/// Arbitrary-precision rational, always kept in canonical form by GMP.
using Rational = mpq_class;

/// Exact integer square root; empty unless n is a perfect square (n >= 0).
inline std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
    if (sgn(n) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact rational square root; empty unless q is a perfect square (q >= 0).
/// In canonical form p/q is a square iff numerator and denominator both are.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    auto num = exact_sqrt(mpz_class(q.get_num()));
    if (!num) return std::nullopt;
    auto den = exact_sqrt(mpz_class(q.get_den()));
    if (!den) return std::nullopt;
    return Rational(*num, *den);
}

/// Parse "p/q" or "p" (base 10). Throws on malformed input or q = 0.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("not a rational: '" + text + "'");
    if (sgn(Rational(r.get_den())) == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace dirac1c
