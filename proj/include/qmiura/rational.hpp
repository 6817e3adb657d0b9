#pragma once

#include <gmpxx.h>
#include <cassert>
#include <stdexcept>
#include <string>

namespace qmiura {

// Exact rational scalar used everywhere.  No floats anywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

inline Int factorial(long n) {
    assert(n >= 0);
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Double factorial with the convention (-1)!! = 1.
inline Int double_factorial(long n) {
    if (n == -1 || n == 0) return 1;
    if (n < -1) throw std::invalid_argument("double_factorial: n < -1");
    Int r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Int int_pow(const Int& b, long e) {
    assert(e >= 0);
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (b == 0) throw std::domain_error("rat_pow: 0 to negative power");
        return rat_pow(Rat(1) / b, -e);
    }
    Rat r = 1;
    Rat base = b;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// Serialization as "p/q" (or "p" when q == 1), always canonical.
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

} // namespace qmiura
