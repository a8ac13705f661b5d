#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/errors.hpp"

namespace hurwitz {

// Deterministic for every 64-bit input (fixed Miller-Rabin base set).
bool is_prime_u64(uint64_t n);
uint64_t next_prime_after(uint64_t n);

/* Arithmetic modulo an odd prime p with d < p < 2^31.  The lower bound keeps
 * 1!..d! invertible; the upper bound keeps every product of two residues in
 * 64 bits and matches the vector kernels' contract.  Residues are held as
 * 64-bit values in [0, p).
 */
class PrimeField {
public:
    PrimeField(uint64_t p, unsigned degree);

    uint64_t p() const { return p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        const uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p_; }
    uint64_t pow(uint64_t base, uint64_t exp) const;
    uint64_t inv(uint64_t x) const; // throws ZeroInverse on x == 0

    uint64_t reduce(const mpz_class& v) const;

private:
    uint64_t p_;
};

struct FactorialTables {
    std::vector<uint64_t> fact;     // n! mod p, 0 <= n <= d
    std::vector<uint64_t> inv_fact; // (n!)^{-1} mod p

    FactorialTables(const PrimeField& field, unsigned d);
};

} // namespace hurwitz
