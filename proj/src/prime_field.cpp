#include "hurwitz/prime_field.hpp"

#include <string>

namespace hurwitz {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2)
        return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0)
            return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

uint64_t next_prime_after(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2)
        return 2;
    if ((c & 1) == 0)
        ++c;
    while (!is_prime_u64(c))
        c += 2;
    return c;
}

PrimeField::PrimeField(uint64_t p, unsigned degree) : p_(p) {
    if (p <= degree)
        throw std::invalid_argument("prime " + std::to_string(p) +
                                    " must exceed the degree " + std::to_string(degree));
    if (p >= (uint64_t(1) << 31))
        throw std::invalid_argument("prime " + std::to_string(p) + " must be below 2^31");
    if (p == 2 || !is_prime_u64(p))
        throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

uint64_t PrimeField::pow(uint64_t base, uint64_t exp) const {
    return powmod_u64(base % p_, exp, p_);
}

uint64_t PrimeField::inv(uint64_t x) const {
    x %= p_;
    if (x == 0)
        throw ZeroInverse("inverse of zero mod " + std::to_string(p_));
    // Extended Euclid; p prime so gcd is 1.
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(p_), new_r = static_cast<int64_t>(x);
    while (new_r != 0) {
        const int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p_)) : static_cast<uint64_t>(t);
}

uint64_t PrimeField::reduce(const mpz_class& v) const {
    mpz_class m = v % mpz_class(static_cast<unsigned long>(p_));
    if (m < 0)
        m += static_cast<unsigned long>(p_);
    return m.get_ui();
}

FactorialTables::FactorialTables(const PrimeField& field, unsigned d)
    : fact(d + 1), inv_fact(d + 1) {
    fact[0] = 1;
    for (unsigned n = 1; n <= d; ++n)
        fact[n] = field.mul(fact[n - 1], n);
    inv_fact[d] = field.inv(fact[d]);
    for (unsigned n = d; n > 0; --n)
        inv_fact[n - 1] = field.mul(inv_fact[n], n);
}

} // namespace hurwitz
