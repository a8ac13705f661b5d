#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/accumulate.hpp"
#include "hurwitz/engine.hpp"

namespace hurwitz {

// M_d = p2(d) * (d!)^8: with common denominator (d!)^4, no coefficient
// numerator of the realizability polynomial exceeds this in absolute value.
mpz_class numerator_bound(unsigned d);

/* The primes certifying that residue-zero means integer-zero: distinct, each
 * above max(d, start-1), product strictly above M_d.
 */
struct BoundCertificate {
    unsigned d = 0;
    mpz_class p2;
    mpz_class bound;
    std::vector<uint64_t> primes;

    bool covers() const; // exact product check
    std::string manifest_text() const;
};

// Consecutive primes from `start` upward (start itself when prime) until the
// product exceeds the bound.
BoundCertificate make_certificate(unsigned d, uint64_t start);
// Explicit list; validated (distinct primes > d, product > bound).
BoundCertificate make_certificate(unsigned d, const std::vector<uint64_t>& primes);

// Swap out a prime that failed downstream (e.g. dimension divisibility):
// removes it, then extends with fresh primes until the product covers again.
void replace_prime(BoundCertificate& cert, uint64_t bad_prime);

enum class Verdict : uint8_t { Pending, ConfirmedExceptional, FalsePositive };

struct CandidateStatus {
    std::array<uint32_t, 3> triple{};
    std::vector<uint64_t> residues; // parallel to the certificate's primes
    Verdict verdict = Verdict::Pending;
    uint64_t rejecting_prime = 0;
};

// Coefficient of each candidate triple mod ctx's prime, by streaming the
// batch files once: sum over records of r * c_i * c_j * c_k.
std::vector<uint64_t> evaluate_candidates(const std::vector<std::array<uint32_t, 3>>& candidates,
                                          const std::vector<std::filesystem::path>& batches,
                                          const ModContext& ctx);

// Unique representative of the residue system in (-prod/2, prod/2].
// Moduli must be pairwise coprime.
mpz_class crt_combine(const std::vector<std::pair<uint64_t, uint64_t>>& residue_prime);

} // namespace hurwitz
