#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/partition.hpp"

namespace hurwitz {

/* Exact characters of S_n by the determinantal rule over Young-subgroup
 * permutation characters: chi^lambda = sum over pi in S_l of sgn(pi) *
 * eta^(lambda_i - i + pi(i)), where eta^mu(C_nu) counts the assignments of
 * the cycles of nu to blocks of sizes mu.  Entirely independent of the
 * rim-hook tables; meant as their cross-check and as the character source of
 * the exact evaluator.  Cost grows with l!, so n is capped at 8.
 */
std::vector<std::vector<long long>> brute_force_characters(unsigned n);

/* Big-rational coefficients of the degree-d realizability polynomial for
 * three branch points, no modular reduction anywhere.  Own secondary
 * enumeration (plain recursion), brute-force characters, map-based monomial
 * products.  Coefficient blow-up caps d at 6.
 */
class ExactEvaluator {
public:
    explicit ExactEvaluator(const PartitionTable& table); // throws DegreeTooLarge past 6
    static constexpr unsigned kMaxExactDegree = 6;

    // d-layer local indices; any triple, compatible or not.
    mpq_class coefficient(uint32_t i, uint32_t j, uint32_t k) const;

    // coefficient * (d!)^4; integrality of the result is the Lemma-bound
    // premise and is reported through *is_integer.
    mpz_class scaled_numerator(uint32_t i, uint32_t j, uint32_t k, bool* is_integer) const;

    size_t omega_count() const { return terms_.size(); }

private:
    struct Term {
        mpq_class r;
        std::map<uint32_t, mpq_class> svec; // d-layer local index -> coefficient
    };
    const PartitionTable& table_;
    unsigned d_;
    std::vector<Term> terms_;
    mpz_class dfact4_;
};

} // namespace hurwitz
