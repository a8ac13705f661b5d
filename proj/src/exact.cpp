#include "hurwitz/exact.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace hurwitz {

namespace {

// eta^blocks(C_nu): ways to assign each cycle of nu to a block so that every
// block's lengths sum to its size.  Cycles are distinct point sets, hence
// distinguishable.
long long count_assignments(const std::vector<unsigned>& cycles, std::vector<unsigned>& room,
                            size_t at) {
    if (at == cycles.size())
        return 1;
    long long total = 0;
    for (size_t b = 0; b < room.size(); ++b) {
        if (room[b] < cycles[at])
            continue;
        room[b] -= cycles[at];
        total += count_assignments(cycles, room, at + 1);
        room[b] += cycles[at];
    }
    return total;
}

} // namespace

std::vector<std::vector<long long>> brute_force_characters(unsigned n) {
    if (n > 8)
        throw DegreeTooLarge("brute-force characters capped at n = 8, got " + std::to_string(n));
    const auto shapes = partitions_of(n);
    const size_t cnt = shapes.size();

    // eta[mu][nu] for all partition pairs; blocks of size zero dropped.
    std::map<std::vector<unsigned>, std::vector<long long>> eta;
    auto eta_row = [&](std::vector<unsigned> blocks) -> const std::vector<long long>& {
        std::sort(blocks.rbegin(), blocks.rend());
        auto it = eta.find(blocks);
        if (it != eta.end())
            return it->second;
        std::vector<long long> row(cnt);
        for (size_t v = 0; v < cnt; ++v) {
            std::vector<unsigned> cycles(shapes[v].begin(), shapes[v].end());
            std::vector<unsigned> room = blocks;
            row[v] = count_assignments(cycles, room, 0);
        }
        return eta.emplace(std::move(blocks), std::move(row)).first->second;
    };

    std::vector<std::vector<long long>> chi(cnt, std::vector<long long>(cnt, 0));
    for (size_t l = 0; l < cnt; ++l) {
        const auto& lambda = shapes[l];
        const int len = static_cast<int>(lambda.size());
        std::vector<int> pi(len);
        std::iota(pi.begin(), pi.end(), 0);
        do {
            // sign of pi and the composition lambda_i - i + pi(i)
            int inversions = 0;
            for (int a = 0; a < len; ++a)
                for (int b = a + 1; b < len; ++b)
                    inversions += pi[a] > pi[b];
            std::vector<unsigned> blocks;
            bool valid = true;
            for (int i = 0; i < len && valid; ++i) {
                const int v = int(lambda[i]) - i + pi[i];
                if (v < 0)
                    valid = false;
                else if (v > 0)
                    blocks.push_back(static_cast<unsigned>(v));
            }
            if (!valid)
                continue;
            const auto& row = eta_row(blocks);
            for (size_t v = 0; v < cnt; ++v)
                chi[l][v] += (inversions & 1) ? -row[v] : row[v];
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
    return chi;
}

ExactEvaluator::ExactEvaluator(const PartitionTable& table) : table_(table), d_(table.degree()) {
    if (d_ > kMaxExactDegree)
        throw DegreeTooLarge("exact evaluation capped at d = " +
                             std::to_string(kMaxExactDegree));
    mpz_class dfact;
    mpz_fac_ui(dfact.get_mpz_t(), d_);
    mpz_pow_ui(dfact4_.get_mpz_t(), dfact.get_mpz_t(), 4);

    std::vector<std::vector<std::vector<long long>>> chars(d_ + 1);
    std::vector<mpz_class> factorial(d_ + 1);
    factorial[0] = 1;
    for (unsigned n = 0; n <= d_; ++n) {
        chars[n] = brute_force_characters(n);
        if (n > 0)
            factorial[n] = factorial[n - 1] * n;
    }

    // Recursive enumeration of secondary partitions: choose a multiset of
    // (size, shape index) pairs, sizes descending, indices non-decreasing
    // within equal sizes.
    std::vector<std::pair<unsigned, uint32_t>> omega;
    std::function<void()> emit = [&]() {
        Term term;
        const size_t n = omega.size();
        // r = (-1)^{n-1} (n-1)! / prod(mult!) * prod (dim/size!)^2
        mpz_class nm1_fact;
        mpz_fac_ui(nm1_fact.get_mpz_t(), static_cast<unsigned long>(n - 1));
        mpq_class r(nm1_fact);
        if ((n - 1) & 1)
            r = -r;
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j < n && omega[j] == omega[i])
                ++j;
            mpz_class mult_fact;
            mpz_fac_ui(mult_fact.get_mpz_t(), static_cast<unsigned long>(j - i));
            r /= mpq_class(mult_fact);
            i = j;
        }
        for (const auto& [sz, shape] : omega) {
            const long dim = static_cast<long>(chars[sz][shape].back()); // identity class last
            mpq_class f(dim);
            f /= mpq_class(factorial[sz]);
            r *= f * f;
        }
        term.r = r;

        // svec: product of the per-component generating polynomials, keyed by
        // sorted part lists.
        std::map<std::vector<uint8_t>, mpq_class> poly;
        poly[{}] = 1;
        for (const auto& [sz, shape] : omega) {
            const auto nus = partitions_of(sz);
            const long long dim = chars[sz][shape].back();
            std::map<std::vector<uint8_t>, mpq_class> next;
            for (size_t v = 0; v < nus.size(); ++v) {
                const long long chv = chars[sz][shape][v];
                if (chv == 0)
                    continue;
                // |C_nu| = sz! / z_nu
                mpz_class z = 1;
                unsigned run = 0;
                for (size_t q = 0; q < nus[v].size(); ++q) {
                    ++run;
                    z *= nus[v][q] * run;
                    if (q + 1 == nus[v].size() || nus[v][q + 1] != nus[v][q])
                        run = 0;
                }
                mpq_class coeff(mpz_class(static_cast<long>(chv)) * (factorial[sz] / z));
                coeff /= mpz_class(static_cast<long>(dim));
                for (const auto& [mono, c] : poly) {
                    std::vector<uint8_t> merged(mono.size() + nus[v].size());
                    std::merge(mono.begin(), mono.end(), nus[v].begin(), nus[v].end(),
                               merged.begin(), std::greater<uint8_t>());
                    next[merged] += coeff * c;
                }
            }
            poly = std::move(next);
        }
        for (const auto& [mono, c] : poly) {
            if (c == 0)
                continue;
            term.svec[table_.local_index(table_.lookup(mono))] = c;
        }
        terms_.push_back(std::move(term));
    };

    std::function<void(unsigned, unsigned, uint32_t)> choose =
        [&](unsigned remaining, unsigned max_size, uint32_t min_idx) {
            if (remaining == 0) {
                emit();
                return;
            }
            for (unsigned sz = std::min(remaining, max_size); sz >= 1; --sz) {
                const uint32_t shapes_here = static_cast<uint32_t>(chars[sz].size());
                const uint32_t start = (sz == max_size) ? min_idx : 0;
                for (uint32_t idx = start; idx < shapes_here; ++idx) {
                    omega.emplace_back(sz, idx);
                    choose(remaining - sz, sz, idx);
                    omega.pop_back();
                }
            }
        };
    choose(d_, d_, 0);
}

mpq_class ExactEvaluator::coefficient(uint32_t i, uint32_t j, uint32_t k) const {
    mpq_class sum(0);
    for (const auto& term : terms_) {
        const auto ci = term.svec.find(i);
        if (ci == term.svec.end())
            continue;
        const auto cj = term.svec.find(j);
        if (cj == term.svec.end())
            continue;
        const auto ck = term.svec.find(k);
        if (ck == term.svec.end())
            continue;
        sum += term.r * ci->second * cj->second * ck->second;
    }
    return sum;
}

mpz_class ExactEvaluator::scaled_numerator(uint32_t i, uint32_t j, uint32_t k,
                                           bool* is_integer) const {
    mpq_class scaled = coefficient(i, j, k) * mpq_class(dfact4_);
    scaled.canonicalize();
    if (is_integer)
        *is_integer = scaled.get_den() == 1;
    return scaled.get_num();
}

} // namespace hurwitz
