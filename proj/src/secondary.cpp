#include "hurwitz/secondary.hpp"

namespace hurwitz {

SecondaryEnumerator::SecondaryEnumerator(const PartitionTable& table, GlobalOffset primary)
    : table_(table), done_(false) {
    const auto parts = table.parts(primary);
    cur_.resize(parts.size());
    layer_counts_.resize(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        cur_[i] = {parts[i], 0};
        layer_counts_[i] = table.layer_count(parts[i]);
    }
    // The all-zeros odometer state is canonical (indices non-decreasing).
}

void SecondaryEnumerator::advance() {
    // Bump the last position that can still move; positions after it restart
    // at the lowest index their left neighbour allows.
    for (size_t i = cur_.size(); i-- > 0;) {
        if (cur_[i].index + 1 < layer_counts_[i]) {
            ++cur_[i].index;
            for (size_t j = i + 1; j < cur_.size(); ++j)
                cur_[j].index = (cur_[j].size == cur_[j - 1].size) ? cur_[j - 1].index : 0;
            return;
        }
    }
    done_ = true;
}

void for_each_secondary(const PartitionTable& table, GlobalOffset primary,
                        const std::function<void(const SecondaryPartition&)>& fn) {
    for (SecondaryEnumerator e(table, primary); !e.done(); e.advance())
        fn(e.current());
}

mpz_class secondary_count_of(const PartitionTable& table, GlobalOffset primary) {
    const auto parts = table.parts(primary);
    mpz_class total = 1;
    size_t i = 0;
    while (i < parts.size()) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i])
            ++j;
        const unsigned long m = j - i;
        const unsigned long p_s = table.layer_count(parts[i]);
        // multisets of size m from p(s) choices: C(p(s)+m-1, m)
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), p_s + m - 1, m);
        total *= binom;
        i = j;
    }
    return total;
}

mpz_class count_secondary(unsigned d) {
    std::vector<mpz_class> ways(d + 1, 0);
    ways[0] = 1;
    for (unsigned s = 1; s <= d; ++s) {
        const size_t items = partitions_of(s).size();
        for (size_t it = 0; it < items; ++it)
            for (unsigned j = s; j <= d; ++j)
                ways[j] += ways[j - s];
    }
    return ways[d];
}

} // namespace hurwitz
