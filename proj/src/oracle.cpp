#include "hurwitz/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hurwitz/accumulate.hpp"

namespace hurwitz {

namespace {

struct UnionFind {
    std::array<uint8_t, 8> parent;
    void init(unsigned n) { std::iota(parent.begin(), parent.begin() + n, 0); }
    uint8_t find(uint8_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint8_t a, uint8_t b) { parent[find(a)] = find(b); }
};

} // namespace

Oracle::Oracle(const PartitionTable& table) : table_(table), d_(table.degree()) {
    if (d_ > kMaxOracleDegree)
        throw DegreeTooLarge("oracle degree " + std::to_string(d_) + " exceeds " +
                             std::to_string(kMaxOracleDegree));
    classes_.resize(table.layer_count(d_));
    std::vector<uint8_t> perm(d_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        classes_[cycle_type_of(perm)].push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

uint32_t Oracle::cycle_type_of(const std::vector<uint8_t>& perm) const {
    std::vector<uint8_t> lens;
    uint8_t seen = 0; // bitmask, d <= 8
    for (unsigned s = 0; s < d_; ++s) {
        if (seen & (1u << s))
            continue;
        uint8_t len = 0;
        for (unsigned x = s; !(seen & (1u << x)); x = perm[x]) {
            seen |= 1u << x;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return table_.local_index(table_.lookup(lens));
}

bool Oracle::realizable(uint32_t i, uint32_t j, uint32_t k, PermutationTriple* witness) const {
    return realizable(i, j, k, true, witness);
}

bool Oracle::realizable(uint32_t i, uint32_t j, uint32_t k, bool fix_first,
                        PermutationTriple* witness) const {
    const auto& reps = classes_[i];
    const auto& cls = classes_[j];
    const size_t rep_count = fix_first ? 1 : reps.size();
    std::vector<uint8_t> prod(d_), inv(d_);
    for (size_t ri = 0; ri < rep_count; ++ri) {
        const auto& s1 = reps[ri];
        for (const auto& s2 : cls) {
            for (unsigned x = 0; x < d_; ++x)
                prod[x] = s1[s2[x]];
            if (cycle_type_of(prod) != k)
                continue;
            UnionFind uf;
            uf.init(d_);
            for (unsigned x = 0; x < d_; ++x) {
                uf.unite(x, s1[x]);
                uf.unite(x, s2[x]);
            }
            bool transitive = true;
            for (unsigned x = 1; x < d_ && transitive; ++x)
                transitive = uf.find(x) == uf.find(0);
            if (!transitive)
                continue;
            if (witness) {
                witness->s1 = s1;
                witness->s2 = s2;
                for (unsigned x = 0; x < d_; ++x)
                    inv[prod[x]] = x;
                witness->s3 = inv;
            }
            return true;
        }
    }
    return false;
}

std::vector<std::array<uint32_t, 3>> Oracle::exceptional_set() const {
    TripleFilter filter(table_);
    std::vector<std::array<uint32_t, 3>> out;
    const uint32_t cnt = filter.count();
    for (uint32_t i = 0; i < cnt; ++i)
        for (uint32_t j = i; j < cnt; ++j)
            for (uint32_t k = j; k < cnt; ++k)
                if (filter.compatible(i, j, k) && !realizable(i, j, k))
                    out.push_back({i, j, k});
    return out;
}

} // namespace hurwitz
