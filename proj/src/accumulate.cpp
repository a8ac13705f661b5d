#include "hurwitz/accumulate.hpp"

#include <algorithm>

#include "hurwitz/kernels.hpp"

namespace hurwitz {

TripleFilter::TripleFilter(const PartitionTable& table) : d_(table.degree()) {
    const uint32_t cnt = table.layer_count(d_);
    lens_.resize(cnt);
    for (uint32_t i = 0; i < cnt; ++i)
        lens_[i] = table.length(table.global(d_, i));
    trivial_ = table.trivial_index();
}

size_t TripleFilter::compatible_pair_count(uint32_t owner) const {
    size_t n = 0;
    for (uint32_t j = 0; j < lens_.size(); ++j)
        for (uint32_t k = j; k < lens_.size(); ++k)
            n += compatible(owner, j, k);
    return n;
}

size_t TripleFilter::all_pair_count() const {
    const size_t c = lens_.size();
    return c * (c + 1) / 2;
}

Accumulator accumulate(uint32_t owner, const std::vector<std::filesystem::path>& batches,
                       const ModContext& ctx, const TripleFilter& filter, bool filter_pairs) {
    const uint64_t p = ctx.field.p();
    const size_t expected =
        filter_pairs ? filter.compatible_pair_count(owner) : filter.all_pair_count();
    Accumulator acc(owner, expected, p);
    const auto& ops = kernels::dispatch();

    std::vector<uint64_t> prod;
    std::vector<uint64_t> keys;

    for (const auto& path : batches) {
        BatchReader reader(path);
        reader.for_each([&](const OmegaContribution& rec) {
            const auto lo = std::lower_bound(rec.idx.begin(), rec.idx.end(), owner);
            if (lo == rec.idx.end() || *lo != owner)
                return;
            const uint64_t ci = rec.val[size_t(lo - rec.idx.begin())];
            const uint64_t f0 = ctx.field.mul(rec.r, ci);
            const size_t n = rec.idx.size();
            prod.resize(n);
            keys.resize(n);
            for (size_t a = 0; a < n; ++a) {
                const uint32_t j = rec.idx[a];
                const uint64_t g = ctx.field.mul(f0, rec.val[a]);
                const size_t span = n - a;
                ops.scale_mod(rec.val.data() + a, prod.data(), span, g, p);
                ops.cantor_keys(rec.idx.data() + a, keys.data(), span, j);
                if (filter_pairs) {
                    for (size_t b = 0; b < span; ++b)
                        if (filter.compatible(owner, j, rec.idx[a + b]))
                            acc.add(keys[b], prod[b]);
                } else {
                    for (size_t b = 0; b < span; ++b)
                        acc.add(keys[b], prod[b]);
                }
            }
        });
    }
    return acc;
}

std::vector<std::array<uint32_t, 3>> detect_exceptional(uint32_t owner, const Accumulator& acc,
                                                        const TripleFilter& filter) {
    std::vector<std::array<uint32_t, 3>> out;
    const uint32_t cnt = filter.count();
    for (uint32_t j = owner; j < cnt; ++j) {
        for (uint32_t k = j; k < cnt; ++k) {
            if (!filter.compatible(owner, j, k))
                continue;
            const uint64_t* v = acc.find(kernels::cantor_key(j, k));
            if (v == nullptr || *v == 0)
                out.push_back({owner, j, k});
        }
    }
    return out;
}

} // namespace hurwitz
