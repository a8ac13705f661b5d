#include "hurwitz/engine.hpp"

#include <algorithm>

#include "hurwitz/kernels.hpp"

namespace hurwitz {

ModContext::ModContext(const PartitionTable& table, uint64_t p)
    : degree(table.degree()), field(p, table.degree()), fact(field, table.degree()),
      chars(table, field) {
    const unsigned d = table.degree();
    class_mod.resize(table.total());
    for (GlobalOffset g = 0; g < table.total(); ++g)
        class_mod[g] = field.reduce(table.class_size(g));
    scoeff.resize(d + 1);
    for (unsigned n = 0; n <= d; ++n) {
        const uint32_t cnt = table.layer_count(n);
        scoeff[n].resize(size_t(cnt) * cnt);
        for (PartIndex mu = 0; mu < cnt; ++mu) {
            const uint64_t di = chars.dim_inv(n, mu);
            for (PartIndex nu = 0; nu < cnt; ++nu) {
                const uint64_t c = field.mul(chars.chi(n, mu, nu),
                                             class_mod[table.global(n, nu)]);
                scoeff[n][size_t(mu) * cnt + nu] = field.mul(c, di);
            }
        }
    }
}

uint64_t compute_r(const SecondaryPartition& omega, const ModContext& ctx) {
    const auto& field = ctx.field;
    const size_t n = omega.size();
    uint64_t r = ctx.fact.fact[n - 1]; // (-1)^{n-1} n!/n = (n-1)!
    if ((n - 1) & 1)
        r = field.neg(r);
    size_t i = 0;
    while (i < n) { // multiplicities of equal components
        size_t j = i;
        while (j < n && omega[j] == omega[i])
            ++j;
        r = field.mul(r, ctx.fact.inv_fact[j - i]);
        i = j;
    }
    for (const auto& c : omega) {
        const uint64_t t = field.mul(ctx.chars.dim(c.size, c.index), ctx.fact.inv_fact[c.size]);
        r = field.mul(r, field.mul(t, t));
    }
    return r;
}

void expand_s(const SecondaryPartition& omega, const ModContext& ctx,
              const PartitionTable& table, OmegaContribution& out) {
    const auto& field = ctx.field;
    const auto& ops = kernels::dispatch();

    // Work in global offsets while partial degrees vary.
    std::vector<uint32_t> cur_idx{0}; // empty partition
    std::vector<uint64_t> cur_val{1};
    std::vector<uint32_t> nxt_idx;
    std::vector<uint64_t> nxt_val;
    std::vector<uint64_t> scaled;
    std::vector<std::pair<uint32_t, uint64_t>> merge;

    for (const auto& comp : omega) {
        const uint32_t cnt = table.layer_count(comp.size);
        const uint64_t* coeffs = ctx.scoeff[comp.size].data() + size_t(comp.index) * cnt;
        const GlobalOffset base = table.layer_offset(comp.size);
        nxt_idx.clear();
        nxt_val.clear();
        scaled.resize(cur_val.size());
        for (PartIndex nu = 0; nu < cnt; ++nu) {
            if (coeffs[nu] == 0)
                continue;
            ops.scale_mod(cur_val.data(), scaled.data(), cur_val.size(), coeffs[nu], field.p());
            const GlobalOffset fg = base + nu;
            for (size_t t = 0; t < cur_idx.size(); ++t) {
                nxt_idx.push_back(table.product(fg, cur_idx[t]));
                nxt_val.push_back(scaled[t]);
            }
        }
        // Normalize: combine equal monomials, drop zeros.
        merge.resize(nxt_idx.size());
        for (size_t t = 0; t < nxt_idx.size(); ++t)
            merge[t] = {nxt_idx[t], nxt_val[t]};
        std::sort(merge.begin(), merge.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        cur_idx.clear();
        cur_val.clear();
        for (size_t t = 0; t < merge.size();) {
            uint64_t sum = 0;
            const uint32_t key = merge[t].first;
            while (t < merge.size() && merge[t].first == key) {
                sum = field.add(sum, merge[t].second);
                ++t;
            }
            if (sum != 0) {
                cur_idx.push_back(key);
                cur_val.push_back(sum);
            }
        }
    }

    const GlobalOffset dbase = table.layer_offset(table.degree());
    out.idx.resize(cur_idx.size());
    out.val = std::move(cur_val);
    for (size_t t = 0; t < cur_idx.size(); ++t)
        out.idx[t] = cur_idx[t] - dbase;
}

} // namespace hurwitz
