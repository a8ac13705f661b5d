#include "hurwitz/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hurwitz {

std::vector<std::vector<uint8_t>> partitions_of(unsigned n) {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> cur;
    // Descending first part gives reverse-lex order directly.
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned max_part) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned a = std::min(rem, max_part); a >= 1; --a) {
            cur.push_back(static_cast<uint8_t>(a));
            rec(rem - a, a);
            cur.pop_back();
        }
    };
    rec(n, n == 0 ? 1 : n);
    return out;
}

uint64_t beta_mask_of(std::span<const uint8_t> parts) {
    const size_t len = parts.size();
    uint64_t mask = 0;
    for (size_t i = 0; i < len; ++i)
        mask |= uint64_t(1) << (parts[i] + (len - 1 - i));
    return mask; // smallest bead is the last part >= 1, so bit 0 is clear
}

PartitionTable::PartitionTable(unsigned degree) : d_(degree) {
    if (degree > kMaxDegree)
        throw DegreeTooLarge("partition table: degree " + std::to_string(degree) +
                             " exceeds maximum " + std::to_string(kMaxDegree));
    cum_.assign(d_ + 2, 0);
    std::vector<std::vector<std::vector<uint8_t>>> layers(d_ + 1);
    for (unsigned n = 0; n <= d_; ++n) {
        layers[n] = partitions_of(n);
        cum_[n + 1] = cum_[n] + static_cast<uint32_t>(layers[n].size());
    }
    total_ = cum_[d_ + 1];

    const unsigned width = std::max(1u, d_);
    pool_.assign(size_t(total_) * width, 0);
    lengths_.resize(total_);
    sizes_.resize(total_);
    class_sizes_.resize(total_);
    beta_masks_.resize(total_);

    mpz_class n_fact = 1;
    for (unsigned n = 0; n <= d_; ++n) {
        if (n > 0)
            n_fact *= n;
        for (size_t i = 0; i < layers[n].size(); ++i) {
            const auto& p = layers[n][i];
            const GlobalOffset g = cum_[n] + static_cast<GlobalOffset>(i);
            std::copy(p.begin(), p.end(), pool_.begin() + size_t(g) * width);
            lengths_[g] = static_cast<uint8_t>(p.size());
            sizes_[g] = static_cast<uint8_t>(n);
            beta_masks_[g] = beta_mask_of(p);

            // z_nu = prod over part values k of k^{m_k} * m_k!
            mpz_class z = 1;
            unsigned run = 0;
            for (size_t j = 0; j < p.size(); ++j) {
                ++run;
                z *= p[j] * run;
                if (j + 1 == p.size() || p[j + 1] != p[j])
                    run = 0;
            }
            class_sizes_[g] = n_fact / z;
        }
    }
    build_products();
}

uint32_t PartitionTable::layer_count(unsigned n) const {
    if (n > d_)
        throw std::out_of_range("partition layer " + std::to_string(n) +
                                " out of range (degree " + std::to_string(d_) + ")");
    return cum_[n + 1] - cum_[n];
}

GlobalOffset PartitionTable::layer_offset(unsigned n) const {
    if (n > d_ + 1)
        throw std::out_of_range("partition layer out of range");
    return cum_[n];
}

GlobalOffset PartitionTable::global(unsigned n, PartIndex i) const {
    if (i >= layer_count(n))
        throw std::out_of_range("partition index out of range");
    return cum_[n] + i;
}

std::span<const uint8_t> PartitionTable::parts(GlobalOffset g) const {
    const unsigned width = std::max(1u, d_);
    return {pool_.data() + size_t(g) * width, lengths_[g]};
}

PartitionView PartitionTable::view(GlobalOffset g) const {
    return {parts(g), sizes_[g], lengths_[g], local_index(g), g};
}

GlobalOffset PartitionTable::lookup(std::span<const uint8_t> p) const {
    unsigned sum = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0 || (i > 0 && p[i] > p[i - 1]))
            throw std::invalid_argument("partition lookup: parts must be non-increasing and positive");
        sum += p[i];
    }
    if (sum > d_)
        throw std::invalid_argument("partition lookup: sum exceeds table degree");
    const GlobalOffset lo = cum_[sum], hi = cum_[sum + 1];
    // Layers are sorted in decreasing lex order of the padded rows.
    const unsigned width = std::max(1u, d_);
    std::vector<uint8_t> key(width, 0);
    std::copy(p.begin(), p.end(), key.begin());
    auto row = [&](GlobalOffset g) { return pool_.data() + size_t(g) * width; };
    GlobalOffset a = lo, b = hi;
    while (a < b) {
        const GlobalOffset mid = a + (b - a) / 2;
        if (std::lexicographical_compare(key.data(), key.data() + width, row(mid), row(mid) + width))
            a = mid + 1; // key < row: key lies further right in decreasing order
        else
            b = mid;
    }
    if (a == hi || !std::equal(key.data(), key.data() + width, row(a)))
        throw std::invalid_argument("partition lookup: no such partition");
    return a;
}

void PartitionTable::build_products() {
    prod_row_start_.assign(total_ + 1, 0);
    for (GlobalOffset g = 0; g < total_; ++g) {
        const unsigned a = sizes_[g];
        const uint32_t row_len = std::min<uint32_t>(g + 1, cum_[d_ - a + 1]);
        prod_row_start_[g + 1] = prod_row_start_[g] + row_len;
    }
    prod_.resize(prod_row_start_[total_]);
    std::vector<uint8_t> merged;
    for (GlobalOffset g = 0; g < total_; ++g) {
        const uint32_t row_len = static_cast<uint32_t>(prod_row_start_[g + 1] - prod_row_start_[g]);
        const auto pa = parts(g);
        for (GlobalOffset h = 0; h < row_len; ++h) {
            const auto pb = parts(h);
            merged.resize(pa.size() + pb.size());
            std::merge(pa.begin(), pa.end(), pb.begin(), pb.end(), merged.begin(),
                       std::greater<uint8_t>());
            prod_[prod_row_start_[g] + h] = lookup(merged);
        }
    }
}

GlobalOffset PartitionTable::product(GlobalOffset a, GlobalOffset b) const {
    if (a < b)
        std::swap(a, b);
    if (unsigned(sizes_[a]) + unsigned(sizes_[b]) > d_)
        throw std::invalid_argument("monomial product exceeds degree");
    return prod_[prod_row_start_[a] + b];
}

} // namespace hurwitz
