#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/engine.hpp"
#include "hurwitz/errors.hpp"

namespace hurwitz {

/* Batch file layout, little-endian throughout:
 *   magic "HWZB" | u32 version | u32 d | u64 prime | u32 batch id | u32 primary count
 * then one record per omega:
 *   u64 r | u32 entry count | count * (u32 index, u64 residue)
 * Indices are layer-local for the d-layer, delta-encoded: the first is
 * absolute, each following stores the gap to its predecessor (ascending).
 */
struct BatchHeader {
    uint32_t version = 1;
    uint32_t d = 0;
    uint64_t prime = 0;
    uint32_t batch_id = 0;
    uint32_t primary_count = 0;
};

class BatchWriter {
public:
    BatchWriter(const std::filesystem::path& path, const BatchHeader& header);
    ~BatchWriter();
    BatchWriter(const BatchWriter&) = delete;
    BatchWriter& operator=(const BatchWriter&) = delete;

    void write_record(const OmegaContribution& rec);
    uint64_t records_written() const { return records_; }
    void close(); // flushes; throws on I/O failure

private:
    FILE* f_;
    std::filesystem::path path_;
    uint64_t records_ = 0;
};

class BatchReader {
public:
    explicit BatchReader(const std::filesystem::path& path);
    ~BatchReader();
    BatchReader(const BatchReader&) = delete;
    BatchReader& operator=(const BatchReader&) = delete;

    const BatchHeader& header() const { return header_; }
    // Throws HeaderMismatch unless the file was produced for (d, prime).
    void require(uint32_t d, uint64_t prime) const;

    // Streams records into reused buffers; deltas already decoded.
    void for_each(const std::function<void(const OmegaContribution&)>& fn);

private:
    FILE* f_;
    std::filesystem::path path_;
    BatchHeader header_;
};

// Computes (r, svec) for every secondary partition of every primary in
// [first, last) of the d-layer, in canonical order, and streams them to
// `path`.  Nothing omega-shaped is retained.  Returns the record count.
uint64_t write_batch(const PartitionTable& table, const ModContext& ctx,
                     PartIndex first, PartIndex last, uint32_t batch_id,
                     const std::filesystem::path& path);

} // namespace hurwitz
