#include "hurwitz/batch_io.hpp"

#include <cstring>

namespace hurwitz {

namespace {

constexpr char kMagic[4] = {'H', 'W', 'Z', 'B'};

void put_u32(FILE* f, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    if (fwrite(b, 1, 4, f) != 4)
        throw std::runtime_error("batch write failed");
}

void put_u64(FILE* f, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    if (fwrite(b, 1, 8, f) != 8)
        throw std::runtime_error("batch write failed");
}

bool get_u32(FILE* f, uint32_t* v) {
    unsigned char b[4];
    if (fread(b, 1, 4, f) != 4)
        return false;
    *v = 0;
    for (int i = 0; i < 4; ++i)
        *v |= uint32_t(b[i]) << (8 * i);
    return true;
}

bool get_u64(FILE* f, uint64_t* v) {
    unsigned char b[8];
    if (fread(b, 1, 8, f) != 8)
        return false;
    *v = 0;
    for (int i = 0; i < 8; ++i)
        *v |= uint64_t(b[i]) << (8 * i);
    return true;
}

} // namespace

BatchWriter::BatchWriter(const std::filesystem::path& path, const BatchHeader& h)
    : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (fwrite(kMagic, 1, 4, f_) != 4)
        throw std::runtime_error("batch write failed");
    put_u32(f_, h.version);
    put_u32(f_, h.d);
    put_u64(f_, h.prime);
    put_u32(f_, h.batch_id);
    put_u32(f_, h.primary_count);
}

BatchWriter::~BatchWriter() {
    if (f_)
        std::fclose(f_);
}

void BatchWriter::write_record(const OmegaContribution& rec) {
    put_u64(f_, rec.r);
    put_u32(f_, static_cast<uint32_t>(rec.idx.size()));
    uint32_t prev = 0;
    for (size_t t = 0; t < rec.idx.size(); ++t) {
        put_u32(f_, rec.idx[t] - prev);
        put_u64(f_, rec.val[t]);
        prev = rec.idx[t];
    }
    ++records_;
}

void BatchWriter::close() {
    if (!f_)
        return;
    const bool ok = std::fflush(f_) == 0;
    const bool closed = std::fclose(f_) == 0;
    f_ = nullptr;
    if (!ok || !closed)
        throw std::runtime_error("flush of " + path_.string() + " failed");
}

BatchReader::BatchReader(const std::filesystem::path& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "rb");
    if (!f_)
        throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    if (fread(magic, 1, 4, f_) != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw HeaderMismatch(path.string() + ": not a batch file");
    if (!get_u32(f_, &header_.version) || header_.version != 1)
        throw HeaderMismatch(path.string() + ": unsupported batch version");
    uint32_t d = 0, id = 0, pc = 0;
    uint64_t prime = 0;
    if (!get_u32(f_, &d) || !get_u64(f_, &prime) || !get_u32(f_, &id) || !get_u32(f_, &pc))
        throw HeaderMismatch(path.string() + ": truncated header");
    header_.d = d;
    header_.prime = prime;
    header_.batch_id = id;
    header_.primary_count = pc;
}

BatchReader::~BatchReader() {
    if (f_)
        std::fclose(f_);
}

void BatchReader::require(uint32_t d, uint64_t prime) const {
    if (header_.d != d || header_.prime != prime)
        throw HeaderMismatch(path_.string() + ": built for d=" + std::to_string(header_.d) +
                             " p=" + std::to_string(header_.prime) + ", run expects d=" +
                             std::to_string(d) + " p=" + std::to_string(prime));
}

void BatchReader::for_each(const std::function<void(const OmegaContribution&)>& fn) {
    OmegaContribution rec;
    for (;;) {
        uint64_t r;
        if (!get_u64(f_, &r))
            break; // clean EOF
        uint32_t count;
        if (!get_u32(f_, &count))
            throw std::runtime_error(path_.string() + ": truncated record");
        rec.r = r;
        rec.idx.resize(count);
        rec.val.resize(count);
        uint32_t prev = 0;
        for (uint32_t t = 0; t < count; ++t) {
            uint32_t delta;
            uint64_t v;
            if (!get_u32(f_, &delta) || !get_u64(f_, &v))
                throw std::runtime_error(path_.string() + ": truncated record");
            prev += delta;
            rec.idx[t] = prev;
            rec.val[t] = v;
        }
        fn(rec);
    }
}

uint64_t write_batch(const PartitionTable& table, const ModContext& ctx,
                     PartIndex first, PartIndex last, uint32_t batch_id,
                     const std::filesystem::path& path) {
    BatchHeader h;
    h.d = table.degree();
    h.prime = ctx.field.p();
    h.batch_id = batch_id;
    h.primary_count = last - first;
    BatchWriter w(path, h);
    OmegaContribution rec;
    for (PartIndex i = first; i < last; ++i) {
        const GlobalOffset primary = table.global(table.degree(), i);
        for (SecondaryEnumerator e(table, primary); !e.done(); e.advance()) {
            rec.r = compute_r(e.current(), ctx);
            expand_s(e.current(), ctx, table, rec);
            w.write_record(rec);
        }
    }
    const uint64_t n = w.records_written();
    w.close();
    return n;
}

} // namespace hurwitz
