#include "hurwitz/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hurwitz/prime_field.hpp"
#include "hurwitz/secondary.hpp"

namespace hurwitz {

mpz_class numerator_bound(unsigned d) {
    mpz_class dfact;
    mpz_fac_ui(dfact.get_mpz_t(), d);
    mpz_class pow8;
    mpz_pow_ui(pow8.get_mpz_t(), dfact.get_mpz_t(), 8);
    return count_secondary(d) * pow8;
}

bool BoundCertificate::covers() const {
    mpz_class prod = 1;
    for (uint64_t p : primes)
        prod *= mpz_class(static_cast<unsigned long>(p));
    return prod > bound;
}

std::string BoundCertificate::manifest_text() const {
    std::ostringstream os;
    os << "degree: " << d << "\n";
    os << "secondary partitions p2(d): " << p2.get_str() << "\n";
    os << "numerator bound M_d = p2(d)*(d!)^8: " << bound.get_str() << "\n";
    os << "primes (" << primes.size() << "):";
    for (uint64_t p : primes)
        os << " " << p;
    os << "\n";
    mpz_class prod = 1;
    for (uint64_t p : primes)
        prod *= mpz_class(static_cast<unsigned long>(p));
    os << "prime product: " << prod.get_str() << "\n";
    os << "product exceeds bound: " << (prod > bound ? "yes" : "no") << "\n";
    return os.str();
}

BoundCertificate make_certificate(unsigned d, uint64_t start) {
    BoundCertificate cert;
    cert.d = d;
    cert.p2 = count_secondary(d);
    cert.bound = numerator_bound(d);
    mpz_class prod = 1;
    uint64_t p = is_prime_u64(start) ? start : next_prime_after(start);
    while (p <= d)
        p = next_prime_after(p);
    while (prod <= cert.bound) {
        if (p >= (uint64_t(1) << 31))
            throw std::invalid_argument("certificate would need primes at or above 2^31");
        cert.primes.push_back(p);
        prod *= mpz_class(static_cast<unsigned long>(p));
        p = next_prime_after(p);
    }
    return cert;
}

BoundCertificate make_certificate(unsigned d, const std::vector<uint64_t>& primes) {
    BoundCertificate cert;
    cert.d = d;
    cert.p2 = count_secondary(d);
    cert.bound = numerator_bound(d);
    cert.primes = primes;
    std::set<uint64_t> distinct(primes.begin(), primes.end());
    if (distinct.size() != primes.size())
        throw std::invalid_argument("certificate primes must be distinct");
    for (uint64_t p : primes) {
        if (!is_prime_u64(p))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        if (p <= d)
            throw std::invalid_argument("prime " + std::to_string(p) +
                                        " must exceed the degree");
        if (p >= (uint64_t(1) << 31))
            throw std::invalid_argument("prime " + std::to_string(p) + " must be below 2^31");
    }
    if (!cert.covers())
        throw std::invalid_argument("prime product does not exceed the numerator bound");
    return cert;
}

void replace_prime(BoundCertificate& cert, uint64_t bad_prime) {
    cert.primes.erase(std::remove(cert.primes.begin(), cert.primes.end(), bad_prime),
                      cert.primes.end());
    uint64_t top = bad_prime;
    for (uint64_t p : cert.primes)
        top = std::max(top, p);
    while (!cert.covers()) {
        top = next_prime_after(top);
        if (top >= (uint64_t(1) << 31))
            throw std::invalid_argument("certificate would need primes at or above 2^31");
        cert.primes.push_back(top);
    }
}

std::vector<uint64_t> evaluate_candidates(const std::vector<std::array<uint32_t, 3>>& candidates,
                                          const std::vector<std::filesystem::path>& batches,
                                          const ModContext& ctx) {
    std::vector<uint64_t> sums(candidates.size(), 0);
    const auto& field = ctx.field;
    for (const auto& path : batches) {
        BatchReader reader(path);
        reader.require(ctx.degree, field.p());
        reader.for_each([&](const OmegaContribution& rec) {
            auto coeff = [&](uint32_t want) -> uint64_t {
                const auto it = std::lower_bound(rec.idx.begin(), rec.idx.end(), want);
                if (it == rec.idx.end() || *it != want)
                    return 0;
                return rec.val[size_t(it - rec.idx.begin())];
            };
            for (size_t c = 0; c < candidates.size(); ++c) {
                const uint64_t ci = coeff(candidates[c][0]);
                if (ci == 0)
                    continue;
                const uint64_t cj = coeff(candidates[c][1]);
                if (cj == 0)
                    continue;
                const uint64_t ck = coeff(candidates[c][2]);
                if (ck == 0)
                    continue;
                const uint64_t term = field.mul(field.mul(rec.r, ci), field.mul(cj, ck));
                sums[c] = field.add(sums[c], term);
            }
        });
    }
    return sums;
}

mpz_class crt_combine(const std::vector<std::pair<uint64_t, uint64_t>>& residue_prime) {
    mpz_class prod = 1;
    for (const auto& [r, p] : residue_prime) {
        mpz_class g;
        mpz_gcd_ui(g.get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(p));
        if (g != 1)
            throw std::invalid_argument("crt moduli are not pairwise coprime");
        prod *= mpz_class(static_cast<unsigned long>(p));
    }
    mpz_class x = 0, m = 1;
    for (const auto& [r, p] : residue_prime) {
        const mpz_class pz(static_cast<unsigned long>(p));
        // x' = x + m * t with t = (r - x)/m mod p
        mpz_class minv;
        mpz_class mm = m % pz;
        if (mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::invalid_argument("crt moduli are not pairwise coprime");
        mpz_class t = ((mpz_class(static_cast<unsigned long>(r)) - x) * minv) % pz;
        if (t < 0)
            t += pz;
        x += m * t;
        m *= pz;
    }
    // Symmetric representative in (-m/2, m/2].
    if (2 * x > m)
        x -= m;
    return x;
}

} // namespace hurwitz
