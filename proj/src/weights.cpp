#include "omegaerg/weights.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace omegaerg {

const char* to_string(WeightKind kind) {
    return kind == WeightKind::LittleOmega ? "little-omega" : "big-omega";
}

std::string to_decimal_string(Wide v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

WeightTable::WeightTable(std::uint64_t k_max, WeightKind kind)
    : k_max_(k_max), kind_(kind) {
    if (k_max == 0 || k_max > max_supported_k)
        throw std::invalid_argument("WeightTable: k_max must be in [1, " +
                                    std::to_string(max_supported_k) + "]");

    values_.assign(k_max + 1, 0);
    spf_.assign(k_max + 1, 0);

    // Linear sieve: every composite is crossed off exactly once, by its
    // smallest prime factor.
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= k_max; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf_[i] || i * p > k_max) break;
            spf_[i * p] = p;
        }
    }

    // g(n) from g(n / spf(n)): one extra prime with multiplicity always
    // counts for Omega, and for omega only when it is new.
    const bool multiplicity = (kind == WeightKind::BigOmega);
    for (std::uint64_t n = 2; n <= k_max; ++n) {
        const std::uint64_t m = n / spf_[n];
        if (multiplicity)
            values_[n] = static_cast<std::uint8_t>(values_[m] + 1);
        else
            values_[n] = static_cast<std::uint8_t>(values_[m] + (m % spf_[n] != 0 ? 1 : 0));
    }

    prefix_.assign(k_max + 1, 0);
    for (std::uint64_t n = 1; n <= k_max; ++n)
        prefix_[n] = prefix_[n - 1] + values_[n];
}

unsigned WeightTable::value(std::uint64_t n) const {
    if (n < 1 || n > k_max_) throw std::out_of_range("WeightTable::value: n out of range");
    return values_[n];
}

std::uint64_t WeightTable::prefix_sum(std::uint64_t k) const {
    if (k > k_max_) throw std::out_of_range("WeightTable::prefix_sum: k out of range");
    return prefix_[k];
}

std::uint32_t WeightTable::smallest_prime_factor(std::uint64_t n) const {
    if (n < 2 || n > k_max_)
        throw std::out_of_range("WeightTable::smallest_prime_factor: n out of range");
    return spf_[n];
}

bool WeightTable::is_prime(std::uint64_t n) const {
    if (n < 2 || n > k_max_) throw std::out_of_range("WeightTable::is_prime: n out of range");
    return spf_[n] == n;
}

WeightTable build_weight_table(std::uint64_t k_max, WeightKind kind) {
    return WeightTable(k_max, kind);
}

double mertens_sum(std::uint64_t k, const WeightTable& table) {
    if (k > table.k_max()) throw std::out_of_range("mertens_sum: k exceeds table bound");
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t p = 2; p <= k; ++p) {
        if (!table.is_prime(p)) continue;
        const double term = 1.0 / static_cast<double>(p) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

Wide power_sum(std::uint64_t k, unsigned m, const WeightTable& table) {
    if (m == 0) throw std::invalid_argument("power_sum: m must be >= 1");
    if (k > table.k_max()) throw std::out_of_range("power_sum: k exceeds table bound");

    // g(n) <= 63, so per-exponent powers fit a small lookup filled in as
    // larger values appear.
    std::array<Wide, 64> pw{};
    unsigned built = 0;
    auto build_up_to = [&](unsigned v) {
        for (unsigned b = built + 1; b <= v; ++b) {
            Wide acc = 1;
            const Wide factor = b;
            for (unsigned e = 0; e < m; ++e) {
                if (acc > ~Wide(0) / factor)
                    throw std::overflow_error("power_sum: term overflows 128-bit accumulator");
                acc *= factor;
            }
            pw[b] = acc;
        }
        built = v;
    };

    const auto& values = table.values();
    Wide total = 0;
    for (std::uint64_t n = 1; n <= k; ++n) {
        const unsigned v = values[n];
        if (v == 0) continue;
        if (v > built) build_up_to(v);
        const Wide term = pw[v];
        if (total > ~Wide(0) - term)
            throw std::overflow_error("power_sum: total overflows 128-bit accumulator");
        total += term;
    }
    return total;
}

double exp_sum(std::uint64_t k, double base, const WeightTable& table) {
    if (!(base > 0.0)) throw std::invalid_argument("exp_sum: base must be positive");
    if (k > table.k_max()) throw std::out_of_range("exp_sum: k exceeds table bound");

    std::array<double, 64> pw;
    pw[0] = 1.0;
    for (unsigned e = 1; e < pw.size(); ++e) pw[e] = pw[e - 1] * base;

    const auto& values = table.values();
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t n = 1; n <= k; ++n) {
        const double term = pw[values[n]] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

namespace {

constexpr std::uint64_t kMagic = 0x4F4D575431ull;  // "OMWT1"
constexpr std::uint64_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw std::runtime_error("weight table load: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

} // namespace

void dump_weight_table(const WeightTable& table, std::ostream& out) {
    put_u64(out, kMagic);
    put_u64(out, kVersion);
    put_u64(out, table.kind() == WeightKind::BigOmega ? 1 : 0);
    put_u64(out, table.k_max());
    put_u64(out, table.prefix_sum(table.k_max()));  // checksum
    out.write(reinterpret_cast<const char*>(table.values().data() + 1),
              static_cast<std::streamsize>(table.k_max()));
    if (!out) throw std::runtime_error("weight table dump: write failed");
}

WeightTable load_weight_table(std::istream& in) {
    if (get_u64(in) != kMagic) throw std::runtime_error("weight table load: bad magic");
    if (get_u64(in) != kVersion) throw std::runtime_error("weight table load: unsupported version");
    const std::uint64_t kind_raw = get_u64(in);
    if (kind_raw > 1) throw std::runtime_error("weight table load: bad kind");
    const std::uint64_t k_max = get_u64(in);
    if (k_max == 0 || k_max > WeightTable::max_supported_k)
        throw std::runtime_error("weight table load: bad k_max");
    const std::uint64_t checksum = get_u64(in);

    WeightTable table;
    table.k_max_ = k_max;
    table.kind_ = kind_raw == 1 ? WeightKind::BigOmega : WeightKind::LittleOmega;
    table.values_.assign(k_max + 1, 0);
    in.read(reinterpret_cast<char*>(table.values_.data() + 1),
            static_cast<std::streamsize>(k_max));
    if (!in) throw std::runtime_error("weight table load: truncated values");

    table.prefix_.assign(k_max + 1, 0);
    for (std::uint64_t n = 1; n <= k_max; ++n)
        table.prefix_[n] = table.prefix_[n - 1] + table.values_[n];
    if (table.prefix_[k_max] != checksum)
        throw std::runtime_error("weight table load: checksum mismatch");

    // The spf array is not stored; resieve it.
    table.spf_.assign(k_max + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= k_max; ++i) {
        if (table.spf_[i] == 0) {
            table.spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > table.spf_[i] || i * p > k_max) break;
            table.spf_[i * p] = p;
        }
    }
    return table;
}

void dump_weight_table_file(const WeightTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    dump_weight_table(table, out);
}

WeightTable load_weight_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    return load_weight_table(in);
}

} // namespace omegaerg
