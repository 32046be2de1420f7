#ifndef OMEGAERG_WEIGHTS_HPP
#define OMEGAERG_WEIGHTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace omegaerg {

/// Selects which prime-divisor count drives all downstream averages:
/// LittleOmega counts distinct prime factors, BigOmega counts them with
/// multiplicity.
enum class WeightKind { LittleOmega, BigOmega };

const char* to_string(WeightKind kind);

/// 128-bit accumulator type for exact power sums.
using Wide = unsigned __int128;

std::string to_decimal_string(Wide v);

/// Sieved table of g(n) = omega(n) or Omega(n) for 1 <= n <= k_max,
/// with exact integer prefix sums and the smallest-prime-factor array
/// used both for the sieve and as a primality test.
///
/// A built table is immutable; all queries are const and thread-safe.
class WeightTable {
public:
    WeightTable(std::uint64_t k_max, WeightKind kind);

    std::uint64_t k_max() const { return k_max_; }
    WeightKind kind() const { return kind_; }

    /// g(n). Requires 1 <= n <= k_max.
    unsigned value(std::uint64_t n) const;

    /// S_{g,K} = sum_{n<=K} g(n). Requires K <= k_max; S_{g,0} = 0.
    std::uint64_t prefix_sum(std::uint64_t k) const;

    /// Smallest prime factor of n. Requires 2 <= n <= k_max.
    std::uint32_t smallest_prime_factor(std::uint64_t n) const;

    /// n is prime iff its smallest prime factor is n itself.
    bool is_prime(std::uint64_t n) const;

    // Raw array views used by the hot loops downstream.
    const std::vector<std::uint8_t>& values() const { return values_; }
    const std::vector<std::uint64_t>& prefix() const { return prefix_; }

    /// Largest supported k_max (smallest-prime-factor entries are 32-bit).
    static constexpr std::uint64_t max_supported_k = 0xFFFFFFFEull;

private:
    WeightTable() = default;
    friend WeightTable load_weight_table(std::istream& in);

    std::uint64_t k_max_ = 0;
    WeightKind kind_ = WeightKind::LittleOmega;
    std::vector<std::uint8_t> values_;    // values_[n], n in [0, k_max]; [0] unused
    std::vector<std::uint64_t> prefix_;   // prefix_[K], K in [0, k_max]
    std::vector<std::uint32_t> spf_;      // spf_[n], n in [0, k_max]; [0],[1] = 0
};

/// Builds the table with a linear smallest-prime-factor sieve; g(n) is
/// recovered by one division by spf(n) per entry. Throws
/// std::invalid_argument for k_max = 0 or k_max > max_supported_k.
WeightTable build_weight_table(std::uint64_t k_max, WeightKind kind);

/// E(k) = sum of 1/p over primes p <= k, accumulated in ascending order
/// with compensated summation. Throws std::out_of_range for k > k_max.
double mertens_sum(std::uint64_t k, const WeightTable& table);

/// Exact sum_{n<=k} g(n)^m in 128-bit arithmetic. Requires m >= 1.
/// Throws std::overflow_error instead of wrapping.
Wide power_sum(std::uint64_t k, unsigned m, const WeightTable& table);

/// sum_{n<=k} base^{g(n)}, powers taken by repeated multiplication,
/// terms accumulated in ascending n with compensated summation.
/// Throws std::invalid_argument for base <= 0.
double exp_sum(std::uint64_t k, double base, const WeightTable& table);

/// Binary cache: little-endian header (magic, version, kind, k_max,
/// checksum), then one byte per value. The prefix sums are recomputed on
/// load and checked against the stored checksum; the smallest-prime-factor
/// array is resieved.
void dump_weight_table(const WeightTable& table, std::ostream& out);
WeightTable load_weight_table(std::istream& in);

void dump_weight_table_file(const WeightTable& table, const std::string& path);
WeightTable load_weight_table_file(const std::string& path);

} // namespace omegaerg

#endif
