#ifndef OMEGAERG_REARRANGEMENT_HPP
#define OMEGAERG_REARRANGEMENT_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace omegaerg {

/// K nonnegative values together with nu permutations of {0..K-1}.
/// The scalar type T is double for real systems or a signed integer type
/// for exact arithmetic; all operations below stay within T.
template <class T>
struct PermutationSystem {
    std::vector<T> b;
    std::vector<std::vector<std::uint32_t>> perms;

    std::size_t size() const { return b.size(); }
    std::size_t arity() const { return perms.size(); }
};

template <class T>
void validate_system(const PermutationSystem<T>& sys) {
    const std::size_t k = sys.b.size();
    if (k == 0) throw std::invalid_argument("PermutationSystem: empty value list");
    if (sys.perms.empty()) throw std::invalid_argument("PermutationSystem: no permutations");
    for (const T& v : sys.b)
        if (!(v >= T(0))) throw std::invalid_argument("PermutationSystem: negative value");
    std::vector<char> seen(k);
    for (const auto& perm : sys.perms) {
        if (perm.size() != k)
            throw std::invalid_argument("PermutationSystem: permutation size mismatch");
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint32_t idx : perm) {
            if (idx >= k || seen[idx])
                throw std::invalid_argument("PermutationSystem: not a bijection");
            seen[idx] = 1;
        }
    }
}

/// sum_k prod_j b[perms[j][k]].
template <class T>
T product_sum(const PermutationSystem<T>& sys) {
    validate_system(sys);
    T total(0);
    for (std::size_t k = 0; k < sys.size(); ++k) {
        T prod(1);
        for (const auto& perm : sys.perms) prod *= sys.b[perm[k]];
        total += prod;
    }
    return total;
}

/// sum_k b[k]^nu, the right side of the inequality.
template <class T>
T power_target_sum(const PermutationSystem<T>& sys) {
    T total(0);
    for (const T& v : sys.b) {
        T prod(1);
        for (std::size_t j = 0; j < sys.arity(); ++j) prod *= v;
        total += prod;
    }
    return total;
}

template <class T>
struct SwapNormalizeResult {
    PermutationSystem<T> final;
    std::vector<T> trace;   // product_sum after each swap; trace[0] is the input value
    std::size_t swaps = 0;
};

/// Constructive normalization: repeatedly exchanges two entries of one
/// permutation so that the current target value t (the largest value on a
/// still-active slot) gets pulled into the maximal product. Each exchange
/// replaces contributions B*C + A*D by A*C + B*D with A = t > B and
/// C >= D, so the total never decreases; once a slot multiplies t by
/// itself nu times it is frozen and the next-largest value becomes the
/// target. The procedure finishes with every slot k contributing
/// b[sigma(k)]^nu for one permutation sigma.
///
/// Ties are broken deterministically: smallest maximal slot k*, then
/// smallest permutation index j*, then smallest donor slot k**.
template <class T>
SwapNormalizeResult<T> swap_normalize(const PermutationSystem<T>& input) {
    validate_system(input);
    SwapNormalizeResult<T> result;
    result.final = input;
    auto& sys = result.final;
    const std::size_t k_count = sys.size();
    const std::size_t nu = sys.arity();

    auto product_at = [&](std::size_t k) {
        T prod(1);
        for (const auto& perm : sys.perms) prod *= sys.b[perm[k]];
        return prod;
    };
    auto total_sum = [&]() {
        T total(0);
        for (std::size_t k = 0; k < k_count; ++k) total += product_at(k);
        return total;
    };

    result.trace.push_back(total_sum());

    std::vector<char> active(k_count, 1);
    std::size_t remaining = k_count;
    // Termination: each finalization takes at most nu swaps, so the loop
    // below performs at most K*nu exchanges in total.
    const std::size_t fuel_limit = k_count * nu + k_count + 1;
    std::size_t fuel = 0;

    while (remaining > 0) {
        // Current target: largest value on any active slot (the remaining
        // multiset of values is the same for every permutation).
        T target = T(0);
        bool first = true;
        for (std::size_t k = 0; k < k_count; ++k) {
            if (!active[k]) continue;
            const T v = sys.b[sys.perms[0][k]];
            if (first || v > target) { target = v; first = false; }
        }

        for (;;) {
            // Maximal active product, smallest slot on ties.
            std::size_t k_star = k_count;
            T best(0);
            for (std::size_t k = 0; k < k_count; ++k) {
                if (!active[k]) continue;
                const T p = product_at(k);
                if (k_star == k_count || p > best) { best = p; k_star = k; }
            }

            // All factors equal to the target: freeze this slot.
            bool saturated = true;
            std::size_t j_star = nu;
            for (std::size_t j = 0; j < nu; ++j) {
                if (sys.b[sys.perms[j][k_star]] < target) {
                    saturated = false;
                    if (j_star == nu) j_star = j;
                }
            }
            if (saturated) {
                active[k_star] = 0;
                --remaining;
                break;
            }

            // Donor slot holding the target value in permutation j_star.
            std::size_t k_donor = k_count;
            for (std::size_t k = 0; k < k_count; ++k) {
                if (active[k] && k != k_star && sys.b[sys.perms[j_star][k]] == target) {
                    k_donor = k;
                    break;
                }
            }
            if (k_donor == k_count)
                throw std::logic_error("swap_normalize: donor slot not found");

            std::swap(sys.perms[j_star][k_star], sys.perms[j_star][k_donor]);
            ++result.swaps;
            result.trace.push_back(total_sum());
            if (++fuel > fuel_limit)
                throw std::logic_error("swap_normalize: exceeded swap budget");
        }
    }
    return result;
}

template <class T>
struct InequalityWitness {
    bool holds = false;
    T lhs{};   // product_sum
    T rhs{};   // sum of nu-th powers
};

/// Checks product_sum(sys) <= sum_k b[k]^nu. Exact for integral T; for
/// floating T a relative 1e-12 tolerance absorbs rounding.
template <class T>
InequalityWitness<T> verify_inequality(const PermutationSystem<T>& sys) {
    InequalityWitness<T> w;
    w.lhs = product_sum(sys);
    w.rhs = power_target_sum(sys);
    if constexpr (std::is_floating_point_v<T>) {
        const T slack = T(1e-12) * std::max(T(1), w.rhs);
        w.holds = w.lhs <= w.rhs + slack;
    } else {
        w.holds = w.lhs <= w.rhs;
    }
    return w;
}

} // namespace omegaerg

#endif
