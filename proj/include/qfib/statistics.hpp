#pragma once

/**
 * @file statistics.hpp
 * @brief Layered permutations and layered set partitions built from tilings,
 * the statistics inv, maj, rb and ls, and the tile weight schemes that
 * reproduce their distributions.
 *
 * Layered objects of [n] correspond to compositions of n: the i-th layer (or
 * block) has the length of the i-th part. LP puts the largest values first,
 * each layer increasing; RLP is the reversal of LP; PRLP reverses all but the
 * last entry of each LP layer. Layered partitions use consecutive intervals.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/polyring.hpp"
#include "qfib/tiling.hpp"

namespace qfib {

struct Permutation {
    std::vector<int> values;  // one-line notation, values 1..n

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

struct SetPartition {
    std::vector<std::vector<int>> blocks;  // ordered by increasing minimum

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

enum class Statistic { inv, maj, rb, ls };
enum class Family { lp, rlp, prlp, lpi };

struct StatSetPair {
    Statistic statistic;
    Family family;

    friend bool operator==(const StatSetPair&, const StatSetPair&) = default;
};

inline bool is_valid(StatSetPair p) {
    const bool permutation_stat = p.statistic == Statistic::inv || p.statistic == Statistic::maj;
    return permutation_stat == (p.family != Family::lpi);
}

inline std::string to_string(Statistic s) {
    switch (s) {
        case Statistic::inv: return "inv";
        case Statistic::maj: return "maj";
        case Statistic::rb: return "rb";
        case Statistic::ls: return "ls";
    }
    return "?";
}

inline std::string to_string(Family f) {
    switch (f) {
        case Family::lp: return "lp";
        case Family::rlp: return "rlp";
        case Family::prlp: return "prlp";
        case Family::lpi: return "lpi";
    }
    return "?";
}

inline std::string to_string(StatSetPair p) { return to_string(p.statistic) + "-" + to_string(p.family); }

inline std::optional<Statistic> parse_statistic(std::string_view s) {
    if (s == "inv") return Statistic::inv;
    if (s == "maj") return Statistic::maj;
    if (s == "rb") return Statistic::rb;
    if (s == "ls") return Statistic::ls;
    return std::nullopt;
}

inline std::optional<Family> parse_family(std::string_view s) {
    if (s == "lp") return Family::lp;
    if (s == "rlp") return Family::rlp;
    if (s == "prlp") return Family::prlp;
    if (s == "lpi") return Family::lpi;
    return std::nullopt;
}

// "maj-rlp" -> {maj, rlp}; invalid combinations are rejected.
inline std::optional<StatSetPair> parse_pair(std::string_view s) {
    const auto dash = s.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    const auto stat = parse_statistic(s.substr(0, dash));
    const auto fam = parse_family(s.substr(dash + 1));
    if (!stat || !fam) return std::nullopt;
    const StatSetPair p{*stat, *fam};
    if (!is_valid(p)) return std::nullopt;
    return p;
}

// The seven pairs that have a tile weight scheme.
inline const std::vector<StatSetPair>& schemed_pairs() {
    static const std::vector<StatSetPair> pairs{
        {Statistic::inv, Family::lp},  {Statistic::inv, Family::rlp},  {Statistic::inv, Family::prlp},
        {Statistic::maj, Family::lp},  {Statistic::maj, Family::rlp},  {Statistic::maj, Family::prlp},
        {Statistic::rb, Family::lpi},
    };
    return pairs;
}

// ---------------------------------------------------------------------------
// Tilings to objects

inline Permutation tiling_to_lp(const Tiling& t) {
    Permutation p;
    p.values.reserve(t.n);
    int top = t.n;  // largest value not yet used
    for (int len : t.parts) {
        for (int v = top - len + 1; v <= top; ++v) p.values.push_back(v);
        top -= len;
    }
    return p;
}

inline Permutation tiling_to_rlp(const Tiling& t) {
    Permutation p = tiling_to_lp(t);
    std::reverse(p.values.begin(), p.values.end());
    return p;
}

inline Permutation tiling_to_prlp(const Tiling& t) {
    Permutation p = tiling_to_lp(t);
    auto it = p.values.begin();
    for (int len : t.parts) {
        std::reverse(it, it + (len - 1));
        it += len;
    }
    return p;
}

inline SetPartition tiling_to_partition(const Tiling& t) {
    SetPartition out;
    int next = 1;
    for (int len : t.parts) {
        std::vector<int> block(len);
        for (int& b : block) b = next++;
        out.blocks.push_back(std::move(block));
    }
    return out;
}

inline Permutation tiling_to_permutation(const Tiling& t, Family f) {
    switch (f) {
        case Family::lp: return tiling_to_lp(t);
        case Family::rlp: return tiling_to_rlp(t);
        case Family::prlp: return tiling_to_prlp(t);
        case Family::lpi: break;
    }
    throw DomainError("layered partitions are not permutations");
}

// ---------------------------------------------------------------------------
// Statistics, by their literal definitions

inline long inv(const Permutation& p) {
    long count = 0;
    const auto& v = p.values;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++count;
    return count;
}

inline long maj(const Permutation& p) {
    long total = 0;
    const auto& v = p.values;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) total += static_cast<long>(i + 1);
    return total;
}

// Pairs (b, B_j) with b in an earlier block than B_j and b < max B_j.
inline long rb(const SetPartition& p) {
    long count = 0;
    for (std::size_t j = 0; j < p.blocks.size(); ++j) {
        const int top = *std::max_element(p.blocks[j].begin(), p.blocks[j].end());
        for (std::size_t i = 0; i < j; ++i)
            for (int b : p.blocks[i])
                if (b < top) ++count;
    }
    return count;
}

// Pairs (b, B_i) with b in a later block than B_i and b > min B_i.
inline long ls(const SetPartition& p) {
    long count = 0;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const int bottom = *std::min_element(p.blocks[i].begin(), p.blocks[i].end());
        for (std::size_t j = i + 1; j < p.blocks.size(); ++j)
            for (int b : p.blocks[j])
                if (b > bottom) ++count;
    }
    return count;
}

inline long statistic_of(const Tiling& t, StatSetPair pair) {
    if (!is_valid(pair)) throw DomainError("invalid statistic/family pair " + to_string(pair));
    switch (pair.statistic) {
        case Statistic::inv: return inv(tiling_to_permutation(t, pair.family));
        case Statistic::maj: return maj(tiling_to_permutation(t, pair.family));
        case Statistic::rb: return rb(tiling_to_partition(t));
        case Statistic::ls: return ls(tiling_to_partition(t));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Serialization: "4231" or "10 2 1 ..." when n > 9; "12/3/4" or "1,2/10,11" when n > 9.

inline std::string format_permutation(const Permutation& p) {
    const bool spaced = p.values.size() > 9;
    std::string out;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (spaced && i) out += ' ';
        out += std::to_string(p.values[i]);
    }
    return out;
}

inline std::string format_partition(const SetPartition& p) {
    bool wide = false;
    for (const auto& b : p.blocks)
        for (int x : b) wide = wide || x > 9;
    std::string out;
    for (std::size_t j = 0; j < p.blocks.size(); ++j) {
        if (j) out += '/';
        for (std::size_t i = 0; i < p.blocks[j].size(); ++i) {
            if (wide && i) out += ',';
            out += std::to_string(p.blocks[j][i]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Distributions and weight schemes

/// Sum over the family's objects with layers of length <= k of
/// (prod_j z_{len(layer_j)}) q^{stat}; the statistic is computed on the explicit object.
inline Polynomial distribution(StatSetPair pair, int n, int k) {
    if (!is_valid(pair)) throw DomainError("invalid statistic/family pair " + to_string(pair));
    if (k < 1) throw DomainError("distribution needs k >= 1");
    TermAccumulator acc(k);
    std::vector<Exponent> key(k + 1);
    for_each_tiling(n, k, [&](const std::vector<int>& parts) {
        std::fill(key.begin(), key.end(), 0);
        for (int len : parts) key[len - 1] += 1;
        key.back() = static_cast<Exponent>(statistic_of(Tiling{n, parts}, pair));
        acc.add(key);
    });
    return std::move(acc).take();
}

inline std::int64_t choose2(std::int64_t i) { return i * (i - 1) / 2; }

/// Tile weights (A, B, C) with f = A(i) + B(i)(sigma - 1) + C(i) tau, for ring size k.
inline WeightScheme builtin_scheme(StatSetPair pair, int k) {
    using L = WeightScheme::LengthFunction;
    const L zero = [](int) -> std::int64_t { return 0; };
    const L one = [](int) -> std::int64_t { return 1; };
    const L length = [](int i) -> std::int64_t { return i; };
    const L length_minus_one = [](int i) -> std::int64_t { return i - 1; };
    const L binom_i = [](int i) { return choose2(i); };
    const L binom_i_minus_one = [](int i) { return choose2(i - 1); };
    // a PRLP layer of length 1 after the first still sits right after a descent
    const L prlp_descent = [](int i) -> std::int64_t { return i == 1 ? 1 : i - 1; };

    if (!is_valid(pair)) throw DomainError("invalid statistic/family pair " + to_string(pair));
    const std::string name = to_string(pair);
    switch (pair.statistic) {
        case Statistic::inv:
            switch (pair.family) {
                case Family::lp: return WeightScheme::separable(name, k, zero, zero, length);
                case Family::rlp: return WeightScheme::separable(name, k, binom_i, zero, zero);
                case Family::prlp: return WeightScheme::separable(name, k, binom_i_minus_one, zero, length);
                case Family::lpi: break;
            }
            break;
        case Statistic::maj:
            switch (pair.family) {
                case Family::lp: return WeightScheme::separable(name, k, zero, one, zero);
                case Family::rlp: return WeightScheme::separable(name, k, binom_i, length_minus_one, zero);
                case Family::prlp: return WeightScheme::separable(name, k, binom_i_minus_one, prlp_descent, zero);
                case Family::lpi: break;
            }
            break;
        case Statistic::rb: return WeightScheme::separable(name, k, zero, one, zero);
        case Statistic::ls:
            throw UnsupportedScheme("ls has no tile-local weight: a block's ls count depends on how many blocks precede it");
    }
    throw DomainError("invalid statistic/family pair " + name);
}

/// f = 0 for every tile: the plain k-Fibonacci count with z-profile.
inline WeightScheme plain_scheme(int k) {
    const WeightScheme::LengthFunction zero = [](int) -> std::int64_t { return 0; };
    return WeightScheme::separable("plain", k, zero, zero, zero);
}

}  // namespace qfib
