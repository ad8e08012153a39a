#pragma once

/**
 * @file tiling.hpp
 * @brief Boards, tilings by tiles of length at most k, and weighted tiling sums.
 *
 * A tile of length i starting at position sigma (1-based) with tau cells after it
 * carries weight z_i * q^{f(i, sigma, tau)}. A tiling's weight is the product
 * over its tiles, and F_n^k(z; q) is the sum over all tilings of an n-board.
 *
 * The sum is computed two ways: by listing every tiling, and by the first-tile
 * recursion. Boards can have untiled cells appended before or after; those
 * cells only move sigma and tau.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/polyring.hpp"

namespace qfib {

struct Tiling {
    int n = 0;
    std::vector<int> parts;  // tile lengths, left to right

    // 1-based start position of tile j.
    int start(std::size_t j) const {
        int s = 1;
        for (std::size_t i = 0; i < j; ++i) s += parts[i];
        return s;
    }

    // Number of cells after tile j.
    int trailing(std::size_t j) const { return n - start(j) - parts[j] + 1; }

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

inline Tiling tiling_from_parts(std::vector<int> parts) {
    int n = 0;
    for (int p : parts) {
        if (p < 1) throw DomainError("tile length must be positive");
        n += p;
    }
    return Tiling{n, std::move(parts)};
}

inline std::string format_tiling(const Tiling& t) {
    std::string out = "(";
    for (std::size_t j = 0; j < t.parts.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(t.parts[j]);
    }
    return out + ")";
}

// Untiled cells appended to the board: `before` at the beginning, `after` at the end.
struct AppendSpec {
    int before = 0;
    int after = 0;
};

/// Tile weights of the form z_i q^{f(i, sigma, tau)} together with the shift
/// factors s^-_{m,i} = q^{B(i) m} and s^+_{m,i} = q^{C(i) m} that describe how
/// f reacts to appended cells. For a coherent scheme
/// f(i, sigma + m, tau) = f(i, sigma, tau) + B(i) m and
/// f(i, sigma, tau + m) = f(i, sigma, tau) + C(i) m; validate_weight_scheme checks this.
struct WeightScheme {
    using TileExponent = std::function<std::int64_t(int i, std::int64_t sigma, std::int64_t tau)>;
    using LengthFunction = std::function<std::int64_t(int i)>;

    std::string name;
    int k = 1;
    TileExponent exponent;
    LengthFunction shift_before;  // B
    LengthFunction shift_after;   // C

    /// f = A(i) + B(i)(sigma - 1) + C(i) tau.
    static WeightScheme separable(std::string name, int k, LengthFunction a, LengthFunction b, LengthFunction c) {
        if (k < 1) throw DomainError("weight scheme needs k >= 1");
        WeightScheme w;
        w.name = std::move(name);
        w.k = k;
        w.exponent = [a, b, c](int i, std::int64_t sigma, std::int64_t tau) {
            return a(i) + b(i) * (sigma - 1) + c(i) * tau;
        };
        w.shift_before = std::move(b);
        w.shift_after = std::move(c);
        return w;
    }

    std::int64_t f(int i, std::int64_t sigma, std::int64_t tau) const {
        const std::int64_t e = exponent(i, sigma, tau);
        if (e < 0)
            throw DomainError("scheme '" + name + "' gives negative q exponent for tile " + std::to_string(i));
        return e;
    }

    /// z_i q^{f(i, sigma, tau)}
    Polynomial tile(int i, std::int64_t sigma, std::int64_t tau) const {
        return Polynomial::variable(k, i, 1, static_cast<Exponent>(f(i, sigma, tau)));
    }

    // Per-variable exponents of s^-_m and s^+_m.
    std::vector<std::int64_t> front_shift(std::int64_t m) const {
        std::vector<std::int64_t> e(k);
        for (int i = 1; i <= k; ++i) e[i - 1] = shift_before(i) * m;
        return e;
    }

    std::vector<std::int64_t> back_shift(std::int64_t m) const {
        std::vector<std::int64_t> e(k);
        for (int i = 1; i <= k; ++i) e[i - 1] = shift_after(i) * m;
        return e;
    }
};

/// F_n^k by the linear recursion; F_0 = 1, F_n = 0 for n < 0.
inline Integer fibonacci_k(int n, int k) {
    if (k < 1) throw DomainError("fibonacci_k needs k >= 1");
    if (n < 0) return 0;
    std::vector<Integer> f(static_cast<std::size_t>(n) + 1);
    f[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Integer s = 0;
        for (int d = 1; d <= k && d <= m; ++d) s += f[m - d];
        f[m] = s;
    }
    return f[n];
}

namespace detail {

template <typename Visitor>
void visit_compositions(int remaining, int k, std::vector<int>& parts, Visitor& visit) {
    if (remaining == 0) {
        visit(static_cast<const std::vector<int>&>(parts));
        return;
    }
    for (int i = 1; i <= k && i <= remaining; ++i) {
        parts.push_back(i);
        visit_compositions(remaining - i, k, parts, visit);
        parts.pop_back();
    }
}

}  // namespace detail

/// Calls visit(parts) for each composition of n into parts <= k, in lexicographic order.
/// Nothing is visited for n < 0; the empty composition is visited for n = 0.
template <typename Visitor>
void for_each_tiling(int n, int k, Visitor&& visit) {
    if (k < 1) throw DomainError("tilings need k >= 1");
    if (n < 0) return;
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(n));
    detail::visit_compositions(n, k, parts, visit);
}

inline std::vector<Tiling> enumerate_tilings(int n, int k) {
    std::vector<Tiling> out;
    for_each_tiling(n, k, [&](const std::vector<int>& parts) { out.push_back(Tiling{n, parts}); });
    return out;
}

namespace detail {

// Adds the exponent vector of the tiling's weight into key (size k+1).
inline void accumulate_tiling_exponents(std::span<const int> parts, int n, const WeightScheme& w,
                                        const AppendSpec& app, std::vector<Exponent>& key) {
    std::fill(key.begin(), key.end(), 0);
    std::int64_t sigma = 1;
    std::int64_t q = 0;
    for (int i : parts) {
        if (i > w.k)
            throw DomainError("tile of length " + std::to_string(i) + " exceeds scheme k=" + std::to_string(w.k));
        const std::int64_t tau = n - sigma - i + 1;
        key[i - 1] += 1;
        q += w.f(i, sigma + app.before, tau + app.after);
        sigma += i;
    }
    key.back() = static_cast<Exponent>(q);
}

}  // namespace detail

inline Polynomial tiling_weight(const Tiling& t, const WeightScheme& w, const AppendSpec& app = {}) {
    std::vector<Exponent> key(w.k + 1);
    detail::accumulate_tiling_exponents(t.parts, t.n, w, app, key);
    TermAccumulator acc(w.k);
    acc.add(key);
    return std::move(acc).take();
}

/// Sum of tiling weights over every tiling of an n-board by tiles of length <= k.
/// The ring has w.k variables; k may be smaller than w.k.
inline Polynomial weighted_sum_enumerative(int n, int k, const WeightScheme& w, const AppendSpec& app = {}) {
    if (k > w.k) throw DomainError("tile bound k exceeds scheme k");
    TermAccumulator acc(w.k);
    std::vector<Exponent> key(w.k + 1);
    for_each_tiling(n, k, [&](const std::vector<int>& parts) {
        detail::accumulate_tiling_exponents(parts, n, w, app, key);
        acc.add(key);
    });
    return std::move(acc).take();
}

/// Same value as weighted_sum_enumerative, by peeling off the first tile:
/// F_n = sum_i z_i f_{i,1,n-i} F_{n-i}(s^-_i z), memoized on (remaining length, prefix length).
inline Polynomial weighted_sum_recursive(int n, int k, const WeightScheme& w, const AppendSpec& app = {}) {
    if (k > w.k) throw DomainError("tile bound k exceeds scheme k");
    if (k < 1) throw DomainError("tilings need k >= 1");
    if (n < 0) return Polynomial(w.k);

    std::map<std::pair<int, int>, Polynomial> memo;
    std::function<Polynomial(int, int)> rest = [&](int remaining, int prefix) -> Polynomial {
        if (remaining == 0) return Polynomial::one(w.k);
        const auto key = std::make_pair(remaining, prefix);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Polynomial sum(w.k);
        for (int i = 1; i <= k && i <= remaining; ++i) {
            const Polynomial head = w.tile(i, app.before + prefix + 1, remaining - i + app.after);
            sum += head * rest(remaining - i, prefix + i);
        }
        memo.emplace(key, sum);
        return sum;
    };
    return rest(n, 0);
}

struct CoherenceViolation {
    int i = 0;
    std::int64_t sigma = 0;
    std::int64_t tau = 0;
    std::int64_t m = 0;
    std::string side;  // "before" or "after"
    std::int64_t expected = 0;
    std::int64_t actual = 0;
};

struct SchemeValidation {
    std::string scheme;
    std::optional<CoherenceViolation> violation;

    bool ok() const { return !violation.has_value(); }
};

inline std::string describe(const CoherenceViolation& v) {
    return "f(" + std::to_string(v.i) + "," + std::to_string(v.sigma) + "," + std::to_string(v.tau) + ") shifted " +
           v.side + " by m=" + std::to_string(v.m) + ": expected q^" + std::to_string(v.expected) + ", got q^" +
           std::to_string(v.actual);
}

/// Checks f(i, sigma+m, tau) = f(i, sigma, tau) + B(i) m and f(i, sigma, tau+m) = f(i, sigma, tau) + C(i) m
/// for 1 <= i <= k, 1 <= sigma <= n_max, 0 <= tau <= n_max, 1 <= m <= n_max.
inline SchemeValidation validate_weight_scheme(const WeightScheme& w, int n_max) {
    if (n_max < 1) throw DomainError("validate_weight_scheme needs n_max >= 1");
    SchemeValidation report{w.name, std::nullopt};
    for (int i = 1; i <= w.k; ++i) {
        const std::int64_t b = w.shift_before(i);
        const std::int64_t c = w.shift_after(i);
        for (std::int64_t sigma = 1; sigma <= n_max; ++sigma) {
            for (std::int64_t tau = 0; tau <= n_max; ++tau) {
                const std::int64_t base = w.exponent(i, sigma, tau);
                for (std::int64_t m = 1; m <= n_max; ++m) {
                    const std::int64_t front = w.exponent(i, sigma + m, tau);
                    if (front != base + b * m) {
                        report.violation = CoherenceViolation{i, sigma, tau, m, "before", base + b * m, front};
                        return report;
                    }
                    const std::int64_t back = w.exponent(i, sigma, tau + m);
                    if (back != base + c * m) {
                        report.violation = CoherenceViolation{i, sigma, tau, m, "after", base + c * m, back};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace qfib
