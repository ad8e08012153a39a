#pragma once

/**
 * @file identities.hpp
 * @brief Exact checks of the weighted k-Fibonacci identities.
 *
 * The left side of every identity is a direct enumeration over tilings of the
 * full board. The right side is assembled the way the identity is stated:
 * sums over shorter bare boards, moved into place by the shift vectors
 * z s^-_m and z s^+_m (substitute_z_scale with the scheme's B(i) m and C(i) m),
 * times the weight of the tile that straddles the cut. For a scheme whose
 * shift factors do not describe its tile exponent, the two sides disagree.
 */

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/lgv.hpp"
#include "qfib/polyring.hpp"
#include "qfib/report.hpp"
#include "qfib/statistics.hpp"
#include "qfib/tiling.hpp"

namespace qfib {

namespace detail {

// Bare sums F_n^{k'}(z; q) for one scheme, computed once per call.
class BareSums {
public:
    explicit BareSums(const WeightScheme& w) : w_(w) {}

    const Polynomial& get(int n, int k) {
        const auto key = std::make_pair(n, k);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, weighted_sum_enumerative(n, k, w_)).first;
        return it->second;
    }

    // F_n^{k'}(z s^-_before s^+_after; q)
    Polynomial shifted(int n, int k, int before, int after) {
        if (n < 0) return Polynomial(w_.k);
        std::vector<std::int64_t> e = w_.front_shift(before);
        const std::vector<std::int64_t> back = w_.back_shift(after);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += back[i];
        return substitute_z_scale(get(n, k), e);
    }

private:
    const WeightScheme& w_;
    std::map<std::pair<int, int>, Polynomial> cache_;
};

}  // namespace detail

/// F_n = sum_{i=1}^{k} z_i f_{i,1,n-i} F_{n-i}(s^-_i z).
inline IdentityReport verify_recursion(int n, int k, const WeightScheme& w) {
    if (n < 1) throw DomainError("recursion identity needs n >= 1");
    if (k < 1 || k > w.k) throw DomainError("recursion identity needs 1 <= k <= scheme k");
    detail::BareSums sums(w);
    Polynomial rhs(w.k);
    for (int i = 1; i <= k && i <= n; ++i) rhs += w.tile(i, 1, n - i) * sums.shifted(n - i, k, i, 0);
    return IdentityReport("recursion", n, std::nullopt, k, w.name, weighted_sum_enumerative(n, k, w), rhs);
}

/// F_{m+n} = F_m(z s^+_n) F_n(z s^-_m)
///         + sum_{i=2}^{k} sum_{j=1}^{i-1} z_i f_{i,m-j+1,n-i+j} F_{m-j}(z s^+_{n+j}) F_{n-i+j}(z s^-_{m+i-j}).
inline IdentityReport verify_convolution(int m, int n, int k, const WeightScheme& w) {
    if (m < 1 || n < 1) throw DomainError("convolution identity needs m >= 1 and n >= 1");
    if (k < 1 || k > w.k) throw DomainError("convolution identity needs 1 <= k <= scheme k");
    detail::BareSums sums(w);
    Polynomial rhs = sums.shifted(m, k, 0, n) * sums.shifted(n, k, m, 0);
    for (int i = 2; i <= k; ++i) {
        for (int j = 1; j <= i - 1; ++j) {
            if (m - j < 0 || n - i + j < 0) continue;
            rhs += w.tile(i, m - j + 1, n - i + j) * sums.shifted(m - j, k, 0, n + j) *
                   sums.shifted(n - i + j, k, m + i - j, 0);
        }
    }
    return IdentityReport("convolution", n, m, k, w.name, weighted_sum_enumerative(m + n, k, w), rhs);
}

/// F_n^k = F_n^{k-1} + sum_{j=0}^{n-k} z_k f_{k,j+1,n-k-j} F_j^{k-1}(z s^+_{n-j}) F_{n-k-j}^k(z s^-_{k+j}).
/// The prefix before the first k-tile uses tiles of length <= k-1 but keeps full-board positions.
inline IdentityReport verify_k_reduction(int n, int k, const WeightScheme& w) {
    if (n < 1) throw DomainError("k-reduction identity needs n >= 1");
    if (k < 2 || k > w.k) throw DomainError("k-reduction identity needs 2 <= k <= scheme k");
    detail::BareSums sums(w);
    Polynomial rhs = sums.get(n, k - 1);
    for (int j = 0; j <= n - k; ++j)
        rhs += w.tile(k, j + 1, n - k - j) * sums.shifted(j, k - 1, 0, n - j) * sums.shifted(n - k - j, k, k + j, 0);
    return IdentityReport("kreduce", n, std::nullopt, k, w.name, weighted_sum_enumerative(n, k, w), rhs);
}

// ---------------------------------------------------------------------------
// Unweighted integer identities

/// F_{m+n} = F_m F_n + sum_{i=2}^{k} sum_{j=1}^{i-1} F_{m-j} F_{n-i+j}, as constants.
inline IdentityReport convolution_count_identity(int m, int n, int k) {
    Integer rhs = fibonacci_k(m, k) * fibonacci_k(n, k);
    for (int i = 2; i <= k; ++i)
        for (int j = 1; j <= i - 1; ++j) rhs += fibonacci_k(m - j, k) * fibonacci_k(n - i + j, k);
    return IdentityReport("convolution-count", n, m, k, "count", Polynomial::constant(k, fibonacci_k(m + n, k)),
                          Polynomial::constant(k, rhs));
}

/// F_n^k = F_n^{k-1} + sum_{j=0}^{n-k} F_j^{k-1} F_{n-k-j}^k, as constants.
inline IdentityReport k_reduction_count_identity(int n, int k) {
    if (k < 2) throw DomainError("k-reduction identity needs k >= 2");
    Integer rhs = fibonacci_k(n, k - 1);
    for (int j = 0; j <= n - k; ++j) rhs += fibonacci_k(j, k - 1) * fibonacci_k(n - k - j, k);
    return IdentityReport("kreduce-count", n, std::nullopt, k, "count", Polynomial::constant(k, fibonacci_k(n, k)),
                          Polynomial::constant(k, rhs));
}

// ---------------------------------------------------------------------------
// Statistic-specific closed forms
//
// Each display_* function writes out one specialized identity with its q-powers
// and shift vectors in closed form, independent of the scheme's B and C, and
// compares it with the distribution computed from the explicit objects.

namespace detail {

struct DisplayShape {
    StatSetPair pair;
    int k;

    bool shifts_front() const {
        return pair.statistic == Statistic::maj || pair.statistic == Statistic::rb;
    }

    // Exponent vector of the displayed shift z -> z q^{...} for an m-board appended in front.
    std::vector<std::int64_t> front(std::int64_t m) const {
        std::vector<std::int64_t> e(k, 0);
        if (!shifts_front()) return e;
        const bool uniform = pair.family == Family::lp || pair.family == Family::lpi;
        for (int l = 1; l <= k; ++l) {
            std::int64_t b = l - 1;
            // a single-entry PRLP layer still follows a descent
            if (pair.family == Family::prlp && l == 1) b = 1;
            e[l - 1] = uniform ? m : b * m;
        }
        return e;
    }
};

inline Polynomial z_q(int ring, int i, std::int64_t q) {
    return Polynomial::variable(ring, i, 1, static_cast<Exponent>(q));
}

inline StatSetPair display_pair(StatSetPair pair) {
    if (!is_valid(pair) || pair.statistic == Statistic::ls)
        throw DomainError("no displayed identities for " + to_string(pair));
    // rb over layered partitions has exactly the maj-over-LP displays.
    if (pair.statistic == Statistic::rb) return {Statistic::maj, Family::lp};
    return pair;
}

}  // namespace detail

/// Recursion display, e.g. for inv-lp: F_n = sum_i z_i q^{i(n-i)} F_{n-i}.
inline IdentityReport display_recursion(StatSetPair pair, int n, int k) {
    const StatSetPair shape = detail::display_pair(pair);
    const WeightScheme w = builtin_scheme(pair, k);
    detail::BareSums sums(w);
    const detail::DisplayShape d{shape, k};
    Polynomial rhs(k);
    for (int i = 1; i <= k && i <= n; ++i) {
        std::int64_t a = 0;
        switch (shape.statistic) {
            case Statistic::inv:
                if (shape.family == Family::lp) a = i * (n - i);
                if (shape.family == Family::rlp) a = choose2(i);
                if (shape.family == Family::prlp) a = choose2(i - 1) + i * (n - i);
                break;
            case Statistic::maj:
                if (shape.family == Family::rlp) a = choose2(i);
                if (shape.family == Family::prlp) a = choose2(i - 1);
                break;
            default: break;
        }
        rhs += detail::z_q(k, i, a) * substitute_z_scale(sums.get(n - i, k), d.front(i));
    }
    return IdentityReport("recursion-display", n, std::nullopt, k, to_string(pair), distribution(pair, n, k), rhs);
}

/// Convolution display, e.g. for maj-lp:
/// F_{m+n} = F_m F_n(z q^m) + sum z_i q^{m-j} F_{m-j} F_{n-i+j}(z q^{m+i-j}).
inline IdentityReport display_convolution(StatSetPair pair, int m, int n, int k) {
    const StatSetPair shape = detail::display_pair(pair);
    const WeightScheme w = builtin_scheme(pair, k);
    detail::BareSums sums(w);
    const detail::DisplayShape d{shape, k};
    const bool trailing_inversions =
        shape.statistic == Statistic::inv && (shape.family == Family::lp || shape.family == Family::prlp);

    Polynomial head = sums.get(m, k) * substitute_z_scale(sums.get(n, k), d.front(m));
    if (trailing_inversions) head = head * Polynomial::q_power(k, static_cast<Exponent>(n * m));
    Polynomial rhs = head;
    for (int i = 2; i <= k; ++i) {
        for (int j = 1; j <= i - 1; ++j) {
            if (m - j < 0 || n - i + j < 0) continue;
            std::int64_t c = 0;
            switch (shape.statistic) {
                case Statistic::inv:
                    if (shape.family == Family::lp) c = i * (n - i + j) + (m - j) * (n + j);
                    if (shape.family == Family::rlp) c = choose2(i);
                    if (shape.family == Family::prlp) c = choose2(i - 1) + i * (n - i + j) + (m - j) * (n + j);
                    break;
                case Statistic::maj:
                    if (shape.family == Family::lp) c = m - j;
                    if (shape.family == Family::rlp) c = (m - j) * (i - 1) + choose2(i);
                    if (shape.family == Family::prlp) c = (m - j) * (i - 1) + choose2(i - 1);
                    break;
                default: break;
            }
            rhs += detail::z_q(k, i, c) * sums.get(m - j, k) *
                   substitute_z_scale(sums.get(n - i + j, k), d.front(m + i - j));
        }
    }
    return IdentityReport("convolution-display", n, m, k, to_string(pair), distribution(pair, m + n, k), rhs);
}

/// k-reduction display, e.g. for inv-rlp: F_n^k = F_n^{k-1} + sum_j z_k q^{C(k,2)} F_j^{k-1} F_{n-k-j}^k.
inline IdentityReport display_k_reduction(StatSetPair pair, int n, int k) {
    if (k < 2) throw DomainError("k-reduction identity needs k >= 2");
    const StatSetPair shape = detail::display_pair(pair);
    const WeightScheme w = builtin_scheme(pair, k);
    detail::BareSums sums(w);
    const detail::DisplayShape d{shape, k};
    Polynomial rhs = sums.get(n, k - 1);
    for (int j = 0; j <= n - k; ++j) {
        std::int64_t c = 0;
        switch (shape.statistic) {
            case Statistic::inv:
                if (shape.family == Family::lp) c = k * (n - k - j) + j * (n - j);
                if (shape.family == Family::rlp) c = choose2(k);
                if (shape.family == Family::prlp) c = choose2(k - 1) + k * (n - k - j) + j * (n - j);
                break;
            case Statistic::maj:
                if (shape.family == Family::lp) c = j;
                if (shape.family == Family::rlp) c = j * (k - 1) + choose2(k);
                if (shape.family == Family::prlp) c = (k - 1) * j + choose2(k - 1);
                break;
            default: break;
        }
        rhs += detail::z_q(k, k, c) * sums.get(j, k - 1) * substitute_z_scale(sums.get(n - k - j, k), d.front(k + j));
    }
    return IdentityReport("kreduce-display", n, std::nullopt, k, to_string(pair), distribution(pair, n, k), rhs);
}

/// Determinant display, e.g. for inv-rlp: +-z_k^{n+k-1} q^{(n+k-1) C(k,2)}, against the exact determinant.
inline IdentityReport display_determinant(StatSetPair pair, int n, int k) {
    const StatSetPair shape = detail::display_pair(pair);
    const MinorSpec spec{n, k};
    const std::int64_t len = n + k - 1;
    const std::int64_t p = spec.p();
    const std::int64_t r = spec.r();
    const std::int64_t kk = k;
    std::int64_t e = 0;
    switch (shape.statistic) {
        case Statistic::inv:
            if (shape.family == Family::lp) e = p * r * kk * kk + kk * kk * kk * choose2(p);
            if (shape.family == Family::rlp) e = len * choose2(k);
            if (shape.family == Family::prlp) e = len * choose2(k - 1) + p * r * kk * kk + kk * kk * kk * choose2(p);
            break;
        case Statistic::maj:
            if (shape.family == Family::lp) e = choose2(len);
            if (shape.family == Family::rlp) e = (kk - 1) * choose2(len) + choose2(k) * len;
            if (shape.family == Family::prlp) e = (kk - 1) * choose2(len) + choose2(k - 1) * len;
            break;
        default: break;
    }
    std::vector<Exponent> z(k, 0);
    z[k - 1] = static_cast<Exponent>(len);
    const Polynomial rhs = Polynomial::monomial(k, closed_form_sign(spec), z, static_cast<Exponent>(e));
    return IdentityReport("det-display", n, std::nullopt, k, to_string(pair),
                          determinant(build_minor(spec, builtin_scheme(pair, k))), rhs);
}

struct SpecializationBounds {
    int k_min = 2;
    int k_max = 4;
    int max_n = 8;
    int max_det_n = 6;
};

/// Generic identities instantiated with the pair's scheme, followed by the
/// closed-form displays, over the whole grid.
inline std::vector<IdentityReport> verify_specializations(StatSetPair pair, const SpecializationBounds& b) {
    if (!is_valid(pair) || pair.statistic == Statistic::ls)
        throw DomainError("no weight scheme for " + to_string(pair));
    std::vector<IdentityReport> out;
    for (int k = b.k_min; k <= b.k_max; ++k) {
        const WeightScheme w = builtin_scheme(pair, k);
        for (int n = 1; n <= b.max_n; ++n) {
            out.push_back(verify_recursion(n, k, w));
            out.push_back(display_recursion(pair, n, k));
        }
        for (int m = 1; m <= b.max_n; ++m) {
            for (int n = 1; n <= b.max_n; ++n) {
                out.push_back(verify_convolution(m, n, k, w));
                out.push_back(display_convolution(pair, m, n, k));
            }
        }
        if (k >= 2) {
            for (int n = 1; n <= b.max_n; ++n) {
                out.push_back(verify_k_reduction(n, k, w));
                out.push_back(display_k_reduction(pair, n, k));
            }
        }
        for (int n = 1; n <= b.max_det_n; ++n) {
            out.push_back(verify_determinant(n, k, w));
            out.push_back(display_determinant(pair, n, k));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized and deliberately broken schemes

/// A(i), B(i), C(i) drawn uniformly from [0, 3] for each i, from a seeded generator.
inline WeightScheme random_scheme(int k, std::uint64_t seed, int index) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));
    std::uniform_int_distribution<int> draw(0, 3);
    auto table = std::make_shared<std::vector<std::array<std::int64_t, 3>>>(k + 1);
    for (int i = 1; i <= k; ++i)
        for (auto& v : (*table)[i]) v = draw(rng);
    auto column = [table](std::size_t c) {
        return [table, c](int i) -> std::int64_t { return (*table)[i][c]; };
    };
    return WeightScheme::separable("random-" + std::to_string(seed) + "-" + std::to_string(index), k, column(0),
                                   column(1), column(2));
}

/// A scheme whose tile exponent gains (sigma - 1) * tau on top of `base`, while
/// still declaring base's shift factors. No q-monomial shift can describe it.
inline WeightScheme corrupted_scheme(const WeightScheme& base) {
    WeightScheme w = base;
    w.name = base.name + "-corrupted";
    w.exponent = [f = base.exponent](int i, std::int64_t sigma, std::int64_t tau) {
        return f(i, sigma, tau) + (sigma - 1) * tau;
    };
    return w;
}

}  // namespace qfib
