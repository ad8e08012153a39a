#pragma once

/**
 * @file lgv.hpp
 * @brief Lattice paths in the digraph D_k and the k x k minor of the shifted
 * weighted Fibonacci matrix.
 *
 * D_k has vertices 0, 1, 2, ... and arcs a -> a+d for 1 <= d <= k. An arc of
 * length d leaving vertex a, on a path that ends at b, weighs like a tile of
 * length d at position a+1 with b - a - d cells after it, so the weighted path
 * sum from a to b is F_{b-a}(s^-_a z; q). The minor uses rows u = 0..k-1 and
 * columns v = n+k-1..n+2k-2.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/polyring.hpp"
#include "qfib/report.hpp"
#include "qfib/statistics.hpp"
#include "qfib/tiling.hpp"

namespace qfib {

inline constexpr int kMaxDeterminantDim = 6;
inline constexpr int kMaxPathVertex = 24;

struct MinorSpec {
    int n = 1;
    int k = 1;

    int u(int i) const { return i; }
    int v(int j) const { return n + k - 1 + j; }
    // n + k - 1 = p k + r with 0 <= r < k
    int p() const { return (n + k - 1) / k; }
    int r() const { return (n + k - 1) % k; }

    void check() const {
        if (n < 1) throw DomainError("minor needs n >= 1");
        if (k < 1) throw DomainError("minor needs k >= 1");
    }
};

struct PolyMatrix {
    int dim = 0;
    std::vector<std::vector<Polynomial>> entries;  // row-major

    const Polynomial& at(int i, int j) const { return entries[i][j]; }
};

/// Entry (i, j) is the weighted path sum from u_i to v_j.
inline PolyMatrix build_minor(const MinorSpec& spec, const WeightScheme& w) {
    spec.check();
    if (w.k < spec.k) throw DomainError("scheme ring is smaller than the minor's k");
    PolyMatrix m{spec.k, {}};
    for (int i = 0; i < spec.k; ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j < spec.k; ++j) {
            const int len = spec.v(j) - spec.u(i);
            row.push_back(weighted_sum_enumerative(len, spec.k, w, {spec.u(i), 0}));
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

/// Laplace expansion row by row, memoized on the set of columns still free.
inline Polynomial determinant(const PolyMatrix& mat) {
    const int d = mat.dim;
    if (d > kMaxDeterminantDim)
        throw SizeLimitError("determinant limited to dimension " + std::to_string(kMaxDeterminantDim) + ", got " +
                             std::to_string(d));
    if (d == 0) throw DomainError("empty matrix");
    const int ring = mat.at(0, 0).k();
    std::vector<std::optional<Polynomial>> memo(std::size_t{1} << d);

    // Determinant of rows [row, d) against the columns in `free_cols`.
    auto minor = [&](auto&& self, int row, unsigned free_cols) -> Polynomial {
        if (row == d) return Polynomial::one(ring);
        if (memo[free_cols]) return *memo[free_cols];
        Polynomial sum(ring);
        int position = 0;
        for (int c = 0; c < d; ++c) {
            if (!(free_cols & (1u << c))) continue;
            const Polynomial& a = mat.at(row, c);
            if (!a.is_zero()) {
                const Polynomial term = a * self(self, row + 1, free_cols & ~(1u << c));
                if (position % 2 == 0)
                    sum += term;
                else
                    sum -= term;
            }
            ++position;
        }
        memo[free_cols] = sum;
        return sum;
    };
    return minor(minor, 0, (1u << d) - 1);
}

inline int closed_form_sign(const MinorSpec& spec) {
    if (spec.k % 2 == 1) return 1;
    return (spec.n - 1) % 2 == 0 ? 1 : -1;
}

/// z_k^{n+k-1} prod_{i=1}^{r} f_{k,i,pk} prod_{j=0}^{p-1} prod_{a=1}^{k} f_{k,r+jk+a,(p-j-1)k},
/// negated when k is even and n - 1 is odd.
inline Polynomial closed_form_det(const MinorSpec& spec, const WeightScheme& w) {
    spec.check();
    const int k = spec.k;
    const int p = spec.p();
    const int r = spec.r();
    std::int64_t q = 0;
    for (int i = 1; i <= r; ++i) q += w.f(k, i, static_cast<std::int64_t>(p) * k);
    for (int j = 0; j < p; ++j)
        for (int a = 1; a <= k; ++a) q += w.f(k, r + j * k + a, static_cast<std::int64_t>(p - j - 1) * k);
    std::vector<Exponent> z(w.k, 0);
    z[k - 1] = static_cast<Exponent>(spec.n + k - 1);
    return Polynomial::monomial(w.k, closed_form_sign(spec), z, static_cast<Exponent>(q));
}

struct PathTuple {
    std::vector<std::vector<int>> paths;  // paths[i] is the vertex sequence starting at u_i
    std::vector<int> alpha;               // paths[i] ends at v_{alpha[i]}, 1-based

    int sign() const {
        int inversions = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (std::size_t j = i + 1; j < alpha.size(); ++j)
                if (alpha[i] > alpha[j]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    bool only_arcs_of_length(int len) const {
        for (const auto& path : paths)
            for (std::size_t s = 1; s < path.size(); ++s)
                if (path[s] - path[s - 1] != len) return false;
        return true;
    }
};

inline Polynomial path_weight(const std::vector<int>& path, const WeightScheme& w) {
    Polynomial out = Polynomial::one(w.k);
    const int end = path.back();
    for (std::size_t s = 1; s < path.size(); ++s) {
        const int a = path[s - 1];
        const int len = path[s] - a;
        out = out * w.tile(len, a + 1, end - a - len);
    }
    return out;
}

/// sgn(P) wt(P)
inline Polynomial signed_weight(const PathTuple& t, const WeightScheme& w) {
    Polynomial out = Polynomial::one(w.k);
    for (const auto& path : t.paths) out = out * path_weight(path, w);
    return out.scaled(t.sign());
}

/// All k-tuples of pairwise vertex-disjoint paths from u to v in D_k.
inline std::vector<PathTuple> enumerate_noncrossing_tuples(const MinorSpec& spec) {
    spec.check();
    const int k = spec.k;
    const int last = spec.v(k - 1);
    if (last > kMaxPathVertex)
        throw SizeLimitError("path enumeration limited to n + 2k - 2 <= " + std::to_string(kMaxPathVertex));

    std::vector<bool> occupied(last + 1, false);
    for (int i = 0; i < k; ++i) occupied[spec.u(i)] = true;
    std::vector<std::vector<int>> paths(k);
    std::vector<int> alpha(k, 0);
    std::vector<PathTuple> out;

    auto extend = [&](auto&& self, int which, int at) -> void {
        if (which == k) {
            out.push_back(PathTuple{paths, alpha});
            return;
        }
        const int first_v = spec.v(0);
        if (at >= first_v) {
            alpha[which] = at - first_v + 1;
            if (which + 1 < k) {
                paths[which + 1] = {spec.u(which + 1)};
                self(self, which + 1, spec.u(which + 1));
            } else {
                self(self, which + 1, -1);
            }
            alpha[which] = 0;
        }
        for (int d = 1; d <= k && at + d <= last; ++d) {
            const int next = at + d;
            if (occupied[next]) continue;
            occupied[next] = true;
            paths[which].push_back(next);
            self(self, which, next);
            paths[which].pop_back();
            occupied[next] = false;
        }
    };
    paths[0] = {spec.u(0)};
    extend(extend, 0, spec.u(0));
    return out;
}

/// Unweighted determinant sign: 1 for k odd, (-1)^{n-1} for k even.
inline IdentityReport miles_sign_check(int n, int k) {
    if (n < 1) throw DomainError("miles_sign_check needs n >= 1");
    if (k < 1 || k > 5) throw DomainError("miles_sign_check supports 1 <= k <= 5");
    const MinorSpec spec{n, k};
    const Integer value = evaluate_at_ones(determinant(build_minor(spec, plain_scheme(k))));
    return IdentityReport("det-sign", n, std::nullopt, k, "plain", Polynomial::constant(k, value),
                          Polynomial::constant(k, closed_form_sign(spec)));
}

/// Exact determinant of the minor against the closed form.
inline IdentityReport verify_determinant(int n, int k, const WeightScheme& w) {
    const MinorSpec spec{n, k};
    return IdentityReport("det", n, std::nullopt, k, w.name, determinant(build_minor(spec, w)),
                          closed_form_det(spec, w));
}

}  // namespace qfib
