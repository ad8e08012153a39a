#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfib/identities.hpp"
#include "qfib/statistics.hpp"

using qfib::Family;
using qfib::Integer;
using qfib::Polynomial;
using qfib::Statistic;
using qfib::StatSetPair;
using qfib::WeightScheme;

namespace {

constexpr int kMaxN = 7;

std::vector<WeightScheme> schemes_for(int k) {
    std::vector<WeightScheme> out;
    for (const auto& pair : qfib::schemed_pairs()) out.push_back(qfib::builtin_scheme(pair, k));
    for (int r = 0; r < 3; ++r) out.push_back(qfib::random_scheme(k, 12345, r));
    return out;
}

// Sum over tilings of a board with `before`/`after` untiled cells, via the oracle.
Polynomial boxed(int n, int k, const WeightScheme& w, int before, int after) {
    return oracle::weighted_sum(n, k, w.k, w.exponent, before, after);
}

}  // namespace

TEST(Identities, GenericIdentitiesHoldForCoherentSchemes) {
    for (int k = 2; k <= 4; ++k) {
        for (const auto& w : schemes_for(k)) {
            for (int n = 1; n <= kMaxN; ++n) {
                ASSERT_TRUE(qfib::verify_recursion(n, k, w).pass) << w.name << " n=" << n;
                ASSERT_TRUE(qfib::verify_k_reduction(n, k, w).pass) << w.name << " n=" << n;
                for (int m = 1; m <= kMaxN; ++m)
                    ASSERT_TRUE(qfib::verify_convolution(m, n, k, w).pass) << w.name << " m=" << m << " n=" << n;
            }
        }
    }
}

TEST(Identities, RecursionAndConvolutionAlsoHoldForKEqualsOne) {
    const auto w = qfib::random_scheme(1, 3, 0);
    for (int n = 1; n <= kMaxN; ++n) {
        EXPECT_TRUE(qfib::verify_recursion(n, 1, w).pass);
        for (int m = 1; m <= kMaxN; ++m) EXPECT_TRUE(qfib::verify_convolution(m, n, 1, w).pass);
    }
}

// The convolution split read directly off tilings with appended cells: the break
// after cell m, or a tile i straddling it with j cells on the left.
TEST(Identities, ConvolutionSplitAgreesWithAppendedCellOracle) {
    for (int k = 2; k <= 4; ++k) {
        for (const auto& w : schemes_for(k)) {
            for (int m = 1; m <= 5; ++m) {
                for (int n = 1; n <= 5; ++n) {
                    Polynomial rhs = boxed(m, k, w, 0, n) * boxed(n, k, w, m, 0);
                    for (int i = 2; i <= k; ++i)
                        for (int j = 1; j <= i - 1; ++j)
                            if (m - j >= 0 && n - i + j >= 0)
                                rhs += w.tile(i, m - j + 1, n - i + j) * boxed(m - j, k, w, 0, n + j) *
                                       boxed(n - i + j, k, w, m + i - j, 0);
                    ASSERT_EQ(boxed(m + n, k, w, 0, 0), rhs) << w.name;
                    ASSERT_EQ(qfib::verify_convolution(m, n, k, w).rhs, rhs) << w.name;
                }
            }
        }
    }
}

TEST(Identities, IntegerSpecializationsAtOnes) {
    for (int k = 2; k <= 5; ++k) {
        for (int n = 1; n <= 10; ++n) {
            EXPECT_TRUE(qfib::k_reduction_count_identity(n, k).pass);
            // oracle: plain recurrence arithmetic
            std::uint64_t rhs = oracle::kbonacci(n, k - 1);
            for (int j = 0; j <= n - k; ++j) rhs += oracle::kbonacci(j, k - 1) * oracle::kbonacci(n - k - j, k);
            EXPECT_EQ(rhs, oracle::kbonacci(n, k));
            for (int m = 1; m <= 10; ++m) EXPECT_TRUE(qfib::convolution_count_identity(m, n, k).pass);
        }
    }
    // the weighted identities collapse to the counts at z = 1, q = 1
    const auto w = qfib::builtin_scheme({Statistic::maj, Family::rlp}, 3);
    const auto r = qfib::verify_convolution(4, 5, 3, w);
    EXPECT_EQ(qfib::evaluate_at_ones(r.lhs), qfib::fibonacci_k(9, 3));
    EXPECT_EQ(qfib::evaluate_at_ones(r.rhs), qfib::fibonacci_k(9, 3));
}

TEST(Identities, DisplayedSpecializationsHold) {
    for (const auto& pair : qfib::schemed_pairs()) {
        for (int k = 2; k <= 4; ++k) {
            for (int n = 1; n <= kMaxN; ++n) {
                ASSERT_TRUE(qfib::display_recursion(pair, n, k).pass) << qfib::to_string(pair) << " n=" << n;
                ASSERT_TRUE(qfib::display_k_reduction(pair, n, k).pass) << qfib::to_string(pair) << " n=" << n;
                for (int m = 1; m <= kMaxN; ++m)
                    ASSERT_TRUE(qfib::display_convolution(pair, m, n, k).pass)
                        << qfib::to_string(pair) << " m=" << m << " n=" << n << " k=" << k;
            }
        }
    }
}

// The inv-over-LP convolution with the straddling tile weighted q^{i(n+j)}
// instead of q^{i(n-i+j)} does not reproduce the distribution.
TEST(Identities, InvLpConvolutionNeedsTauOfTheStraddlingTile) {
    const StatSetPair pair{Statistic::inv, Family::lp};
    const int k = 2, m = 2, n = 2;
    auto F = [&](int len) { return qfib::distribution(pair, len, k); };
    auto build = [&](bool literal) {
        Polynomial rhs = Polynomial::q_power(k, n * m) * F(m) * F(n);
        for (int i = 2; i <= k; ++i)
            for (int j = 1; j <= i - 1; ++j) {
                const int tile = literal ? i * (n + j) : i * (n - i + j);
                rhs += Polynomial::variable(k, i, 1, static_cast<qfib::Exponent>(tile + (m - j) * (n + j))) * F(m - j) *
                       F(n - i + j);
            }
        return rhs;
    };
    EXPECT_EQ(build(false), F(m + n));
    EXPECT_NE(build(true), F(m + n));
}

TEST(Identities, CorruptedSchemeIsCaughtWithAWitness) {
    for (const auto& pair : qfib::schemed_pairs()) {
        const auto bad = qfib::corrupted_scheme(qfib::builtin_scheme(pair, 3));
        EXPECT_FALSE(qfib::validate_weight_scheme(bad, 6).ok());
        bool caught = false;
        for (int m = 1; m <= 4 && !caught; ++m)
            for (int n = 1; n <= 4 && !caught; ++n) {
                const auto r = qfib::verify_convolution(m, n, 3, bad);
                if (!r.pass) {
                    caught = true;
                    ASSERT_TRUE(r.witness.has_value());
                    EXPECT_NE(r.witness->coeff, 0);
                    EXPECT_NE(qfib::summary_line(r).find("witness="), std::string::npos);
                }
            }
        EXPECT_TRUE(caught) << qfib::to_string(pair);
    }
}

TEST(Identities, RecursionIgnoresTheBackShiftSoCorruptionShowsElsewhere) {
    // the corruption (sigma - 1) tau vanishes on first tiles, but the shifted
    // remainder still carries it
    const auto bad = qfib::corrupted_scheme(qfib::plain_scheme(2));
    bool any = false;
    for (int n = 1; n <= 6; ++n) any = any || !qfib::verify_recursion(n, 2, bad).pass;
    EXPECT_TRUE(any);
}

TEST(Identities, ReportsCarryParameters) {
    const auto w = qfib::builtin_scheme({Statistic::inv, Family::rlp}, 3);
    const auto r = qfib::verify_convolution(2, 5, 3, w);
    EXPECT_EQ(r.identity, "convolution");
    EXPECT_EQ(r.n, 5);
    EXPECT_EQ(r.m, 2);
    EXPECT_EQ(r.k, 3);
    EXPECT_EQ(r.scheme, "inv-rlp");
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(qfib::summary_line(r), "PASS convolution n=5 m=2 k=3 scheme=inv-rlp");
}

TEST(Identities, RandomSchemesAreSeededAndReproducible) {
    const auto a = qfib::random_scheme(4, 99, 2);
    const auto b = qfib::random_scheme(4, 99, 2);
    const auto c = qfib::random_scheme(4, 100, 2);
    EXPECT_EQ(a.name, "random-99-2");
    bool differs = false;
    for (int i = 1; i <= 4; ++i)
        for (int s = 1; s <= 3; ++s)
            for (int t = 0; t <= 3; ++t) {
                EXPECT_EQ(a.f(i, s, t), b.f(i, s, t));
                differs = differs || a.f(i, s, t) != c.f(i, s, t);
            }
    EXPECT_TRUE(differs);
}

TEST(Identities, ArgumentChecks) {
    const auto w = qfib::plain_scheme(3);
    EXPECT_THROW(qfib::verify_recursion(0, 3, w), qfib::DomainError);
    EXPECT_THROW(qfib::verify_convolution(0, 2, 3, w), qfib::DomainError);
    EXPECT_THROW(qfib::verify_k_reduction(3, 1, w), qfib::DomainError);
    EXPECT_THROW(qfib::verify_k_reduction(3, 4, w), qfib::DomainError);
    EXPECT_THROW(qfib::display_recursion({Statistic::ls, Family::lpi}, 3, 2), qfib::DomainError);
}
