#include <string>

#include <gtest/gtest.h>

#include "qfib/scheme_spec.hpp"
#include "qfib/statistics.hpp"
#include "qfib/tiling.hpp"

using qfib::parse_scheme_spec;

namespace {

bool same_exponents(const qfib::WeightScheme& a, const qfib::WeightScheme& b, int k) {
    for (int i = 1; i <= k; ++i) {
        if (a.shift_before(i) != b.shift_before(i) || a.shift_after(i) != b.shift_after(i)) return false;
        for (int s = 1; s <= 6; ++s)
            for (int t = 0; t <= 6; ++t)
                if (a.f(i, s, t) != b.f(i, s, t)) return false;
    }
    return true;
}

std::size_t error_position(const std::string& spec, int k) {
    try {
        (void)parse_scheme_spec(spec, k);
    } catch (const qfib::ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

}  // namespace

TEST(SchemeSpec, NamedPairs) {
    for (const auto& pair : qfib::schemed_pairs()) {
        const auto w = parse_scheme_spec(qfib::to_string(pair), 4);
        EXPECT_EQ(w.name, qfib::to_string(pair));
        EXPECT_TRUE(same_exponents(w, qfib::builtin_scheme(pair, 4), 4));
    }
    EXPECT_THROW(parse_scheme_spec("ls-lpi", 3), qfib::UnsupportedScheme);
    EXPECT_THROW(parse_scheme_spec("foo-lp", 3), qfib::DomainError);
}

TEST(SchemeSpec, ExpressionsInI) {
    const auto inv_rlp = qfib::builtin_scheme({qfib::Statistic::inv, qfib::Family::rlp}, 4);
    EXPECT_TRUE(same_exponents(parse_scheme_spec("generic:i*(i-1)/2,0,0", 4), inv_rlp, 4));
    EXPECT_TRUE(same_exponents(parse_scheme_spec("generic:A=i*(i-1)/2,B=0,C=0", 4), inv_rlp, 4));
    EXPECT_TRUE(same_exponents(parse_scheme_spec("generic: i * ( i - 1 ) / 2 , 0 , 0", 4), inv_rlp, 4));

    const auto w = parse_scheme_spec("generic:2,i,-(-i)+1", 3);
    EXPECT_EQ(w.f(2, 3, 4), 2 + 2 * 2 + 3 * 4);
    EXPECT_EQ(w.shift_before(3), 3);
    EXPECT_EQ(w.shift_after(1), 2);
    EXPECT_EQ(w.name, "generic:2,i,-(-i)+1");
}

TEST(SchemeSpec, PerLengthTable) {
    const auto w = parse_scheme_spec("generic:0,1,0;1,1,2;3,0,0", 3);
    EXPECT_EQ(w.f(1, 5, 2), 4);
    EXPECT_EQ(w.f(2, 5, 2), 1 + 4 + 4);
    EXPECT_EQ(w.f(3, 5, 2), 3);
    EXPECT_TRUE(qfib::validate_weight_scheme(w, 6).ok());
    // the table may list more lengths than needed, not fewer
    EXPECT_NO_THROW(parse_scheme_spec("generic:0,1,0;1,1,2;3,0,0", 2));
    EXPECT_THROW(parse_scheme_spec("generic:0,1,0;1,1,2", 3), qfib::DomainError);
}

TEST(SchemeSpec, ErrorsPointIntoTheSpec) {
    EXPECT_EQ(error_position("generic:1,2", 2), 8u);
    EXPECT_EQ(error_position("generic:1,2,x", 2), 12u);
    EXPECT_EQ(error_position("generic:1,(2,3", 2), 12u);
    EXPECT_EQ(error_position("generic:1,B=2,D=3", 2), 14u);
    EXPECT_EQ(error_position("generic:0,0,0;1,1", 2), 14u);
    EXPECT_THROW(parse_scheme_spec("generic:1/0,0,0", 2).f(1, 1, 0), qfib::DomainError);
    EXPECT_THROW(parse_scheme_spec("inv-lp", 0), qfib::DomainError);
}
