#pragma once

/**
 * @file polyring.hpp
 * @brief Exact sparse polynomials in z_1..z_k and q over arbitrary-precision integers.
 *
 * Every weighted tiling sum in the library is a value of this ring. Terms are
 * kept merged (no two share an exponent vector, no zero coefficients) and in
 * graded lexicographic order on (z_1, ..., z_k, q), highest first, so two
 * polynomials are equal exactly when their term lists are equal.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qfib/error.hpp"

namespace qfib {

using Integer = boost::multiprecision::cpp_int;
using Exponent = std::uint32_t;

struct Monomial {
    Integer coeff;
    std::vector<Exponent> z;  // z[i] is the exponent of z_{i+1}
    Exponent q = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

namespace detail {

// Key layout: z_1..z_k followed by q.
using ExponentKey = std::vector<Exponent>;

struct GrlexGreater {
    bool operator()(const ExponentKey& a, const ExponentKey& b) const {
        const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
        const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

using TermMap = std::map<ExponentKey, Integer, GrlexGreater>;

struct KeyHash {
    std::size_t operator()(const ExponentKey& key) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Exponent e : key) h = (h ^ e) * 0x100000001b3ull;
        return h;
    }
};

}  // namespace detail

class TermAccumulator;

class Polynomial {
public:
    explicit Polynomial(int k) : k_(k) {
        if (k < 1) throw DomainError("polynomial ring needs k >= 1");
    }

    static Polynomial constant(int k, const Integer& c) {
        Polynomial p(k);
        if (c != 0) p.terms_.emplace(detail::ExponentKey(k + 1, 0), c);
        return p;
    }

    static Polynomial one(int k) { return constant(k, 1); }

    static Polynomial monomial(int k, const Integer& coeff, std::span<const Exponent> z, Exponent q) {
        if (static_cast<int>(z.size()) != k)
            throw DomainError("monomial has " + std::to_string(z.size()) + " z exponents, ring has k=" +
                              std::to_string(k));
        Polynomial p(k);
        if (coeff == 0) return p;
        detail::ExponentKey key(z.begin(), z.end());
        key.push_back(q);
        p.terms_.emplace(std::move(key), coeff);
        return p;
    }

    static Polynomial monomial(int k, const Integer& coeff, std::initializer_list<Exponent> z, Exponent q) {
        return monomial(k, coeff, std::span<const Exponent>(z.begin(), z.size()), q);
    }

    // z_i^e q^qe with coefficient 1; i is 1-based.
    static Polynomial variable(int k, int i, Exponent e = 1, Exponent qe = 0) {
        if (i < 1 || i > k) throw DomainError("variable z" + std::to_string(i) + " outside ring k=" + std::to_string(k));
        std::vector<Exponent> z(k, 0);
        z[i - 1] = e;
        return monomial(k, 1, z, qe);
    }

    static Polynomial q_power(int k, Exponent e) {
        std::vector<Exponent> z(k, 0);
        return monomial(k, 1, z, e);
    }

    int k() const noexcept { return k_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    // Terms in canonical order.
    std::vector<Monomial> terms() const {
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        for (const auto& [key, c] : terms_) out.push_back(to_monomial(key, c));
        return out;
    }

    Integer coefficient(std::span<const Exponent> z, Exponent q) const {
        detail::ExponentKey key(z.begin(), z.end());
        key.push_back(q);
        auto it = terms_.find(key);
        return it == terms_.end() ? Integer{0} : it->second;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.k_ == b.k_ && a.terms_ == b.terms_;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_ring(a, b);
        Polynomial out = a;
        for (const auto& [key, c] : b.terms_) out.add_term(key, c);
        return out;
    }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial out = a;
        for (auto& entry : out.terms_) entry.second = -entry.second;
        return out;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_ring(a, b);
        Polynomial out = a;
        for (const auto& [key, c] : b.terms_) out.add_term(key, -c);
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_ring(a, b);
        std::unordered_map<detail::ExponentKey, Integer, detail::KeyHash> acc;
        acc.reserve(a.size() * b.size());
        detail::ExponentKey key(a.k_ + 1);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                for (std::size_t i = 0; i < key.size(); ++i) key[i] = ka[i] + kb[i];
                auto [it, inserted] = acc.try_emplace(key);
                it->second += ca * cb;
            }
        }
        Polynomial out(a.k_);
        for (auto& [k, c] : acc)
            if (c != 0) out.terms_.emplace(k, std::move(c));
        return out;
    }

    Polynomial& operator+=(const Polynomial& b) {
        check_ring(*this, b);
        for (const auto& [key, c] : b.terms_) add_term(key, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& b) {
        check_ring(*this, b);
        for (const auto& [key, c] : b.terms_) add_term(key, -c);
        return *this;
    }

    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    Polynomial scaled(const Integer& c) const {
        Polynomial out(k_);
        if (c == 0) return out;
        for (const auto& [key, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), key, v * c);
        return out;
    }

    // Leading term of (a - b) in canonical order, if a != b.
    friend std::optional<Monomial> first_difference(const Polynomial& a, const Polynomial& b) {
        const Polynomial d = a - b;
        if (d.is_zero()) return std::nullopt;
        const auto& [key, c] = *d.terms_.begin();
        return to_monomial(key, c);
    }

    friend Polynomial substitute_z_scale(const Polynomial& p, std::span<const std::int64_t> e);

private:
    friend class TermAccumulator;

    static void check_ring(const Polynomial& a, const Polynomial& b) {
        if (a.k_ != b.k_) throw RingMismatch(a.k_, b.k_);
    }

    static Monomial to_monomial(const detail::ExponentKey& key, const Integer& c) {
        Monomial m;
        m.coeff = c;
        m.z.assign(key.begin(), key.end() - 1);
        m.q = key.back();
        return m;
    }

    void add_term(const detail::ExponentKey& key, const Integer& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int k_;
    detail::TermMap terms_;
};

// Mutable builder for sums of many monomials; yields an immutable Polynomial.
class TermAccumulator {
public:
    explicit TermAccumulator(int k) : poly_(k) {}

    void add(std::span<const Exponent> z_and_q, const Integer& c = 1) {
        poly_.add_term(detail::ExponentKey(z_and_q.begin(), z_and_q.end()), c);
    }

    void add(const Polynomial& p) {
        if (p.k() != poly_.k()) throw RingMismatch(poly_.k(), p.k());
        for (const auto& [key, c] : p.terms_) poly_.add_term(key, c);
    }

    Polynomial take() && { return std::move(poly_); }

private:
    Polynomial poly_;
};

// z_i -> z_i * q^{e_i}: each term gains sum_i z_exp[i] * e_i in its q exponent.
inline Polynomial substitute_z_scale(const Polynomial& p, std::span<const std::int64_t> e) {
    if (static_cast<int>(e.size()) != p.k())
        throw InvalidShift("shift vector has " + std::to_string(e.size()) + " entries, ring has k=" +
                           std::to_string(p.k()));
    for (auto v : e)
        if (v < 0) throw InvalidShift("negative shift exponent " + std::to_string(v));
    Polynomial out(p.k());
    for (const auto& [key, c] : p.terms_) {
        detail::ExponentKey shifted = key;
        std::int64_t extra = 0;
        for (int i = 0; i < p.k(); ++i) extra += static_cast<std::int64_t>(key[i]) * e[i];
        shifted.back() += static_cast<Exponent>(extra);
        out.add_term(shifted, c);
    }
    return out;
}

inline Polynomial substitute_z_scale(const Polynomial& p, std::initializer_list<std::int64_t> e) {
    return substitute_z_scale(p, std::span<const std::int64_t>(e.begin(), e.size()));
}

inline Integer evaluate(const Polynomial& p, std::span<const Integer> z_vals, const Integer& q_val) {
    if (static_cast<int>(z_vals.size()) != p.k())
        throw DomainError("evaluation point has " + std::to_string(z_vals.size()) + " z values, ring has k=" +
                          std::to_string(p.k()));
    Integer total = 0;
    for (const auto& m : p.terms()) {
        Integer v = m.coeff;
        for (std::size_t i = 0; i < m.z.size(); ++i)
            if (m.z[i] != 0) v *= boost::multiprecision::pow(z_vals[i], m.z[i]);
        if (m.q != 0) v *= boost::multiprecision::pow(q_val, m.q);
        total += v;
    }
    return total;
}

inline Integer evaluate(const Polynomial& p, std::initializer_list<Integer> z_vals, const Integer& q_val) {
    return evaluate(p, std::span<const Integer>(z_vals.begin(), z_vals.size()), q_val);
}

// Value at z = (1, ..., 1), q = 1.
inline Integer evaluate_at_ones(const Polynomial& p) {
    std::vector<Integer> ones(p.k(), 1);
    return evaluate(p, ones, 1);
}

// ---------------------------------------------------------------------------
// Text form
//
//   poly   := "0" | ["-"] term ((" + " | " - ") term)*
//   term   := [coeff "*"] factor ("*" factor)* | coeff
//   factor := ("z" index | "q") ["^" exp]

inline std::string format_monomial_body(const Monomial& m, bool& has_factor) {
    std::string out;
    has_factor = false;
    auto append = [&](const std::string& name, Exponent e) {
        if (e == 0) return;
        if (has_factor) out += '*';
        out += name;
        if (e != 1) out += '^' + std::to_string(e);
        has_factor = true;
    };
    for (std::size_t i = 0; i < m.z.size(); ++i) append("z" + std::to_string(i + 1), m.z[i]);
    append("q", m.q);
    return out;
}

inline std::string format(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : p.terms()) {
        const bool negative = m.coeff < 0;
        const Integer magnitude = negative ? Integer(-m.coeff) : m.coeff;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        bool has_factor = false;
        const std::string body = format_monomial_body(m, has_factor);
        if (!has_factor) {
            out += magnitude.str();
        } else {
            if (magnitude != 1) out += magnitude.str() + "*";
            out += body;
        }
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, int k) : s_(text), k_(k) {}

    Polynomial parse() {
        TermAccumulator acc(k_);
        skip_ws();
        if (pos_ == s_.size()) fail("empty input");
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
            skip_ws();
        }
        parse_term(acc, negative);
        skip_ws();
        while (pos_ < s_.size()) {
            const char sign = peek();
            if (sign != '+' && sign != '-') fail("expected '+' or '-'");
            ++pos_;
            skip_ws();
            parse_term(acc, sign == '-');
            skip_ws();
        }
        return std::move(acc).take();
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    Exponent small_number() {
        const std::size_t start = pos_;
        const std::string d = digits();
        if (d.size() > 9) {
            pos_ = start;
            fail("exponent too large");
        }
        return static_cast<Exponent>(std::stoul(d));
    }

    void parse_term(TermAccumulator& acc, bool negative) {
        ExponentKey key(k_ + 1, 0);
        Integer coeff = 1;
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = Integer(digits());
            if (coeff == 0) fail("zero coefficient");
            if (peek() != '*') need_factor = false;
            else ++pos_;
        }
        if (need_factor) {
            parse_factor(key);
            while (peek() == '*') {
                ++pos_;
                parse_factor(key);
            }
        }
        acc.add(key, negative ? Integer(-coeff) : coeff);
    }

    void parse_factor(ExponentKey& key) {
        std::size_t slot = 0;
        if (peek() == 'z') {
            ++pos_;
            const std::size_t at = pos_;
            const Exponent index = small_number();
            if (index < 1 || static_cast<int>(index) > k_) {
                pos_ = at;
                fail("variable index outside 1.." + std::to_string(k_));
            }
            slot = index - 1;
        } else if (peek() == 'q') {
            ++pos_;
            slot = static_cast<std::size_t>(k_);
        } else {
            fail("expected factor 'z<i>' or 'q'");
        }
        Exponent e = 1;
        if (peek() == '^') {
            ++pos_;
            e = small_number();
        }
        key[slot] += e;
    }

    std::string_view s_;
    int k_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, int k) {
    if (text == "0") return Polynomial(k);
    return detail::PolyParser(text, k).parse();
}

}  // namespace qfib
