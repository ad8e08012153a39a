#pragma once

/**
 * @file scheme_spec.hpp
 * @brief Textual weight-scheme specifications.
 *
 *   inv-lp | inv-rlp | inv-prlp | maj-lp | maj-rlp | maj-prlp | rb-lpi
 *   generic:A,B,C            each of A, B, C an integer expression in i,
 *                            optionally prefixed "A=", "B=", "C=";
 *                            e.g. generic:A=i*(i-1)/2,B=0,C=0
 *   generic:a1,b1,c1;a2,b2,c2;...   one constant triple per tile length
 *
 * Expressions: integers, i, + - * /, parentheses and unary minus. Division
 * truncates toward zero.
 */

#include <array>
#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/statistics.hpp"
#include "qfib/tiling.hpp"

namespace qfib {

namespace detail {

struct ExprNode {
    char op = 0;  // 'n' number, 'i' variable, '+', '-', '*', '/', '~' negate
    std::int64_t value = 0;
    std::shared_ptr<const ExprNode> lhs, rhs;

    std::int64_t eval(std::int64_t i) const {
        switch (op) {
            case 'n': return value;
            case 'i': return i;
            case '~': return -lhs->eval(i);
            case '+': return lhs->eval(i) + rhs->eval(i);
            case '-': return lhs->eval(i) - rhs->eval(i);
            case '*': return lhs->eval(i) * rhs->eval(i);
            case '/': {
                const std::int64_t d = rhs->eval(i);
                if (d == 0) throw DomainError("division by zero in scheme expression");
                return lhs->eval(i) / d;
            }
        }
        return 0;
    }
};

using ExprPtr = std::shared_ptr<const ExprNode>;

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t offset) : s_(text), offset_(offset) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static ExprPtr node(char op, ExprPtr a, ExprPtr b) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            e = node(c, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            e = node(c, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return node('~', factor(), nullptr);
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (c == 'i') {
            ++pos_;
            auto n = std::make_shared<ExprNode>();
            n->op = 'i';
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (v > 1'000'000'000) fail("number too large");
                v = v * 10 + (s_[pos_++] - '0');
            }
            auto n = std::make_shared<ExprNode>();
            n->op = 'n';
            n->value = v;
            return n;
        }
        fail("expected number, 'i' or '('");
    }

    std::string_view s_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

}  // namespace detail

/// Builds the scheme named by `spec` for tiles up to length k.
inline WeightScheme parse_scheme_spec(std::string_view spec, int k) {
    if (k < 1) throw DomainError("scheme needs k >= 1");
    constexpr std::string_view prefix = "generic:";
    if (spec.substr(0, prefix.size()) != prefix) {
        const auto pair = parse_pair(spec);
        if (!pair) throw DomainError("unknown statistic pair '" + std::string(spec) + "'");
        return builtin_scheme(*pair, k);
    }
    const std::string_view body = spec.substr(prefix.size());
    const std::string name(spec);

    if (body.find(';') != std::string_view::npos) {
        auto rows = detail::split(body, ';');
        if (static_cast<int>(rows.size()) < k)
            throw DomainError("generic table lists " + std::to_string(rows.size()) + " tile lengths, need " +
                              std::to_string(k));
        auto table = std::make_shared<std::vector<std::array<std::int64_t, 3>>>(rows.size() + 1);
        std::size_t offset = prefix.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto cells = detail::split(rows[r], ',');
            if (cells.size() != 3) throw ParseError("expected three comma-separated values", offset);
            std::size_t cell_offset = offset;
            for (std::size_t c = 0; c < 3; ++c) {
                (*table)[r + 1][c] = detail::ExprParser(cells[c], cell_offset).parse()->eval(0);
                cell_offset += cells[c].size() + 1;
            }
            offset += rows[r].size() + 1;
        }
        auto column = [table](std::size_t c) {
            return [table, c](int i) -> std::int64_t { return (*table)[i][c]; };
        };
        return WeightScheme::separable(name, k, column(0), column(1), column(2));
    }

    auto parts = detail::split(body, ',');
    if (parts.size() != 3) throw ParseError("expected A,B,C", prefix.size());
    std::vector<detail::ExprPtr> exprs;
    std::size_t offset = prefix.size();
    constexpr char labels[] = {'A', 'B', 'C'};
    for (std::size_t c = 0; c < 3; ++c) {
        std::string_view text = parts[c];
        std::size_t local = 0;
        if (text.size() >= 2 && text[1] == '=') {
            if (text[0] != labels[c]) throw ParseError(std::string("expected ") + labels[c] + "=", offset);
            local = 2;
        }
        exprs.push_back(detail::ExprParser(text.substr(local), offset + local).parse());
        offset += parts[c].size() + 1;
    }
    auto fn = [](detail::ExprPtr e) { return [e](int i) -> std::int64_t { return e->eval(i); }; };
    return WeightScheme::separable(name, k, fn(exprs[0]), fn(exprs[1]), fn(exprs[2]));
}

}  // namespace qfib
