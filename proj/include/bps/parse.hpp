#pragma once

// Text syntax for exact values: "(1+sqrt(5))/2", "sqrt(2)", "3/2", "1.25",
// "1/sqrt(2)". Decimal literals parse as exact rationals. Exponents parse
// as reduced fractions ("13/12").

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bps/surd.hpp"

namespace bps {

namespace detail {

class SurdParser {
public:
    explicit SurdParser(std::string_view text) : text_(text) {}

    QuadraticSurd parse() {
        QuadraticSurd v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    QuadraticSurd expr() {
        QuadraticSurd v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') { ++pos_; v = v + term(); }
            else if (peek() == '-') { ++pos_; v = v - term(); }
            else return v;
        }
    }

    QuadraticSurd term() {
        QuadraticSurd v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') { ++pos_; v = v * factor(); }
            else if (peek() == '/') {
                ++pos_;
                QuadraticSurd w = factor();
                if (w.is_zero()) fail("division by zero");
                v = v / w;
            } else return v;
        }
    }

    QuadraticSurd factor() {
        skip_ws();
        if (peek() == '-') { ++pos_; return -factor(); }
        if (peek() == '+') { ++pos_; return factor(); }
        return primary();
    }

    QuadraticSurd primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            QuadraticSurd v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (text_.substr(pos_).starts_with("sqrt")) {
            pos_ += 4;
            expect('(');
            QuadraticSurd arg = expr();
            expect(')');
            if (!arg.is_rational()) fail("sqrt argument must be rational");
            return QuadraticSurd::sqrt_of(arg.as_rational());
        }
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected token '") + c + "'");
    }

    QuadraticSurd number() {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (peek() == '.') {
            ++pos_;
            size_t fstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            std::string frac(text_.substr(fstart, pos_ - fstart));
            if (frac.empty()) fail("malformed decimal literal");
            mpz_class num(digits + frac);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            return QuadraticSurd(std::move(num), 0, 0, std::move(den));
        }
        return QuadraticSurd(mpz_class(digits), 0, 0, 1);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() { while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_; }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error in \"" + std::string(text_) + "\" at offset " +
                                    std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    size_t pos_ = 0;
};

} // namespace detail

inline QuadraticSurd parse_surd(std::string_view text) {
    return detail::SurdParser(text).parse();
}

// "13/12", "2", or a decimal like "1.25" (reduced exactly)
inline RationalExponent parse_exponent(std::string_view text) {
    QuadraticSurd v = parse_surd(text);
    if (!v.is_rational() || v.sign() <= 0) throw std::invalid_argument("exponent must be a positive rational");
    mpq_class q = v.as_rational();
    if (!q.get_num().fits_ulong_p() || !q.get_den().fits_ulong_p())
        throw std::invalid_argument("exponent out of range");
    return RationalExponent(q.get_num().get_ui(), q.get_den().get_ui());
}

} // namespace bps
