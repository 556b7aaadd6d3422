#pragma once

// Infix expressions over one named variable, evaluated to exact rational
// functions:  (2*j+3)/(j-1),  z^2-1/3,  -x^-2.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ('+' | '-')? integer | '(' ('+' | '-')? integer ')'
//   primary := integer | variable | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>

#include "rational_function.hpp"

namespace dpint {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::string variable) : s_(text), var_(std::move(variable)) {}

    QFunc parse() {
        QFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    QFunc expr() {
        QFunc v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    QFunc term() {
        QFunc v = unary();
        for (;;) {
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                std::size_t at = pos_;
                QFunc d = unary();
                if (d.is_zero()) throw ParseError(at, "division by zero");
                v = v / d;
            } else {
                return v;
            }
        }
    }

    QFunc unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    long exponent() {
        bool paren = eat('(');
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        if (pos_ - start > 6) throw ParseError(start, "exponent too large");
        long e = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren && !eat(')')) fail("expected ')'");
        return neg ? -e : e;
    }

    QFunc power() {
        std::size_t base_pos = (skip_ws(), pos_);
        QFunc base = primary();
        if (!eat('^')) return base;
        long e = exponent();
        if (e < 0) {
            if (base.is_zero()) throw ParseError(base_pos, "zero raised to a negative power");
            base = base.inverse();
            e = -e;
        }
        QFunc acc(1);
        for (long k = 0; k < e; ++k) acc = acc * base;
        return acc;
    }

    QFunc primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QFunc v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return QFunc(BigRational(BigInt(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name != var_) throw ParseError(start, "unknown identifier '" + name + "' (variable is '" + var_ + "')");
            return QFunc(QPoly::variable(BigRational(1)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::string var_;
    std::size_t pos_ = 0;
};

/// Parses `text` as a rational function of `variable`.
inline QFunc parse_expression(std::string_view text, const std::string& variable) {
    return ExpressionParser(text, variable).parse();
}

}  // namespace dpint
