#pragma once

// Recursive-descent parsing of coefficient expressions.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-'? factor
//   factor  := base ('^' nonneg-integer)?
//   base    := 'z' | integer | '(' expr ')'
//
// parse_expsum additionally accepts  exp(<rate> * z),  sqrt(<rational>)  and
// parameter names, with division restricted to single-term divisors.

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include "hayman/constant_field.hpp"
#include "hayman/expsum.hpp"
#include "hayman/ratfunc.hpp"

namespace hayman
{

namespace detail
{

template <class Value>
class Parser
{
public:
    using Lookup = const std::map<std::string, FieldConstant>*;

    Parser(std::string_view text, bool extended, Lookup params) : text_(text), extended_(extended), params_(params) {}

    Value parse()
    {
        skip();
        if (at_end())
            fail("empty expression");
        Value v = expr();
        skip();
        if (!at_end())
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const
    {
        throw Error(ErrorCode::SyntaxError, msg + " at position " + std::to_string(pos), pos);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    Value expr()
    {
        Value acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Value term()
    {
        Value acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                skip();
                std::size_t at = pos_;
                Value d = unary();
                acc = divide(acc, d, at);
            } else {
                return acc;
            }
        }
    }

    Value unary()
    {
        if (accept('-'))
            return -factor();
        return factor();
    }

    Value factor()
    {
        Value b = base();
        if (accept('^')) {
            skip();
            std::size_t at = pos_;
            if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("exponent must be a nonnegative integer");
            Integer n = integer();
            if (n > 4096)
                fail_at("exponent too large", at);
            return power(b, static_cast<unsigned>(n.get_ui()));
        }
        return b;
    }

    Integer integer()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Value base()
    {
        skip();
        if (at_end())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Value(RatFunc(FieldConstant(Rational(integer()))));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "z")
                return Value(RatFunc::z());
            if (!extended_)
                fail_at("unknown identifier '" + name + "'", start);
            return special(name, start);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Value special(const std::string& name, std::size_t start)
    {
        if constexpr (std::is_same_v<Value, ExpSum>) {
            if (name == "exp") {
                expect('(');
                skip();
                std::size_t at = pos_;
                ExpSum inner = expr();
                expect(')');
                auto r = inner.as_ratfunc();
                if (!r || !r->is_polynomial() || r->numerator().degree() > 1 || !r->numerator().coefficient(0).is_zero())
                    fail_at("exp argument must have the form rate * z", at);
                return ExpSum::exp_term(r->numerator().coefficient(1));
            }
            if (name == "sqrt") {
                expect('(');
                skip();
                std::size_t at = pos_;
                ExpSum inner = expr();
                expect(')');
                auto r = inner.as_ratfunc();
                auto c = r ? r->constant_value() : std::nullopt;
                if (!c || !c->is_rational())
                    fail_at("sqrt argument must be a rational constant", at);
                return ExpSum(sqrt_constant(*c).root);
            }
            if (params_) {
                auto it = params_->find(name);
                if (it != params_->end())
                    return ExpSum(it->second);
            }
        }
        fail_at("unknown identifier '" + name + "'", start);
    }

    static Value power(const Value& b, unsigned n)
    {
        if constexpr (std::is_same_v<Value, RatFunc>) {
            return b.pow(n);
        } else {
            ExpSum acc(1);
            for (unsigned i = 0; i < n; ++i)
                acc = acc * b;
            return acc;
        }
    }

    Value divide(const Value& a, const Value& d, std::size_t at) const
    {
        if (d.is_zero())
            throw Error(ErrorCode::ZeroDenominatorLiteral, "denominator is identically zero at position " + std::to_string(at),
                        at);
        if constexpr (std::is_same_v<Value, RatFunc>) {
            return a / d;
        } else {
            if (d.terms().size() != 1)
                fail_at("divisor must be a single exponential term", at);
            const ExpTerm& t = d.terms().front();
            return a * ExpSum::exp_term(-t.rate, RatFunc(1) / t.coeff);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    bool extended_;
    Lookup params_;
};

} // namespace detail

inline RatFunc parse_ratfunc(std::string_view text)
{
    return detail::Parser<RatFunc>(text, false, nullptr).parse();
}

inline ExpSum parse_expsum(std::string_view text, const std::map<std::string, FieldConstant>& params = {})
{
    return detail::Parser<ExpSum>(text, true, &params).parse();
}

// A numeric literal such as "3/2", "-1" or "1/2*sqrt(-2)".
inline FieldConstant parse_constant(std::string_view text)
{
    auto r = parse_expsum(text).as_ratfunc();
    auto c = r ? r->constant_value() : std::nullopt;
    if (!c)
        throw Error(ErrorCode::InvalidArgument, "not a constant: " + std::string(text));
    return *c;
}

} // namespace hayman
