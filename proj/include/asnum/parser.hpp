#ifndef ASNUM_PARSER_HPP
#define ASNUM_PARSER_HPP

// Expression parser for polynomials, rational functions and field elements.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-'? factor
//   factor := base ('^' uint)?
//   base   := var | integer | 'g' | '(' expr ')'
//
// '/' binds like '*', so "x^3+1/x" is x^3 + (1/x). Whitespace is ignored.

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"
#include "fields.hpp"
#include "multipoly.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace asnum {

struct Expr {
    enum class Kind { Num, Gen, Var, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    std::size_t offset = 0;
    unsigned long long value = 0;  // Num: literal; Pow: exponent
    std::string name;              // Var
    std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

class ExprParser {
  public:
    ExprParser(std::string text, std::vector<std::string> vars) : s_(std::move(text)), vars_(std::move(vars)) {}

    ExprPtr parse() {
        pos_ = 0;
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

  private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(std::vector<std::string> expected) {
        std::string what = "parse error at offset " + std::to_string(pos_) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) what += (i ? ", " : "") + expected[i];
        if (pos_ < s_.size())
            what += "; found '" + std::string(1, s_[pos_]) + "'";
        else
            what += "; found end of input";
        throw ParseError(pos_, std::move(expected), what);
    }
    std::vector<std::string> base_expected() const {
        std::vector<std::string> e{"integer", "g", "("};
        for (const auto& v : vars_) e.push_back(v);
        return e;
    }

    static std::shared_ptr<Expr> node(Expr::Kind k, std::size_t off, ExprPtr l = nullptr, ExprPtr r = nullptr) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->offset = off;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            skip();
            std::size_t off = pos_;
            if (accept('+'))
                e = node(Expr::Kind::Add, off, e, term());
            else if (accept('-'))
                e = node(Expr::Kind::Sub, off, e, term());
            else
                return e;
        }
    }
    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            skip();
            std::size_t off = pos_;
            if (accept('*'))
                e = node(Expr::Kind::Mul, off, e, unary());
            else if (accept('/'))
                e = node(Expr::Kind::Div, off, e, unary());
            else
                return e;
        }
    }
    ExprPtr unary() {
        skip();
        std::size_t off = pos_;
        if (accept('-')) return node(Expr::Kind::Neg, off, factor());
        return factor();
    }
    ExprPtr factor() {
        ExprPtr b = base();
        skip();
        std::size_t off = pos_;
        if (accept('^')) {
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail({"unsigned integer exponent"});
            auto e = node(Expr::Kind::Pow, off, b);
            e->value = integer();
            return e;
        }
        return b;
    }
    unsigned long long integer() {
        unsigned long long v = 0;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > 1'000'000'000'000ull) {
                pos_ = start;
                fail({"integer below 10^12"});
            }
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }
    ExprPtr base() {
        skip();
        std::size_t off = pos_;
        if (pos_ >= s_.size()) fail(base_expected());
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!accept(')')) fail({")", "+", "-", "*", "/", "^"});
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto e = node(Expr::Kind::Num, off);
            e->value = integer();
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
            std::string id = s_.substr(pos_, end - pos_);
            if (id == "g") {
                pos_ = end;
                return node(Expr::Kind::Gen, off);
            }
            for (const auto& v : vars_)
                if (v == id) {
                    pos_ = end;
                    auto e = node(Expr::Kind::Var, off);
                    e->name = id;
                    return e;
                }
        }
        fail(base_expected());
    }

    std::string s_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

namespace detail {

[[noreturn]] inline void semantic_fail(const Expr& e, const std::string& what, std::vector<std::string> expected) {
    throw ParseError(e.offset, std::move(expected), "at offset " + std::to_string(e.offset) + ": " + what);
}

inline Fq eval_element(const Expr& e, const FieldDescriptor& f) {
    switch (e.kind) {
        case Expr::Kind::Num:
            return Fq(f, static_cast<long long>(e.value % f.p()));
        case Expr::Kind::Gen:
            if (f.k() == 1) semantic_fail(e, "'g' needs an extension field (k > 1)", {"integer"});
            return Fq::generator(f);
        case Expr::Kind::Var:
            semantic_fail(e, "variable '" + e.name + "' in a field element", {"integer", "g"});
        case Expr::Kind::Add:
            return eval_element(*e.lhs, f) + eval_element(*e.rhs, f);
        case Expr::Kind::Sub:
            return eval_element(*e.lhs, f) - eval_element(*e.rhs, f);
        case Expr::Kind::Mul:
            return eval_element(*e.lhs, f) * eval_element(*e.rhs, f);
        case Expr::Kind::Div: {
            Fq d = eval_element(*e.rhs, f);
            if (d.is_zero()) semantic_fail(e, "division by zero", {"nonzero divisor"});
            return eval_element(*e.lhs, f) / d;
        }
        case Expr::Kind::Neg:
            return -eval_element(*e.lhs, f);
        case Expr::Kind::Pow:
            return eval_element(*e.lhs, f).pow(static_cast<long long>(e.value));
    }
    semantic_fail(e, "unsupported expression", {});
}

inline MultiPoly eval_poly(const Expr& e, const FieldDescriptor& f, const std::vector<std::string>& vars) {
    switch (e.kind) {
        case Expr::Kind::Num:
        case Expr::Kind::Gen:
            return MultiPoly::constant(f, vars, eval_element(e, f));
        case Expr::Kind::Var:
            return MultiPoly::variable(f, vars, e.name);
        case Expr::Kind::Add:
            return eval_poly(*e.lhs, f, vars) + eval_poly(*e.rhs, f, vars);
        case Expr::Kind::Sub:
            return eval_poly(*e.lhs, f, vars) - eval_poly(*e.rhs, f, vars);
        case Expr::Kind::Mul:
            return eval_poly(*e.lhs, f, vars) * eval_poly(*e.rhs, f, vars);
        case Expr::Kind::Div: {
            MultiPoly d = eval_poly(*e.rhs, f, vars);
            if (!d.is_constant() || d.is_zero())
                semantic_fail(*e.rhs, "polynomial expression divided by a non-constant or zero", {"nonzero constant"});
            return eval_poly(*e.lhs, f, vars) * d.constant_term().inv();
        }
        case Expr::Kind::Neg:
            return -eval_poly(*e.lhs, f, vars);
        case Expr::Kind::Pow:
            if (e.value > 4096) semantic_fail(e, "exponent too large", {"exponent <= 4096"});
            return eval_poly(*e.lhs, f, vars).pow(static_cast<unsigned>(e.value));
    }
    semantic_fail(e, "unsupported expression", {});
}

inline RationalFunction eval_rational(const Expr& e, const FieldDescriptor& f) {
    switch (e.kind) {
        case Expr::Kind::Num:
        case Expr::Kind::Gen:
            return RationalFunction(UPoly::constant(eval_element(e, f)));
        case Expr::Kind::Var:
            return RationalFunction(UPoly::x(f));
        case Expr::Kind::Add:
            return eval_rational(*e.lhs, f) + eval_rational(*e.rhs, f);
        case Expr::Kind::Sub:
            return eval_rational(*e.lhs, f) - eval_rational(*e.rhs, f);
        case Expr::Kind::Mul:
            return eval_rational(*e.lhs, f) * eval_rational(*e.rhs, f);
        case Expr::Kind::Div: {
            RationalFunction d = eval_rational(*e.rhs, f);
            if (d.is_zero()) semantic_fail(*e.rhs, "division by zero", {"nonzero divisor"});
            return eval_rational(*e.lhs, f) / d;
        }
        case Expr::Kind::Neg:
            return -eval_rational(*e.lhs, f);
        case Expr::Kind::Pow: {
            if (e.value > 4096) semantic_fail(e, "exponent too large", {"exponent <= 4096"});
            RationalFunction b = eval_rational(*e.lhs, f);
            return RationalFunction(b.numerator().pow(static_cast<unsigned>(e.value)),
                                    b.denominator().pow(static_cast<unsigned>(e.value)));
        }
    }
    semantic_fail(e, "unsupported expression", {});
}

}  // namespace detail

inline Fq parse_element(const std::string& text, const FieldDescriptor& f) {
    return detail::eval_element(*ExprParser(text, {}).parse(), f);
}

inline MultiPoly parse_poly(const std::string& text, const FieldDescriptor& f, const std::vector<std::string>& vars) {
    return detail::eval_poly(*ExprParser(text, vars).parse(), f, vars);
}

// Rational function in the single variable x.
inline RationalFunction parse_rational(const std::string& text, const FieldDescriptor& f) {
    return detail::eval_rational(*ExprParser(text, {"x"}).parse(), f);
}

}  // namespace asnum

#endif
