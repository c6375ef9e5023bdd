#include "lalg/parser.hpp"

#include "lalg/error.hpp"

#include <cctype>

namespace lalg {

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    char peek()
    {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c)
    {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

struct Parser {
    Lexer lx;
    const VarPool& pool;
    const std::optional<std::set<VarId>>& allowed;

    [[noreturn]] void syntax(const std::string& what)
    {
        fail(Errc::SyntaxError, what + " at byte " + std::to_string(lx.pos), lx.pos);
    }

    Int integer()
    {
        lx.skip_ws();
        size_t start = lx.pos;
        while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])))
            ++lx.pos;
        if (lx.pos == start)
            syntax("expected integer");
        return Int(std::string(lx.text.substr(start, lx.pos - start)));
    }

    Poly atom()
    {
        char c = lx.peek();
        if (c == '-') {
            ++lx.pos;
            return -factor();
        }
        if (c == '(') {
            ++lx.pos;
            Poly p = expr();
            if (!lx.eat(')'))
                syntax("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = integer();
            if (lx.peek() == '/') {
                ++lx.pos;
                Int den = integer();
                if (den == 0)
                    syntax("zero denominator");
                return Poly::constant(Rat(num, den));
            }
            return Poly::constant(Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = lx.pos;
            while (lx.pos < lx.text.size() &&
                   (std::isalnum(static_cast<unsigned char>(lx.text[lx.pos])) || lx.text[lx.pos] == '_'))
                ++lx.pos;
            std::string name(lx.text.substr(start, lx.pos - start));
            if (!pool.contains(name))
                throw Error(Errc::UndeclaredVariable, "undeclared variable '" + name + "'", start);
            VarId id = pool.find(name);
            if (allowed && !allowed->count(id))
                throw Error(Errc::UndeclaredVariable,
                            "variable '" + name + "' not allowed in this context", start);
            return Poly::variable(id);
        }
        if (c == '\0')
            syntax("unexpected end of input");
        syntax(std::string("unexpected character '") + c + "'");
    }

    Poly factor()
    {
        Poly base = atom();
        while (lx.peek() == '^') {
            ++lx.pos;
            if (lx.peek() == '-')
                throw Error(Errc::NegativeExponent, "negative exponent at byte " + std::to_string(lx.pos),
                            lx.pos);
            Int e = integer();
            if (e > 64)
                syntax("exponent too large");
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }

    Poly term()
    {
        Poly p = factor();
        while (lx.peek() == '*') {
            ++lx.pos;
            p *= factor();
        }
        return p;
    }

    Poly expr()
    {
        Poly p = term();
        for (;;) {
            char c = lx.peek();
            if (c == '+') {
                ++lx.pos;
                p += term();
            } else if (c == '-') {
                ++lx.pos;
                p -= term();
            } else {
                return p;
            }
        }
    }
};

} // namespace

Poly parse_poly(std::string_view text, const VarPool& pool, const std::optional<std::set<VarId>>& allowed)
{
    Parser ps{Lexer{text}, pool, allowed};
    Poly p = ps.expr();
    ps.lx.skip_ws();
    if (ps.lx.pos != text.size())
        ps.syntax("trailing input");
    return p;
}

std::string print_rat(const Rat& r)
{
    return r.str();
}

std::string print_poly(const Poly& p, const VarPool& pool)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0)
                a = -a;
        }
        first = false;

        bool coeff_one = (a == 1) && !m.is_one();
        if (!coeff_one)
            out += print_rat(a);
        bool need_star = !coeff_one;
        for (auto& [v, e] : m.factors()) {
            if (need_star)
                out += "*";
            out += pool.name(v);
            if (e > 1)
                out += "^" + std::to_string(e);
            need_star = true;
        }
    }
    return out;
}

} // namespace lalg
