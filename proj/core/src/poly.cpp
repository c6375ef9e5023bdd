#include "lalg/poly.hpp"

#include "lalg/error.hpp"

namespace lalg {

Monomial Monomial::var(VarId v, int exp)
{
    Monomial m;
    if (exp < 0)
        fail(Errc::NegativeExponent, "negative exponent");
    if (exp > 0)
        m.factors_.emplace_back(v, exp);
    return m;
}

int Monomial::degree() const
{
    int d = 0;
    for (auto& [v, e] : factors_)
        d += e;
    return d;
}

int Monomial::exponent(VarId v) const
{
    for (auto& [w, e] : factors_)
        if (w == v)
            return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            r.factors_.push_back(*a++);
        else if (b->first < a->first)
            r.factors_.push_back(*b++);
        else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    r.factors_.insert(r.factors_.end(), a, factors_.end());
    r.factors_.insert(r.factors_.end(), b, o.factors_.end());
    return r;
}

bool Monomial::graded_lex_less(const Monomial& a, const Monomial& b)
{
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    // Same degree: lex. Earlier variable with a higher exponent wins.
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (i->first != j->first)
            return i->first > j->first; // the one holding the earlier var is larger
        if (i->second != j->second)
            return i->second < j->second;
        ++i, ++j;
    }
    return false; // equal (same degree, exhausted together)
}

Poly Poly::constant(Rat c)
{
    Poly p;
    if (c != 0)
        p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

Poly Poly::variable(VarId v)
{
    Poly p;
    p.terms_.emplace(Monomial::var(v), Rat(1));
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Poly::constant_value() const
{
    if (terms_.empty())
        return Rat(0);
    if (!is_constant())
        fail(Errc::BadInput, "polynomial is not constant");
    return terms_.begin()->second;
}

int Poly::total_degree() const
{
    if (terms_.empty())
        return -1;
    return terms_.begin()->first.degree(); // leading term has max degree
}

std::set<VarId> Poly::vars() const
{
    std::set<VarId> s;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors())
            s.insert(v);
    return s;
}

bool Poly::depends_on(VarId v) const
{
    for (auto& [m, c] : terms_)
        if (m.exponent(v) != 0)
            return true;
    return false;
}

void Poly::add_term(const Monomial& m, const Rat& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator*(const Rat& c) const
{
    Poly r;
    if (c == 0)
        return r;
    r = *this;
    for (auto& [m, coeff] : r.terms_)
        coeff *= c;
    return r;
}

Poly Poly::pow(int e) const
{
    if (e < 0)
        fail(Errc::NegativeExponent, "negative exponent");
    Poly r = Poly::constant(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

Poly Poly::derivative(VarId v) const
{
    Poly r;
    for (auto& [m, c] : terms_) {
        int e = m.exponent(v);
        if (e == 0)
            continue;
        Monomial dm;
        for (auto& [w, we] : m.factors()) {
            if (w == v) {
                if (we > 1)
                    dm = dm * Monomial::var(w, we - 1);
            } else {
                dm = dm * Monomial::var(w, we);
            }
        }
        r.add_term(dm, c * e);
    }
    return r;
}

Poly Poly::substituted(const std::map<VarId, Poly>& assignment) const
{
    Poly r;
    for (auto& [m, c] : terms_) {
        Poly t = Poly::constant(c);
        for (auto& [v, e] : m.factors()) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                t *= Poly::variable(v).pow(e);
            else
                t *= it->second.pow(e);
        }
        r += t;
    }
    return r;
}

Rat Poly::eval(const std::map<VarId, Rat>& point) const
{
    Rat r(0);
    for (auto& [m, c] : terms_) {
        Rat t = c;
        for (auto& [v, e] : m.factors()) {
            auto it = point.find(v);
            if (it == point.end())
                fail(Errc::MissingVariable, "eval: variable id " + std::to_string(v) + " not assigned");
            Rat p(1);
            for (int k = 0; k < e; ++k)
                p *= it->second;
            t *= p;
        }
        r += t;
    }
    return r;
}

} // namespace lalg
