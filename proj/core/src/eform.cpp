#include "lalg/eform.hpp"

#include "lalg/error.hpp"

#include <algorithm>

namespace lalg {

EForm EForm::scalar(const Algebroid& alg, Poly f)
{
    EForm w(alg);
    w.add_term({}, f);
    return w;
}

EForm EForm::coframe(const Algebroid& alg, int I)
{
    if (I < 0 || I >= alg.rank())
        fail(Errc::BadInput, "coframe index out of range");
    EForm w(alg);
    w.add_term({I}, Poly::constant(1));
    return w;
}

bool EForm::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    size_t d = terms_.begin()->first.size();
    for (auto& [t, c] : terms_)
        if (t.size() != d)
            return false;
    return true;
}

int EForm::max_degree() const
{
    int d = -1;
    for (auto& [t, c] : terms_)
        d = std::max(d, static_cast<int>(t.size()));
    return d;
}

Poly EForm::coefficient(const IndexTuple& t) const
{
    auto it = terms_.find(t);
    return it == terms_.end() ? Poly{} : it->second;
}

void EForm::add_term(const IndexTuple& t, const Poly& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void EForm::add_term_signed(IndexTuple t, Poly c)
{
    // insertion sort, tracking the parity of transpositions
    bool neg = false;
    for (size_t i = 1; i < t.size(); ++i)
        for (size_t j = i; j > 0 && t[j] <= t[j - 1]; --j) {
            if (t[j] == t[j - 1])
                return; // repeated coframe index
            std::swap(t[j], t[j - 1]);
            neg = !neg;
        }
    add_term(t, neg ? -c : c);
}

EForm EForm::operator-() const
{
    EForm r(*alg_);
    for (auto& [t, c] : terms_)
        r.terms_.emplace(t, -c);
    return r;
}

EForm& EForm::operator+=(const EForm& o)
{
    if (alg_ != o.alg_)
        fail(Errc::AlgebroidMismatch, "forms over different algebroids");
    for (auto& [t, c] : o.terms_)
        add_term(t, c);
    return *this;
}

EForm& EForm::operator-=(const EForm& o)
{
    if (alg_ != o.alg_)
        fail(Errc::AlgebroidMismatch, "forms over different algebroids");
    for (auto& [t, c] : o.terms_)
        add_term(t, -c);
    return *this;
}

EForm EForm::operator*(const Poly& f) const
{
    EForm r(*alg_);
    for (auto& [t, c] : terms_)
        r.add_term(t, c * f);
    return r;
}

bool EForm::operator==(const EForm& o) const
{
    return alg_ == o.alg_ && terms_ == o.terms_;
}

EForm wedge(const EForm& a, const EForm& b)
{
    if (a.alg_ != b.alg_)
        fail(Errc::AlgebroidMismatch, "wedge of forms over different algebroids");
    EForm r(*a.alg_);
    for (auto& [s, cs] : a.terms_)
        for (auto& [t, ct] : b.terms_) {
            IndexTuple u = s;
            u.insert(u.end(), t.begin(), t.end());
            r.add_term_signed(std::move(u), cs * ct);
        }
    return r;
}

EForm EForm::differential() const
{
    const Algebroid& E = *alg_;
    EForm r(E);
    for (auto& [t, f] : terms_) {
        // d f ^ b^t
        for (int i = 0; i < E.dim(); ++i) {
            Poly fi = f.derivative(E.base()[static_cast<size_t>(i)]);
            if (fi.is_zero())
                continue;
            for (int I = 0; I < E.rank(); ++I) {
                Poly c = fi * E.anchor(I, i);
                if (c.is_zero())
                    continue;
                IndexTuple u;
                u.reserve(t.size() + 1);
                u.push_back(I);
                u.insert(u.end(), t.begin(), t.end());
                r.add_term_signed(std::move(u), std::move(c));
            }
        }
        // f * sum_k (-1)^{k-1} b^{t1..} ^ d b^{tk} ^ ..
        for (size_t k = 0; k < t.size(); ++k) {
            int I = t[k];
            bool neg = (k % 2) != 0;
            for (int J = 0; J < E.rank(); ++J)
                for (int K = J + 1; K < E.rank(); ++K) {
                    Poly c = E.structure(I, J, K);
                    if (c.is_zero())
                        continue;
                    IndexTuple u;
                    u.reserve(t.size() + 1);
                    u.insert(u.end(), t.begin(), t.begin() + static_cast<long>(k));
                    u.push_back(J);
                    u.push_back(K);
                    u.insert(u.end(), t.begin() + static_cast<long>(k) + 1, t.end());
                    Poly coeff = f * c;
                    r.add_term_signed(std::move(u), neg ? coeff : -coeff); // d b^I = -C^I_JK b^J^b^K (J<K)
                }
        }
    }
    return r;
}

EForm EForm::contract_unchecked(const Section& s) const
{
    const Algebroid& E = *alg_;
    EForm r(E);
    for (auto& [t, f] : terms_) {
        for (size_t k = 0; k < t.size(); ++k) {
            const Poly& sI = s.comp.at(static_cast<size_t>(t[k]));
            if (sI.is_zero())
                continue;
            IndexTuple u;
            u.reserve(t.size() - 1);
            u.insert(u.end(), t.begin(), t.begin() + static_cast<long>(k));
            u.insert(u.end(), t.begin() + static_cast<long>(k) + 1, t.end());
            Poly c = f * sI;
            r.add_term(u, (k % 2) ? -c : c);
        }
    }
    return r;
}

EForm EForm::contract(const Section& s) const
{
    if (s.rank() != alg_->rank())
        fail(Errc::BadInput, "section has wrong rank");
    for (auto& [t, c] : terms_)
        if (t.empty())
            fail(Errc::DegreeZero, "cannot contract a degree-0 form");
    return contract_unchecked(s);
}

EForm EForm::lie_derivative(const Section& s) const
{
    EForm di = contract_unchecked(s).differential();
    EForm id = differential().contract_unchecked(s);
    return di + id;
}

std::string EForm::print(const VarPool& pool) const
{
    if (terms_.empty())
        return "0";
    // group by degree, then tuple order (map order is already (size-free)
    // lexicographic; re-bucket by size)
    std::map<size_t, std::vector<const std::pair<const IndexTuple, Poly>*>> buckets;
    for (auto& kv : terms_)
        buckets[kv.first.size()].push_back(&kv);
    std::string out;
    bool first = true;
    for (auto& [deg, list] : buckets) {
        std::sort(list.begin(), list.end(),
                  [](auto* a, auto* b) { return a->first < b->first; });
        for (auto* kv : list) {
            const Poly& c = kv->second;
            std::string cs = print_poly(c, pool);
            std::string sep = first ? "" : " + ";
            if (c.terms().size() == 1 && cs.front() == '-') {
                sep = first ? "-" : " - ";
                cs = cs.substr(1);
            }
            first = false;
            if (kv->first.empty()) {
                out += sep + cs;
                continue;
            }
            if (cs == "1")
                cs.clear();
            else if (c.terms().size() > 1)
                cs = "(" + cs + ")*";
            else
                cs += "*";
            out += sep + cs;
            bool sep = false;
            for (int I : kv->first) {
                if (sep)
                    out += "^";
                out += alg_->frame_name(I);
                sep = true;
            }
        }
    }
    return out;
}

EForm parse_eform(std::string_view text, const Algebroid& alg, const VarPool& pool)
{
    // term := ['-'] [coeff '*'] frames | ['-'] coeff ; coeff := '(' poly ')' | poly-atom-product
    // frames := name ('^' name)*
    EForm out(alg);
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto frame_index = [&](const std::string& name) -> int {
        for (int I = 0; I < alg.rank(); ++I)
            if (alg.frame_name(I) == name)
                return I;
        return -1;
    };

    bool first = true;
    while (true) {
        skip();
        if (pos >= text.size())
            break;
        bool neg = false;
        if (!first || text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '+')
                ++pos;
            else if (text[pos] == '-') {
                neg = true;
                ++pos;
            } else if (!first)
                fail(Errc::SyntaxError, "expected '+' or '-' at byte " + std::to_string(pos), pos);
        }
        first = false;
        skip();
        Poly coeff = Poly::constant(1);
        bool have_coeff = false;
        // coefficient: parenthesized poly, number, or a poly of non-frame idents
        size_t save = pos;
        if (pos < text.size() && text[pos] == '(') {
            int depth = 0;
            size_t q = pos;
            for (; q < text.size(); ++q) {
                if (text[q] == '(')
                    ++depth;
                else if (text[q] == ')' && --depth == 0)
                    break;
            }
            if (depth != 0)
                fail(Errc::SyntaxError, "unbalanced parentheses", pos);
            coeff = parse_poly(text.substr(pos + 1, q - pos - 1), pool);
            pos = q + 1;
            have_coeff = true;
        } else {
            // scan a maximal run that parses as a coefficient: digits / idents that are
            // not frame names, joined by '*' '/' '^'
            size_t q = pos;
            while (q < text.size()) {
                char ch = text[q];
                if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                    size_t r = q;
                    while (r < text.size() &&
                           (std::isalnum(static_cast<unsigned char>(text[r])) || text[r] == '_'))
                        ++r;
                    std::string word(text.substr(q, r - q));
                    if (!std::isdigit(static_cast<unsigned char>(ch)) && frame_index(word) >= 0)
                        break;
                    q = r;
                } else if (ch == '*' || ch == '/' || ch == '^' || ch == ' ') {
                    ++q;
                } else {
                    break;
                }
            }
            // backtrack over a trailing '*' that belongs to the frame part
            std::string chunk(text.substr(pos, q - pos));
            while (!chunk.empty() && (chunk.back() == '*' || chunk.back() == ' '))
                chunk.pop_back();
            if (!chunk.empty()) {
                coeff = parse_poly(chunk, pool);
                pos = save + chunk.size();
                have_coeff = true;
            }
        }
        skip();
        if (pos < text.size() && text[pos] == '*')
            ++pos;
        skip();
        // frame part
        IndexTuple tuple;
        while (pos < text.size() &&
               (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            size_t r = pos;
            while (r < text.size() && (std::isalnum(static_cast<unsigned char>(text[r])) || text[r] == '_'))
                ++r;
            std::string word(text.substr(pos, r - pos));
            int I = frame_index(word);
            if (I < 0)
                fail(Errc::SyntaxError, "unknown coframe name '" + word + "'", pos);
            tuple.push_back(I);
            pos = r;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
            } else {
                break;
            }
        }
        if (tuple.empty() && !have_coeff)
            fail(Errc::SyntaxError, "empty term at byte " + std::to_string(pos), pos);
        out.add_term_signed(tuple, neg ? -coeff : coeff);
    }
    return out;
}

AxiomReport verify_axioms_via_d2(const Algebroid& E)
{
    AxiomReport rep;
    for (int i = 0; i < E.dim(); ++i) {
        EForm xi = EForm::scalar(E, Poly::variable(E.base()[static_cast<size_t>(i)]));
        EForm dd = xi.differential().differential();
        if (!dd.is_zero()) {
            rep.anchor_compat = false;
            rep.anchor_witnesses.push_back({{i + 1}, Poly::constant(0)});
        }
    }
    for (int I = 0; I < E.rank(); ++I) {
        EForm dd = EForm::coframe(E, I).differential().differential();
        if (!dd.is_zero()) {
            rep.jacobi = false;
            rep.jacobi_witnesses.push_back({{I + 1}, Poly::constant(0)});
        }
    }
    return rep;
}

} // namespace lalg
