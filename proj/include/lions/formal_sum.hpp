#pragma once

#include "lions/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace lions {

// Rational linear combination of basis elements, keyed by canonical_key(B).
// Zero coefficients are never stored.
template <class B>
class FormalSum {
public:
    struct Term {
        B basis;
        Rational coeff;
    };
    using Map = std::map<std::string, Term>;

    FormalSum() = default;
    explicit FormalSum(const B& b, const Rational& c = Rational(1)) { add(b, c); }

    void add(const B& b, const Rational& c)
    {
        if (c == 0)
            return;
        std::string k = canonical_key(b);
        add_keyed(k, b, c);
    }

    void add_keyed(const std::string& k, const B& b, const Rational& c)
    {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, Term{b, c});
            return;
        }
        it->second.coeff += c;
        if (it->second.coeff == 0)
            terms_.erase(it);
    }

    FormalSum& operator+=(const FormalSum& o)
    {
        for (const auto& [k, t] : o.terms_)
            add_keyed(k, t.basis, t.coeff);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o)
    {
        for (const auto& [k, t] : o.terms_)
            add_keyed(k, t.basis, -t.coeff);
        return *this;
    }
    FormalSum& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_)
            kv.second.coeff *= s;
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
    friend FormalSum operator*(const Rational& s, FormalSum a) { return a *= s; }

    Rational coeff(const B& b) const
    {
        auto it = terms_.find(canonical_key(b));
        return it == terms_.end() ? Rational(0) : it->second.coeff;
    }
    Rational coeff_of_key(const std::string& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second.coeff;
    }

    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    template <class F>
    FormalSum filter(F keep) const
    {
        FormalSum out;
        for (const auto& [k, t] : terms_)
            if (keep(t.basis))
                out.terms_.emplace(k, t);
        return out;
    }

    // Linear extension of a basis map B -> FormalSum<C>.
    template <class C, class F>
    FormalSum<C> map_linear(F f) const
    {
        FormalSum<C> out;
        for (const auto& [k, t] : terms_) {
            FormalSum<C> img = f(t.basis);
            img *= t.coeff;
            out += img;
        }
        return out;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, t] : terms_) {
            if (!first)
                s += " + ";
            first = false;
            s += t.coeff.get_str() + " * " + k;
        }
        return s;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second.coeff != ib->second.coeff)
                return false;
        return true;
    }
    friend bool operator!=(const FormalSum& a, const FormalSum& b) { return !(a == b); }

private:
    Map terms_;
};

// Bilinear extension of a basis product B x B -> FormalSum<C>.
template <class C, class A, class B, class F>
FormalSum<C> lift_bilinear(const FormalSum<A>& x, const FormalSum<B>& y, F prod)
{
    FormalSum<C> out;
    for (const auto& [ka, ta] : x.terms())
        for (const auto& [kb, tb] : y.terms()) {
            FormalSum<C> img = prod(ta.basis, tb.basis);
            img *= ta.coeff * tb.coeff;
            out += img;
        }
    return out;
}

} // namespace lions
