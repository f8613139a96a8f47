#pragma once

// Fraction-free product accumulation shared by BihomPoly and MixedSeries.

#include "crnf/bihom.hpp"

#include <algorithm>
#include <unordered_map>

namespace crnf {

class BihomBuilder {
public:
    /// Trusts the caller: terms sorted by lex_before, nonzero, right bidegree.
    static BihomPoly make(int n_vars, Bidegree bd, std::vector<Term> terms)
    {
        BihomPoly p(n_vars, bd);
        p.terms_ = std::move(terms);
        return p;
    }
};

namespace detail {

/// Terms rescaled to integer numerators over one shared denominator.
struct IntTerms {
    std::vector<Monomial> monos;
    std::vector<Integer> re;
    std::vector<Integer> im;
    std::vector<bool> real;
};

inline void lcm_into(Integer &acc, const std::vector<Term> &terms)
{
    for (const auto &t : terms) {
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), t.coeff.re.get_den_mpz_t());
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), t.coeff.im.get_den_mpz_t());
    }
}

inline void integerize_into(IntTerms &out, const std::vector<Term> &terms, const Integer &den)
{
    Integer tmp;
    for (const auto &t : terms) {
        out.monos.push_back(t.mono);
        mpz_divexact(tmp.get_mpz_t(), den.get_mpz_t(), t.coeff.re.get_den_mpz_t());
        out.re.emplace_back(tmp * t.coeff.re.get_num());
        mpz_divexact(tmp.get_mpz_t(), den.get_mpz_t(), t.coeff.im.get_den_mpz_t());
        out.im.emplace_back(tmp * t.coeff.im.get_num());
        out.real.push_back(sgn(t.coeff.im) == 0);
    }
}

struct IntPair {
    Integer re;
    Integer im;
};

class ProductAccumulator {
public:
    void add_product(const IntTerms &a, std::size_t i, const IntTerms &b, std::size_t j)
    {
        IntPair &slot = acc_[a.monos[i] * b.monos[j]];
        mpz_addmul(slot.re.get_mpz_t(), a.re[i].get_mpz_t(), b.re[j].get_mpz_t());
        if (a.real[i] && b.real[j]) {
            return;
        }
        mpz_submul(slot.re.get_mpz_t(), a.im[i].get_mpz_t(), b.im[j].get_mpz_t());
        mpz_addmul(slot.im.get_mpz_t(), a.re[i].get_mpz_t(), b.im[j].get_mpz_t());
        mpz_addmul(slot.im.get_mpz_t(), a.im[i].get_mpz_t(), b.re[j].get_mpz_t());
    }

    /// Adds a[i]'s coefficient times b[j] under b[j]'s monomial alone.
    void add_scaled(const IntTerms &a, std::size_t i, const IntTerms &b, std::size_t j)
    {
        IntPair &slot = acc_[b.monos[j]];
        mpz_addmul(slot.re.get_mpz_t(), a.re[i].get_mpz_t(), b.re[j].get_mpz_t());
        if (a.real[i] && b.real[j]) {
            return;
        }
        mpz_submul(slot.re.get_mpz_t(), a.im[i].get_mpz_t(), b.im[j].get_mpz_t());
        mpz_addmul(slot.im.get_mpz_t(), a.re[i].get_mpz_t(), b.im[j].get_mpz_t());
        mpz_addmul(slot.im.get_mpz_t(), a.im[i].get_mpz_t(), b.re[j].get_mpz_t());
    }

    void reserve(std::size_t n) { acc_.reserve(n); }

    /// Hands each nonzero integer entry to `sink(mono, re, im)`, then clears.
    template <class Sink>
    void take_integers(Sink &&sink)
    {
        for (auto &[mono, v] : acc_) {
            if (sgn(v.re) != 0 || sgn(v.im) != 0) {
                sink(mono, v.re, v.im);
            }
        }
        acc_.clear();
    }

    /// Nonzero terms divided by `den`, unsorted.
    std::vector<Term> take(const Integer &den)
    {
        std::vector<Term> out;
        out.reserve(acc_.size());
        for (auto &[mono, v] : acc_) {
            if (sgn(v.re) == 0 && sgn(v.im) == 0) {
                continue;
            }
            Rational re(v.re, den);
            Rational im(v.im, den);
            re.canonicalize();
            im.canonicalize();
            out.push_back({mono, GaussCoeff(std::move(re), std::move(im))});
        }
        acc_.clear();
        return out;
    }

private:
    std::unordered_map<Monomial, IntPair> acc_;
};

inline void sort_terms(std::vector<Term> &terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return lex_before(a.mono, b.mono); });
}

} // namespace detail
} // namespace crnf
