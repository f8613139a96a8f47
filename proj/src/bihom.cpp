#include "crnf/bihom.hpp"

#include "accumulate.hpp"
#include "crnf/error.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace crnf {

namespace {

// Bits of a packed word that belong to variables with index >= n_vars.
std::uint64_t outside_mask(int n_vars)
{
    if (n_vars >= Monomial::kMaxVars) {
        return 0;
    }
    return (std::uint64_t{1} << (8 * (Monomial::kMaxVars - n_vars))) - 1;
}

void require_same_ring(const BihomPoly &a, const BihomPoly &b, const char *what)
{
    if (a.n_vars() != b.n_vars()) {
        std::ostringstream os;
        os << what << ": n_vars mismatch (" << a.n_vars() << " vs " << b.n_vars() << ")";
        throw DimensionError(os.str());
    }
}

// Sorts, merges duplicates and drops zeros.
std::vector<Term> canonical(std::vector<Term> terms)
{
    detail::sort_terms(terms);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff.is_zero()) {
                out.pop_back();
            }
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff.is_zero()) {
        out.pop_back();
    }
    return out;
}

BihomPoly merge(const BihomPoly &a, const BihomPoly &b, bool subtract)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const auto ea = a.terms().end();
    const auto eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && lex_before(ia->mono, ib->mono))) {
            out.push_back(*ia++);
        } else if (ia == ea || lex_before(ib->mono, ia->mono)) {
            out.push_back(subtract ? Term{ib->mono, -ib->coeff} : *ib);
            ++ib;
        } else {
            GaussCoeff c = subtract ? ia->coeff - ib->coeff : ia->coeff + ib->coeff;
            if (!c.is_zero()) {
                out.push_back({ia->mono, std::move(c)});
            }
            ++ia;
            ++ib;
        }
    }
    return BihomBuilder::make(a.n_vars(), a.bidegree(), std::move(out));
}

} // namespace

BihomPoly::BihomPoly(int n_vars, Bidegree bidegree) : n_vars_(n_vars), bidegree_(bidegree)
{
    if (n_vars < 0 || n_vars > Monomial::kMaxVars) {
        throw DimensionError("n_vars out of range");
    }
}

BihomPoly BihomPoly::from_terms(int n_vars, Bidegree bidegree, std::vector<Term> terms)
{
    BihomPoly p(n_vars, bidegree);
    const std::uint64_t mask = outside_mask(n_vars);
    for (const auto &t : terms) {
        if ((t.mono.hol_word() & mask) != 0 || (t.mono.anti_word() & mask) != 0) {
            throw DimensionError("monomial uses a variable beyond n_vars");
        }
        if (t.mono.holo_degree() != bidegree.m || t.mono.anti_degree() != bidegree.n) {
            std::ostringstream os;
            os << "monomial of bidegree (" << t.mono.holo_degree() << "," << t.mono.anti_degree()
               << ") in a part of bidegree (" << bidegree.m << "," << bidegree.n << ")";
            throw DimensionError(os.str());
        }
    }
    p.terms_ = canonical(std::move(terms));
    return p;
}

BihomPoly BihomPoly::monomial(int n_vars, const Monomial &mono, GaussCoeff coeff)
{
    std::vector<Term> t;
    t.push_back({mono, std::move(coeff)});
    return from_terms(n_vars, {mono.holo_degree(), mono.anti_degree()}, std::move(t));
}

BihomPoly BihomPoly::constant(int n_vars, GaussCoeff value)
{
    return monomial(n_vars, Monomial(), std::move(value));
}

GaussCoeff BihomPoly::coeff(const Monomial &mono) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                               [](const Term &t, const Monomial &m) { return lex_before(t.mono, m); });
    if (it != terms_.end() && it->mono == mono) {
        return it->coeff;
    }
    return {};
}

BihomPoly &BihomPoly::operator+=(const BihomPoly &o)
{
    require_same_ring(*this, o, "add");
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        bidegree_ = o.bidegree_;
        terms_ = o.terms_;
        return *this;
    }
    if (bidegree_ != o.bidegree_) {
        throw DimensionError("add: bidegree mismatch");
    }
    *this = merge(*this, o, false);
    return *this;
}

BihomPoly &BihomPoly::operator-=(const BihomPoly &o)
{
    require_same_ring(*this, o, "sub");
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        bidegree_ = o.bidegree_;
        terms_.clear();
        for (const auto &t : o.terms_) {
            terms_.push_back({t.mono, -t.coeff});
        }
        return *this;
    }
    if (bidegree_ != o.bidegree_) {
        throw DimensionError("sub: bidegree mismatch");
    }
    *this = merge(*this, o, true);
    return *this;
}

BihomPoly &BihomPoly::operator*=(const GaussCoeff &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

BihomPoly BihomPoly::conjugate() const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        out.push_back({t.mono.conjugate(), t.coeff.conj()});
    }
    detail::sort_terms(out);
    return BihomBuilder::make(n_vars_, {bidegree_.n, bidegree_.m}, std::move(out));
}

BihomPoly BihomPoly::derive(int k, bool anti) const
{
    if (k < 0 || k >= n_vars_) {
        throw DimensionError("derive: variable index out of range");
    }
    Bidegree bd = bidegree_;
    int &slot = anti ? bd.n : bd.m;
    slot = std::max(slot - 1, 0);
    std::vector<Term> out;
    for (const auto &t : terms_) {
        const int e = anti ? t.mono.dzb(k) : t.mono.dz(k);
        if (e > 0) {
            out.push_back({t.mono.lowered(k, anti), t.coeff * GaussCoeff(e)});
        }
    }
    // Lowering one fixed exponent keeps lex order.
    return BihomBuilder::make(n_vars_, bd, std::move(out));
}

BihomPoly BihomPoly::trace(int iterations) const
{
    if (iterations < 0) {
        throw DimensionError("trace: negative iteration count");
    }
    if (iterations > std::min(bidegree_.m, bidegree_.n)) {
        return BihomPoly(n_vars_, {std::max(bidegree_.m - iterations, 0), std::max(bidegree_.n - iterations, 0)});
    }
    BihomPoly cur = *this;
    for (int it = 0; it < iterations; ++it) {
        std::vector<Term> out;
        for (const auto &t : cur.terms_) {
            for (int k = 0; k < n_vars_; ++k) {
                const int a = t.mono.dz(k);
                const int b = t.mono.dzb(k);
                if (a > 0 && b > 0) {
                    out.push_back({t.mono.lowered(k, false).lowered(k, true), t.coeff * GaussCoeff(a * b)});
                }
            }
        }
        cur = BihomBuilder::make(n_vars_, {cur.bidegree_.m - 1, cur.bidegree_.n - 1}, canonical(std::move(out)));
    }
    return cur;
}

GaussCoeff BihomPoly::evaluate(std::span<const GaussCoeff> point) const
{
    if (point.size() != static_cast<std::size_t>(n_vars_)) {
        throw DimensionError("evaluate: point has the wrong length");
    }
    // powers[k][e] = point_k^e, cpowers for the conjugate.
    const int top = std::max(bidegree_.m, bidegree_.n);
    std::vector<std::vector<GaussCoeff>> pw(point.size()), cpw(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        pw[k].push_back(GaussCoeff(1));
        cpw[k].push_back(GaussCoeff(1));
        for (int e = 1; e <= top; ++e) {
            pw[k].push_back(pw[k].back() * point[k]);
            cpw[k].push_back(cpw[k].back() * point[k].conj());
        }
    }
    GaussCoeff sum;
    for (const auto &t : terms_) {
        GaussCoeff v = t.coeff;
        for (int k = 0; k < n_vars_; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            if (t.mono.dz(k) > 0) {
                v *= pw[uk][static_cast<std::size_t>(t.mono.dz(k))];
            }
            if (t.mono.dzb(k) > 0) {
                v *= cpw[uk][static_cast<std::size_t>(t.mono.dzb(k))];
            }
        }
        sum += v;
    }
    return sum;
}

BihomPoly operator+(BihomPoly a, const BihomPoly &b)
{
    a += b;
    return a;
}

BihomPoly operator-(BihomPoly a, const BihomPoly &b)
{
    a -= b;
    return a;
}

BihomPoly operator-(BihomPoly a)
{
    a *= GaussCoeff(-1);
    return a;
}

BihomPoly operator*(BihomPoly a, const GaussCoeff &c)
{
    a *= c;
    return a;
}

BihomPoly operator*(const GaussCoeff &c, BihomPoly a)
{
    a *= c;
    return a;
}

BihomPoly operator*(const BihomPoly &a, const BihomPoly &b)
{
    require_same_ring(a, b, "mul");
    const Bidegree bd{a.bidegree().m + b.bidegree().m, a.bidegree().n + b.bidegree().n};
    if (a.is_zero() || b.is_zero()) {
        return BihomPoly(a.n_vars(), bd);
    }
    Integer da(1);
    Integer db(1);
    detail::lcm_into(da, a.terms());
    detail::lcm_into(db, b.terms());
    detail::IntTerms ia;
    detail::IntTerms ib;
    detail::integerize_into(ia, a.terms(), da);
    detail::integerize_into(ib, b.terms(), db);
    detail::ProductAccumulator acc;
    acc.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < ia.monos.size(); ++i) {
        for (std::size_t j = 0; j < ib.monos.size(); ++j) {
            acc.add_product(ia, i, ib, j);
        }
    }
    auto terms = acc.take(da * db);
    detail::sort_terms(terms);
    return BihomBuilder::make(a.n_vars(), bd, std::move(terms));
}

BihomPoly power(const BihomPoly &a, int k)
{
    if (k < 0) {
        throw DimensionError("power: negative exponent");
    }
    BihomPoly result = BihomPoly::constant(a.n_vars(), GaussCoeff(1));
    for (int i = 0; i < k; ++i) {
        result = result * a;
    }
    return result;
}

BihomPoly hermitian_quadric(int n_vars)
{
    if (n_vars < 1) {
        throw DimensionError("hermitian_quadric: n_vars must be positive");
    }
    std::vector<Term> terms;
    for (int k = 0; k < n_vars; ++k) {
        terms.push_back({Monomial::z(k) * Monomial::zbar(k), GaussCoeff(1)});
    }
    return BihomPoly::from_terms(n_vars, {1, 1}, std::move(terms));
}

const BihomPoly &quadric_power(int n_vars, int k)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, BihomPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(n_vars, k);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    BihomPoly p = k == 0 ? BihomPoly::constant(n_vars, GaussCoeff(1)) : power(hermitian_quadric(n_vars), k);
    return cache.emplace(key, std::move(p)).first->second;
}

PurePoly coordinate(int n_vars, int k)
{
    if (k < 0 || k >= n_vars) {
        throw DimensionError("coordinate: index out of range");
    }
    return BihomPoly::monomial(n_vars, Monomial::z(k));
}

PurePoly linear_form(std::span<const GaussCoeff> coefficients)
{
    const int n = static_cast<int>(coefficients.size());
    std::vector<Term> terms;
    for (int k = 0; k < n; ++k) {
        terms.push_back({Monomial::z(k), coefficients[static_cast<std::size_t>(k)]});
    }
    return BihomPoly::from_terms(n, {1, 0}, std::move(terms));
}

std::vector<GaussCoeff> linear_coefficients(const PurePoly &p)
{
    if (!p.is_zero() && p.bidegree() != Bidegree{1, 0}) {
        throw DimensionError("linear_coefficients: not a linear pure polynomial");
    }
    std::vector<GaussCoeff> out(static_cast<std::size_t>(p.n_vars()));
    for (const auto &t : p.terms()) {
        for (int k = 0; k < p.n_vars(); ++k) {
            if (t.mono.dz(k) == 1) {
                out[static_cast<std::size_t>(k)] = t.coeff;
            }
        }
    }
    return out;
}

std::vector<GaussCoeff> to_dense(const BihomPoly &p)
{
    const auto &basis = monomials_of_bidegree(p.n_vars(), p.bidegree().m, p.bidegree().n);
    std::vector<GaussCoeff> out(basis.size());
    for (const auto &t : p.terms()) {
        out[monomial_index(p.n_vars(), t.mono)] = t.coeff;
    }
    return out;
}

BihomPoly from_dense(int n_vars, Bidegree bidegree, std::span<const GaussCoeff> coords)
{
    const auto &basis = monomials_of_bidegree(n_vars, bidegree.m, bidegree.n);
    if (coords.size() != basis.size()) {
        throw DimensionError("from_dense: coordinate vector has the wrong length");
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!coords[i].is_zero()) {
            terms.push_back({basis[i], coords[i]});
        }
    }
    return BihomBuilder::make(n_vars, bidegree, std::move(terms));
}

PurePoly substitute_linear(const PurePoly &p, std::span<const GaussCoeff> matrix)
{
    const int n = p.n_vars();
    if (!p.is_pure()) {
        throw DimensionError("substitute_linear: polynomial is not pure");
    }
    if (matrix.size() != static_cast<std::size_t>(n * n)) {
        throw DimensionError("substitute_linear: matrix has the wrong size");
    }
    std::vector<PurePoly> images;
    for (int j = 0; j < n; ++j) {
        images.push_back(linear_form(matrix.subspan(static_cast<std::size_t>(j * n), static_cast<std::size_t>(n))));
    }
    PurePoly out(n, p.bidegree());
    for (const auto &t : p.terms()) {
        PurePoly term = BihomPoly::constant(n, t.coeff);
        for (int j = 0; j < n; ++j) {
            for (int e = 0; e < t.mono.dz(j); ++e) {
                term = term * images[static_cast<std::size_t>(j)];
            }
        }
        out += term;
    }
    return out;
}

} // namespace crnf
