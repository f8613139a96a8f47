#include "crnf/series.hpp"

#include "accumulate.hpp"
#include "crnf/error.hpp"

#include <sstream>

namespace crnf {

namespace {

void require_same_ring(const MixedSeries &a, const MixedSeries &b, const char *what)
{
    if (a.n_vars() != b.n_vars()) {
        std::ostringstream os;
        os << what << ": n_vars mismatch (" << a.n_vars() << " vs " << b.n_vars() << ")";
        throw DimensionError(os.str());
    }
}

} // namespace

MixedSeries::MixedSeries(int n_vars, int max_degree) : n_vars_(n_vars), max_degree_(max_degree)
{
    if (n_vars < 0 || n_vars > Monomial::kMaxVars) {
        throw DimensionError("n_vars out of range");
    }
    if (max_degree < 0) {
        throw DimensionError("negative truncation degree");
    }
}

MixedSeries MixedSeries::from_poly(const BihomPoly &p, int max_degree)
{
    MixedSeries s(p.n_vars(), max_degree);
    s.add(p);
    return s;
}

BihomPoly MixedSeries::part(int m, int n) const
{
    if (const auto *p = find(m, n)) {
        return *p;
    }
    return BihomPoly(n_vars_, {m, n});
}

const BihomPoly *MixedSeries::find(int m, int n) const
{
    auto it = parts_.find({m, n});
    return it == parts_.end() ? nullptr : &it->second;
}

void MixedSeries::add(const BihomPoly &p)
{
    if (p.n_vars() != n_vars_) {
        throw DimensionError("add: n_vars mismatch");
    }
    if (p.is_zero() || p.degree() > max_degree_) {
        return;
    }
    auto [it, inserted] = parts_.try_emplace(p.bidegree(), p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) {
            parts_.erase(it);
        }
    }
}

void MixedSeries::subtract(const BihomPoly &p)
{
    add(-p);
}

void MixedSeries::set(const BihomPoly &p)
{
    if (p.n_vars() != n_vars_) {
        throw DimensionError("set: n_vars mismatch");
    }
    parts_.erase(p.bidegree());
    if (!p.is_zero() && p.degree() <= max_degree_) {
        parts_.emplace(p.bidegree(), p);
    }
}

void MixedSeries::erase(int m, int n)
{
    parts_.erase({m, n});
}

MixedSeries MixedSeries::truncated(int d) const
{
    MixedSeries out(n_vars_, std::min(d, max_degree_));
    for (const auto &[bd, p] : parts_) {
        if (bd.total() <= out.max_degree_) {
            out.parts_.emplace(bd, p);
        }
    }
    return out;
}

MixedSeries MixedSeries::homogeneous(int d) const
{
    MixedSeries out(n_vars_, max_degree_);
    for (const auto &[bd, p] : parts_) {
        if (bd.total() == d) {
            out.parts_.emplace(bd, p);
        }
    }
    return out;
}

MixedSeries &MixedSeries::operator+=(const MixedSeries &o)
{
    require_same_ring(*this, o, "add");
    if (o.max_degree_ < max_degree_) {
        *this = truncated(o.max_degree_);
    }
    for (const auto &[bd, p] : o.parts_) {
        add(p);
    }
    return *this;
}

MixedSeries &MixedSeries::operator-=(const MixedSeries &o)
{
    require_same_ring(*this, o, "sub");
    if (o.max_degree_ < max_degree_) {
        *this = truncated(o.max_degree_);
    }
    for (const auto &[bd, p] : o.parts_) {
        subtract(p);
    }
    return *this;
}

MixedSeries &MixedSeries::operator*=(const GaussCoeff &c)
{
    if (c.is_zero()) {
        parts_.clear();
        return *this;
    }
    for (auto &[bd, p] : parts_) {
        p *= c;
    }
    return *this;
}

MixedSeries MixedSeries::conjugate() const
{
    MixedSeries out(n_vars_, max_degree_);
    for (const auto &[bd, p] : parts_) {
        out.parts_.emplace(Bidegree{bd.n, bd.m}, p.conjugate());
    }
    return out;
}

MixedSeries MixedSeries::derive(int k, bool anti) const
{
    if (k < 0 || k >= n_vars_) {
        throw DimensionError("derive: variable index out of range");
    }
    MixedSeries out(n_vars_, max_degree_);
    for (const auto &[bd, p] : parts_) {
        out.add(p.derive(k, anti));
    }
    return out;
}

MixedSeries MixedSeries::trace(int iterations) const
{
    MixedSeries out(n_vars_, max_degree_);
    for (const auto &[bd, p] : parts_) {
        out.add(p.trace(iterations));
    }
    return out;
}

GaussCoeff MixedSeries::evaluate(std::span<const GaussCoeff> point) const
{
    GaussCoeff sum;
    for (const auto &[bd, p] : parts_) {
        sum += p.evaluate(point);
    }
    return sum;
}

MixedSeries operator+(MixedSeries a, const MixedSeries &b)
{
    a += b;
    return a;
}

MixedSeries operator-(MixedSeries a, const MixedSeries &b)
{
    a -= b;
    return a;
}

MixedSeries operator-(MixedSeries a)
{
    a *= GaussCoeff(-1);
    return a;
}

MixedSeries operator*(MixedSeries a, const GaussCoeff &c)
{
    a *= c;
    return a;
}

MixedSeries operator*(const GaussCoeff &c, MixedSeries a)
{
    a *= c;
    return a;
}

MixedSeries operator*(const MixedSeries &a, const MixedSeries &b)
{
    return multiply_truncated(a, b, std::min(a.max_degree(), b.max_degree()));
}

MixedSeries multiply_truncated(const MixedSeries &a, const MixedSeries &b, int max_degree)
{
    require_same_ring(a, b, "mul");
    const int d = std::min({max_degree, a.max_degree(), b.max_degree()});
    MixedSeries out(a.n_vars(), d);
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    // One shared denominator per operand keeps the inner loop in integers.
    Integer da(1);
    Integer db(1);
    for (const auto &[bd, p] : a.parts()) {
        detail::lcm_into(da, p.terms());
    }
    for (const auto &[bd, p] : b.parts()) {
        detail::lcm_into(db, p.terms());
    }
    struct Block {
        Bidegree bd;
        detail::IntTerms terms;
    };
    auto integerize = [](const MixedSeries &s, const Integer &den) {
        std::vector<Block> blocks;
        for (const auto &[bd, p] : s.parts()) {
            Block blk{bd, {}};
            detail::integerize_into(blk.terms, p.terms(), den);
            blocks.push_back(std::move(blk));
        }
        return blocks;
    };
    const auto ba = integerize(a, da);
    const auto bb = integerize(b, db);
    std::map<Bidegree, detail::ProductAccumulator> acc;
    for (const auto &x : ba) {
        for (const auto &y : bb) {
            if (x.bd.total() + y.bd.total() > d) {
                continue;
            }
            auto &slot = acc[Bidegree{x.bd.m + y.bd.m, x.bd.n + y.bd.n}];
            for (std::size_t i = 0; i < x.terms.monos.size(); ++i) {
                for (std::size_t j = 0; j < y.terms.monos.size(); ++j) {
                    slot.add_product(x.terms, i, y.terms, j);
                }
            }
        }
    }
    const Integer den = da * db;
    for (auto &[bd, slot] : acc) {
        auto terms = slot.take(den);
        if (terms.empty()) {
            continue;
        }
        detail::sort_terms(terms);
        out.set(BihomBuilder::make(a.n_vars(), bd, std::move(terms)));
    }
    return out;
}

WeightOrder weight_and_order(const MixedSeries &p, int s)
{
    WeightOrder wo;
    for (const auto &[bd, poly] : p.parts()) {
        const int w = bd.m + (s - 1) * bd.n;
        const int o = bd.total();
        if (!wo.weight || w < *wo.weight) {
            wo.weight = w;
        }
        if (!wo.order || o < *wo.order) {
            wo.order = o;
        }
    }
    return wo;
}

} // namespace crnf
