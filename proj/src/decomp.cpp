#include "crnf/decomp.hpp"

#include "crnf/error.hpp"
#include "crnf/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace crnf {

namespace {

// Inverse of Q -> tr^k(Q <z,z>^k) on bidegree (m, n), cached per shape.
const Matrix<Rational> &trace_system_inverse(int n_vars, int m, int n, int k)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<Matrix<Rational>>> cache;
    const auto key = std::make_tuple(n_vars, m, n, k);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return *it->second;
        }
    }
    const auto &basis = monomials_of_bidegree(n_vars, m, n);
    const BihomPoly &q = quadric_power(n_vars, k);
    Matrix<Rational> a(basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const BihomPoly image = (BihomPoly::monomial(n_vars, basis[c]) * q).trace(k);
        for (const auto &t : image.terms()) {
            a(monomial_index(n_vars, t.mono), c) = t.coeff.re;
        }
    }
    auto inv = inverse(a);
    if (!inv) {
        throw DomainError("trace system is singular");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::make_unique<Matrix<Rational>>(std::move(*inv)));
    return *it->second;
}

Integer factorial_weight(const Monomial &mono, int n_vars)
{
    Integer w(1);
    for (int k = 0; k < n_vars; ++k) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(mono.dz(k)));
        w *= f;
    }
    return w;
}

// Product of falling factorials e!/(e-d)! over the variables.
Integer falling_weight(const Monomial &num, const Monomial &den, int n_vars)
{
    Integer w(1);
    for (int k = 0; k < n_vars; ++k) {
        for (int i = 0; i < den.dz(k); ++i) {
            w *= num.dz(k) - i;
        }
    }
    return w;
}

void require_pure(const PurePoly &p, const char *what)
{
    if (!p.is_pure()) {
        std::ostringstream os;
        os << what << ": expected a pure polynomial";
        throw DimensionError(os.str());
    }
}

// Coefficients c solving Gram(c) = <P, u_i>, restricted to the given vectors.
std::vector<GaussCoeff> gram_solve(const std::vector<PurePoly> &vecs, const PurePoly &p)
{
    const std::size_t n = vecs.size();
    Matrix<GaussCoeff> g(n, n);
    std::vector<GaussCoeff> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = fischer_inner(vecs[j], vecs[i]);
            if (j != i) {
                g(j, i) = g(i, j).conj();
            }
        }
        rhs[i] = fischer_inner(p, vecs[i]);
    }
    auto x = solve(g, rhs);
    if (!x) {
        throw DomainError("Fischer Gram matrix is singular");
    }
    return *x;
}

} // namespace

InvariantData invariants_from_delta(const PurePoly &delta)
{
    require_pure(delta, "invariants_from_delta");
    InvariantData inv;
    if (delta.is_zero()) {
        return inv;
    }
    inv.s = delta.degree();
    inv.delta = delta;
    for (int k = 0; k < delta.n_vars(); ++k) {
        inv.delta_partials.push_back(delta.derive(k, false));
    }
    auto nd = is_nondegenerate(delta);
    inv.nondegenerate = nd.nondegenerate;
    inv.witness = std::move(nd.witness);
    return inv;
}

TraceSplit trace_decompose(const BihomPoly &p, int n)
{
    const int nv = p.n_vars();
    const Bidegree bd = p.bidegree();
    if (n < 0) {
        throw DimensionError("trace_decompose: negative power");
    }
    if (n == 0) {
        return {p, BihomPoly(nv, bd)};
    }
    const Bidegree qbd{bd.m - n, bd.n - n};
    if (qbd.m < 0 || qbd.n < 0) {
        return {BihomPoly(nv, {std::max(qbd.m, 0), std::max(qbd.n, 0)}), p};
    }
    if (p.is_zero()) {
        return {BihomPoly(nv, qbd), p};
    }
    const Matrix<Rational> &inv = trace_system_inverse(nv, qbd.m, qbd.n, n);
    const auto rhs = to_dense(p.trace(n));
    std::vector<Rational> re(rhs.size());
    std::vector<Rational> im(rhs.size());
    bool has_im = false;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        re[i] = rhs[i].re;
        im[i] = rhs[i].im;
        has_im = has_im || sgn(rhs[i].im) != 0;
    }
    const auto qre = inv.apply(re);
    const auto qim = has_im ? inv.apply(im) : std::vector<Rational>(rhs.size());
    std::vector<GaussCoeff> q(rhs.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = GaussCoeff(qre[i], qim[i]);
    }
    BihomPoly quotient = from_dense(nv, qbd, q);
    BihomPoly remainder = p - quotient * quadric_power(nv, n);
    return {std::move(quotient), std::move(remainder)};
}

PurePoly fischer_apply(const PurePoly &v, const PurePoly &p)
{
    require_pure(v, "fischer_apply");
    require_pure(p, "fischer_apply");
    if (v.n_vars() != p.n_vars()) {
        throw DimensionError("fischer_apply: n_vars mismatch");
    }
    const int nv = p.n_vars();
    const int d = p.degree() - v.degree();
    if (d < 0) {
        return PurePoly(nv, {0, 0});
    }
    std::vector<Term> out;
    for (const auto &tv : v.terms()) {
        const GaussCoeff cb = tv.coeff.conj();
        for (const auto &tp : p.terms()) {
            if (!tv.mono.divides(tp.mono)) {
                continue;
            }
            const Integer w = falling_weight(tp.mono, tv.mono, nv);
            out.push_back({tv.mono.quotient_of(tp.mono), cb * tp.coeff * GaussCoeff(Rational(w))});
        }
    }
    return BihomPoly::from_terms(nv, {d, 0}, std::move(out));
}

GaussCoeff fischer_inner(const PurePoly &p, const PurePoly &q)
{
    require_pure(p, "fischer_inner");
    require_pure(q, "fischer_inner");
    if (p.n_vars() != q.n_vars() || p.degree() != q.degree()) {
        return {};
    }
    GaussCoeff sum;
    auto ip = p.terms().begin();
    auto iq = q.terms().begin();
    while (ip != p.terms().end() && iq != q.terms().end()) {
        if (lex_before(ip->mono, iq->mono)) {
            ++ip;
        } else if (lex_before(iq->mono, ip->mono)) {
            ++iq;
        } else {
            sum += ip->coeff * iq->coeff.conj() * GaussCoeff(Rational(factorial_weight(ip->mono, p.n_vars())));
            ++ip;
            ++iq;
        }
    }
    return sum;
}

FischerSplit fischer_decompose_power(const PurePoly &p, const PurePoly &delta, int k)
{
    require_pure(p, "fischer_decompose_power");
    require_pure(delta, "fischer_decompose_power");
    if (delta.is_zero()) {
        throw DomainError("fischer_decompose_power: delta is zero");
    }
    if (k < 1) {
        throw DimensionError("fischer_decompose_power: power must be at least 1");
    }
    const int nv = p.n_vars();
    const int dq = p.degree() - k * delta.degree();
    if (dq < 0) {
        return {PurePoly(nv, {0, 0}), p};
    }
    const PurePoly v = power(delta, k);
    const auto &basis = monomials_of_bidegree(nv, dq, 0);
    std::vector<PurePoly> vecs;
    vecs.reserve(basis.size());
    for (const auto &b : basis) {
        vecs.push_back(BihomPoly::monomial(nv, b) * v);
    }
    const auto c = gram_solve(vecs, p);
    PurePoly quotient = from_dense(nv, {dq, 0}, c);
    PurePoly remainder = p - quotient * v;
    return {std::move(quotient), std::move(remainder)};
}

GradientSplit fischer_decompose_gradient(const PurePoly &p, const InvariantData &inv, bool allow_degenerate)
{
    require_pure(p, "fischer_decompose_gradient");
    if (!inv.s || inv.delta.is_zero()) {
        throw DomainError("fischer_decompose_gradient: invariant s is undetermined");
    }
    const int s = *inv.s;
    const int nv = p.n_vars();
    if (p.degree() % s != 0 || p.degree() / s < 2) {
        std::ostringstream os;
        os << "fischer_decompose_gradient: degree " << p.degree() << " is not (t+1)s with t >= 1 for s = " << s;
        throw DimensionError(os.str());
    }
    if (!inv.nondegenerate && !allow_degenerate) {
        throw DomainError("gradient split not unique");
    }
    const int t = p.degree() / s - 1;
    const PurePoly dt = power(inv.delta, t);
    // Spanning vectors z_j Delta_k Delta^t, k-major.
    std::vector<PurePoly> vecs;
    for (int k = 0; k < nv; ++k) {
        const PurePoly base = inv.delta_partials[static_cast<std::size_t>(k)] * dt;
        for (int j = 0; j < nv; ++j) {
            vecs.push_back(coordinate(nv, j) * base);
        }
    }
    GradientSplit out;
    if (inv.nondegenerate) {
        const auto c = gram_solve(vecs, p);
        PurePoly structured(nv, p.bidegree());
        for (int k = 0; k < nv; ++k) {
            std::vector<GaussCoeff> coeffs(c.begin() + k * nv, c.begin() + (k + 1) * nv);
            out.linear_forms.push_back(linear_form(coeffs));
        }
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            structured += vecs[i] * c[i];
        }
        out.structured_part = std::move(structured);
    } else {
        // Keep an independent subset; the projection itself is unique.
        const auto &basis = monomials_of_bidegree(nv, p.degree(), 0);
        Matrix<GaussCoeff> m(basis.size(), vecs.size());
        for (std::size_t c = 0; c < vecs.size(); ++c) {
            const auto dense = to_dense(vecs[c]);
            for (std::size_t r = 0; r < dense.size(); ++r) {
                m(r, c) = dense[r];
            }
        }
        std::vector<PurePoly> independent;
        for (auto col : rref(m)) {
            independent.push_back(vecs[col]);
        }
        PurePoly structured(nv, p.bidegree());
        if (!independent.empty()) {
            const auto c = gram_solve(independent, p);
            for (std::size_t i = 0; i < independent.size(); ++i) {
                structured += independent[i] * c[i];
            }
        }
        out.structured_part = std::move(structured);
    }
    out.complement = p - out.structured_part;
    return out;
}

NondegeneracyResult is_nondegenerate(const PurePoly &delta)
{
    require_pure(delta, "is_nondegenerate");
    const int nv = delta.n_vars();
    const int s = delta.degree();
    const auto &basis = monomials_of_bidegree(nv, s, 0);
    const auto cols = static_cast<std::size_t>(nv * nv);
    Matrix<GaussCoeff> m(basis.size(), cols);
    for (int k = 0; k < nv; ++k) {
        const PurePoly dk = delta.derive(k, false);
        for (int j = 0; j < nv; ++j) {
            const PurePoly col = coordinate(nv, j) * dk;
            for (const auto &t : col.terms()) {
                m(monomial_index(nv, t.mono), static_cast<std::size_t>(k * nv + j)) = t.coeff;
            }
        }
    }
    const auto kernel = nullspace(m);
    NondegeneracyResult out;
    out.nondegenerate = kernel.empty();
    if (!kernel.empty()) {
        const auto &v = kernel.front();
        for (int k = 0; k < nv; ++k) {
            std::vector<GaussCoeff> coeffs(v.begin() + k * nv, v.begin() + (k + 1) * nv);
            out.witness.push_back(linear_form(coeffs));
        }
    }
    return out;
}

} // namespace crnf
