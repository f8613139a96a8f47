#include "crnf/moser.hpp"

#include "accumulate.hpp"
#include "crnf/error.hpp"

#include <sstream>
#include <unordered_map>

namespace crnf {

namespace {

// (<z,z> + phi)^n truncated at a fixed degree, computed on demand.
class WPowers {
public:
    WPowers(const Manifold &m, int max_degree) : w_(m.n_vars(), max_degree)
    {
        w_.add(hermitian_quadric(m.n_vars()));
        for (const auto &[bd, p] : m.phi().parts()) {
            w_.add(p);
        }
        powers_.push_back(MixedSeries::from_poly(BihomPoly::constant(m.n_vars(), GaussCoeff(1)), max_degree));
    }

    const MixedSeries &operator[](int n)
    {
        while (static_cast<int>(powers_.size()) <= n) {
            powers_.push_back(powers_.back() * w_);
        }
        return powers_[static_cast<std::size_t>(n)];
    }

private:
    MixedSeries w_;
    std::vector<MixedSeries> powers_;
};

MixedSeries restrict_with(const std::map<MapKey, PurePoly> &series, WPowers &w, int n_vars, int max_degree)
{
    MixedSeries out(n_vars, max_degree);
    for (const auto &[key, c] : series) {
        if (c.is_zero() || normal_weight(key) > max_degree) {
            continue;
        }
        out += MixedSeries::from_poly(c, max_degree) * w[key.second];
    }
    return out;
}

// Integer numerators of a series over an implied denominator, ordered by
// total degree so truncated products can stop early.
struct ScaledSeries {
    detail::IntTerms terms;
    std::vector<int> degree;
};

ScaledSeries scaled_from(const MixedSeries &s, const Integer &den)
{
    ScaledSeries out;
    for (int d = 0; d <= s.max_degree(); ++d) {
        for (const auto &[bd, p] : s.parts()) {
            if (bd.total() == d) {
                detail::integerize_into(out.terms, p.terms(), den);
                out.degree.insert(out.degree.end(), p.size(), d);
            }
        }
    }
    return out;
}

ScaledSeries scaled_from_accumulator(detail::ProductAccumulator &acc)
{
    ScaledSeries out;
    acc.take_integers([&](const Monomial &mono, Integer &re, Integer &im) {
        out.terms.monos.push_back(mono);
        out.terms.real.push_back(sgn(im) == 0);
        out.terms.re.push_back(std::move(re));
        out.terms.im.push_back(std::move(im));
        out.degree.push_back(mono.degree());
    });
    // Stable order by degree; keeps the early exit in products valid.
    std::vector<std::size_t> order(out.degree.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.degree[a] != out.degree[b] ? out.degree[a] < out.degree[b] : lex_before(out.terms.monos[a], out.terms.monos[b]);
    });
    ScaledSeries sorted;
    for (auto i : order) {
        sorted.terms.monos.push_back(out.terms.monos[i]);
        sorted.terms.real.push_back(out.terms.real[i]);
        sorted.terms.re.push_back(std::move(out.terms.re[i]));
        sorted.terms.im.push_back(std::move(out.terms.im[i]));
        sorted.degree.push_back(out.degree[i]);
    }
    return sorted;
}

// Products X^a Y^b for monomials z^a zbar^b, built one factor at a time.
// All X_j, Y_j share one denominator D, so X^a Y^b has denominator
// D^{|a|+|b|} and only numerators need storing.
class SubstitutionMemo {
public:
    SubstitutionMemo(const std::vector<MixedSeries> &x, int max_degree) : max_degree_(max_degree)
    {
        for (const auto &xj : x) {
            for (const auto &[bd, p] : xj.parts()) {
                detail::lcm_into(den_, p.terms());
            }
        }
        for (const auto &xj : x) {
            x_.push_back(scaled_from(xj, den_));
            y_.push_back(scaled_from(xj.conjugate(), den_));
        }
    }

    [[nodiscard]] const Integer &denominator() const { return den_; }

    const ScaledSeries &get(const Monomial &mono)
    {
        auto it = memo_.find(mono);
        if (it != memo_.end()) {
            return it->second;
        }
        ScaledSeries value;
        if (mono.degree() == 0) {
            value.terms.monos.push_back(Monomial());
            value.terms.re.emplace_back(1);
            value.terms.im.emplace_back(0);
            value.terms.real.push_back(true);
            value.degree.push_back(0);
        } else {
            int k = 0;
            while (mono.dz(k) == 0 && mono.dzb(k) == 0) {
                ++k;
            }
            const bool anti = mono.dz(k) == 0;
            const ScaledSeries &prev = get(mono.lowered(k, anti));
            const ScaledSeries &factor = anti ? y_[static_cast<std::size_t>(k)] : x_[static_cast<std::size_t>(k)];
            detail::ProductAccumulator acc;
            for (std::size_t i = 0; i < prev.degree.size(); ++i) {
                for (std::size_t j = 0; j < factor.degree.size(); ++j) {
                    if (prev.degree[i] + factor.degree[j] > max_degree_) {
                        break;
                    }
                    acc.add_product(prev.terms, i, factor.terms, j);
                }
            }
            value = scaled_from_accumulator(acc);
        }
        return memo_.emplace(mono, std::move(value)).first->second;
    }

private:
    int max_degree_;
    Integer den_{1};
    std::vector<ScaledSeries> x_;
    std::vector<ScaledSeries> y_;
    std::unordered_map<Monomial, ScaledSeries> memo_;
};

MixedSeries series_from_terms(int n_vars, int max_degree, std::vector<Term> terms)
{
    std::map<Bidegree, std::vector<Term>> grouped;
    for (auto &t : terms) {
        grouped[{t.mono.holo_degree(), t.mono.anti_degree()}].push_back(std::move(t));
    }
    MixedSeries out(n_vars, max_degree);
    for (auto &[bd, ts] : grouped) {
        detail::sort_terms(ts);
        out.set(BihomBuilder::make(n_vars, bd, std::move(ts)));
    }
    return out;
}

MixedSeries image_series(const Manifold &m, const FormalMap &t, int max_degree)
{
    const int nv = m.n_vars();
    if (t.n_vars() != nv) {
        throw DimensionError("push_forward: map and manifold have different n_vars");
    }
    t.validate();
    WPowers w(m, max_degree);
    std::vector<MixedSeries> x;
    for (int j = 0; j < nv; ++j) {
        std::map<MapKey, PurePoly> comp;
        for (const auto &[key, v] : t.F()) {
            comp.emplace(key, v[static_cast<std::size_t>(j)]);
        }
        x.push_back(restrict_with(comp, w, nv, max_degree));
    }
    MixedSeries rhs = restrict_with(t.G(), w, nv, max_degree);
    for (const auto &xj : x) {
        rhs -= multiply_truncated(xj, xj.conjugate(), max_degree);
    }
    SubstitutionMemo memo(x, max_degree);
    // phi'(X, conj X) = rhs, solved one total degree at a time: phi'_T enters
    // degree T with argument z, and only at higher degree otherwise.
    MixedSeries phi(nv, max_degree);
    MixedSeries correction(nv, max_degree);
    for (int d = 0; d <= max_degree; ++d) {
        const MixedSeries fresh = rhs.homogeneous(d) - correction.homogeneous(d);
        if (d < 3 && !fresh.is_zero()) {
            throw DomainError("push_forward: image has terms of degree below 3");
        }
        if (fresh.is_zero() || d == max_degree) {
            phi += fresh;
            continue;
        }
        phi += fresh;
        // sum over terms c z^a zbar^b of c (X^a Y^b - z^a zbar^b), above degree d.
        Integer e(1);
        for (const auto &[bd, part] : fresh.parts()) {
            detail::lcm_into(e, part.terms());
        }
        detail::IntTerms coeffs;
        for (const auto &[bd, part] : fresh.parts()) {
            detail::integerize_into(coeffs, part.terms(), e);
        }
        detail::ProductAccumulator acc;
        for (std::size_t i = 0; i < coeffs.monos.size(); ++i) {
            const ScaledSeries &prod = memo.get(coeffs.monos[i]);
            for (std::size_t j = 0; j < prod.degree.size(); ++j) {
                if (prod.degree[j] > d) {
                    acc.add_scaled(coeffs, i, prod.terms, j);
                }
            }
        }
        Integer den = e;
        for (int i = 0; i < d; ++i) {
            den *= memo.denominator();
        }
        correction += series_from_terms(nv, max_degree, acc.take(den));
    }
    return phi;
}

} // namespace

MixedSeries restrict_to_manifold(const std::map<MapKey, PurePoly> &series, const Manifold &m,
                                 std::optional<int> max_degree)
{
    const int d = std::min(max_degree.value_or(m.max_degree()), m.max_degree());
    WPowers w(m, d);
    return restrict_with(series, w, m.n_vars(), d);
}

Manifold push_forward(const Manifold &m, const FormalMap &t)
{
    return Manifold(image_series(m, t, m.max_degree()));
}

Manifold push_forward(const Manifold &m, const FormalMap &t, int max_degree)
{
    return Manifold(image_series(m, t, std::min(max_degree, m.max_degree())));
}

namespace {

// Holomorphic series in (z_1..z_N, w) with w stored as variable N; graded by
// normal weight (z -> 1, w -> 2).
using Holo = std::unordered_map<Monomial, GaussCoeff>;

int holo_weight(const Monomial &mono, int n_vars)
{
    return mono.holo_degree() + mono.dz(n_vars);
}

Holo holo_mul(const Holo &a, const Holo &b, int n_vars, int max_weight)
{
    Holo out;
    for (const auto &[ma, ca] : a) {
        const int wa = holo_weight(ma, n_vars);
        for (const auto &[mb, cb] : b) {
            if (wa + holo_weight(mb, n_vars) > max_weight) {
                continue;
            }
            auto &slot = out[ma * mb];
            slot += ca * cb;
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

Holo to_holo(const std::map<MapKey, PurePoly> &series, int n_vars)
{
    Holo out;
    for (const auto &[key, c] : series) {
        for (const auto &t : c.terms()) {
            out[t.mono * Monomial::z(n_vars, key.second)] += t.coeff;
        }
    }
    return out;
}

std::map<MapKey, PurePoly> from_holo(const Holo &h, int n_vars)
{
    std::map<MapKey, std::vector<Term>> grouped;
    for (const auto &[mono, c] : h) {
        const int n = mono.dz(n_vars);
        const Monomial z_only = Monomial::z(n_vars, n).quotient_of(mono);
        grouped[{z_only.holo_degree(), n}].push_back({z_only, c});
    }
    std::map<MapKey, PurePoly> out;
    for (auto &[key, terms] : grouped) {
        out.emplace(key, BihomPoly::from_terms(n_vars, {key.first, 0}, std::move(terms)));
    }
    return out;
}

} // namespace

FormalMap compose_maps(const FormalMap &t1, const FormalMap &t2)
{
    const int nv = t1.n_vars();
    if (t2.n_vars() != nv) {
        throw DimensionError("compose_maps: n_vars mismatch");
    }
    t1.validate();
    t2.validate();
    const int top = std::min(t1.max_normal_weight(), t2.max_normal_weight());
    // Substitution values: F1 components then G1, as series in (z, w).
    std::vector<Holo> subs;
    for (int j = 0; j < nv; ++j) {
        std::map<MapKey, PurePoly> comp;
        for (const auto &[key, v] : t1.F()) {
            comp.emplace(key, v[static_cast<std::size_t>(j)]);
        }
        subs.push_back(to_holo(comp, nv));
    }
    subs.push_back(to_holo(t1.G(), nv));

    std::unordered_map<Monomial, Holo> memo;
    auto power_of = [&](auto &&self, const Monomial &mono) -> const Holo & {
        auto it = memo.find(mono);
        if (it != memo.end()) {
            return it->second;
        }
        Holo value;
        if (mono.holo_degree() == 0) {
            value[Monomial()] = GaussCoeff(1);
        } else {
            int k = 0;
            while (mono.dz(k) == 0) {
                ++k;
            }
            const Holo &prev = self(self, mono.lowered(k, false));
            value = holo_mul(prev, subs[static_cast<std::size_t>(k)], nv, top);
        }
        return memo.emplace(mono, std::move(value)).first->second;
    };
    auto substitute = [&](const std::map<MapKey, PurePoly> &series, int max_weight) {
        Holo out;
        for (const auto &[mono, c] : to_holo(series, nv)) {
            if (holo_weight(mono, nv) > max_weight) {
                continue;
            }
            for (const auto &[m2, c2] : power_of(power_of, mono)) {
                if (holo_weight(m2, nv) <= max_weight) {
                    out[m2] += c * c2;
                }
            }
        }
        std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
        return from_holo(out, nv);
    };

    FormalMap out(nv, top);
    std::map<MapKey, std::vector<PurePoly>> f;
    for (int j = 0; j < nv; ++j) {
        std::map<MapKey, PurePoly> comp;
        for (const auto &[key, v] : t2.F()) {
            comp.emplace(key, v[static_cast<std::size_t>(j)]);
        }
        for (auto &[key, c] : substitute(comp, top - 1)) {
            auto &slot = f[key];
            slot.resize(static_cast<std::size_t>(nv), PurePoly(nv, {key.first, 0}));
            slot[static_cast<std::size_t>(j)] = std::move(c);
        }
    }
    for (auto &[key, v] : f) {
        out.set_F(key.first, key.second, std::move(v));
    }
    out.set_G(0, 1, PurePoly(nv, {0, 0}));
    for (auto &[key, c] : substitute(t2.G(), top)) {
        out.set_G(key.first, key.second, std::move(c));
    }
    return out;
}

MoserCertificate check_partial_normal_form(const Manifold &m)
{
    MoserCertificate cert;
    cert.last_degree = m.max_degree();
    const auto &phi = m.phi();
    for (int d = 3; d <= m.max_degree(); ++d) {
        for (int a = 1; a < d; ++a) {
            const int b = d - a;
            const BihomPoly *p = phi.find(a, b);
            if (p == nullptr) {
                continue;
            }
            const BihomPoly r = a <= b - 1 ? p->trace(a - 1) : p->trace(b);
            if (!r.is_zero()) {
                cert.violations.push_back({{a, b}, r});
            }
        }
        const BihomPoly pure = phi.part(0, d) - phi.part(d, 0).conjugate();
        if (!pure.is_zero()) {
            cert.violations.push_back({{0, d}, pure});
        }
    }
    return cert;
}

MoserResult extended_moser(const Manifold &m)
{
    const int nv = m.n_vars();
    const int top = m.max_degree();
    FormalMap map(nv, std::max(top, 2));
    MixedSeries normalized(nv, top);
    const BihomPoly quadric = hermitian_quadric(nv);
    for (int d = 3; d <= top; ++d) {
        const MixedSeries image = image_series(m, map, d);
        auto phi_at = [&](int a, int b) { return image.part(a, b); };

        // 1 <= a <= b - 1: fixes F_{b-a+1, a-1} through <z, F>.
        for (int a = 1; a < d - a; ++a) {
            const int b = d - a;
            TraceSplit split = trace_decompose(phi_at(a, b), a - 1);
            std::vector<PurePoly> comps;
            for (int j = 0; j < nv; ++j) {
                comps.push_back(split.quotient.derive(j, false).conjugate());
            }
            map.set_F(b - a + 1, a - 1, std::move(comps));
            normalized.add(split.remainder);
        }
        // a >= b >= 1: fixes G_{a-b, b}.
        for (int b = 1; b <= d - b; ++b) {
            const int a = d - b;
            BihomPoly p = phi_at(a, b);
            if (a > b) {
                const auto f = map.F_at(a - b + 1, b - 1);
                BihomPoly pairing(nv, {a - b + 1, 1});
                for (int j = 0; j < nv; ++j) {
                    pairing += f[static_cast<std::size_t>(j)] * BihomPoly::monomial(nv, Monomial::zbar(j));
                }
                p -= pairing * quadric_power(nv, b - 1);
            }
            TraceSplit split = trace_decompose(p, b);
            map.set_G(a - b, b, -split.quotient);
            normalized.add(split.remainder);
        }
        // Pure terms: G_{d,0} makes phi'_{0,d} the conjugate of phi'_{d,0}.
        const BihomPoly anti = phi_at(0, d);
        map.set_G(d, 0, anti.conjugate() - phi_at(d, 0));
        normalized.add(anti);
        normalized.add(anti.conjugate());
    }
    Manifold out(normalized);
    MoserCertificate cert = check_partial_normal_form(out);
    return {std::move(map), std::move(out), std::move(cert)};
}

InvariantData moser_invariants(const Manifold &m)
{
    for (int d = 3; d <= m.max_degree(); ++d) {
        if (const BihomPoly *p = m.phi().find(d, 0)) {
            return invariants_from_delta(*p);
        }
    }
    InvariantData inv;
    inv.delta = PurePoly(m.n_vars(), {0, 0});
    return inv;
}

} // namespace crnf
