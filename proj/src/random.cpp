#include "crnf/random.hpp"

#include "crnf/decomp.hpp"
#include "crnf/error.hpp"

#include <random>
#include <string>

namespace crnf {

namespace {

// Draws are taken straight from the engine so that results do not depend on
// the library's distribution implementations.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

    Rational rational(const RandomOptions &o)
    {
        Rational r(uniform(-o.max_numerator, o.max_numerator), uniform(1, o.max_denominator));
        r.canonicalize();
        return r;
    }

    GaussCoeff coeff(const RandomOptions &o)
    {
        GaussCoeff c(rational(o), rational(o));
        while (c.is_zero()) {
            c = GaussCoeff(rational(o), rational(o));
        }
        return c;
    }

    BihomPoly poly(int n_vars, int m, int n, const RandomOptions &o, bool force_nonzero)
    {
        std::vector<Term> terms;
        const auto &basis = monomials_of_bidegree(n_vars, m, n);
        for (const auto &mono : basis) {
            if (chance(o.density)) {
                terms.push_back({mono, coeff(o)});
            }
        }
        if (terms.empty() && force_nonzero) {
            terms.push_back({basis[static_cast<std::size_t>(uniform(0, static_cast<int>(basis.size()) - 1))], coeff(o)});
        }
        return BihomPoly::from_terms(n_vars, {m, n}, std::move(terms));
    }

private:
    std::mt19937_64 rng_;
};

} // namespace

Profile parse_profile(std::string_view name)
{
    if (name == "pure-only") {
        return Profile::PureOnly;
    }
    if (name == "mixed") {
        return Profile::Mixed;
    }
    if (name == "generic") {
        return Profile::Generic;
    }
    throw ParseError("unknown profile \"" + std::string(name) + "\" (expected pure-only, mixed or generic)");
}

std::string_view profile_name(Profile p)
{
    switch (p) {
    case Profile::PureOnly:
        return "pure-only";
    case Profile::Mixed:
        return "mixed";
    case Profile::Generic:
        return "generic";
    }
    return "generic";
}

Manifold random_manifold(std::uint64_t seed, int n_vars, int degree, int s, Profile profile,
                         const RandomOptions &options)
{
    if (s < 3 || degree < s) {
        throw DomainError("random_manifold needs 3 <= s <= degree");
    }
    Draw draw(seed);
    BihomPoly delta;
    for (int attempt = 0;; ++attempt) {
        if (attempt == options.max_retries) {
            throw DomainError("random_manifold: retry budget exhausted without a nondegenerate Delta");
        }
        delta = draw.poly(n_vars, s, 0, options, true);
        if (n_vars == 1 || is_nondegenerate(delta).nondegenerate) {
            break;
        }
    }
    MixedSeries phi(n_vars, degree);
    phi.add(delta);
    phi.add(delta.conjugate());
    for (int d = 3; d <= degree; ++d) {
        if (profile != Profile::Mixed && d > s) {
            const BihomPoly pure = draw.poly(n_vars, d, 0, options, false);
            phi.add(pure);
            phi.add(pure.conjugate());
        }
        if (profile != Profile::PureOnly) {
            for (int m = 1; m < d; ++m) {
                phi.add(draw.poly(n_vars, m, d - m, options, false));
            }
        }
    }
    return Manifold(std::move(phi));
}

FormalMap random_map(std::uint64_t seed, int n_vars, int grade, int weight_limit, const RandomOptions &options)
{
    Draw draw(seed);
    FormalMap map(n_vars, grade);
    for (int wt = 2; wt <= weight_limit; ++wt) {
        for (int n = 0; 2 * n <= wt; ++n) {
            const int m = wt - 2 * n;
            if (wt >= 3 && !(m == 0 && n == 1)) {
                map.add_G(m, n, draw.poly(n_vars, m, 0, options, false));
            }
            if (!(m == 1 && n == 0)) {
                std::vector<PurePoly> comps;
                for (int j = 0; j < n_vars; ++j) {
                    comps.push_back(draw.poly(n_vars, m, 0, options, false));
                }
                map.add_F(m, n, comps);
            }
        }
    }
    return map;
}

} // namespace crnf
