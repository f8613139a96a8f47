#pragma once

#include "crnf/bihom.hpp"

#include <initializer_list>
#include <vector>

namespace testing {

/// c * z^dz zbar^dzb as a BihomPoly in n_vars variables.
inline crnf::BihomPoly mono(int n_vars, std::initializer_list<int> dz, std::initializer_list<int> dzb,
                            crnf::GaussCoeff c = crnf::GaussCoeff(1))
{
    std::vector<int> a(dz);
    std::vector<int> b(dzb);
    a.resize(static_cast<std::size_t>(n_vars));
    b.resize(static_cast<std::size_t>(n_vars));
    return crnf::BihomPoly::monomial(n_vars, crnf::Monomial(a, b), std::move(c));
}

/// Pure monomial c * z^dz.
inline crnf::BihomPoly zpow(int n_vars, std::initializer_list<int> dz, crnf::GaussCoeff c = crnf::GaussCoeff(1))
{
    return mono(n_vars, dz, {}, std::move(c));
}

inline crnf::Rational q(long p, long d = 1)
{
    crnf::Rational r(p, d);
    r.canonicalize();
    return r;
}

} // namespace testing
