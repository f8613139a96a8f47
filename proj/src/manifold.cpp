#include "crnf/manifold.hpp"

#include "crnf/error.hpp"

#include <sstream>

namespace crnf {

Manifold::Manifold(int n_vars, int max_degree) : phi_(n_vars, max_degree)
{
    if (n_vars < 1) {
        throw DimensionError("a manifold needs at least one variable");
    }
}

Manifold::Manifold(MixedSeries phi) : phi_(std::move(phi))
{
    if (phi_.n_vars() < 1) {
        throw DimensionError("a manifold needs at least one variable");
    }
    for (const auto &[bd, p] : phi_.parts()) {
        if (bd.total() < 3) {
            std::ostringstream os;
            os << "phi has a part of bidegree (" << bd.m << "," << bd.n << "); only m+n >= 3 is allowed";
            throw DimensionError(os.str());
        }
    }
}

FormalMap::FormalMap(int n_vars, int max_normal_weight) : n_vars_(n_vars), max_weight_(max_normal_weight)
{
    if (n_vars < 1 || n_vars >= Monomial::kMaxVars) {
        throw DimensionError("map n_vars out of range");
    }
    if (max_normal_weight < 2) {
        throw DimensionError("map grade must be at least 2");
    }
    std::vector<PurePoly> id;
    for (int k = 0; k < n_vars; ++k) {
        id.push_back(coordinate(n_vars, k));
    }
    f_.emplace(MapKey{1, 0}, std::move(id));
    g_.emplace(MapKey{0, 1}, BihomPoly::constant(n_vars, GaussCoeff(1)));
}

std::vector<PurePoly> FormalMap::F_at(int m, int n) const
{
    auto it = f_.find({m, n});
    if (it != f_.end()) {
        return it->second;
    }
    return std::vector<PurePoly>(static_cast<std::size_t>(n_vars_), PurePoly(n_vars_, {m, 0}));
}

PurePoly FormalMap::G_at(int m, int n) const
{
    auto it = g_.find({m, n});
    return it != g_.end() ? it->second : PurePoly(n_vars_, {m, 0});
}

void FormalMap::set_F(int m, int n, std::vector<PurePoly> components)
{
    if (components.size() != static_cast<std::size_t>(n_vars_)) {
        throw DimensionError("F coefficient needs one component per variable");
    }
    bool all_zero = true;
    for (const auto &c : components) {
        if (c.n_vars() != n_vars_ || !c.is_pure() || (!c.is_zero() && c.degree() != m)) {
            throw DimensionError("F coefficient has the wrong degree or ring");
        }
        all_zero = all_zero && c.is_zero();
    }
    f_.erase({m, n});
    if (!all_zero && m + 2 * n <= max_weight_ - 1) {
        for (auto &c : components) {
            if (c.is_zero()) {
                c = PurePoly(n_vars_, {m, 0});
            }
        }
        f_.emplace(MapKey{m, n}, std::move(components));
    }
}

void FormalMap::set_G(int m, int n, PurePoly coeff)
{
    if (coeff.n_vars() != n_vars_ || !coeff.is_pure() || (!coeff.is_zero() && coeff.degree() != m)) {
        throw DimensionError("G coefficient has the wrong degree or ring");
    }
    g_.erase({m, n});
    if (!coeff.is_zero() && m + 2 * n <= max_weight_) {
        g_.emplace(MapKey{m, n}, std::move(coeff));
    }
}

void FormalMap::add_F(int m, int n, const std::vector<PurePoly> &components)
{
    auto cur = F_at(m, n);
    if (components.size() != cur.size()) {
        throw DimensionError("F coefficient needs one component per variable");
    }
    for (std::size_t j = 0; j < cur.size(); ++j) {
        cur[j] += components[j];
    }
    set_F(m, n, std::move(cur));
}

void FormalMap::add_G(int m, int n, const PurePoly &coeff)
{
    set_G(m, n, G_at(m, n) + coeff);
}

bool FormalMap::is_identity() const
{
    return *this == FormalMap(n_vars_, max_weight_);
}

void FormalMap::validate() const
{
    const FormalMap id(n_vars_, max_weight_);
    auto bad = [](const char *what) { throw DomainError(std::string("map is not tangent to the identity: ") + what); };
    if (F_at(1, 0) != id.F_at(1, 0)) {
        bad("F_{1,0} != z");
    }
    if (G_at(0, 1) != id.G_at(0, 1)) {
        bad("G_{0,1} != 1");
    }
    for (const auto &c : F_at(0, 0)) {
        if (!c.is_zero()) {
            bad("F_{0,0} != 0");
        }
    }
    if (!G_at(0, 0).is_zero() || !G_at(1, 0).is_zero() || !G_at(2, 0).is_zero()) {
        bad("G has terms of normal weight < 3 besides w");
    }
}

FormalMap FormalMap::truncated(int max_normal_weight) const
{
    FormalMap out(n_vars_, std::min(max_normal_weight, max_weight_));
    for (const auto &[k, v] : f_) {
        out.set_F(k.first, k.second, v);
    }
    for (const auto &[k, v] : g_) {
        out.set_G(k.first, k.second, v);
    }
    return out;
}

} // namespace crnf
