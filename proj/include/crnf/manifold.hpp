#pragma once

#include "crnf/series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace crnf {

/// w = <z,z> + phi(z, zbar), with phi holding only parts of degree >= 3.
class Manifold {
public:
    Manifold() = default;
    /// The quadric w = <z,z> truncated at max_degree.
    Manifold(int n_vars, int max_degree);
    /// Throws DimensionError when phi has a part of degree < 3.
    explicit Manifold(MixedSeries phi);

    [[nodiscard]] int n_vars() const { return phi_.n_vars(); }
    [[nodiscard]] int max_degree() const { return phi_.max_degree(); }
    [[nodiscard]] const MixedSeries &phi() const { return phi_; }

    [[nodiscard]] Manifold truncated(int d) const { return Manifold(phi_.truncated(d)); }

    friend bool operator==(const Manifold &, const Manifold &) = default;

private:
    MixedSeries phi_;
};

/// Key (m, n) of a map coefficient c(z) w^n with c homogeneous of degree m.
using MapKey = std::pair<int, int>;

inline int normal_weight(const MapKey &k)
{
    return k.first + 2 * k.second;
}

/// (z, w) -> (F(z, w), G(z, w)) tangent to the identity.
///
/// F is stored component-wise: F_{m,n} is a vector of N pure polynomials of
/// degree m. The identity terms F_{1,0} = z and G_{0,1} = 1 are stored
/// explicitly. A map of grade W carries G up to normal weight W and F up to
/// W - 1; terms beyond that are dropped on insertion.
class FormalMap {
public:
    FormalMap() = default;
    FormalMap(int n_vars, int max_normal_weight);

    static FormalMap identity(int n_vars, int max_normal_weight) { return {n_vars, max_normal_weight}; }

    [[nodiscard]] int n_vars() const { return n_vars_; }
    [[nodiscard]] int max_normal_weight() const { return max_weight_; }
    [[nodiscard]] const std::map<MapKey, std::vector<PurePoly>> &F() const { return f_; }
    [[nodiscard]] const std::map<MapKey, PurePoly> &G() const { return g_; }

    [[nodiscard]] std::vector<PurePoly> F_at(int m, int n) const;
    [[nodiscard]] PurePoly G_at(int m, int n) const;

    /// Replace a coefficient (zero removes it). Throw DimensionError on degree mismatch.
    void set_F(int m, int n, std::vector<PurePoly> components);
    void set_G(int m, int n, PurePoly coeff);
    void add_F(int m, int n, const std::vector<PurePoly> &components);
    void add_G(int m, int n, const PurePoly &coeff);

    [[nodiscard]] bool is_identity() const;
    /// Throws DomainError unless F_{0,0} = G_{0,0} = G_{1,0} = G_{2,0} = 0,
    /// F_{1,0} = z and G_{0,1} = 1.
    void validate() const;

    [[nodiscard]] FormalMap truncated(int max_normal_weight) const;

    friend bool operator==(const FormalMap &, const FormalMap &) = default;

private:
    int n_vars_ = 0;
    int max_weight_ = 0;
    std::map<MapKey, std::vector<PurePoly>> f_;
    std::map<MapKey, PurePoly> g_;
};

} // namespace crnf
