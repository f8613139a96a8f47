#pragma once

#include "crnf/bihom.hpp"

#include <map>
#include <optional>

namespace crnf {

/// Sum of bihomogeneous parts phi_{m,n} with m + n <= max_degree.
///
/// Parts that are zero are never stored. Every binary operation truncates to
/// the smaller max_degree of its operands.
class MixedSeries {
public:
    MixedSeries() = default;
    MixedSeries(int n_vars, int max_degree);

    /// Series holding one polynomial (dropped when its degree exceeds max_degree).
    static MixedSeries from_poly(const BihomPoly &p, int max_degree);

    [[nodiscard]] int n_vars() const { return n_vars_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }
    [[nodiscard]] const std::map<Bidegree, BihomPoly> &parts() const { return parts_; }
    [[nodiscard]] bool is_zero() const { return parts_.empty(); }

    /// The stored part, or the zero polynomial of that bidegree.
    [[nodiscard]] BihomPoly part(int m, int n) const;
    [[nodiscard]] const BihomPoly *find(int m, int n) const;

    /// Adds p into the part of its bidegree; ignored past max_degree.
    void add(const BihomPoly &p);
    void subtract(const BihomPoly &p);
    /// Replaces the part at p's bidegree (removes it when p is zero).
    void set(const BihomPoly &p);
    void erase(int m, int n);

    /// Parts of total degree <= d, with max_degree lowered to d.
    [[nodiscard]] MixedSeries truncated(int d) const;
    /// Parts of total degree exactly d (max_degree unchanged).
    [[nodiscard]] MixedSeries homogeneous(int d) const;

    MixedSeries &operator+=(const MixedSeries &o);
    MixedSeries &operator-=(const MixedSeries &o);
    MixedSeries &operator*=(const GaussCoeff &c);

    [[nodiscard]] MixedSeries conjugate() const;
    [[nodiscard]] MixedSeries derive(int k, bool anti) const;
    [[nodiscard]] MixedSeries trace(int iterations) const;
    [[nodiscard]] GaussCoeff evaluate(std::span<const GaussCoeff> point) const;

    friend bool operator==(const MixedSeries &, const MixedSeries &) = default;

private:
    int n_vars_ = 0;
    int max_degree_ = 0;
    std::map<Bidegree, BihomPoly> parts_;
};

MixedSeries operator+(MixedSeries a, const MixedSeries &b);
MixedSeries operator-(MixedSeries a, const MixedSeries &b);
MixedSeries operator-(MixedSeries a);
MixedSeries operator*(MixedSeries a, const GaussCoeff &c);
MixedSeries operator*(const GaussCoeff &c, MixedSeries a);
/// Truncated product: bidegrees with m + n above the smaller max_degree are dropped.
MixedSeries operator*(const MixedSeries &a, const MixedSeries &b);
/// Product truncated at an explicit degree (at most both operands' max_degree).
MixedSeries multiply_truncated(const MixedSeries &a, const MixedSeries &b, int max_degree);

/// Huang-Yin weight (wt z = 1, wt zbar = s - 1) and plain order of the lowest
/// term; both nullopt for the zero series.
struct WeightOrder {
    std::optional<int> weight;
    std::optional<int> order;
};
WeightOrder weight_and_order(const MixedSeries &p, int s);

} // namespace crnf
