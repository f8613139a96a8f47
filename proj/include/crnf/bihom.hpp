#pragma once

#include "crnf/gauss.hpp"
#include "crnf/monomial.hpp"

#include <compare>
#include <span>
#include <vector>

namespace crnf {

struct Bidegree {
    int m = 0;
    int n = 0;

    [[nodiscard]] int total() const { return m + n; }
    friend auto operator<=>(const Bidegree &, const Bidegree &) = default;
};

struct Term {
    Monomial mono;
    GaussCoeff coeff;

    friend bool operator==(const Term &, const Term &) = default;
};

/// Bihomogeneous polynomial of bidegree (m, n) in z_1..z_N, zbar_1..zbar_N.
///
/// Terms are kept sorted in lex_before order (which is the canonical grlex
/// order inside a single bidegree) and never hold a zero coefficient, so
/// equality is structural.
class BihomPoly {
public:
    BihomPoly() = default;
    BihomPoly(int n_vars, Bidegree bidegree);

    /// Combines duplicate monomials and drops zeros. Throws DimensionError if
    /// a monomial does not have the stated bidegree or uses a variable beyond
    /// n_vars.
    static BihomPoly from_terms(int n_vars, Bidegree bidegree, std::vector<Term> terms);
    static BihomPoly monomial(int n_vars, const Monomial &mono, GaussCoeff coeff = GaussCoeff(1));
    static BihomPoly constant(int n_vars, GaussCoeff value);

    [[nodiscard]] int n_vars() const { return n_vars_; }
    [[nodiscard]] Bidegree bidegree() const { return bidegree_; }
    [[nodiscard]] int degree() const { return bidegree_.total(); }
    [[nodiscard]] bool is_pure() const { return bidegree_.n == 0; }
    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] GaussCoeff coeff(const Monomial &mono) const;

    BihomPoly &operator+=(const BihomPoly &o);
    BihomPoly &operator-=(const BihomPoly &o);
    BihomPoly &operator*=(const GaussCoeff &c);

    /// Swaps z and zbar and conjugates coefficients; bidegree (m,n) -> (n,m).
    [[nodiscard]] BihomPoly conjugate() const;
    /// d/dz_k (anti = false) or d/dzbar_k (anti = true); k is zero based.
    [[nodiscard]] BihomPoly derive(int k, bool anti) const;
    /// tr^iterations with tr = sum_k d^2/dz_k dzbar_k. Returns the zero
    /// polynomial of bidegree (max(m-it,0), max(n-it,0)) when it exceeds min(m,n).
    [[nodiscard]] BihomPoly trace(int iterations = 1) const;
    /// Substitutes z = point and zbar = conj(point).
    [[nodiscard]] GaussCoeff evaluate(std::span<const GaussCoeff> point) const;

    friend bool operator==(const BihomPoly &a, const BihomPoly &b)
    {
        return a.n_vars_ == b.n_vars_ && a.bidegree_ == b.bidegree_ && a.terms_ == b.terms_;
    }

private:
    friend class BihomBuilder;
    int n_vars_ = 0;
    Bidegree bidegree_;
    std::vector<Term> terms_;
};

using PurePoly = BihomPoly;

BihomPoly operator+(BihomPoly a, const BihomPoly &b);
BihomPoly operator-(BihomPoly a, const BihomPoly &b);
BihomPoly operator-(BihomPoly a);
BihomPoly operator*(BihomPoly a, const GaussCoeff &c);
BihomPoly operator*(const GaussCoeff &c, BihomPoly a);
BihomPoly operator*(const BihomPoly &a, const BihomPoly &b);

/// a^k for k >= 0.
BihomPoly power(const BihomPoly &a, int k);

/// <z,z> = z_1 zbar_1 + ... + z_N zbar_N.
BihomPoly hermitian_quadric(int n_vars);
/// <z,z>^k, cached per (n_vars, k).
const BihomPoly &quadric_power(int n_vars, int k);

/// The coordinate function z_k (zero based).
PurePoly coordinate(int n_vars, int k);

/// Pure polynomial of degree 1 from its coefficient vector: sum c_j z_j.
PurePoly linear_form(std::span<const GaussCoeff> coefficients);
/// Coefficients of a degree-1 pure polynomial.
std::vector<GaussCoeff> linear_coefficients(const PurePoly &p);

/// Dense coordinates of p in the basis monomials_of_bidegree(p's bidegree).
std::vector<GaussCoeff> to_dense(const BihomPoly &p);
BihomPoly from_dense(int n_vars, Bidegree bidegree, std::span<const GaussCoeff> coords);

/// P(A z) for a pure polynomial P and an N x N matrix A given row-major:
/// z_j is replaced by sum_k A[j][k] z_k.
PurePoly substitute_linear(const PurePoly &p, std::span<const GaussCoeff> matrix);

} // namespace crnf
