#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace crnf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign, decimal digits only). The
/// result is in lowest terms. Throws ParseError naming `field` on failure.
Rational parse_rational(std::string_view text, std::string_view field = "rational");

/// Canonical text form: "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational &q);

/// Exact complex number with rational real and imaginary parts.
struct GaussCoeff {
    Rational re;
    Rational im;

    GaussCoeff() = default;
    GaussCoeff(long v) : re(v), im(0) {}
    GaussCoeff(Rational r) : re(std::move(r)), im(0) {}
    GaussCoeff(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussCoeff i() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] GaussCoeff conj() const { return {re, -im}; }
    /// |c|^2, always a non-negative rational.
    [[nodiscard]] Rational norm() const { return re * re + im * im; }

    GaussCoeff &operator+=(const GaussCoeff &o);
    GaussCoeff &operator-=(const GaussCoeff &o);
    GaussCoeff &operator*=(const GaussCoeff &o);
    GaussCoeff &operator/=(const GaussCoeff &o);

    friend bool operator==(const GaussCoeff &a, const GaussCoeff &b) { return a.re == b.re && a.im == b.im; }
};

GaussCoeff operator-(const GaussCoeff &a);
GaussCoeff operator+(GaussCoeff a, const GaussCoeff &b);
GaussCoeff operator-(GaussCoeff a, const GaussCoeff &b);
GaussCoeff operator*(const GaussCoeff &a, const GaussCoeff &b);
GaussCoeff operator/(const GaussCoeff &a, const GaussCoeff &b);

inline bool is_zero(const GaussCoeff &c) { return c.is_zero(); }
inline bool is_zero(const Rational &q) { return sgn(q) == 0; }
inline GaussCoeff conj(const GaussCoeff &c) { return c.conj(); }
inline Rational conj(const Rational &q) { return q; }

std::string to_string(const GaussCoeff &c);
std::ostream &operator<<(std::ostream &os, const GaussCoeff &c);

} // namespace crnf
