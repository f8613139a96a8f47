#include "crnf/gauss.hpp"

#include "crnf/error.hpp"

#include <cctype>
#include <ostream>

namespace crnf {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad_rational(std::string_view text, std::string_view field, const char *why)
{
    std::string msg = "malformed rational in field '";
    msg.append(field);
    msg += "': \"";
    msg.append(text);
    msg += "\" (";
    msg += why;
    msg += ")";
    throw ParseError(msg);
}

} // namespace

Rational parse_rational(std::string_view text, std::string_view field)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        bad_rational(text, field, "expected p or p/q with decimal digits");
    }
    Integer p(std::string(num), 10);
    Integer q(std::string(den), 10);
    if (sgn(q) == 0) {
        bad_rational(text, field, "zero denominator");
    }
    Rational r(p, q);
    r.canonicalize();
    if (negative) {
        r = -r;
    }
    return r;
}

std::string to_string(const Rational &q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussCoeff &GaussCoeff::operator+=(const GaussCoeff &o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussCoeff &GaussCoeff::operator-=(const GaussCoeff &o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussCoeff &GaussCoeff::operator*=(const GaussCoeff &o)
{
    *this = *this * o;
    return *this;
}

GaussCoeff &GaussCoeff::operator/=(const GaussCoeff &o)
{
    *this = *this / o;
    return *this;
}

GaussCoeff operator-(const GaussCoeff &a)
{
    return {-a.re, -a.im};
}

GaussCoeff operator+(GaussCoeff a, const GaussCoeff &b)
{
    a += b;
    return a;
}

GaussCoeff operator-(GaussCoeff a, const GaussCoeff &b)
{
    a -= b;
    return a;
}

GaussCoeff operator*(const GaussCoeff &a, const GaussCoeff &b)
{
    if (a.is_real() && b.is_real()) {
        return {a.re * b.re, Rational(0)};
    }
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussCoeff operator/(const GaussCoeff &a, const GaussCoeff &b)
{
    const Rational d = b.norm();
    if (sgn(d) == 0) {
        throw DomainError("division by zero coefficient");
    }
    const GaussCoeff num = a * b.conj();
    return {num.re / d, num.im / d};
}

std::string to_string(const GaussCoeff &c)
{
    if (c.is_real()) {
        return to_string(c.re);
    }
    if (sgn(c.re) == 0) {
        return to_string(c.im) + "i";
    }
    std::string out = "(" + to_string(c.re);
    out += sgn(c.im) < 0 ? "-" : "+";
    out += to_string(Rational(abs(c.im))) + "i)";
    return out;
}

std::ostream &operator<<(std::ostream &os, const GaussCoeff &c)
{
    return os << to_string(c);
}

} // namespace crnf
