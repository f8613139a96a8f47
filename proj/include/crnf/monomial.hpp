#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace crnf {

/// z^I zbar^J with at most kMaxVars variables of each kind.
///
/// Exponents are packed one byte per variable, z_1 in the most significant
/// byte, so that comparing the packed words compares exponent vectors
/// lexicographically with z_1 most significant. The number of variables is a
/// property of the enclosing polynomial, not of the monomial.
class Monomial {
public:
    static constexpr int kMaxVars = 8;
    static constexpr int kMaxExponent = 255;

    Monomial() = default;
    Monomial(std::span<const int> dz, std::span<const int> dzb);

    static Monomial z(int k, int power = 1);
    static Monomial zbar(int k, int power = 1);

    [[nodiscard]] int dz(int k) const { return static_cast<int>((hol_ >> shift(k)) & 0xffU); }
    [[nodiscard]] int dzb(int k) const { return static_cast<int>((anti_ >> shift(k)) & 0xffU); }

    [[nodiscard]] int holo_degree() const { return byte_sum(hol_); }
    [[nodiscard]] int anti_degree() const { return byte_sum(anti_); }
    [[nodiscard]] int degree() const { return holo_degree() + anti_degree(); }

    [[nodiscard]] bool is_pure() const { return anti_ == 0; }

    /// Swaps the roles of z and zbar.
    [[nodiscard]] Monomial conjugate() const { return from_words(anti_, hol_); }

    /// Exponent vector of z (first n entries).
    [[nodiscard]] std::vector<int> dz_vector(int n_vars) const;
    [[nodiscard]] std::vector<int> dzb_vector(int n_vars) const;

    /// Lowers the exponent of z_k (anti = false) or zbar_k (anti = true) by one.
    /// Precondition: that exponent is positive.
    [[nodiscard]] Monomial lowered(int k, bool anti) const;
    [[nodiscard]] Monomial raised(int k, bool anti) const;

    /// True when every exponent of `other` is at least the matching one of *this.
    [[nodiscard]] bool divides(const Monomial &other) const;
    /// Exponent-wise difference; precondition: divides(other).
    [[nodiscard]] Monomial quotient_of(const Monomial &other) const;

    [[nodiscard]] std::uint64_t hol_word() const { return hol_; }
    [[nodiscard]] std::uint64_t anti_word() const { return anti_; }
    static Monomial from_words(std::uint64_t hol, std::uint64_t anti)
    {
        Monomial m;
        m.hol_ = hol;
        m.anti_ = anti;
        return m;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        return from_words(a.hol_ + b.hol_, a.anti_ + b.anti_);
    }
    friend bool operator==(const Monomial &a, const Monomial &b) = default;

private:
    static constexpr int shift(int k) { return 8 * (kMaxVars - 1 - k); }
    static int byte_sum(std::uint64_t w)
    {
        return static_cast<int>((w * 0x0101010101010101ULL) >> 56);
    }

    std::uint64_t hol_ = 0;
    std::uint64_t anti_ = 0;
};

/// Within a fixed bidegree: lexicographic with z_1 first, larger exponents first.
inline bool lex_before(const Monomial &a, const Monomial &b)
{
    if (a.hol_word() != b.hol_word()) {
        return a.hol_word() > b.hol_word();
    }
    return a.anti_word() > b.anti_word();
}

/// Canonical graded-lexicographic order: total degree ascending, then
/// holomorphic degree descending, then lex_before.
inline bool grlex_before(const Monomial &a, const Monomial &b)
{
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) {
        return da < db;
    }
    const int ha = a.holo_degree();
    const int hb = b.holo_degree();
    if (ha != hb) {
        return ha > hb;
    }
    return lex_before(a, b);
}

/// All monomials with |dz| = m, |dzb| = n in n_vars variables, in lex_before
/// order. The returned reference stays valid for the life of the process.
const std::vector<Monomial> &monomials_of_bidegree(int n_vars, int m, int n);

/// Position of `mono` inside monomials_of_bidegree(n_vars, m, n).
std::size_t monomial_index(int n_vars, const Monomial &mono);

} // namespace crnf

template <>
struct std::hash<crnf::Monomial> {
    std::size_t operator()(const crnf::Monomial &m) const noexcept
    {
        std::uint64_t h = m.hol_word() * 0x9E3779B97F4A7C15ULL;
        h ^= (m.anti_word() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};
