#include "crnf/monomial.hpp"

#include "crnf/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace crnf {

namespace {

std::uint64_t pack(std::span<const int> e)
{
    if (e.size() > static_cast<std::size_t>(Monomial::kMaxVars)) {
        throw DimensionError("too many variables in exponent vector");
    }
    std::uint64_t w = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] < 0 || e[k] > Monomial::kMaxExponent) {
            throw DimensionError("exponent out of range");
        }
        w |= static_cast<std::uint64_t>(e[k]) << (8 * (Monomial::kMaxVars - 1 - static_cast<int>(k)));
    }
    return w;
}

// Holomorphic words of total degree d in n variables, largest first.
void exponent_words(int n, int d, int k, std::uint64_t acc, std::vector<std::uint64_t> &out)
{
    const int sh = 8 * (Monomial::kMaxVars - 1 - k);
    if (k == n - 1) {
        out.push_back(acc | (static_cast<std::uint64_t>(d) << sh));
        return;
    }
    for (int e = d; e >= 0; --e) {
        exponent_words(n, d - e, k + 1, acc | (static_cast<std::uint64_t>(e) << sh), out);
    }
}

std::vector<std::uint64_t> words_of_degree(int n, int d)
{
    std::vector<std::uint64_t> out;
    if (n == 0) {
        if (d == 0) {
            out.push_back(0);
        }
        return out;
    }
    exponent_words(n, d, 0, 0, out);
    return out;
}

struct BasisCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, std::vector<Monomial>> bases;
    std::map<std::tuple<int, int, int>, std::unordered_map<Monomial, std::size_t>> indices;
};

BasisCache &cache()
{
    static BasisCache c;
    return c;
}

} // namespace

Monomial::Monomial(std::span<const int> dz, std::span<const int> dzb)
{
    if (dz.size() != dzb.size()) {
        throw DimensionError("dz and dzb have different lengths");
    }
    hol_ = pack(dz);
    anti_ = pack(dzb);
}

Monomial Monomial::z(int k, int power)
{
    return from_words(static_cast<std::uint64_t>(power) << shift(k), 0);
}

Monomial Monomial::zbar(int k, int power)
{
    return from_words(0, static_cast<std::uint64_t>(power) << shift(k));
}

std::vector<int> Monomial::dz_vector(int n_vars) const
{
    std::vector<int> v(static_cast<std::size_t>(n_vars));
    for (int k = 0; k < n_vars; ++k) {
        v[static_cast<std::size_t>(k)] = dz(k);
    }
    return v;
}

std::vector<int> Monomial::dzb_vector(int n_vars) const
{
    std::vector<int> v(static_cast<std::size_t>(n_vars));
    for (int k = 0; k < n_vars; ++k) {
        v[static_cast<std::size_t>(k)] = dzb(k);
    }
    return v;
}

Monomial Monomial::lowered(int k, bool anti) const
{
    const std::uint64_t unit = std::uint64_t{1} << shift(k);
    return anti ? from_words(hol_, anti_ - unit) : from_words(hol_ - unit, anti_);
}

Monomial Monomial::raised(int k, bool anti) const
{
    const std::uint64_t unit = std::uint64_t{1} << shift(k);
    return anti ? from_words(hol_, anti_ + unit) : from_words(hol_ + unit, anti_);
}

bool Monomial::divides(const Monomial &other) const
{
    for (int k = 0; k < kMaxVars; ++k) {
        if (dz(k) > other.dz(k) || dzb(k) > other.dzb(k)) {
            return false;
        }
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial &other) const
{
    return from_words(other.hol_ - hol_, other.anti_ - anti_);
}

const std::vector<Monomial> &monomials_of_bidegree(int n_vars, int m, int n)
{
    auto &c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    const auto key = std::make_tuple(n_vars, m, n);
    auto it = c.bases.find(key);
    if (it != c.bases.end()) {
        return it->second;
    }
    std::vector<Monomial> basis;
    if (m >= 0 && n >= 0) {
        const auto hol = words_of_degree(n_vars, m);
        const auto anti = words_of_degree(n_vars, n);
        basis.reserve(hol.size() * anti.size());
        for (auto h : hol) {
            for (auto a : anti) {
                basis.push_back(Monomial::from_words(h, a));
            }
        }
    }
    std::unordered_map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        idx.emplace(basis[i], i);
    }
    c.indices.emplace(key, std::move(idx));
    return c.bases.emplace(key, std::move(basis)).first->second;
}

std::size_t monomial_index(int n_vars, const Monomial &mono)
{
    const int m = mono.holo_degree();
    const int n = mono.anti_degree();
    monomials_of_bidegree(n_vars, m, n);
    auto &c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    const auto &idx = c.indices.at(std::make_tuple(n_vars, m, n));
    auto it = idx.find(mono);
    if (it == idx.end()) {
        throw DimensionError("monomial uses a variable beyond n_vars");
    }
    return it->second;
}

} // namespace crnf
