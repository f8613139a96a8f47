#pragma once

#include "crnf/manifold.hpp"

#include <cstdint>
#include <string_view>

namespace crnf {

/// Which parts of phi a random manifold populates.
enum class Profile {
    PureOnly, ///< phi_{k,0} and their conjugates phi_{0,k}, k = s..D
    Mixed,    ///< Delta and its conjugate plus parts with m, n >= 1
    Generic,  ///< pure parts k = s..D and mixed parts
};

Profile parse_profile(std::string_view name);
std::string_view profile_name(Profile p);

struct RandomOptions {
    double density = 0.5;     ///< probability that a basis monomial gets a coefficient
    int max_numerator = 3;    ///< coefficients p/q with |p| <= max_numerator
    int max_denominator = 2;  ///< and 1 <= q <= max_denominator
    int max_retries = 64;     ///< attempts at a nondegenerate Delta when n_vars >= 2
};

/// Deterministic in (seed, arguments): the same call always yields the same
/// manifold, independent of the standard library in use. Pure parts are
/// mirrored (phi_{0,k} = conj phi_{k,0}); phi_{k,0} = 0 for k < s and
/// phi_{s,0} != 0. Throws DomainError when no nondegenerate Delta turns up
/// within the retry budget.
Manifold random_manifold(std::uint64_t seed, int n_vars, int degree, int s, Profile profile,
                         const RandomOptions &options = {});

/// Tangent-to-identity map of grade `grade` whose non-identity terms have
/// normal weight between 2 and `weight_limit`.
FormalMap random_map(std::uint64_t seed, int n_vars, int grade, int weight_limit, const RandomOptions &options = {});

} // namespace crnf
