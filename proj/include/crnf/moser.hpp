#pragma once

#include "crnf/decomp.hpp"
#include "crnf/manifold.hpp"

#include <optional>
#include <vector>

namespace crnf {

/// Substitutes w = <z,z> + phi into sum_{(m,n)} c_{m,n}(z) w^n, truncating at
/// `max_degree` (defaults to the manifold's).
MixedSeries restrict_to_manifold(const std::map<MapKey, PurePoly> &series, const Manifold &m,
                                 std::optional<int> max_degree = std::nullopt);

/// The manifold M' with G = <F,F> + phi'(F, conj F) on M, up to M's degree.
Manifold push_forward(const Manifold &m, const FormalMap &t);
/// Same, truncated at `max_degree` <= m.max_degree().
Manifold push_forward(const Manifold &m, const FormalMap &t, int max_degree);

/// t2 after t1, truncated at the smaller grade.
FormalMap compose_maps(const FormalMap &t1, const FormalMap &t2);

struct Violation {
    Bidegree bidegree;
    BihomPoly residual;
};

/// Result of checking the trace conditions and the reality of pure terms.
struct MoserCertificate {
    int first_degree = 3;
    int last_degree = 0;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks, for 3 <= m + n <= D: tr^{m-1} phi_{m,n} = 0 when 1 <= m <= n - 1,
/// tr^n phi_{m,n} = 0 when m >= n >= 1, and phi_{0,T} = conj(phi_{T,0}).
MoserCertificate check_partial_normal_form(const Manifold &m);

struct MoserResult {
    FormalMap map;
    Manifold normalized;
    MoserCertificate certificate;
};

/// The unique map with F_{0,n} = F_{1,n} = 0 (n >= 1) taking M to partial
/// normal form, built degree by degree.
MoserResult extended_moser(const Manifold &m);

/// s, Delta = phi_{s,0}, partials and the nondegeneracy verdict. s stays
/// empty when no pure term appears up to the truncation degree.
InvariantData moser_invariants(const Manifold &m);

} // namespace crnf
