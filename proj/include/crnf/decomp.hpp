#pragma once

#include "crnf/bihom.hpp"

#include <optional>
#include <vector>

namespace crnf {

/// P = quotient * <z,z>^n + remainder with tr^n(remainder) = 0.
struct TraceSplit {
    BihomPoly quotient;
    BihomPoly remainder;
};

/// P = quotient * delta^k + remainder with (delta^k)*(remainder) = 0.
struct FischerSplit {
    PurePoly quotient;
    PurePoly remainder;
};

/// P = structured_part + complement with
/// structured_part = (sum_k A_k * Delta_k) * Delta^t and
/// (Delta_k Delta^t)*(complement) = 0 for every k.
struct GradientSplit {
    std::vector<PurePoly> linear_forms; ///< A_1..A_N; empty when not determined
    PurePoly structured_part;
    PurePoly complement;
};

/// The generalized Moser invariant s, Delta = phi_{s,0} and its partials.
struct InvariantData {
    std::optional<int> s;
    PurePoly delta;
    std::vector<PurePoly> delta_partials;
    bool nondegenerate = false;
    /// Nonzero tuple (L_1..L_N) with sum L_k Delta_k = 0 when degenerate.
    std::vector<PurePoly> witness;
};

/// Fills partials and the nondegeneracy verdict for a given Delta of degree s.
InvariantData invariants_from_delta(const PurePoly &delta);

/// Unique split relative to <z,z>^n. Out of range (n > min(m,n) of P) gives
/// (0, P); n = 0 gives (P, 0).
TraceSplit trace_decompose(const BihomPoly &p, int n);

/// V*(P) = sum conj(b_I) d^I P over the terms b_I z^I of V.
PurePoly fischer_apply(const PurePoly &v, const PurePoly &p);

/// sum_alpha p_alpha conj(q_alpha) alpha!; zero when the degrees differ.
GaussCoeff fischer_inner(const PurePoly &p, const PurePoly &q);

FischerSplit fischer_decompose_power(const PurePoly &p, const PurePoly &delta, int k);

/// Requires deg P = (t+1)s with t >= 1. A degenerate Delta throws DomainError
/// ("gradient split not unique") unless allow_degenerate is set, in which
/// case the projection is still returned and linear_forms is left empty.
GradientSplit fischer_decompose_gradient(const PurePoly &p, const InvariantData &inv, bool allow_degenerate = false);

struct NondegeneracyResult {
    bool nondegenerate = false;
    std::vector<PurePoly> witness;
};

/// Checks that (L_1..L_N) -> sum L_k Delta_k has trivial kernel on N-tuples of
/// linear forms.
NondegeneracyResult is_nondegenerate(const PurePoly &delta);

} // namespace crnf
