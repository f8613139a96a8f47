#pragma once

#include "crnf/error.hpp"
#include "crnf/linalg.hpp"
#include "crnf/moser.hpp"

#include <string>
#include <variant>
#include <vector>

namespace crnf {

/// F = a w^t - z <z,a> w^{t-1}, G = w.
struct KernelParamEven {
    int t = 1;
    std::vector<GaussCoeff> a;
};

/// F = z + w^t A z, G = w + (a + conj a) w^{t+1} with N a = trace(A).
/// A is row-major N x N.
struct KernelParamOdd {
    int t = 1;
    std::vector<GaussCoeff> A;
};

using KernelParam = std::variant<KernelParamEven, KernelParamOdd>;

enum class Parity { Even, Odd };

FormalMap kernel_map_even(const KernelParamEven &p, int n_vars, int grade);
FormalMap kernel_map_odd(const KernelParamOdd &p, int n_vars, int grade);

/// Exact real-affine dependence obs(x) = matrix * x + offset of the target
/// observable on the real coordinates x of the kernel parameter
/// (re, im interleaved). Even: coefficients of (Delta^t)* phi'_{ts+1,0}.
/// Odd: coefficients of A_1..A_N in the gradient split of phi'_{(t+1)s,0}.
struct AffineResponse {
    Parity parity = Parity::Even;
    int t = 1;
    int n_vars = 1;
    int target_degree = 0;
    Matrix<Rational> matrix;
    std::vector<Rational> offset;
};

/// Observable of the pure term of degree target in a Moser-normal manifold.
std::vector<Rational> pure_term_observable(const Manifold &m, const InvariantData &inv, int t, Parity parity);

/// Probes the kernel map: one baseline plus one run per real basis direction,
/// each run being push_forward, extended_moser and the observable.
AffineResponse pure_term_response(const Manifold &m, const InvariantData &inv, int t, Parity parity);

/// Thrown when the probed system is singular.
class SolvabilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Unique solution of matrix * x = -offset as a kernel parameter.
KernelParam solve_kernel_parameter(const AffineResponse &response);

/// Thrown by full_normalize on a degenerate Delta; carries the syzygy witness.
class DegenerateDeltaError : public DomainError {
public:
    DegenerateDeltaError(const std::string &what, std::vector<PurePoly> witness)
        : DomainError(what), witness_(std::move(witness))
    {
    }
    [[nodiscard]] const std::vector<PurePoly> &witness() const { return witness_; }

private:
    std::vector<PurePoly> witness_;
};

/// One normalization condition evaluated on a manifold.
struct Residual {
    enum class Kind { Trace, Reality, FischerEven, FischerOdd };
    Kind kind = Kind::Trace;
    Bidegree bidegree;  ///< part the condition reads
    int t = 0;          ///< Fischer conditions only
    int k = -1;         ///< FischerOdd: which partial Delta_k
    BihomPoly value;    ///< zero iff the condition holds
};

std::string_view residual_kind_name(Residual::Kind kind);

struct ResidualReport {
    std::vector<Residual> entries;

    [[nodiscard]] bool all_zero() const;
    [[nodiscard]] std::size_t nonzero_count() const;
};

/// Recomputes every trace, reality and Fischer condition up to the
/// manifold's degree. Fischer conditions are skipped when s is undetermined.
ResidualReport verify_normal_form(const Manifold &m, const InvariantData &inv);

struct SolverLogEntry {
    int degree = 0;
    Parity parity = Parity::Even;
    int t = 0;
    int dimension = 0;
};

struct NormalFormReport {
    std::string status;
    InvariantData invariants;
    FormalMap map;
    Manifold normalized;
    MoserCertificate certificate;
    ResidualReport residuals;
    std::vector<SolverLogEntry> solver_log;
};

inline constexpr const char *kStatusNormalized = "normalized";
inline constexpr const char *kStatusSUndetermined = "s undetermined at truncation";
inline constexpr const char *kStatusPartial = "partial normal form";

/// Largest normal weight W such that every kernel parameter of weight <= W
/// is fixed by a target degree <= `degree`. Parameters above W leave the
/// normalized pure terms up to `degree` alone, so maps between normal forms
/// agree with the identity only through W.
int determined_map_weight(int s, int degree);

/// Extended Moser, then even and odd kernel parameters for t = 1, 2, ... in
/// increasing target degree, then verification. Throws DegenerateDeltaError
/// for a degenerate Delta.
NormalFormReport full_normalize(const Manifold &m);

} // namespace crnf
