#include "crnf/normalform.hpp"

#include <sstream>

namespace crnf {

namespace {

void push_complex(std::vector<Rational> &out, const GaussCoeff &c)
{
    out.push_back(c.re);
    out.push_back(c.im);
}

int target_degree(int s, int t, Parity parity)
{
    return parity == Parity::Even ? t * s + 1 : (t + 1) * s;
}

// Real basis direction `index` of the parameter space.
KernelParam basis_parameter(int n_vars, int t, Parity parity, std::size_t index)
{
    const std::size_t slot = index / 2;
    const GaussCoeff unit = index % 2 == 0 ? GaussCoeff(1) : GaussCoeff::i();
    if (parity == Parity::Even) {
        KernelParamEven p{t, std::vector<GaussCoeff>(static_cast<std::size_t>(n_vars))};
        p.a[slot] = unit;
        return p;
    }
    KernelParamOdd p{t, std::vector<GaussCoeff>(static_cast<std::size_t>(n_vars * n_vars))};
    p.A[slot] = unit;
    return p;
}

FormalMap kernel_map(const KernelParam &p, int n_vars, int grade)
{
    if (const auto *even = std::get_if<KernelParamEven>(&p)) {
        return kernel_map_even(*even, n_vars, grade);
    }
    return kernel_map_odd(std::get<KernelParamOdd>(p), n_vars, grade);
}

} // namespace

FormalMap kernel_map_even(const KernelParamEven &p, int n_vars, int grade)
{
    if (p.t < 1) {
        throw DimensionError("kernel parameter needs t >= 1");
    }
    if (p.a.size() != static_cast<std::size_t>(n_vars)) {
        throw DimensionError("kernel parameter a needs n_vars entries");
    }
    FormalMap map(n_vars, grade);
    std::vector<GaussCoeff> abar;
    std::vector<PurePoly> constant;
    for (const auto &c : p.a) {
        abar.push_back(c.conj());
        constant.push_back(BihomPoly::constant(n_vars, c));
    }
    const PurePoly pairing = linear_form(abar); // <z, a>
    std::vector<PurePoly> quadratic;
    for (int j = 0; j < n_vars; ++j) {
        quadratic.push_back(-(coordinate(n_vars, j) * pairing));
    }
    map.add_F(0, p.t, constant);
    map.add_F(2, p.t - 1, quadratic);
    return map;
}

FormalMap kernel_map_odd(const KernelParamOdd &p, int n_vars, int grade)
{
    if (p.t < 1) {
        throw DimensionError("kernel parameter needs t >= 1");
    }
    if (p.A.size() != static_cast<std::size_t>(n_vars * n_vars)) {
        throw DimensionError("kernel parameter A needs n_vars^2 entries");
    }
    FormalMap map(n_vars, grade);
    std::vector<PurePoly> rows;
    GaussCoeff tr;
    for (int j = 0; j < n_vars; ++j) {
        const auto row = std::span<const GaussCoeff>(p.A).subspan(static_cast<std::size_t>(j * n_vars),
                                                                  static_cast<std::size_t>(n_vars));
        rows.push_back(linear_form(row));
        tr += row[static_cast<std::size_t>(j)];
    }
    map.add_F(1, p.t, rows);
    const GaussCoeff a = tr / GaussCoeff(n_vars);
    map.add_G(0, p.t + 1, BihomPoly::constant(n_vars, a + a.conj()));
    return map;
}

std::vector<Rational> pure_term_observable(const Manifold &m, const InvariantData &inv, int t, Parity parity)
{
    if (!inv.s) {
        throw DomainError("pure_term_response: s is undetermined");
    }
    const int s = *inv.s;
    const int target = target_degree(s, t, parity);
    const PurePoly phi = m.phi().part(target, 0);
    std::vector<Rational> out;
    if (parity == Parity::Even) {
        const PurePoly image = fischer_apply(power(inv.delta, t), phi);
        for (const auto &c : linear_coefficients(image)) {
            push_complex(out, c);
        }
    } else {
        const GradientSplit split = fischer_decompose_gradient(phi, inv);
        for (const auto &form : split.linear_forms) {
            for (const auto &c : linear_coefficients(form)) {
                push_complex(out, c);
            }
        }
    }
    return out;
}

AffineResponse pure_term_response(const Manifold &m, const InvariantData &inv, int t, Parity parity)
{
    if (!inv.s) {
        throw DomainError("pure_term_response: s is undetermined");
    }
    if (!inv.nondegenerate) {
        throw DegenerateDeltaError("Delta is degenerate", inv.witness);
    }
    const int nv = m.n_vars();
    const int target = target_degree(*inv.s, t, parity);
    if (target > m.max_degree()) {
        throw DomainError("pure_term_response: target degree exceeds the truncation");
    }
    const Manifold base = m.truncated(target);
    AffineResponse r;
    r.parity = parity;
    r.t = t;
    r.n_vars = nv;
    r.target_degree = target;
    r.offset = pure_term_observable(base, inv, t, parity);
    const std::size_t dim = parity == Parity::Even ? static_cast<std::size_t>(2 * nv)
                                                   : static_cast<std::size_t>(2 * nv * nv);
    r.matrix = Matrix<Rational>(r.offset.size(), dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const FormalMap k = kernel_map(basis_parameter(nv, t, parity, col), nv, target);
        const Manifold moved = extended_moser(push_forward(base, k)).normalized;
        const auto obs = pure_term_observable(moved, inv, t, parity);
        for (std::size_t row = 0; row < obs.size(); ++row) {
            r.matrix(row, col) = obs[row] - r.offset[row];
        }
    }
    return r;
}

KernelParam solve_kernel_parameter(const AffineResponse &response)
{
    std::vector<Rational> rhs;
    for (const auto &v : response.offset) {
        rhs.push_back(-v);
    }
    const auto x = solve(response.matrix, rhs);
    if (!x) {
        std::ostringstream os;
        os << "paper solvability violated: singular " << response.matrix.rows() << "x" << response.matrix.cols()
           << " system at degree " << response.target_degree;
        throw SolvabilityError(os.str());
    }
    std::vector<GaussCoeff> coeffs;
    for (std::size_t i = 0; i + 1 < x->size(); i += 2) {
        coeffs.emplace_back((*x)[i], (*x)[i + 1]);
    }
    if (response.parity == Parity::Even) {
        return KernelParamEven{response.t, std::move(coeffs)};
    }
    return KernelParamOdd{response.t, std::move(coeffs)};
}

std::string_view residual_kind_name(Residual::Kind kind)
{
    switch (kind) {
    case Residual::Kind::Trace:
        return "trace";
    case Residual::Kind::Reality:
        return "reality";
    case Residual::Kind::FischerEven:
        return "fischer-even";
    case Residual::Kind::FischerOdd:
        return "fischer-odd";
    }
    return "trace";
}

bool ResidualReport::all_zero() const
{
    return nonzero_count() == 0;
}

std::size_t ResidualReport::nonzero_count() const
{
    std::size_t n = 0;
    for (const auto &e : entries) {
        n += e.value.is_zero() ? 0 : 1;
    }
    return n;
}

ResidualReport verify_normal_form(const Manifold &m, const InvariantData &inv)
{
    ResidualReport report;
    const auto &phi = m.phi();
    const int top = m.max_degree();
    for (int d = 3; d <= top; ++d) {
        for (int a = 1; a < d; ++a) {
            const int b = d - a;
            const BihomPoly p = phi.part(a, b);
            report.entries.push_back({Residual::Kind::Trace, {a, b}, 0, -1, a <= b - 1 ? p.trace(a - 1) : p.trace(b)});
        }
        report.entries.push_back(
            {Residual::Kind::Reality, {0, d}, 0, -1, phi.part(0, d) - phi.part(d, 0).conjugate()});
    }
    if (!inv.s) {
        return report;
    }
    const int s = *inv.s;
    for (int t = 1; t * s + 1 <= top; ++t) {
        const PurePoly dt = power(inv.delta, t);
        const int even = t * s + 1;
        report.entries.push_back(
            {Residual::Kind::FischerEven, {even, 0}, t, -1, fischer_apply(dt, phi.part(even, 0))});
        const int odd = (t + 1) * s;
        if (odd > top) {
            continue;
        }
        for (int k = 0; k < m.n_vars(); ++k) {
            const PurePoly op = inv.delta.derive(k, false) * dt;
            report.entries.push_back({Residual::Kind::FischerOdd, {odd, 0}, t, k, fischer_apply(op, phi.part(odd, 0))});
        }
    }
    return report;
}

int determined_map_weight(int s, int degree)
{
    if (s < 3) {
        throw DimensionError("determined_map_weight: s must be at least 3");
    }
    int t = 1;
    while (t * s + 1 <= degree) {
        ++t;
    }
    const int even = 2 * t;
    t = 1;
    while ((t + 1) * s <= degree) {
        ++t;
    }
    const int odd = 2 * t + 1;
    return std::min(even, odd) - 1;
}

NormalFormReport full_normalize(const Manifold &m)
{
    MoserResult first = extended_moser(m);
    NormalFormReport report;
    report.invariants = moser_invariants(first.normalized);
    report.map = std::move(first.map);
    Manifold current = std::move(first.normalized);
    if (!report.invariants.s) {
        report.status = kStatusSUndetermined;
        report.certificate = check_partial_normal_form(current);
        report.residuals = verify_normal_form(current, report.invariants);
        report.normalized = std::move(current);
        return report;
    }
    const InvariantData &inv = report.invariants;
    if (!inv.nondegenerate) {
        throw DegenerateDeltaError("Delta is degenerate: gradient split not unique", inv.witness);
    }
    const int s = *inv.s;
    const int top = m.max_degree();
    const int nv = m.n_vars();
    auto step = [&](int t, Parity parity) {
        const AffineResponse response = pure_term_response(current, inv, t, parity);
        const KernelParam param = solve_kernel_parameter(response);
        report.solver_log.push_back({response.target_degree, parity, t, static_cast<int>(response.matrix.cols())});
        const FormalMap k = kernel_map(param, nv, top);
        if (k.is_identity()) {
            return;
        }
        MoserResult again = extended_moser(push_forward(current, k));
        report.map = compose_maps(report.map, compose_maps(k, again.map));
        current = std::move(again.normalized);
    };
    for (int t = 1; t * s + 1 <= top; ++t) {
        step(t, Parity::Even);
        if ((t + 1) * s <= top) {
            step(t, Parity::Odd);
        }
    }
    report.status = kStatusNormalized;
    report.certificate = check_partial_normal_form(current);
    report.residuals = verify_normal_form(current, inv);
    report.normalized = std::move(current);
    return report;
}

} // namespace crnf
