#include "crnf/normalform.hpp"
#include "crnf/random.hpp"
#include "helpers.hpp"
#include "oracle_map.hpp"

#include <doctest.h>

#include <numeric>

using namespace crnf;
using testing::mono;
using testing::q;
using testing::zpow;

namespace {

Manifold manifold_of(int n_vars, int degree, std::initializer_list<BihomPoly> parts)
{
    MixedSeries phi(n_vars, degree);
    for (const auto &p : parts) {
        phi.add(p);
    }
    return Manifold(std::move(phi));
}

PurePoly constant(int n_vars, const GaussCoeff &v)
{
    return BihomPoly::constant(n_vars, v);
}

// A Moser-normal manifold with Delta of degree 3 and nondegenerate Delta.
Manifold moser_normal(std::uint64_t seed, int n_vars, int degree)
{
    return extended_moser(random_manifold(seed, n_vars, degree, 3, Profile::Generic)).normalized;
}

std::vector<GaussCoeff> random_vector(std::mt19937_64 &rng, std::size_t n)
{
    std::vector<GaussCoeff> v;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(oracle::small_coeff(rng));
    }
    return v;
}

std::vector<Rational> real_coordinates(const std::vector<GaussCoeff> &v)
{
    std::vector<Rational> out;
    for (const auto &c : v) {
        out.push_back(c.re);
        out.push_back(c.im);
    }
    return out;
}

// Extended Moser applied after the kernel map.
Manifold kernel_step(const Manifold &m, const FormalMap &k)
{
    return extended_moser(push_forward(m, k)).normalized;
}

bool lower_pure_terms_equal(const Manifold &a, const Manifold &b, int below)
{
    for (int d = 3; d < below; ++d) {
        if (a.phi().part(d, 0) != b.phi().part(d, 0)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("kernel_map_even examples")
{
    CHECK(kernel_map_even({1, {GaussCoeff(), GaussCoeff()}}, 2, 6).is_identity());

    // a w - z <z,a> with N = 1, a = 1: F = z + w - z^2.
    const auto k = kernel_map_even({1, {GaussCoeff(1)}}, 1, 6);
    CHECK(k.F_at(0, 1)[0] == constant(1, GaussCoeff(1)));
    CHECK(k.F_at(2, 0)[0] == zpow(1, {2}, GaussCoeff(-1)));
    CHECK(k.F().size() == 3);
    CHECK(k.G().size() == 1);

    // <z,a> conjugates a; t = 2 shifts both families by one power of w.
    const auto k2 = kernel_map_even({2, {GaussCoeff(0, 1), GaussCoeff(2)}}, 2, 6);
    CHECK(k2.F_at(0, 2)[0] == constant(2, GaussCoeff(0, 1)));
    CHECK(k2.F_at(0, 2)[1] == constant(2, GaussCoeff(2)));
    const auto za = zpow(2, {1}, GaussCoeff(0, -1)) + zpow(2, {0, 1}, GaussCoeff(2));
    CHECK(k2.F_at(2, 1)[0] == -(zpow(2, {1}) * za));
    CHECK(k2.F_at(2, 1)[1] == -(zpow(2, {0, 1}) * za));

    // An infinitesimal automorphism of the quadric: nothing survives through degree 3.
    const auto image = kernel_step(Manifold(2, 5), kernel_map_even({1, {GaussCoeff(1, 1), GaussCoeff(-2)}}, 2, 5));
    CHECK(image.truncated(3).phi().is_zero());
}

TEST_CASE("kernel_map_odd examples")
{
    CHECK(kernel_map_odd({1, std::vector<GaussCoeff>(4)}, 2, 6).is_identity());

    const auto k = kernel_map_odd({1, {GaussCoeff(0, 1), GaussCoeff(), GaussCoeff(), GaussCoeff(0, 1)}}, 2, 6);
    CHECK(k.G_at(0, 2).is_zero());
    CHECK(k.F_at(1, 1)[0] == zpow(2, {1}, GaussCoeff(0, 1)));
    CHECK(k.F_at(1, 1)[1] == zpow(2, {0, 1}, GaussCoeff(0, 1)));

    const auto e12 = kernel_map_odd({1, {GaussCoeff(), GaussCoeff(1), GaussCoeff(), GaussCoeff()}}, 2, 6);
    CHECK(e12.F_at(1, 1)[0] == zpow(2, {0, 1}));
    CHECK(e12.F_at(1, 1)[1].is_zero());
    CHECK(e12.G().size() == 1);

    // a = tr(A)/N = 3/2 + i, so a + conj a = 3.
    const auto g = kernel_map_odd({2, {GaussCoeff(1, 1), GaussCoeff(), GaussCoeff(), GaussCoeff(2, 1)}}, 2, 8);
    CHECK(g.G_at(0, 3) == constant(2, GaussCoeff(3)));
}

TEST_CASE("pure_term_response is affine in the parameter")
{
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 2; ++n) {
        const auto m = moser_normal(static_cast<std::uint64_t>(n), n, 6);
        const auto inv = moser_invariants(m);
        for (const auto parity : {Parity::Even, Parity::Odd}) {
            const auto r = pure_term_response(m, inv, 1, parity);
            CHECK(r.offset == pure_term_observable(m, inv, 1, parity));
            const std::size_t dim = parity == Parity::Even ? 2 * n : 2 * n * n;
            REQUIRE(r.matrix.cols() == dim);

            const auto p = random_vector(rng, dim / 2);
            const auto moved = parity == Parity::Even ? kernel_step(m, kernel_map_even({1, p}, n, 6))
                                                      : kernel_step(m, kernel_map_odd({1, p}, n, 6));
            auto predicted = r.matrix.apply(real_coordinates(p));
            for (std::size_t i = 0; i < predicted.size(); ++i) {
                predicted[i] += r.offset[i];
            }
            CAPTURE(n);
            CHECK(pure_term_observable(moved, inv, 1, parity) == predicted);
        }
    }
}

TEST_CASE("even response for N = 1, Delta = z^3")
{
    // phi' - phi = 2 conj(a) z^4 and (z^3)* of that is 48 conj(a) z.
    const auto m = manifold_of(1, 5, {zpow(1, {3}), mono(1, {}, {3})});
    const auto r = pure_term_response(m, moser_invariants(m), 1, Parity::Even);
    REQUIRE(r.matrix.rows() == 2);
    CHECK(r.matrix(0, 0) == q(48));
    CHECK(r.matrix(0, 1) == q(0));
    CHECK(r.matrix(1, 0) == q(0));
    CHECK(r.matrix(1, 1) == q(-48));
    CHECK(r.offset == std::vector<Rational>{q(0), q(0)});
}

TEST_CASE("solve_kernel_parameter")
{
    AffineResponse zero;
    zero.parity = Parity::Even;
    zero.matrix = Matrix<Rational>::identity(2);
    zero.offset = {q(0), q(0)};
    const auto p = std::get<KernelParamEven>(solve_kernel_parameter(zero));
    CHECK(p.a == std::vector<GaussCoeff>{GaussCoeff()});

    AffineResponse singular = zero;
    singular.matrix(1, 1) = q(0);
    CHECK_THROWS_AS(solve_kernel_parameter(singular), SolvabilityError);

    // z^4 in the N = 1 cubic: the solved step kills (z^3)* phi_{4,0}.
    const auto m = manifold_of(1, 5, {zpow(1, {3}), mono(1, {}, {3}), zpow(1, {4}), mono(1, {}, {4})});
    const auto inv = moser_invariants(m);
    const auto r = pure_term_response(m, inv, 1, Parity::Even);
    const auto a = std::get<KernelParamEven>(solve_kernel_parameter(r));
    CHECK(a.a == std::vector<GaussCoeff>{GaussCoeff(q(-1, 2))});
    const auto moved = kernel_step(m, kernel_map_even(a, 1, 5));
    CHECK(fischer_apply(inv.delta, moved.phi().part(4, 0)).is_zero());

    // Permuting the unknowns permutes the solution and nothing else.
    const auto m2 = moser_normal(4, 2, 6);
    const auto inv2 = moser_invariants(m2);
    const auto r2 = pure_term_response(m2, inv2, 1, Parity::Odd);
    const auto direct = std::get<KernelParamOdd>(solve_kernel_parameter(r2));
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(9);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto shuffled = r2;
    for (std::size_t row = 0; row < 8; ++row) {
        for (std::size_t col = 0; col < 8; ++col) {
            shuffled.matrix(row, col) = r2.matrix(row, perm[col]);
        }
    }
    const auto x = std::get<KernelParamOdd>(solve_kernel_parameter(shuffled));
    const auto flat = real_coordinates(x.A);
    const auto expected = real_coordinates(direct.A);
    for (std::size_t col = 0; col < 8; ++col) {
        CHECK(flat[col] == expected[perm[col]]);
    }
}

TEST_CASE("even kernel step shifts the pure term by -(1-s)^t <z,a> Delta^t")
{
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 2; ++n) {
        for (int t = 1; t <= 2; ++t) {
            const int degree = 3 * t + 1;
            const auto m = moser_normal(static_cast<std::uint64_t>(10 * n + t), n, degree);
            const auto inv = moser_invariants(m);
            const auto a = random_vector(rng, static_cast<std::size_t>(n));
            std::vector<GaussCoeff> abar;
            for (const auto &c : a) {
                abar.push_back(c.conj());
            }
            const auto moved = kernel_step(m, kernel_map_even({t, a}, n, degree));
            const auto law = GaussCoeff(t == 1 ? -2 : 4) * linear_form(abar) * power(inv.delta, t);
            CAPTURE(n);
            CAPTURE(t);
            CHECK(moved.phi().part(degree, 0) - m.phi().part(degree, 0) == -law);
            CHECK(lower_pure_terms_equal(m, moved, degree));
        }
    }
}

TEST_CASE("odd kernel step leaves the gradient complement invariant")
{
    std::mt19937_64 rng(22);
    for (int n = 1; n <= 2; ++n) {
        const auto m = moser_normal(static_cast<std::uint64_t>(30 + n), n, 6);
        const auto inv = moser_invariants(m);
        const auto moved = kernel_step(m, kernel_map_odd({1, random_vector(rng, static_cast<std::size_t>(n * n))}, n, 6));
        const auto before = fischer_decompose_gradient(m.phi().part(6, 0), inv);
        const auto after = fischer_decompose_gradient(moved.phi().part(6, 0), inv);
        CAPTURE(n);
        CHECK(after.complement == before.complement);
        CHECK(lower_pure_terms_equal(m, moved, 6));
    }
}

TEST_CASE("full_normalize on the N = 1 cubic with a quartic term")
{
    const auto m = manifold_of(1, 7, {zpow(1, {3}), mono(1, {}, {3}), zpow(1, {4}), mono(1, {}, {4})});
    const auto r = full_normalize(m);
    CHECK(r.status == kStatusNormalized);
    CHECK(r.residuals.all_zero());
    CHECK(r.normalized.phi().part(3, 0) == zpow(1, {3}));
    for (int j : {4, 6, 7}) {
        CHECK(r.normalized.phi().part(j, 0).is_zero());
    }
    CHECK(oracle::push_forward_residual(m, r.map, r.normalized).c.empty());
    REQUIRE(r.solver_log.size() == 3);
    CHECK(r.solver_log[0].degree == 4);
    CHECK(r.solver_log[1].degree == 6);
    CHECK(r.solver_log[2].degree == 7);
}

TEST_CASE("full_normalize on N = 2 with Delta = z1^3 + z2^3")
{
    const auto delta = zpow(2, {3}) + zpow(2, {0, 3});
    const auto quartic = zpow(2, {4});
    const auto m = manifold_of(2, 5, {delta, delta.conjugate(), quartic, quartic.conjugate()});
    const auto r = full_normalize(m);
    CHECK(r.status == kStatusNormalized);
    CHECK(r.invariants.nondegenerate);
    CHECK(fischer_apply(delta, r.normalized.phi().part(4, 0)).is_zero());
    CHECK(r.normalized.phi().part(3, 0) == delta);
}

TEST_CASE("full_normalize status and errors")
{
    const auto normal = full_normalize(moser_normal(7, 2, 6)).normalized;
    const auto again = full_normalize(normal);
    CHECK(again.map.is_identity());
    CHECK(again.normalized == normal);

    const auto flat = full_normalize(manifold_of(2, 5, {mono(2, {2}, {2})}));
    CHECK(flat.status == kStatusSUndetermined);
    CHECK(flat.solver_log.empty());
    CHECK(flat.residuals.all_zero());

    const auto degenerate = manifold_of(2, 6, {zpow(2, {3}), mono(2, {}, {3})});
    try {
        (void)full_normalize(degenerate);
        FAIL("expected a degenerate Delta error");
    } catch (const DegenerateDeltaError &e) {
        REQUIRE(e.witness().size() == 2);
        CHECK(e.witness()[0].is_zero());
        CHECK(e.witness()[1] == zpow(2, {1}));
    }
}

TEST_CASE("verify_normal_form")
{
    CHECK(verify_normal_form(Manifold(2, 6), moser_invariants(Manifold(2, 6))).all_zero());

    const auto normal = full_normalize(moser_normal(2, 1, 7)).normalized;
    MixedSeries broken = normal.phi();
    broken.add(zpow(1, {4}));
    broken.add(mono(1, {}, {4}));
    const Manifold bad(broken);
    const auto report = verify_normal_form(bad, moser_invariants(bad));
    REQUIRE(report.nonzero_count() == 1);
    for (const auto &e : report.entries) {
        if (!e.value.is_zero()) {
            CHECK(e.kind == Residual::Kind::FischerEven);
            CHECK(e.bidegree == Bidegree{4, 0});
            CHECK(e.value == fischer_apply(normal.phi().part(3, 0), zpow(1, {4})));
        }
    }
}

TEST_CASE("determined_map_weight")
{
    CHECK(determined_map_weight(3, 3) == 1);
    CHECK(determined_map_weight(3, 4) == 2);
    CHECK(determined_map_weight(3, 7) == 4);
    CHECK(determined_map_weight(3, 8) == 4);
    CHECK(determined_map_weight(3, 10) == 6);
    CHECK(determined_map_weight(4, 9) == 4);
    CHECK_THROWS_AS(determined_map_weight(2, 9), DimensionError);
}

TEST_CASE("normalization is unique under tangent-to-identity maps for N = 1")
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto normal = full_normalize(random_manifold(seed, 1, 10, 3, Profile::Generic)).normalized;
        const auto t = random_map(seed + 50, 1, 10, 6);
        const auto r = full_normalize(push_forward(normal, t));
        CAPTURE(seed);
        CHECK(r.normalized == normal);
        CHECK(compose_maps(t, r.map).truncated(determined_map_weight(3, 10)).is_identity());
    }
}

TEST_CASE("kernel parameters beyond the truncation stabilize the normal form")
{
    // N = 1, D = 10: the odd t = 3 parameter is fixed only at degree 12.
    const auto normal = full_normalize(random_manifold(2, 1, 10, 3, Profile::Generic)).normalized;
    const auto k = kernel_map_odd({3, {GaussCoeff(1)}}, 1, 10);
    const auto step = extended_moser(push_forward(normal, k));
    CHECK(step.normalized == normal);
    CHECK_FALSE(compose_maps(k, step.map).is_identity());

    // N = 2, D = 8: the odd t = 2 parameter is fixed at degree 9 yet moves
    // mixed terms of degree 6, giving a second normal form of the same jet.
    const auto normal2 = full_normalize(random_manifold(1, 2, 8, 3, Profile::Generic)).normalized;
    const auto moved = kernel_step(normal2, kernel_map_odd({2, {GaussCoeff(1), GaussCoeff(), GaussCoeff(), GaussCoeff()}}, 2, 8));
    CHECK(moved.phi().part(3, 3) != normal2.phi().part(3, 3));
    CHECK(verify_normal_form(moved, moser_invariants(moved)).all_zero());
    CHECK(full_normalize(moved).map.is_identity());
}

TEST_CASE("full_normalize is deterministic and stable in the truncation degree")
{
    const auto m = random_manifold(12, 1, 9, 3, Profile::Generic);
    const auto a = full_normalize(m);
    const auto b = full_normalize(m);
    CHECK(a.normalized == b.normalized);
    CHECK(a.map == b.map);
    CHECK(a.residuals.entries.size() == b.residuals.entries.size());

    const auto low = full_normalize(m.truncated(7));
    const int w = determined_map_weight(3, 7);
    CHECK(a.normalized.truncated(7) == low.normalized);
    CHECK(a.map.truncated(w) == low.map.truncated(w));
}
