#include <gtest/gtest.h>

#include "support.hpp"

using namespace crossprod;

namespace {

Function d(std::vector<cplx> v) { return Function::discrete(std::move(v)); }

// Largest entry difference against reference representations over a small (y, t) grid.
double reference_gap(const DynSystem& sys, const GenPoly& lhs, const std::function<oracle::Mat(const oracle::Base&, cplx)>& rhs) {
    double g = 0.0;
    for (const auto& y : oracle::bases(sys, 5))
        for (std::size_t m = 0; m < 7; ++m) {
            const cplx t = oracle::t_point(m, 7) * std::polar(1.0, 0.1);
            g = std::max(g, (oracle::rep(sys, y, t, lhs) - rhs(y, t)).cwiseAbs().maxCoeff());
        }
    return g;
}

std::vector<DynSystem> model_systems() { return {fixtures::swap_fixed(), fixtures::two_2cycles(), fixtures::rot13(), fixtures::golden()}; }

}  // namespace

TEST(Function, ModelsDoNotMix) {
    EXPECT_THROW(d({1.0, 2.0}) + Function::character(1), ModelMismatch);
    EXPECT_THROW(d({1.0, 2.0}) * d({1.0, 2.0, 3.0}), std::invalid_argument);
    const CrossedProduct alg(fixtures::swap());
    EXPECT_THROW(alg.check(GenPoly::term(0, Function::character(1))), ModelMismatch);
}

TEST(Function, TrigEvaluationMatchesDirectSum) {
    const Function f = Function::trig({{-2, {0.5, 0.25}}, {0, 1.0}, {3, {0.0, -1.0}}});
    for (double x : {0.0, 0.1, 0.37, 0.999}) {
        const cplx direct = cplx(0.5, 0.25) * std::polar(1.0, -4.0 * M_PI * x) + 1.0 + cplx(0.0, -1.0) * std::polar(1.0, 6.0 * M_PI * x);
        EXPECT_NEAR(std::abs(f.eval(x) - direct), 0.0, 1e-14);
    }
}

TEST(GenPoly, AddExamples) {
    const Function f = d({1.0, 2.0});
    EXPECT_TRUE(add(GenPoly::term(1, f), GenPoly::term(1, f * cplx(-1.0))).is_zero());
    EXPECT_TRUE(add(GenPoly::term(1, f), GenPoly::term(1, f * cplx(-1.0))).terms().empty());
    const GenPoly s = add(GenPoly::term(0, f), GenPoly::term(1, d({3.0, 4.0})));
    ASSERT_EQ(s.terms().size(), 2u);
    EXPECT_EQ(*s.find(0), f);
    EXPECT_EQ(*s.find(1), d({3.0, 4.0}));
    EXPECT_EQ(*scale(GenPoly::term(2, f), 2.0).find(2), d({2.0, 4.0}));
}

TEST(CrossedProduct, MulOnSwap) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    const GenPoly a = alg.embed(d({1.0, 2.0}), 1), b = alg.embed(d({3.0, 4.0}), 1);
    const GenPoly ab = alg.mul(a, b);
    ASSERT_EQ(ab.terms().size(), 1u);
    EXPECT_EQ(*ab.find(2), d({4.0, 6.0}));
    EXPECT_EQ(alg.fourier(ab, 2), d({4.0, 6.0}));
    // Cross-check against the product of reference matrices.
    EXPECT_LE(reference_gap(sys, ab, [&](const oracle::Base& y, cplx t) -> oracle::Mat { return oracle::rep(sys, y, t, a) * oracle::rep(sys, y, t, b); }), 1e-14);
}

TEST(CrossedProduct, UnitarityOfDelta) {
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        EXPECT_EQ(alg.mul(alg.delta(1), alg.delta(-1)), alg.one());
        EXPECT_EQ(alg.adjoint(alg.delta(1)), alg.delta(-1));
    }
}

TEST(CrossedProduct, DegreeZeroIsPointwise) {
    const CrossedProduct alg(fixtures::swap_fixed());
    const Function f = d({1.0, {0.0, 2.0}, -1.0}), g = d({3.0, 4.0, {1.0, 1.0}});
    EXPECT_EQ(alg.mul(alg.embed(f), alg.embed(g)), alg.embed(f * g));
    EXPECT_EQ(alg.adjoint(alg.embed(f)), alg.embed(f.conj()));
}

TEST(CrossedProduct, AdjointOnSwap) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    const GenPoly a = alg.embed(d({1.0, {0.0, 2.0}}), 1);
    const GenPoly s = alg.adjoint(a);
    ASSERT_EQ(s.terms().size(), 1u);
    EXPECT_EQ(*s.find(-1), d({{0.0, -2.0}, 1.0}));
    EXPECT_LE(reference_gap(sys, s, [&](const oracle::Base& y, cplx t) -> oracle::Mat { return oracle::Mat(oracle::rep(sys, y, t, a).adjoint()); }), 1e-15);
}

TEST(CrossedProduct, ExpectationExamples) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    const Function f = d({1.0, 2.0}), g = d({5.0, 7.0});
    EXPECT_EQ(alg.expectation(add(alg.embed(f), alg.embed(g, 1))), f);
    for (long k : {-3, -1, 1, 2}) EXPECT_TRUE(alg.expectation(alg.delta(k)).is_zero());
    const GenPoly a = alg.embed(d({1.0, {0.0, 2.0}}), 1);
    // (f delta)^* (f delta) = |f|^2 o sigma at degree 0
    EXPECT_EQ(alg.expectation(alg.mul(alg.adjoint(a), a)), d({4.0, 1.0}));
}

TEST(CrossedProduct, FourierExamples) {
    const CrossedProduct alg(fixtures::swap());
    const Function f = d({1.0, 2.0});
    EXPECT_EQ(alg.fourier(alg.embed(f, 2), 2), f);
    EXPECT_TRUE(alg.fourier(alg.embed(f, 2), 1).is_zero());
}

TEST(CrossedProduct, CesaroExamples) {
    const CrossedProduct alg(fixtures::swap());
    const Function f = d({1.0, 2.0}), g = d({3.0, -6.0});
    EXPECT_EQ(alg.cesaro(alg.embed(f, 1), 1), alg.embed(f * cplx(0.5), 1));
    for (long n : {0, 1, 5, 40}) EXPECT_EQ(alg.cesaro(alg.embed(f), n), alg.embed(f));
    const GenPoly c = alg.cesaro(add(alg.embed(f), alg.embed(g, 2)), 2);
    EXPECT_EQ(*c.find(0), f);
    EXPECT_LE(distance(*c.find(2), g * cplx(1.0 / 3.0)), 1e-15);
    EXPECT_TRUE(alg.cesaro(alg.embed(g, 2), 1).is_zero());
    EXPECT_THROW(alg.cesaro(alg.one(), -1), std::invalid_argument);
}

TEST(CrossedProduct, ProductMatchesReferenceRepresentation) {
    Random rng(seed_from_env() + 11);
    for (const auto& sys : {fixtures::swap_fixed(), fixtures::two_2cycles(), fixtures::rot13(), fixtures::rot12()}) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 10; ++i) {
            const GenPoly a = rng.genpoly(sys, 3), b = rng.genpoly(sys, 3);
            EXPECT_LE(reference_gap(sys, alg.mul(a, b),
                                    [&](const oracle::Base& y, cplx t) -> oracle::Mat { return oracle::rep(sys, y, t, a) * oracle::rep(sys, y, t, b); }),
                      1e-13);
        }
    }
}

TEST(CrossedProductProperty, RingAxioms) {
    Random rng(seed_from_env() + 12);
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 15; ++i) {
            const GenPoly a = rng.genpoly(sys, 3), b = rng.genpoly(sys, 3), c = rng.genpoly(sys, 3);
            EXPECT_LE(distance(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c))), 1e-12);
            EXPECT_EQ(add(a, b), add(b, a));
            EXPECT_LE(distance(alg.mul(a, add(b, c)), add(alg.mul(a, b), alg.mul(a, c))), 1e-12);
            EXPECT_LE(distance(alg.mul(add(a, b), c), add(alg.mul(a, c), alg.mul(b, c))), 1e-12);
        }
    }
}

TEST(CrossedProductProperty, Covariance) {
    Random rng(seed_from_env() + 13);
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        for (long n = -6; n <= 6; ++n) {
            const Function f = rng.function(sys);
            const GenPoly lhs = alg.mul(alg.delta(n), alg.embed(f));
            EXPECT_LE(distance(lhs, alg.embed(compose(sys, f, -n), n)), 1e-14) << n;
            // Pointwise: (f o s^{-n})(x) = f(s^{-n} x).
            if (sys.is_finite()) {
                for (std::size_t x = 0; x < sys.size(); ++x) EXPECT_EQ(lhs.find(n)->at(x), f.at(oracle::iterate(sys, x, -n)));
            } else {
                for (double x : {0.0, 0.3, 0.71}) EXPECT_NEAR(std::abs(lhs.find(n)->eval(x) - f.eval(sys.apply(x, -n))), 0.0, 1e-12);
            }
        }
    }
}

TEST(CrossedProductProperty, AdjointReversesProducts) {
    Random rng(seed_from_env() + 14);
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 15; ++i) {
            const GenPoly a = rng.genpoly(sys, 3), b = rng.genpoly(sys, 3);
            EXPECT_LE(distance(alg.adjoint(alg.mul(a, b)), alg.mul(alg.adjoint(b), alg.adjoint(a))), 1e-13);
            EXPECT_LE(distance(alg.adjoint(alg.adjoint(a)), a), 1e-15);
        }
    }
}

TEST(CrossedProductProperty, ExpectationModuleProperty) {
    Random rng(seed_from_env() + 15);
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 15; ++i) {
            const GenPoly a = rng.genpoly(sys, 3);
            const Function f = rng.function(sys), g = rng.function(sys);
            const Function lhs = alg.expectation(alg.mul(alg.embed(f), alg.mul(a, alg.embed(g))));
            EXPECT_LE(distance(lhs, f * alg.expectation(a) * g), 1e-13);
        }
    }
}

TEST(CrossedProductProperty, ExpectationIsFaithful) {
    Random rng(seed_from_env() + 16);
    for (const auto& sys : model_systems()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 15; ++i) {
            const GenPoly a = rng.genpoly(sys, 3, 0.5);
            const Function e = alg.expectation(alg.mul(alg.adjoint(a), a));
            // E(a^* a) = sum_i |a(i)|^2 o s^i
            Function expected = alg.constant(0.0);
            for (const auto& [k, f] : a.terms()) expected += compose(sys, f.conj() * f, k);
            EXPECT_LE(distance(e, expected), 1e-13);
            EXPECT_EQ(e.is_zero(), a.is_zero());
        }
    }
}

TEST(CrossedProduct, AdDeltaActsOnCoefficients) {
    const DynSystem sys = fixtures::swap_fixed();
    const CrossedProduct alg(sys);
    const Function f = d({1.0, 2.0, 3.0});
    EXPECT_EQ(alg.ad_delta(alg.embed(f)), alg.embed(compose(sys, f, -1)));
    for (long k : {-2, 1, 3}) EXPECT_EQ(alg.ad_delta(alg.delta(k)), alg.delta(k));
}

TEST(Laurent, EvaluationAndProduct) {
    const Laurent a({{-1, 2.0}, {0, 1.0}}), b({{1, 1.0}, {2, {0.0, 1.0}}});
    const cplx z = std::polar(1.0, 0.7);
    EXPECT_NEAR(std::abs((a * b)(z) - a(z) * b(z)), 0.0, 1e-14);
    EXPECT_EQ(a + Laurent({{-1, -2.0}, {0, -1.0}}), Laurent());
}

TEST(Laurent, UnitCircleRoots) {
    // (z - 1)(z - i) z^{-1} has roots at turns 0 and 1/4.
    const Laurent l = Laurent({{1, 1.0}, {0, -1.0}}) * Laurent({{0, 1.0}, {-1, {0.0, -1.0}}});
    auto r = unit_circle_roots(l, 1e-9);
    std::sort(r.begin(), r.end());
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0], 0.0, 1e-12);
    EXPECT_NEAR(r[1], 0.25, 1e-12);
    EXPECT_TRUE(unit_circle_roots(Laurent({{0, 2.0}, {1, 1.0}}), 1e-9).empty());
}
