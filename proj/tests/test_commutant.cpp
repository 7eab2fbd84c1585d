#include <gtest/gtest.h>

#include "support.hpp"

using namespace crossprod;

namespace {

Function d(std::vector<cplx> v) { return Function::discrete(std::move(v)); }

bool commutes_with_family(const DynSystem& sys, const GenPoly& a) {
    const CrossedProduct alg(sys);
    for (const Function& f : generating_family(sys))
        if (distance(alg.commutator(a, alg.embed(f)), GenPoly()) > 1e-12) return false;
    return true;
}

}  // namespace

TEST(InCommutant, SwapExamples) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    EXPECT_TRUE(in_commutant(sys, alg.delta(2)));
    EXPECT_TRUE(in_commutant(sys, alg.embed(d({1.0, 5.0}))));
    EXPECT_FALSE(in_commutant(sys, alg.delta(1)));
    EXPECT_FALSE(in_commutant(sys, alg.delta(-3)));
}

TEST(InCommutant, SwapWithFixedPoint) {
    const DynSystem sys = fixtures::swap_fixed();
    const CrossedProduct alg(sys);
    EXPECT_TRUE(in_commutant(sys, alg.embed(d({0.0, 0.0, 1.0}), 1)));
    EXPECT_FALSE(in_commutant(sys, alg.embed(d({1.0, 0.0, 0.0}), 1)));
    EXPECT_TRUE(in_commutant(sys, alg.embed(d({1.0, 2.0, 3.0}), 2)));
}

TEST(InCommutant, Rotations) {
    const CrossedProduct r(fixtures::rot13());
    EXPECT_TRUE(in_commutant(fixtures::rot13(), r.delta(3) + r.embed(Function::character(2), -6)));
    EXPECT_FALSE(in_commutant(fixtures::rot13(), r.delta(1)));
    const CrossedProduct g(fixtures::golden());
    EXPECT_TRUE(in_commutant(fixtures::golden(), g.embed(Function::character(4))));
    EXPECT_FALSE(in_commutant(fixtures::golden(), g.delta(5)));
}

TEST(CommutatorNorm, SwapDeltaWithIndicator) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    EXPECT_NEAR(commutator_norm(sys, alg.delta(1), d({1.0, 0.0})).estimate, 1.0, 1e-12);
    EXPECT_NEAR(commutator_norm(sys, alg.delta(2), d({1.0, 0.0})).estimate, 0.0, 1e-12);
}

TEST(CommutantBasis, DimensionsOnSwap) {
    const CommutantBasis b = commutant_basis(fixtures::swap(), 2);
    std::vector<std::size_t> dims;
    for (const auto& [n, pts] : b.support) dims.push_back(pts.size());
    EXPECT_EQ(dims, (std::vector<std::size_t>{2, 0, 2, 0, 2}));
    EXPECT_EQ(b.dimension(), 6u);
    for (const GenPoly& e : b.elements(fixtures::swap())) EXPECT_TRUE(in_commutant(fixtures::swap(), e));
}

TEST(CommutantBasis, DimensionsWithFixedPoint) {
    const CommutantBasis b = commutant_basis(DynSystem::finite({1, 0, 2}), 1);
    std::vector<std::size_t> dims;
    for (const auto& [n, pts] : b.support) dims.push_back(pts.size());
    EXPECT_EQ(dims, (std::vector<std::size_t>{1, 3, 1}));
}

TEST(CommutantBasis, Errors) {
    EXPECT_THROW(commutant_basis(fixtures::rot13(), 2), UnsupportedKind);
    EXPECT_THROW(commutant_basis(fixtures::swap(), -1), std::invalid_argument);
}

TEST(MaximalAbelian, FiniteFixtures) {
    for (const auto& [name, sys] : fixtures::finite()) {
        const auto cert = is_maximal_abelian(sys, 4);
        EXPECT_TRUE(cert.maximal_abelian) << name;
        EXPECT_TRUE(cert.pairwise_commute) << name;
        EXPECT_EQ(cert.nullspace.dimension, cert.basis_dimension) << name;
        EXPECT_TRUE(cert.nullspace.support_ok) << name;
    }
}

TEST(MaximalAbelian, SingleFixedPoint) {
    const DynSystem sys = DynSystem::finite({0});
    const auto cert = is_maximal_abelian(sys, 3);
    EXPECT_TRUE(cert.maximal_abelian);
    EXPECT_EQ(cert.basis_dimension, 7u);
}

TEST(Nullspace, RotationCommutantDegrees) {
    // Solutions commuting with e^{+-2 pi i x} sit in degrees divisible by q.
    const auto family = [](const DynSystem& sys) {
        std::vector<GenPoly> out;
        for (const auto& f : generating_family(sys)) out.push_back(CrossedProduct(sys).embed(f));
        return out;
    };
    const DynSystem sys = fixtures::rot13();
    const auto rep = commutant_nullspace(sys, family(sys), 6, 2);
    EXPECT_TRUE(rep.support_ok);
    for (const auto& [n, dim] : rep.by_degree) EXPECT_EQ(dim > 0, n % 3 == 0) << n;
    const auto irr = commutant_nullspace(fixtures::golden(), family(fixtures::golden()), 3, 2);
    for (const auto& [n, dim] : irr.by_degree) EXPECT_EQ(dim > 0, n == 0) << n;
}

TEST(CommutantProperty, MembershipMatchesCommutation) {
    Random rng(seed_from_env() + 31);
    for (const auto& [name, sys] : fixtures::all()) {
        for (int i = 0; i < 10; ++i) {
            const GenPoly a = rng.genpoly(sys, 4);
            EXPECT_EQ(in_commutant(sys, a, 1e-12), commutes_with_family(sys, a)) << name;
            const GenPoly pa = commutant_projection(sys, a);
            EXPECT_TRUE(in_commutant(sys, pa)) << name;
            EXPECT_TRUE(commutes_with_family(sys, pa)) << name;
            EXPECT_EQ(commutant_projection(sys, pa), pa) << name;
        }
    }
}

TEST(CommutantProperty, Abelian) {
    Random rng(seed_from_env() + 32);
    for (const auto& [name, sys] : fixtures::all()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 10; ++i) {
            const GenPoly a = oracle::random_member(sys, rng, 4), b = oracle::random_member(sys, rng, 4);
            ASSERT_TRUE(in_commutant(sys, a)) << name;
            EXPECT_LE(distance(alg.commutator(a, b), GenPoly()), 1e-12) << name;
        }
    }
}

TEST(CommutantProperty, ProjectionIsContractive) {
    Random rng(seed_from_env() + 33);
    for (const auto& [name, sys] : fixtures::finite()) {
        for (int i = 0; i < 5; ++i) {
            const GenPoly a = rng.genpoly(sys, 3);
            const NormOptions opt{64, 16, 1e-4};
            EXPECT_LE(operator_norm(sys, commutant_projection(sys, a), opt).estimate, operator_norm(sys, a, opt).upper() + 1e-9) << name;
        }
    }
}

TEST(AdDelta, PreservesCommutant) {
    Random rng(seed_from_env() + 34);
    for (const auto& [name, sys] : fixtures::all()) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 5; ++i) {
            const GenPoly a = oracle::random_member(sys, rng, 4);
            const GenPoly b = alg.ad_delta(a);
            EXPECT_TRUE(in_commutant(sys, b, 1e-12)) << name;
            EXPECT_LE(distance(b, alg.mul(alg.mul(alg.delta(1), a), alg.delta(-1))), 1e-13) << name;
        }
    }
}

TEST(NoncentralWitness, Examples) {
    const auto w = noncentral_witness(fixtures::swap());
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(in_commutant(fixtures::swap(), *w));
    EXPECT_FALSE(w->find(0));
    EXPECT_TRUE(noncentral_witness(fixtures::rot13()).has_value());
    EXPECT_FALSE(noncentral_witness(fixtures::golden()).has_value());
}

TEST(Spectrum, SwapCharacterValues) {
    const DynSystem sys = fixtures::swap();
    const CrossedProduct alg(sys);
    const SpectrumChar ch{Point::at(1), unit(0.25), 2};
    EXPECT_NEAR(std::abs(gamma_eval(sys, ch, alg.embed(d({3.0, 4.0}), 2) + alg.embed(d({1.0, 7.0}))) - (4.0 * unit(0.25) + 7.0)), 0.0, 1e-15);
    const SpectrumChar next = induced_map(sys, ch);
    EXPECT_EQ(next.y.index, 0u);
    EXPECT_EQ(next.t, ch.t);
}

TEST(SpectrumProperty, CharactersAreMultiplicative) {
    Random rng(seed_from_env() + 35);
    for (const auto& [name, sys] : fixtures::all()) {
        const CrossedProduct alg(sys);
        const auto chars = spectrum_chars(sys, SampleGrid{4, 3});
        for (int i = 0; i < 4; ++i) {
            const GenPoly a = oracle::random_member(sys, rng, 4), b = oracle::random_member(sys, rng, 4);
            for (const auto& ch : chars) {
                const cplx lhs = gamma_eval(sys, ch, alg.mul(a, b));
                EXPECT_NEAR(std::abs(lhs - gamma_eval(sys, ch, a) * gamma_eval(sys, ch, b)), 0.0, 1e-12) << name;
                EXPECT_NEAR(std::abs(gamma_eval(sys, ch, alg.adjoint(a)) - std::conj(gamma_eval(sys, ch, a))), 0.0, 1e-12) << name;
                // gamma o Ad(delta) agrees with gamma at the image character.
                const cplx shifted = gamma_eval(sys, ch, alg.ad_delta(a));
                const SpectrumChar back{sys.apply(ch.y, -1), ch.t, ch.p};
                EXPECT_NEAR(std::abs(shifted - gamma_eval(sys, back, a)), 0.0, 1e-12) << name;
            }
        }
    }
}

TEST(E0, RotationOneThirdKeepsMultiplesOfThree) {
    const DynSystem sys = fixtures::rot13();
    const CrossedProduct alg(sys);
    const GenPoly a = alg.embed(Function::character(1)) + alg.delta(1) + alg.delta(3) + alg.delta(-3) + alg.delta(-2);
    const GenPoly e = e0_projection(sys, a);
    std::vector<long> degs;
    for (const auto& [n, f] : e.terms()) degs.push_back(n);
    EXPECT_EQ(degs, (std::vector<long>{-3, 0, 3}));
}

TEST(E0, MixedPeriodsAreRejected) {
    EXPECT_THROW(e0_projection(fixtures::swap_fixed(), CrossedProduct(fixtures::swap_fixed()).one()), PreconditionViolation);
    EXPECT_EQ(uniform_period(fixtures::swap_fixed()), 0);
    EXPECT_EQ(uniform_period(fixtures::two_2cycles()), 2);
    EXPECT_EQ(uniform_period(fixtures::rot12()), 2);
}

TEST(E0, IrrationalIsExpectation) {
    const DynSystem sys = fixtures::golden();
    const CrossedProduct alg(sys);
    const GenPoly a = alg.embed(Function::character(2)) + alg.delta(1);
    EXPECT_EQ(e0_projection(sys, a), alg.embed(Function::character(2)));
}

TEST(E0, Exists) {
    for (const auto& [name, sys] : fixtures::all()) {
        const auto e = e0_exists(sys);
        EXPECT_TRUE(e.exists) << name;
    }
    const auto mixed = e0_exists(fixtures::swap_fixed());
    for (const auto& [k, why] : mixed.witness) EXPECT_FALSE(why.empty()) << k;
}

TEST(E0Property, ConditionalExpectationOntoCommutant) {
    Random rng(seed_from_env() + 36);
    for (const auto& sys : {fixtures::swap(), fixtures::two_2cycles(), fixtures::three_cycle(), fixtures::rot12(), fixtures::rot13()}) {
        const CrossedProduct alg(sys);
        for (int i = 0; i < 8; ++i) {
            const GenPoly a = rng.genpoly(sys, 6), c = oracle::random_member(sys, rng, 6);
            const GenPoly e = e0_projection(sys, a);
            EXPECT_TRUE(in_commutant(sys, e));
            EXPECT_EQ(e0_projection(sys, e), e);
            EXPECT_EQ(e0_projection(sys, c), c);
            // Bimodule property over the commutant.
            EXPECT_LE(distance(e0_projection(sys, alg.mul(c, a)), alg.mul(c, e)), 1e-12);
            // Faithful: E0(a^* a) = 0 only for a = 0, through E.
            EXPECT_EQ(alg.expectation(e0_projection(sys, alg.mul(alg.adjoint(a), a))).is_zero(), a.is_zero());
        }
    }
}
