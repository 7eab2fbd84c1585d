#include <gtest/gtest.h>

#include <crossprod/commands.hpp>
#include <filesystem>

#include "support.hpp"

using namespace crossprod;

namespace {

const std::string kData = CROSSPROD_DATA_DIR;

json data(const std::string& name) { return read_json_file(kData + "/" + name); }

RunConfig light_config() {
    RunConfig cfg;
    cfg.grid = 32;
    cfg.y_grid = 4;
    cfg.window = 32;
    cfg.norm_tol = 1e-3;
    cfg.samples = 3;
    return cfg;
}

}  // namespace

TEST(JsonRoundTrip, Systems) {
    for (const auto& [name, sys] : fixtures::all()) {
        const json j = system_to_json(sys);
        EXPECT_EQ(system_from_json(j), sys) << name;
        EXPECT_EQ(canonical(system_to_json(system_from_json(j))), canonical(j)) << name;
    }
    const DynSystem labelled = DynSystem::finite({1, 0}, {"a", "b"});
    EXPECT_EQ(system_from_json(system_to_json(labelled)).labels(), labelled.labels());
}

TEST(JsonRoundTrip, SampleFilesAreCanonicalFixedPoints) {
    for (const char* f : {"swap.json", "rot13.json", "golden.json"}) {
        const json j = data(f);
        const json again = system_to_json(system_from_json(j));
        EXPECT_EQ(canonical(system_to_json(system_from_json(again))), canonical(again)) << f;
    }
    EXPECT_EQ(system_from_json(data("golden.json")).kind(), SystemKind::IrrationalRotation);
}

TEST(JsonRoundTrip, ElementsAreBitExact) {
    Random rng(seed_from_env() + 51);
    for (const auto& [name, sys] : fixtures::all()) {
        for (int i = 0; i < 10; ++i) {
            const GenPoly a = rng.genpoly(sys, 4);
            const json j = element_to_json(a);
            const GenPoly b = element_from_json(j);
            EXPECT_EQ(a, b) << name;
            EXPECT_EQ(canonical(element_to_json(b)), canonical(j)) << name;
            EXPECT_EQ(canonical(json::parse(canonical(j))), canonical(j)) << name;
        }
    }
}

TEST(JsonRoundTrip, Ideals) {
    const DynSystem sys = fixtures::swap_fixed();
    const CrossedProduct alg(sys);
    const std::vector<IdealSpec> ideals = {
        IdealSpec::generated({alg.one() - alg.delta(2)}),
        IdealSpec::hull_specified({CircleSet::of({Arc::between(Rational(1, 3), Rational(1, 2))}), CircleSet::everything()}),
        build_disjoint_support_subalgebra(fixtures::rot13()).ideal,
    };
    for (const auto& ideal : ideals) {
        const json j = ideal_to_json(ideal);
        EXPECT_EQ(canonical(ideal_to_json(ideal_from_json(j))), canonical(j));
    }
    const IdealSpec file = ideal_from_json(data("swap_ideal.json"));
    EXPECT_EQ(file.kind, IdealSpec::Kind::Generated);
    EXPECT_EQ(file.generators.size(), 1u);
}

TEST(JsonRoundTrip, Subalgebras) {
    const auto c = build_isolated_orbit_subalgebras(fixtures::swap_fixed(), 0, 0.0, 0.5,
                                                    CircleSet::of({Arc::between(Rational(0), Rational(1, 2))}));
    for (const SubalgebraSpec& b : {SubalgebraSpec::full_commutant(), SubalgebraSpec::functions(), c.b1, c.b2,
                                    build_disjoint_support_subalgebra(fixtures::rot12()).b,
                                    build_pointwise_vanishing_subalgebra(fixtures::rot13(), 0.25).b}) {
        const json j = subalgebra_to_json(b);
        const SubalgebraSpec back = subalgebra_from_json(j);
        EXPECT_EQ(back.kind, b.kind);
        EXPECT_EQ(canonical(subalgebra_to_json(back)), canonical(j));
    }
    EXPECT_EQ(subalgebra_from_json(data("disjoint_support.json")).kind, SubalgebraSpec::Kind::DisjointSupport);
}

TEST(JsonRoundTrip, Reports) {
    Report r;
    r.command = "compute norm";
    r.system = system_to_json(fixtures::swap());
    r.result = {{"estimate", 1.0}};
    r.add(make_check("a", "an anchor", true, {{"x", 0.1}}));
    r.add(make_check("b", "another anchor", false, {{"x", 3.0}}, "too large"));
    r.add(skipped_check("c", "a third anchor", "not applicable"));
    const json j = report_to_json(r);
    const Report back = report_from_json(j);
    EXPECT_EQ(back, r);
    EXPECT_EQ(canonical(report_to_json(back)), canonical(j));
    EXPECT_EQ(j["summary"]["pass"], 1);
    EXPECT_EQ(j["summary"]["fail"], 1);
    EXPECT_EQ(j["summary"]["skipped"], 1);
    EXPECT_EQ(r.exit_code(), 1);
}

TEST(JsonErrors, ParseErrorsCarryPosition) {
    try {
        parse_json_text("{\"kind\": \"finite\", \"sigma\": [1, 0", "input");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
    EXPECT_THROW(read_json_file(kData + "/does_not_exist.json"), ParseError);
}

TEST(JsonErrors, SchemaViolations) {
    EXPECT_ANY_THROW(system_from_json(json{{"kind", "torus"}}));
    EXPECT_ANY_THROW(system_from_json(json{{"kind", "finite"}, {"sigma", {0, 0}}}));
    EXPECT_ANY_THROW(system_from_json(json{{"kind", "rotation"}, {"p", 2}, {"q", 4}}));
    EXPECT_ANY_THROW(element_from_json(json{{"terms", {{{"deg", 0}}}}}));
    EXPECT_ANY_THROW(complex_from_json(json::array({1.0})));
}

TEST(Commands, InfoSummaries) {
    EXPECT_EQ(info_summary(fixtures::swap()), "1 orbit, period 2, not topologically free");
    EXPECT_EQ(info_summary(fixtures::swap_fixed()), "2 orbits, periods 1,2, not topologically free");
    EXPECT_EQ(info_summary(fixtures::rot13()), "X = Per_3(sigma), not topologically free");
    EXPECT_EQ(info_summary(fixtures::golden()), "free, topologically free");
    const Report r = cmd_info(fixtures::swap_fixed());
    EXPECT_EQ(r.result["orbits"].size(), 2u);
    EXPECT_EQ(r.exit_code(), 0);
}

TEST(Commands, ComputeFourierAndCesaro) {
    ComputeInputs in;
    in.element = element_from_json(data("swap_elem.json"));
    in.j = 2;
    const Report f = cmd_compute("fourier", in, light_config());
    EXPECT_EQ(f.result["coefficient"], function_to_json(*in.element->find(2)));
    in.n = 1;
    const Report c = cmd_compute("cesaro", in, light_config());
    EXPECT_TRUE(c.result.is_object());
    in.n = -1;
    EXPECT_THROW(cmd_compute("cesaro", in, light_config()), std::invalid_argument);
}

TEST(Commands, ComputeNeedsInputs) {
    ComputeInputs in;
    EXPECT_THROW(cmd_compute("norm", in, light_config()), std::invalid_argument);
    in.system = fixtures::swap();
    EXPECT_THROW(cmd_compute("norm", in, light_config()), std::invalid_argument);
    EXPECT_THROW(cmd_compute("no-such-op", in, light_config()), std::invalid_argument);
}

TEST(Commands, EveryOperationRunsOnSampleInputs) {
    ComputeInputs in;
    in.system = system_from_json(data("swap.json"));
    in.element = element_from_json(data("delta.json"));
    in.ideal = ideal_from_json(data("swap_ideal.json"));
    in.subalgebra = SubalgebraSpec::functions();
    in.y = 0;
    in.t = 0.25;
    for (const auto& op : compute_ops()) {
        const Report r = cmd_compute(op, in, light_config());
        EXPECT_EQ(r.exit_code(), 0) << op << "\n" << report_to_text(r);
        EXPECT_FALSE(r.result.is_null()) << op;
    }
}

TEST(Commands, NormReportsEnclosure) {
    ComputeInputs in;
    in.system = fixtures::swap();
    in.element = CrossedProduct(fixtures::swap()).delta(1);
    const Report r = cmd_compute("norm", in, light_config());
    EXPECT_DOUBLE_EQ(r.result["estimate"].get<double>(), 1.0);
    EXPECT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].status, Status::Pass);
    in.system = fixtures::golden();
    in.element = CrossedProduct(fixtures::golden()).delta(1);
    const Report g = cmd_compute("norm", in, light_config());
    ASSERT_EQ(g.checks.size(), 1u);
    EXPECT_EQ(g.checks[0].status, Status::Skipped);
}

TEST(Verify, DeterministicJson) {
    const RunConfig cfg = light_config();
    for (const auto& sys : {fixtures::swap(), fixtures::golden()}) {
        const std::string a = canonical(report_to_json(run_verify(sys, cfg)));
        const std::string b = canonical(report_to_json(run_verify(sys, cfg)));
        EXPECT_EQ(a, b);
    }
}

TEST(Verify, AllChecksPassOnFiniteFixtures) {
    for (const auto& [name, sys] : fixtures::finite()) {
        const Report r = run_verify(sys, light_config());
        EXPECT_TRUE(r.ok()) << name << "\n" << report_to_text(r);
        for (const auto& c : r.checks) {
            EXPECT_FALSE(c.anchor.empty()) << c.name;
            if (c.status == Status::Skipped) {
                EXPECT_FALSE(c.reason.empty()) << c.name;
            }
        }
    }
}

TEST(Verify, MixedPeriodsSkipE0) {
    RunConfig cfg = light_config();
    cfg.suite = "e0";
    const Report r = run_verify(fixtures::swap_fixed(), cfg);
    ASSERT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_EQ(c.status, Status::Skipped) << c.name;
}

TEST(Verify, ConfigValidation) {
    RunConfig cfg = light_config();
    cfg.suite = "nope";
    EXPECT_THROW(run_verify(fixtures::swap(), cfg), std::invalid_argument);
    cfg = light_config();
    cfg.grid = 48;
    EXPECT_THROW(cfg.validate(), PreconditionViolation);
    cfg.grid = 8;
    EXPECT_THROW(cfg.validate(), PreconditionViolation);
    cfg = light_config();
    cfg.tol.psd = 0.0;
    EXPECT_THROW(cfg.validate(), PreconditionViolation);
    cfg = light_config();
    cfg.grid = 4096;
    EXPECT_EQ(cfg.norm_options().grid, 256u);
}

TEST(Seed, EnvironmentOverride) {
    ::setenv("CROSSPROD_SEED", "12345", 1);
    EXPECT_EQ(seed_from_env(), 12345u);
    ::unsetenv("CROSSPROD_SEED");
    EXPECT_EQ(seed_from_env(), kDefaultSeed);
}
