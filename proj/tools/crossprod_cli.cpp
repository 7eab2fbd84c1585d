// crossprod: command-line front end for the crossed-product engine.

#include <CLI11.hpp>
#include <crossprod/commands.hpp>
#include <iostream>

using namespace crossprod;

namespace {

void emit(const Report& r, const std::string& format) {
    if (format == "json")
        std::cout << report_to_json(r).dump(2) << "\n";
    else
        std::cout << report_to_text(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossed products C(X) x Z for finite systems and circle rotations"};
    app.require_subcommand(1);

    std::string sys_path, format = "text";
    RunConfig cfg;
    cfg.seed = seed_from_env(kDefaultSeed);
    std::optional<std::uint64_t> seed_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--sys", sys_path, "system file (JSON)");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--grid", cfg.grid, "t samples per fiber (power of two >= 16)");
        sub->add_option("--y-grid", cfg.y_grid, "base points per fundamental domain on rational rotations");
        sub->add_option("--window", cfg.window, "truncation window on irrational rotations");
        sub->add_option("--seed", seed_flag, "random seed (CROSSPROD_SEED overrides the default)");
        sub->add_option("--tol", cfg.norm_tol, "requested norm enclosure radius");
        sub->add_option("--tau-zero", cfg.tol.zero, "symbolic zero tolerance");
        sub->add_option("--tau-num", cfg.tol.num, "numerical comparison tolerance");
        sub->add_option("--tau-psd", cfg.tol.psd, "positive semidefiniteness tolerance");
        sub->add_option("--cutoff", cfg.cutoff, "commutant degree cutoff");
        sub->add_option("--samples", cfg.samples, "random samples per property");
    };

    auto* info = app.add_subcommand("info", "orbits, periodicity profile and freeness");
    add_common(info);
    info->get_option("--sys")->required();

    auto* verify = app.add_subcommand("verify", "run the property suites on a system");
    add_common(verify);
    verify->get_option("--sys")->required();
    verify->add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember({"all", "commutant", "ideals", "e0", "reps"}));

    auto* compute = app.add_subcommand("compute", "run one operation");
    add_common(compute);
    std::string op, input_path, ideal_path, sub_path;
    ComputeInputs in;
    std::optional<double> y, t;
    compute->add_option("op", op, "operation")->required()->check(CLI::IsMember(compute_ops()));
    compute->add_option("input", input_path, "element file (JSON)");
    compute->add_option("--ideal", ideal_path, "ideal file (JSON)");
    compute->add_option("--subalgebra", sub_path, "subalgebra file (JSON)");
    compute->add_option("--j", in.j, "Fourier coefficient index");
    compute->add_option("--n", in.n, "Cesaro order");
    compute->add_option("--y", y, "base point: index (finite) or turn (circle)");
    compute->add_option("--t", t, "representation parameter in turns");

    CLI11_PARSE(app, argc, argv);
    if (seed_flag) cfg.seed = *seed_flag;

    try {
        std::optional<DynSystem> sys;
        if (!sys_path.empty()) sys = system_from_json(read_json_file(sys_path));
        Report r;
        if (info->parsed()) {
            r = cmd_info(*sys);
        } else if (verify->parsed()) {
            r = run_verify(*sys, cfg);
        } else {
            in.system = sys;
            in.y = y;
            in.t = t;
            if (!input_path.empty()) in.element = element_from_json(read_json_file(input_path));
            if (!ideal_path.empty()) in.ideal = ideal_from_json(read_json_file(ideal_path));
            if (!sub_path.empty()) in.subalgebra = subalgebra_from_json(read_json_file(sub_path));
            r = cmd_compute(op, in, cfg);
        }
        emit(r, format);
        return r.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
