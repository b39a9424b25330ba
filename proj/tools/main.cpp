#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/conditions.hpp"
#include "orlicz/harness.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/operators.hpp"

using namespace orlicz;

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 2;
    }
}

int run_phi_check(const std::string& spec_path, const std::string& cond) {
    PhiPtr phi = Phi::from_json(load_json(spec_path));
    ConditionReport rep;
    if (cond == "A0") rep = check_A0(*phi);
    else if (cond == "A1") rep = check_A1(*phi);
    else if (cond == "A2") rep = check_A2(*phi);
    else if (cond.rfind("aInc:", 0) == 0) rep = check_aInc(*phi, std::stod(cond.substr(5)));
    else if (cond.rfind("aDec:", 0) == 0) rep = check_aDec(*phi, std::stod(cond.substr(5)));
    else throw std::runtime_error("unknown condition " + cond);
    std::cout << rep.to_json().dump(2) << '\n';
    return verdict_exit(rep.verdict);
}

int run_norm(const std::string& phi_path, const std::string& f_path) {
    PhiPtr phi = Phi::from_json(load_json(phi_path));
    GridFunction f = GridFunction::load_binary(f_path);
    NormResult res = luxemburg_norm(*phi, f);
    std::cout << res.to_json().dump(2) << '\n';
    return 0;
}

CubeFamily make_family(const Grid& g, const std::string& kind) {
    if (kind == "dyadic") {
        int levels = 1;
        while ((1 << levels) <= g.res(0) && levels < 12) ++levels;
        return CubeFamily::dyadic(g, levels);
    }
    if (kind == "sliding") {
        std::vector<int> radii = {0, 1, 2, 4};
        if (g.res(0) / 8 > 4) radii.push_back(g.res(0) / 8);
        return CubeFamily::sliding(g, radii);
    }
    throw std::runtime_error("unknown family " + kind);
}

int run_op(const std::string& name, double alpha, const std::string& family,
           const std::string& f_path, const std::string& b_path, std::string out_path) {
    GridFunction f = GridFunction::load_binary(f_path);
    CubeFamily fam = make_family(f.grid(), family);

    bool needs_b = name == "maximal_commutator" || name == "fm_commutator" ||
                   name == "riesz_commutator" || name == "riesz_abs_commutator";
    if (needs_b && b_path.empty())
        throw std::runtime_error(name + " needs a symbol function <b.bin>");
    GridFunction b = needs_b ? GridFunction::load_binary(b_path) : GridFunction::zeros(f.grid());

    OperatorOutput out{GridFunction::zeros(f.grid()), std::nullopt, 0.0};
    if (name == "hl_maximal") out = hl_maximal(f, fam);
    else if (name == "fractional_maximal") out = fractional_maximal(f, alpha, fam);
    else if (name == "sharp_maximal") out = sharp_maximal(f, fam);
    else if (name == "maximal_commutator") out = maximal_commutator(b, f, alpha, fam);
    else if (name == "fm_commutator") out = fm_commutator(b, f, alpha, fam);
    else if (name == "riesz_potential") out = riesz_potential(f, alpha);
    else if (name == "riesz_commutator") out = riesz_commutator(b, f, alpha);
    else if (name == "riesz_abs_commutator") out = riesz_abs_commutator(b, f, alpha);
    else throw std::runtime_error("unknown operator " + name);

    if (out_path.empty()) out_path = f_path + ".out.bin";
    out.result.save_binary(out_path);
    nlohmann::json summary = {{"op", name},
                              {"alpha", alpha},
                              {"family", family},
                              {"max_abs", out.result.max_abs()},
                              {"elapsed_seconds", out.elapsed_seconds},
                              {"out", out_path}};
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_suite_cmd(const std::string& config_path, const std::string& out_path) {
    SuiteConfig cfg = SuiteConfig::from_json(load_json(config_path));
    SuiteReport rep = run_suite(cfg);
    emit_report(rep, "json", out_path);
    int fails = 0, inconclusive = 0;
    for (const auto& c : rep.cases) {
        if (c.verdict == "fail") ++fails;
        if (c.verdict == "inconclusive") ++inconclusive;
    }
    std::cout << "cases: " << rep.cases.size() << "  fail: " << fails
              << "  inconclusive: " << inconclusive
              << "  uncovered: " << rep.uncovered.size() << "\nreport: " << out_path << '\n';
    return rep.exit_code();
}

int run_render(const std::string& report_path, const std::string& format,
               std::string out_path) {
    SuiteReport rep = SuiteReport::from_json(load_json(report_path));
    if (out_path.empty()) {
        std::string ext = format == "markdown" || format == "md" ? ".md" : "." + format;
        out_path = report_path + ext;
    }
    emit_report(rep, format == "md" ? "markdown" : format, out_path);
    std::cout << out_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Orlicz space engine"};
    app.require_subcommand(1);

    std::string spec_path, cond;
    auto* phi_cmd = app.add_subcommand("phi", "Phi-function tooling");
    phi_cmd->require_subcommand(1);
    auto* check_cmd = phi_cmd->add_subcommand("check", "run a structural condition check");
    check_cmd->add_option("spec", spec_path, "Phi spec JSON")->required();
    check_cmd->add_option("--cond", cond, "A0|A1|A2|aInc:p|aDec:q")->required();

    std::string phi_path, f_path;
    auto* norm_cmd = app.add_subcommand("norm", "Luxemburg norm of a grid function");
    norm_cmd->add_option("phi", phi_path, "Phi spec JSON")->required();
    norm_cmd->add_option("f", f_path, "grid function (binary)")->required();

    std::string op_name, op_f, op_b, op_family = "dyadic", op_out;
    double op_alpha = 0.0;
    auto* op_cmd = app.add_subcommand("op", "apply an operator to a grid function");
    op_cmd->add_option("name", op_name, "operator name")->required();
    op_cmd->add_option("--alpha", op_alpha, "order of the fractional operator");
    op_cmd->add_option("--family", op_family, "dyadic|sliding");
    op_cmd->add_option("--out", op_out, "output path for the result (binary)");
    op_cmd->add_option("f", op_f, "grid function (binary)")->required();
    op_cmd->add_option("b", op_b, "symbol function (binary), for commutators");

    std::string suite_config, suite_out = "report.json";
    auto* suite_cmd = app.add_subcommand("suite", "verification suites");
    suite_cmd->require_subcommand(1);
    auto* suite_run = suite_cmd->add_subcommand("run", "run the configured suites");
    suite_run->add_option("config", suite_config, "suite config JSON")->required();
    suite_run->add_option("--out", suite_out, "report output path");

    std::string report_path, render_format = "md", render_out;
    auto* report_cmd = app.add_subcommand("report", "report tooling");
    report_cmd->require_subcommand(1);
    auto* render_cmd = report_cmd->add_subcommand("render", "render a report");
    render_cmd->add_option("report", report_path, "report JSON")->required();
    render_cmd->add_option("--format", render_format, "json|csv|md");
    render_cmd->add_option("--out", render_out, "rendered output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed()) return run_phi_check(spec_path, cond);
        if (norm_cmd->parsed()) return run_norm(phi_path, f_path);
        if (op_cmd->parsed())
            return run_op(op_name, op_alpha, op_family, op_f, op_b, op_out);
        if (suite_run->parsed()) return run_suite_cmd(suite_config, suite_out);
        if (render_cmd->parsed()) return run_render(report_path, render_format, render_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
