#include "ibvp3/cli.hpp"

#include <array>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ibvp3/report.hpp"

namespace ibvp3 {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open spec file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"classify 3rd-order two-point problems with non-Robin "
                 "boundary conditions"};
    app.require_subcommand(1);

    std::string spec_path;
    int k_max = 12;
    double residual_tol = 1e-12;
    std::string format = "text";
    std::string direction = "spec";

    auto add_common = [&](CLI::App* cmd, bool with_spec) {
        if (with_spec)
            cmd->add_option("spec", spec_path, "problem document (JSON or key-value)")
                ->required();
        cmd->add_option("--k-max", k_max, "zeros per family (default 12)");
        cmd->add_option("--residual-tol", residual_tol,
                        "scaled-residual tolerance for refined zeros");
        cmd->add_option("--format", format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--direction", direction,
                        "growth direction: +i, -i, both, or spec (default)")
            ->check(CLI::IsMember({"+i", "-i", "both", "spec"}));
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "canonical form and class");
    add_common(classify_cmd, true);
    CLI::App* zeros_cmd = app.add_subcommand("zeros", "zero table with asymptotics");
    add_common(zeros_cmd, true);
    CLI::App* verdict_cmd = app.add_subcommand("verdict", "full well-posedness verdict");
    add_common(verdict_cmd, true);

    std::array<double, 4> constants{};
    CLI::App* pseudo4_cmd = app.add_subcommand(
        "pseudo4", "4th-order pseudo-periodic ill-posedness criterion");
    pseudo4_cmd->add_option("constants", constants, "four nonzero coupling constants")
        ->required()
        ->expected(4);
    pseudo4_cmd->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    ReportOptions opts;
    opts.k_max = k_max;
    opts.residual_tol = residual_tol;
    opts.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    if (direction == "+i") opts.direction = DirectionChoice::plus;
    else if (direction == "-i") opts.direction = DirectionChoice::minus;
    else if (direction == "both") opts.direction = DirectionChoice::both;
    else opts.direction = DirectionChoice::spec;

    try {
        if (k_max < 1) throw ValidationError("--k-max must be >= 1");
        Report report;
        if (*classify_cmd)
            report = run_classify(read_file(spec_path), opts);
        else if (*zeros_cmd)
            report = run_zeros(read_file(spec_path), opts);
        else if (*verdict_cmd)
            report = run_verdict(read_file(spec_path), opts);
        else
            report = run_pseudo4(constants);
        out << render_report(report, opts.format);
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace ibvp3
