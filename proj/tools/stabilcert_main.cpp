// stabilcert: decide l^p stability of convolution-dominated infinite
// matrices with explicit, independently checkable certificates.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stabilcert/cli_ops.hpp"
#include "stabilcert/errors.hpp"
#include "stabilcert/version.hpp"

namespace {

stabilcert::OperatorSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw stabilcert::InputError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return stabilcert::parse_operator_spec(buf.str());
}

int emit(const stabilcert::RunOutcome& outcome, const std::string& report_path) {
    const std::string text = stabilcert::dump_report(outcome.report);
    if (report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(report_path);
        if (!out) throw stabilcert::InputError("cannot write report file: " + report_path);
        out << text;
        std::cout << outcome.report.verdict << "\n";
    }
    return outcome.exit_code;
}

double parse_p(const std::string& s) { return stabilcert::p_from_string(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability certificates for convolution-dominated infinite matrices"};
    app.set_version_flag("--version", stabilcert::kToolVersion);
    app.require_subcommand(1);

    std::string spec_path, report_path, p_str = "2";
    long long n0 = 8, n_min = 1, n_max = 16;

    CLI::App* certify = app.add_subcommand("certify", "certify l^p stability at a fixed N0");
    certify->add_option("--spec", spec_path, "operator spec file (JSON)")->required();
    certify->add_option("--p", p_str, "exponent: 1, 2 or inf");
    certify->add_option("--n0", n0, "block scale N0 (>= 1)");
    certify->add_option("--report", report_path, "write the report here instead of stdout");

    CLI::App* scan = app.add_subcommand("scan", "sweep N and report alpha(N) vs threshold(N)");
    scan->add_option("--spec", spec_path, "operator spec file (JSON)")->required();
    scan->add_option("--p", p_str, "exponent: 1, 2 or inf");
    scan->add_option("--nmin", n_min, "first N");
    scan->add_option("--nmax", n_max, "last N");
    scan->add_option("--report", report_path, "write the report here instead of stdout");

    CLI::App* oracle = app.add_subcommand("oracle", "symbol criterion and finite sections");
    oracle->add_option("--spec", spec_path, "operator spec file (JSON)")->required();
    oracle->add_option("--report", report_path, "write the report here instead of stdout");

    CLI::App* paper = app.add_subcommand("paper-examples", "reproduce the worked example");
    paper->add_option("--report", report_path, "write the report here instead of stdout");

    // Usage errors must not collide with verdict exit codes {0, 1, 2}.
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (certify->parsed())
            return emit(stabilcert::run_certify(load_spec(spec_path), parse_p(p_str), n0),
                        report_path);
        if (scan->parsed())
            return emit(stabilcert::run_scan(load_spec(spec_path), parse_p(p_str), n_min, n_max),
                        report_path);
        if (oracle->parsed()) return emit(stabilcert::run_oracle(load_spec(spec_path)), report_path);
        if (paper->parsed()) return emit(stabilcert::run_paper_examples(), report_path);
    } catch (const stabilcert::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const stabilcert::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const stabilcert::UnsupportedMethodError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const stabilcert::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 3;
}
