#include "stabilcert/cli_ops.hpp"

#include <chrono>
#include <cmath>

#include "stabilcert/errors.hpp"
#include "stabilcert/paper_examples.hpp"
#include "stabilcert/version.hpp"

namespace stabilcert {

namespace {

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunReport base_report(const std::string& command) {
    RunReport r;
    r.format = kReportFormat;
    r.tool_version = kToolVersion;
    r.command = command;
    return r;
}

}  // namespace

RunOutcome run_certify(const OperatorSpec& spec, double p, long long n0) {
    const Stopwatch watch;
    RunOutcome out;
    out.report = base_report("certify");
    out.report.params["p"] = p_to_string(p);
    out.report.params["n0"] = n0;
    out.report.spec_echo = spec_to_json(spec);

    // Fast path first: the dominance margin needs only the profile.
    bool dd_certified = false;
    StabilityCertificate dd;
    bool have_dd = false;
    if (std::isinf(p)) {
        try {
            dd = diagonal_dominance_certify(spec);
            have_dd = true;
            dd_certified = dd.verdict == Verdict::kCertifiedStable;
        } catch (const PreconditionError&) {
            // non-lattice spec: no accessible diagonal, fall through
        }
    }

    StabilityCertificate cert = certify_condition_iii(spec, p, n0);
    const bool iii_certified = cert.verdict == Verdict::kCertifiedStable;

    bool zero_found = false;
    if (spec.kind() == SpecKind::kToeplitz) {
        const SymbolAnalysis oracle = certified_symbol_analysis(spec.coeffs());
        out.report.payload["symbol_oracle"] = symbol_analysis_to_json(oracle);
        zero_found = oracle.verdict == SymbolAnalysis::Verdict::kZeroFound;
    }

    const bool stable = dd_certified || iii_certified;
    if (stable && zero_found)
        throw InternalError(
            "inconsistency: certificate and symbol oracle disagree on stability");

    StabilityCertificate deciding = dd_certified ? dd : cert;
    if (!stable && zero_found) {
        deciding.verdict = Verdict::kCertifiedUnstable;
        deciding.note += "; symbol oracle exhibited a zero";
    }

    if (have_dd) out.report.payload["diagonal_dominance"] = certificate_to_json(dd);
    out.report.payload["certificate"] = certificate_to_json(deciding);
    if (dd_certified) out.report.payload["condition_iii"] = certificate_to_json(cert);

    out.report.verdict = to_string(deciding.verdict);
    switch (deciding.verdict) {
        case Verdict::kCertifiedStable: out.exit_code = 0; break;
        case Verdict::kCertifiedUnstable: out.exit_code = 1; break;
        default: out.exit_code = 2; break;
    }
    out.report.timing_ms = watch.ms();
    return out;
}

RunOutcome run_scan(const OperatorSpec& spec, double p, long long n_min, long long n_max) {
    const Stopwatch watch;
    RunOutcome out;
    out.report = base_report("scan");
    out.report.params["p"] = p_to_string(p);
    out.report.params["nmin"] = n_min;
    out.report.params["nmax"] = n_max;
    out.report.spec_echo = spec_to_json(spec);

    const ScanTable table = stability_scan(spec, p, n_min, n_max);
    out.report.payload["scan"] = scan_to_json(table);

    long long first_certified = -1;
    for (const ScanRow& r : table.rows)
        if (r.certified) {
            first_certified = r.n;
            break;
        }
    out.report.payload["first_certified_n"] = first_certified;
    out.report.verdict = first_certified >= 0 ? "CertifiedStable" : "NotCertified";
    out.exit_code = first_certified >= 0 ? 0 : 2;
    out.report.timing_ms = watch.ms();
    return out;
}

RunOutcome run_oracle(const OperatorSpec& spec) {
    const Stopwatch watch;
    RunOutcome out;
    out.report = base_report("oracle");
    out.report.spec_echo = spec_to_json(spec);

    std::string verdict = "Inconclusive";
    int exit_code = 2;
    if (spec.kind() == SpecKind::kToeplitz) {
        const SymbolAnalysis sa = certified_symbol_analysis(spec.coeffs());
        out.report.payload["symbol_oracle"] = symbol_analysis_to_json(sa);
        switch (sa.verdict) {
            case SymbolAnalysis::Verdict::kCertifiedStable:
                verdict = "CertifiedStable";
                exit_code = 0;
                break;
            case SymbolAnalysis::Verdict::kZeroFound:
                verdict = "CertifiedUnstable";
                exit_code = 1;
                break;
            case SymbolAnalysis::Verdict::kInconclusive:
                break;
        }
    }

    const std::vector<long long> sections{4, 8, 16};
    Json trend = Json::array();
    for (const auto& [n, value] : finite_section_trend(spec, 2.0, sections)) {
        Json row = Json::object();
        row["n"] = n;
        row["lower_bound"] = value;
        trend.push_back(std::move(row));
    }
    out.report.payload["finite_sections"] = std::move(trend);

    out.report.verdict = verdict;
    out.exit_code = exit_code;
    out.report.timing_ms = watch.ms();
    return out;
}

RunOutcome run_paper_examples() {
    const Stopwatch watch;
    RunOutcome out;
    out.report = base_report("paper-examples");
    out.report.spec_echo = nullptr;

    const PaperExamplesReport rep = reproduce_paper_examples();

    Json sandwich = Json::array();
    for (const SandwichRow& r : rep.sandwich) {
        Json row = Json::object();
        row["p"] = p_to_string(r.p);
        row["n"] = r.n;
        row["lower"] = r.lower;
        row["measured"] = r.measured;
        row["upper"] = r.upper;
        row["ok"] = r.ok;
        sandwich.push_back(std::move(row));
    }
    out.report.payload["sandwich"] = std::move(sandwich);
    out.report.payload["kappa2_squared"] = rep.kappa2_squared;

    Json inverses = Json::array();
    for (const LeftInverseCheck& c : rep.left_inverse) {
        Json row = Json::object();
        row["n"] = c.n;
        row["product_is_identity"] = c.product_is_identity;
        row["b_norm_1"] = c.b_norm_1;
        row["b_norm_inf"] = c.b_norm_inf;
        row["ok"] = c.ok;
        inverses.push_back(std::move(row));
    }
    out.report.payload["left_inverse"] = std::move(inverses);

    out.report.verdict = rep.all_ok ? "Reproduced" : "Failed";
    out.exit_code = rep.all_ok ? 0 : 3;
    out.report.timing_ms = watch.ms();
    return out;
}

}  // namespace stabilcert
