#ifndef STABILCERT_CLI_OPS_HPP
#define STABILCERT_CLI_OPS_HPP

#include <string>

#include "stabilcert/spec_io.hpp"

namespace stabilcert {

/// Exit codes: 0 CertifiedStable, 1 CertifiedUnstable (oracle-backed),
/// 2 NotCertified / Inconclusive, >= 3 error.
struct RunOutcome {
    int exit_code = 2;
    RunReport report;
};

/// Diagonal dominance (p = inf fast path), the condition-(iii) sweep, and the
/// symbol oracle for Toeplitz specs.
RunOutcome run_certify(const OperatorSpec& spec, double p, long long n0);

/// ScanTable across [n_min, n_max]; exit 0 when some row certifies.
RunOutcome run_scan(const OperatorSpec& spec, double p, long long n_min, long long n_max);

/// Symbol analysis (Toeplitz) and finite-section trend.
RunOutcome run_oracle(const OperatorSpec& spec);

/// The worked-example reproduction; exit 0 only when every assertion holds.
RunOutcome run_paper_examples();

}  // namespace stabilcert

#endif  // STABILCERT_CLI_OPS_HPP
