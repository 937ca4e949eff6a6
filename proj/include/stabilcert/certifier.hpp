#ifndef STABILCERT_CERTIFIER_HPP
#define STABILCERT_CERTIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "stabilcert/block_bounds.hpp"
#include "stabilcert/operator_spec.hpp"

namespace stabilcert {

enum class Verdict { kCertifiedStable, kNotCertified, kCertifiedUnstable, kVacuous };

std::string to_string(Verdict v);

/// The quantities that make a stability verdict independently checkable.
///
/// Invariants: threshold = kappa * R_rows^{1/p} * R_cols^{1-1/p} * trunc_inf;
/// CertifiedStable implies alpha > threshold and
/// c1_lower = 2^{-d/p} (alpha - threshold) > 0 (up to the 1e-12 directed
/// rounding margins applied to the verdict);
/// c2_upper = R_rows^{1/p} R_cols^{1-1/p} ||A||_C.
struct StabilityCertificate {
    double p = 2.0;
    long long n0 = 1;
    double alpha = 0.0;
    double kappa = 0.0;
    double r_rows = 1.0;
    double r_cols = 1.0;
    double trunc_inf = 0.0;
    long long trunc_argmin = 0;
    double threshold = 0.0;
    double c1_lower = 0.0;
    double c2_upper = 0.0;
    Verdict verdict = Verdict::kNotCertified;
    std::vector<BlockBoundReport> blocks;
    /// Diagonal-dominance margin when that route produced the certificate.
    std::optional<double> dd_margin;
    std::string note;
};

/// kappa(p, d) = 2 (5 + 2^{1-p})^{d/p}, with the limit 2 at p = inf.
double kappa_constant(double p, int dim);

/// kappa(p,d) * R_rows^{1/p} * R_cols^{1-1/p} * truncation_tradeoff(spec, N0).
double stability_threshold(const OperatorSpec& spec, double p, long long n0,
                           double r_rows = 1.0, double r_cols = 1.0);

/// Block-criterion certification at a fixed N0: enumerates the distinct
/// blocks (one for Toeplitz, q/gcd(N0,q) representatives for the periodic
/// kinds, every nonvacuous block for dense windows), takes the worst lower
/// bound as alpha, and certifies when alpha clears the threshold.
/// NotCertified is never strengthened to unstable here.
StabilityCertificate certify_condition_iii(const OperatorSpec& spec, double p, long long n0);

struct ScanRow {
    long long n = 1;
    double alpha = 0.0;
    double threshold = 0.0;
    bool certified = false;
};

struct ScanTable {
    std::vector<ScanRow> rows;
};

ScanTable stability_scan(const OperatorSpec& spec, double p, long long n_min, long long n_max);

/// Diagonal-dominance route for p = inf: margin = inf_j |a(j,j)| - 2 sum_{k != 0} h(k).
/// Takes N0 = 1; the margin equals alpha - threshold there.
StabilityCertificate diagonal_dominance_certify(const OperatorSpec& spec);

/// Band-Toeplitz route: the single full-band section at N0 against the
/// threshold kappa(p,1) (k/N0) ||A||_C.  Requires N0 > band parameter.
StabilityCertificate toeplitz_block_certify(const OperatorSpec& spec, double p, long long n0);

/// Exponents reachable from p in one step of the off-diagonal-decay
/// bootstrap: d |1/p - 1/q| < gamma/(1+gamma).
struct PTransferStep {
    double inv_q_lo = 0.0;  // interval in 1/q, intersected with [0, 1]
    double inv_q_hi = 1.0;
    bool lo_inclusive = false;
    bool hi_inclusive = false;
    long long steps_to_cover = 0;  // ceil(d (1+gamma) / gamma)

    double q_min() const;  // q at inv_q_hi
    double q_max() const;  // q at inv_q_lo
};

PTransferStep p_transfer_step(double p, double gamma, int dim);

}  // namespace stabilcert

#endif  // STABILCERT_CERTIFIER_HPP
