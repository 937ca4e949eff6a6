#ifndef STABILCERT_SYMBOL_ORACLE_HPP
#define STABILCERT_SYMBOL_ORACLE_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stabilcert/operator_spec.hpp"

namespace stabilcert {

/// Ground-truth stability analysis of a Toeplitz generator via its symbol
/// a_hat(xi) = sum_j a(j) e^{-i j xi}.
struct SymbolAnalysis {
    enum class Verdict { kCertifiedStable, kZeroFound, kInconclusive };

    Verdict verdict = Verdict::kInconclusive;
    /// Valid lower bound for min_xi |a_hat| when CertifiedStable.
    double min_modulus_lower_bound = 0.0;
    /// L = sum |j| |a(j)|, the derivative bound used for certification.
    double lipschitz_const = 0.0;
    double grid_step = 0.0;
    /// (xi*, |a_hat(xi*)|) when a zero was exhibited.
    std::optional<std::pair<double, double>> zero_witness;
    /// Smallest |a_hat| seen; meaningful for Inconclusive.
    double smallest_observed = 0.0;
};

Complex symbol_eval(const std::map<long long, Complex>& coeffs, double xi);

/// Certifies min |a_hat| > 0 by grid evaluation plus the Lipschitz bound
/// min >= min_grid - L h / 2, refining h by 4 until the bound is positive,
/// an exact zero is exhibited, or the resolution floor 2^-20 * 2 pi is hit.
/// xi in {0, pi} are checked in closed form first.
SymbolAnalysis certified_symbol_analysis(const std::map<long long, Complex>& coeffs);

/// Lower bounds of the full column blocks over (-N, N), per N.  Empirical
/// oracle: decays to zero for unstable Toeplitz specs, stabilizes otherwise.
std::vector<std::pair<long long, double>> finite_section_trend(
    const OperatorSpec& spec, double p, const std::vector<long long>& n_list);

}  // namespace stabilcert

#endif  // STABILCERT_SYMBOL_ORACLE_HPP
