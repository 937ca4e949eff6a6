#include "stabilcert/symbol_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "stabilcert/block_bounds.hpp"
#include "stabilcert/errors.hpp"

namespace stabilcert {

Complex symbol_eval(const std::map<long long, Complex>& coeffs, double xi) {
    if (!std::isfinite(xi)) throw InputError("non-finite symbol argument");
    Complex acc(0.0);
    for (const auto& [j, a] : coeffs)
        acc += a * std::polar(1.0, -static_cast<double>(j) * xi);
    return acc;
}

SymbolAnalysis certified_symbol_analysis(const std::map<long long, Complex>& coeffs) {
    SymbolAnalysis out;
    for (const auto& [j, a] : coeffs)
        out.lipschitz_const += static_cast<double>(std::llabs(j)) * std::abs(a);
    out.smallest_observed = std::numeric_limits<double>::infinity();

    // Closed-form zero checks at xi = 0 and xi = pi: the sums are exact for
    // integer and modest rational coefficients.
    {
        Complex at0(0.0), at_pi(0.0);
        for (const auto& [j, a] : coeffs) {
            at0 += a;
            at_pi += (j % 2 == 0) ? a : -a;
        }
        if (std::abs(at0) == 0.0) {
            out.verdict = SymbolAnalysis::Verdict::kZeroFound;
            out.zero_witness = {0.0, 0.0};
            out.smallest_observed = 0.0;
            return out;
        }
        if (std::abs(at_pi) == 0.0) {
            out.verdict = SymbolAnalysis::Verdict::kZeroFound;
            out.zero_witness = {std::numbers::pi, 0.0};
            out.smallest_observed = 0.0;
            return out;
        }
    }

    const double two_pi = 2.0 * std::numbers::pi;
    const double floor_step = two_pi * std::ldexp(1.0, -20);
    for (std::size_t count = 64;; count *= 4) {
        const double h = two_pi / static_cast<double>(count);
        double min_grid = std::numeric_limits<double>::infinity();
        double min_xi = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double xi = h * static_cast<double>(i);
            const double v = std::abs(symbol_eval(coeffs, xi));
            if (v < min_grid) {
                min_grid = v;
                min_xi = xi;
            }
        }
        out.grid_step = h;
        out.smallest_observed = std::min(out.smallest_observed, min_grid);
        if (min_grid <= 1e-14) {
            out.verdict = SymbolAnalysis::Verdict::kZeroFound;
            out.zero_witness = {min_xi, min_grid};
            return out;
        }
        const double certified = min_grid - out.lipschitz_const * h / 2.0;
        if (certified > 0.0) {
            out.verdict = SymbolAnalysis::Verdict::kCertifiedStable;
            out.min_modulus_lower_bound = certified;
            return out;
        }
        if (h <= floor_step) {
            out.verdict = SymbolAnalysis::Verdict::kInconclusive;
            return out;
        }
    }
}

std::vector<std::pair<long long, double>> finite_section_trend(
    const OperatorSpec& spec, double p, const std::vector<long long>& n_list) {
    std::vector<std::pair<long long, double>> out;
    out.reserve(n_list.size());
    for (long long n : n_list) {
        const BlockMatrix blk = full_column_block(spec, n);
        if (blk.vacuous()) {
            out.emplace_back(n, 0.0);
            continue;
        }
        out.emplace_back(n, lower_bound_p(blk, p).lower_bound);
    }
    return out;
}

}  // namespace stabilcert
