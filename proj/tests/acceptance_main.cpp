// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit code 0 only if all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "stabilcert/certifier.hpp"
#include "stabilcert/errors.hpp"
#include "stabilcert/paper_examples.hpp"
#include "stabilcert/symbol_oracle.hpp"

using namespace stabilcert;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
int g_failures = 0;

std::string p_to_string(double p) {
    if (std::isinf(p)) return "inf";
    return std::to_string(static_cast<int>(p));
}

void report(int id, const char* description, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, description,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

OperatorSpec difference_spec() {
    return OperatorSpec::toeplitz({{0, Complex(1.0)}, {-1, Complex(-1.0)}});
}

OperatorSpec stable_spec() {
    return OperatorSpec::toeplitz({{0, Complex(4.0)}, {1, Complex(1.0)}});
}

OperatorSpec random_real_toeplitz(std::mt19937_64& rng, long long radius) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::map<long long, Complex> coeffs;
    for (long long k = -radius; k <= radius; ++k)
        if (rng() % 2 == 0) coeffs[k] = Complex(dist(rng));
    if (coeffs.empty()) coeffs[0] = Complex(dist(rng));
    return OperatorSpec::toeplitz(std::move(coeffs));
}

Sequence random_sequence(const IndexSet& idx, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<Complex> vals(idx.size());
    for (Complex& v : vals) v = Complex(dist(rng));
    return Sequence(idx, vals);
}

// --------------------------------------------------------------------------
// 1. Difference-matrix sandwich with a 30 s budget.
// --------------------------------------------------------------------------
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double p : {1.0, 2.0, kInf}) {
        for (long long n : {4LL, 8LL, 16LL, 32LL}) {
            const BlockMatrix tilde = difference_tilde_block(n);
            const double measured = lower_bound_p(tilde, p).lower_bound;
            const double lo = 1.0 / static_cast<double>(n + 1) - 1e-9;
            const double hi = kappa_constant(p, 1) * 2.0 / static_cast<double>(n) + 1e-9;
            if (!(measured >= lo && measured <= hi)) {
                ok = false;
                detail = "p=" + p_to_string(p) + " N=" + std::to_string(n) +
                         " measured=" + std::to_string(measured);
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds >= 30.0) {
        ok = false;
        detail += " runtime over budget";
    }
    report(1, "difference-matrix sandwich for p in {1,2,inf}, N in {4,8,16,32}", ok,
           detail.empty() ? "runtime " + std::to_string(seconds) + " s" : detail);
}

// --------------------------------------------------------------------------
// 2. Constant identities.
// --------------------------------------------------------------------------
void criterion_2() {
    const double k2 = kappa_constant(2.0, 1);
    const bool ok = std::abs(k2 * k2 - 22.0) <= 1e-14 && kappa_constant(kInf, 1) == 2.0 &&
                    kappa_constant(kInf, 2) == 2.0;
    report(2, "kappa(2,1)^2 = 22 within 1e-14 and kappa(inf,d) = 2 exactly", ok,
           "kappa(2,1)^2 = " + std::to_string(k2 * k2));
}

// --------------------------------------------------------------------------
// 3. Positive certification of a(0)=4, a(1)=1.
// --------------------------------------------------------------------------
void criterion_3() {
    const OperatorSpec spec = stable_spec();
    bool ok = true;
    std::string detail;

    const StabilityCertificate dd = diagonal_dominance_certify(spec);
    if (!(dd.verdict == Verdict::kCertifiedStable && dd.dd_margin && *dd.dd_margin == 2.0)) {
        ok = false;
        detail += "(a) margin mismatch ";
    }

    const StabilityCertificate cert = certify_condition_iii(spec, 2.0, 8);
    if (!(cert.verdict == Verdict::kCertifiedStable &&
          std::abs(cert.threshold - 2.931510) <= 1e-5 && cert.c1_lower >= 0.04)) {
        ok = false;
        detail += "(b) threshold=" + std::to_string(cert.threshold) +
                  " c1=" + std::to_string(cert.c1_lower) + " ";
    }

    std::mt19937_64 rng(20240603);
    const IndexSet support = IndexSet::integer_range(-32, 32);
    const IndexSet out_rows = IndexSet::integer_range(-33, 34);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const Sequence c = random_sequence(support, rng);
        const Sequence ac = apply_operator(spec, c, out_rows);
        const double nc = lp_norm(c.values, 2.0);
        const double na = lp_norm(ac.values, 2.0);
        if (!(na >= (cert.c1_lower - 1e-9) * nc && na <= (cert.c2_upper + 1e-9) * nc)) {
            ok = false;
            detail += "(c) soundness violated at trial " + std::to_string(trial);
        }
    }
    report(3, "a(0)=4, a(1)=1 certified via dominance margin 2 and condition (iii)", ok, detail);
}

// --------------------------------------------------------------------------
// 4. The difference matrix never certifies; the oracle exhibits the zero.
// --------------------------------------------------------------------------
void criterion_4() {
    const OperatorSpec diff = difference_spec();
    bool ok = true;
    std::string detail;

    const SymbolAnalysis sa = certified_symbol_analysis(diff.coeffs());
    if (!(sa.verdict == SymbolAnalysis::Verdict::kZeroFound && sa.zero_witness &&
          sa.zero_witness->first == 0.0 && sa.zero_witness->second == 0.0)) {
        ok = false;
        detail = "oracle did not pin the zero at xi = 0";
    }

    for (double p : {2.0, kInf, 1.0}) {
        for (long long n0 = 1; n0 <= 64 && ok; ++n0) {
            const StabilityCertificate cert = certify_condition_iii(diff, p, n0);
            if (cert.verdict == Verdict::kCertifiedStable) {
                ok = false;
                detail = "certified at p=" + p_to_string(p) + " N0=" + std::to_string(n0);
            }
        }
    }
    report(4, "difference matrix never certified for p in {1,2,inf}, N0 in 1..64", ok, detail);
}

// --------------------------------------------------------------------------
// 5. Exact left-inverse reproduction.
// --------------------------------------------------------------------------
void criterion_5() {
    bool ok = true;
    for (long long n : {2LL, 4LL, 8LL}) {
        const BlockMatrix tilde = difference_tilde_block(n);
        const auto b = difference_left_inverse(n);
        const std::size_t dim = static_cast<std::size_t>(2 * n + 1);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                long long acc = 0;
                for (std::size_t k = 0; k < tilde.rows(); ++k)
                    acc += b[i][k] * static_cast<long long>(std::lround(tilde.real_at(k, j)));
                if (acc != (i == j ? 1 : 0)) ok = false;
            }
    }
    report(5, "left inverse B~_N A~_N = I exactly for N in {2,4,8}", ok);
}

// --------------------------------------------------------------------------
// 6. Lemma property suites, >= 100 random instances each, tol 1e-12.
// --------------------------------------------------------------------------
void criterion_6() {
    std::mt19937_64 rng(20240604);
    bool ok = true;
    std::string detail;
    const double tol = 1e-12;

    // partition inequalities at both scales plus the sup-norm identity
    for (int trial = 0; trial < 120 && ok; ++trial) {
        const IndexSet idx = IndexSet::integer_range(-12, 12);
        const Sequence c = random_sequence(idx, rng);
        const long long n = 1 + static_cast<long long>(rng() % 3);
        for (double p : {1.0, 2.0, 3.0}) {
            double sum = 0.0, wide = 0.0;
            for (long long t = -24 / n - 4; t <= 24 / n + 4; ++t) {
                const Point center(static_cast<double>(t * n));
                sum += std::pow(lp_norm(psi_multiply(c, center, n).values, p), p);
                wide += std::pow(lp_norm(psi_multiply(c, center, 4 * n).values, p), p);
            }
            sum = std::pow(sum, 1.0 / p);
            wide = std::pow(wide, 1.0 / p);
            const double norm = lp_norm(c.values, p);
            if (!(sum >= norm - tol && sum <= std::pow(2.0, 1.0 / p) * norm + tol)) {
                ok = false;
                detail = "base partition failed";
            }
            if (!(wide >= std::pow(4.0, 1.0 / p) * norm - tol &&
                  wide <= std::pow(5.0 + std::pow(2.0, 1.0 - p), 1.0 / p) * norm + tol)) {
                ok = false;
                detail = "wide partition failed";
            }
        }
        double sup = 0.0, sup4 = 0.0;
        for (long long t = -24 / n - 4; t <= 24 / n + 4; ++t) {
            const Point center(static_cast<double>(t * n));
            sup = std::max(sup, lp_norm(psi_multiply(c, center, n).values, kInf));
            sup4 = std::max(sup4, lp_norm(psi_multiply(c, center, 4 * n).values, kInf));
        }
        const double norm_inf = lp_norm(c.values, kInf);
        if (std::abs(sup - norm_inf) > tol || std::abs(sup4 - norm_inf) > tol) {
            ok = false;
            detail = "sup-norm partition failed";
        }
        // || Psi c ||_p <= || chi c ||_p
        const Point center(static_cast<double>(n));
        for (double p : {1.0, 2.0, kInf})
            if (lp_norm(psi_multiply(c, center, n).values, p) >
                lp_norm(window_mask(c, center, n).values, p) + tol) {
                ok = false;
                detail = "cut-off domination failed";
            }
    }

    // truncation contraction, boundedness, commutator bound, domination
    for (int trial = 0; trial < 120 && ok; ++trial) {
        const OperatorSpec spec = random_real_toeplitz(rng, 4);
        const double s = static_cast<double>(rng() % 12) / 2.0;
        if (c_norm(truncate(spec, s)) > c_norm(spec) + tol) {
            ok = false;
            detail = "truncation contraction failed";
        }

        const IndexSet cols = IndexSet::integer_range(-7, 7);
        const IndexSet rows = IndexSet::integer_range(-11, 11);
        const Sequence c = random_sequence(cols, rng);
        const Sequence ac = apply_operator(spec, c, rows);
        for (double p : {1.0, 2.0, kInf})
            if (lp_norm(ac.values, p) > c_norm(spec) * lp_norm(c.values, p) + tol) {
                ok = false;
                detail = "boundedness failed";
            }

        const long long n = 1 + static_cast<long long>(rng() % 6);
        const OperatorSpec a_n = truncate(spec, static_cast<double>(n));
        double rhs = kInf;
        for (long long m = 0; m <= n; ++m) {
            double residual = 0.0;
            for (const auto& [k, v] : a_n.coeffs())
                if (std::llabs(k) > m) residual += std::abs(v);
            const OperatorSpec a_m = truncate(a_n, static_cast<double>(m) + 0.5);
            rhs = std::min(rhs, residual + 2.0 * static_cast<double>(m) /
                                               static_cast<double>(n) * c_norm(a_m));
        }
        if (commutator_cnorm(spec, Point(0.0), n) > rhs + tol) {
            ok = false;
            detail = "commutator bound failed";
        }

        const DiagonalProfile h = diagonal_profile(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const long long row = static_cast<long long>(rows.point(i)[0]);
            double conv = 0.0;
            for (std::size_t j = 0; j < cols.size(); ++j)
                conv += h.at(row - static_cast<long long>(cols.point(j)[0])) *
                        std::abs(c.values[j]);
            if (std::abs(ac.values[i]) > conv + tol) {
                ok = false;
                detail = "entrywise domination failed";
            }
        }
    }
    report(6, "lemma property suites on random instances at 1e-12", ok, detail);
}

// --------------------------------------------------------------------------
// 7. Method cross-validation on 50 random 6x4 matrices.
// --------------------------------------------------------------------------
void criterion_7() {
    std::mt19937_64 rng(20240605);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    bool ok = true;
    std::string detail;
    double worst_brute = 0.0, worst_gram = 0.0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::vector<std::vector<double>> rows(6, std::vector<double>(4));
        for (auto& r : rows)
            for (double& v : r) v = dist(rng);
        const BlockMatrix m = make_block(rows);
        for (double p : {1.0, 2.0, kInf}) {
            const double exact = lower_bound_p(m, p).lower_bound;
            const double brute = brute_lower_bound(m, p, 200000);
            worst_brute = std::max(worst_brute, std::abs(exact - brute));
            if (std::abs(exact - brute) > 1e-6) {
                ok = false;
                detail = "brute disagreement at trial " + std::to_string(trial) +
                         " p=" + p_to_string(p);
            }
        }
        // independent shifted power iteration on the Gram matrix
        const std::size_t n = m.cols();
        std::vector<double> g(n * n, 0.0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    g[j * n + k] += m.real_at(i, j) * m.real_at(i, k);
        double shift = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double row_sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) row_sum += std::abs(g[j * n + k]);
            shift = std::max(shift, row_sum);
        }
        std::vector<double> x(n), y(n);
        for (double& v : x) v = dist(rng);
        double rho = 0.0;
        for (int iter = 0; iter < 300000; ++iter) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = shift * x[j];
                for (std::size_t k = 0; k < n; ++k) acc -= g[j * n + k] * x[k];
                y[j] = acc;
            }
            double norm = 0.0, dot = 0.0, xx = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                norm += y[j] * y[j];
                dot += x[j] * y[j];
                xx += x[j] * x[j];
            }
            norm = std::sqrt(norm);
            rho = dot / xx;
            double residual = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                residual += (y[j] - rho * x[j]) * (y[j] - rho * x[j]);
            for (std::size_t j = 0; j < n; ++j) x[j] = y[j] / norm;
            if (std::sqrt(residual) <= 1e-14 * std::max(1.0, shift) && iter > 16) break;
        }
        const double lam_min = shift - rho;
        const double sigma = lower_bound_p(m, 2.0).lower_bound;
        worst_gram = std::max(worst_gram, std::abs(sigma * sigma - lam_min));
        if (std::abs(sigma * sigma - lam_min) > 1e-10) {
            ok = false;
            detail = "Gram oracle disagreement at trial " + std::to_string(trial);
        }
    }
    report(7, "lower_bound_p vs brute (1e-6) and power-iteration Gram oracle (1e-10)", ok,
           "worst brute err " + std::to_string(worst_brute) + ", worst gram err " +
               std::to_string(worst_gram));
}

// --------------------------------------------------------------------------
// 8. Twisted block reduction equals the full sweep.
// --------------------------------------------------------------------------
void criterion_8() {
    std::mt19937_64 rng(20240606);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        std::map<long long, Complex> coeffs;
        for (long long k = -3; k <= 3; ++k)
            if (rng() % 2 == 0) coeffs[k] = Complex(dist(rng), dist(rng));
        if (coeffs.empty()) coeffs[0] = Complex(dist(rng), dist(rng));
        const OperatorSpec tw = OperatorSpec::twisted_toeplitz(coeffs, Rational{1, 3});
        const long long n0 = 2;

        // Blocks at n and n + 3 (centers in Z, so N = 1 blocks) are
        // entrywise equal by the theta = 1/3 diagonal periodicity.
        for (long long n : {-6LL, -1LL, 0LL, 4LL}) {
            const BlockMatrix a = block_matrix(tw, Point(static_cast<double>(n)), 1);
            const BlockMatrix b = block_matrix(tw, Point(static_cast<double>(n + 3)), 1);
            for (std::size_t i = 0; i < a.entries.size(); ++i)
                if (std::abs(a.entries[i] - b.entries[i]) > 1e-15) {
                    ok = false;
                    detail = "blocks at n and n+3 differ";
                }
        }
        // Same at the certification scale, shifted by the full period q N0.
        for (long long n : {-6LL, 0LL, 4LL}) {
            const BlockMatrix a = block_matrix(tw, Point(static_cast<double>(n)), n0);
            const BlockMatrix c = block_matrix(tw, Point(static_cast<double>(n + 3 * n0)), n0);
            for (std::size_t i = 0; i < a.entries.size(); ++i)
                if (std::abs(a.entries[i] - c.entries[i]) > 1e-15) {
                    ok = false;
                    detail = "blocks at n and n+qN0 differ";
                }
        }

        const StabilityCertificate cert = certify_condition_iii(tw, 2.0, n0);
        double full_alpha = kInf;
        for (long long n = -30; n <= 30; n += n0) {
            const BlockMatrix blk = block_matrix(tw, Point(static_cast<double>(n)), n0);
            full_alpha = std::min(full_alpha, lower_bound_p(blk, 2.0).lower_bound);
        }
        if (std::abs(cert.alpha - full_alpha) > 1e-10) {
            ok = false;
            detail = "representative alpha != full sweep alpha";
        }
    }
    report(8, "twisted theta=1/3 block periodicity (1e-15) and representative sweep", ok, detail);
}

// --------------------------------------------------------------------------
// 9. One-step p-transfer intervals.
// --------------------------------------------------------------------------
void criterion_9() {
    const PTransferStep full = p_transfer_step(2.0, 1.0, 1);
    bool ok = full.inv_q_lo == 0.0 && full.inv_q_hi == 1.0 && !full.lo_inclusive &&
              !full.hi_inclusive && full.steps_to_cover == 2;

    const PTransferStep third = p_transfer_step(2.0, 1.0 / 3.0, 1);
    ok = ok && std::abs(third.q_min() - 4.0 / 3.0) <= 1e-14 &&
         std::abs(third.q_max() - 4.0) <= 1e-14;
    report(9, "p-transfer: (2,1,1) covers (1,inf) in 2 steps; (2,1/3,1) gives q in (4/3,4)", ok);
}

// --------------------------------------------------------------------------
// 10. Oracle/certifier corpus agreement.
// --------------------------------------------------------------------------
void criterion_10() {
    std::mt19937_64 rng(20240607);
    bool ok = true;
    std::string detail;
    int zero_found = 0, certified = 0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        // Half the corpus gets a heavy diagonal so both verdicts are
        // exercised; all draws stay integer with support <= 5.
        std::map<long long, Complex> coeffs;
        const bool dominant = trial % 2 == 0;
        int placed = 0;
        for (long long k = -2; k <= 2 && placed < 5; ++k) {
            const long long v = dominant && k == 0
                                    ? 5 + static_cast<long long>(rng() % 8)
                                    : static_cast<long long>(rng() % 9) - 4;
            if (v != 0) {
                coeffs[k] = Complex(static_cast<double>(v));
                ++placed;
            }
        }
        if (coeffs.empty()) coeffs[0] = Complex(1.0);
        const OperatorSpec spec = OperatorSpec::toeplitz(coeffs);
        const SymbolAnalysis sa = certified_symbol_analysis(coeffs);

        bool is_certified =
            diagonal_dominance_certify(spec).verdict == Verdict::kCertifiedStable;
        for (double p : {2.0, kInf, 1.0}) {
            if (is_certified) break;
            for (long long n0 : {2LL, 4LL, 8LL}) {
                if (certify_condition_iii(spec, p, n0).verdict == Verdict::kCertifiedStable) {
                    is_certified = true;
                    break;
                }
            }
        }
        // p = 2 stays cheap at larger scales; push further for coverage.
        for (long long n0 : {16LL, 32LL, 48LL}) {
            if (is_certified) break;
            if (certify_condition_iii(spec, 2.0, n0).verdict == Verdict::kCertifiedStable)
                is_certified = true;
        }
        if (sa.verdict == SymbolAnalysis::Verdict::kZeroFound) ++zero_found;
        if (is_certified) ++certified;
        if (sa.verdict == SymbolAnalysis::Verdict::kZeroFound && is_certified) {
            ok = false;
            detail = "spec both ZeroFound and certified";
        }
        if (is_certified && !(sa.verdict == SymbolAnalysis::Verdict::kCertifiedStable &&
                              sa.min_modulus_lower_bound > 0.0)) {
            ok = false;
            detail = "certified spec lacks a positive symbol minimum";
        }
    }
    report(10, "oracle/certifier agreement over 50 random integer Toeplitz specs", ok,
           "zero_found=" + std::to_string(zero_found) +
               " certified=" + std::to_string(certified) + (detail.empty() ? "" : " " + detail));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %d of 10 criteria passed (%.1f s)\n", g_failures == 0 ? "OK" : "FAILED",
                10 - g_failures, seconds);
    return g_failures == 0 ? 0 : 1;
}
