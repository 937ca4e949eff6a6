#include "stabilcert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stabilcert/errors.hpp"
#include "stabilcert/threads.hpp"

namespace stabilcert {

namespace {

constexpr double kVerdictMargin = 1e-12;  // directed rounding of the comparison

double round_down(double v) { return v * (1.0 - kVerdictMargin); }
double round_up(double v) { return v * (1.0 + kVerdictMargin); }

void check_exponent(double p) {
    if (!(p == 1.0 || p == 2.0 || std::isinf(p)))
        throw InputError("certification supports p in {1, 2, inf}");
}

double inv_p(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double two_pow_minus_d_over_p(double p, int dim) {
    return std::pow(2.0, -static_cast<double>(dim) * inv_p(p));
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kCertifiedStable: return "CertifiedStable";
        case Verdict::kNotCertified: return "NotCertified";
        case Verdict::kCertifiedUnstable: return "CertifiedUnstable";
        case Verdict::kVacuous: return "Vacuous";
    }
    return "?";
}

double kappa_constant(double p, int dim) {
    if (!(p >= 1.0)) throw InputError("kappa requires p >= 1");
    if (dim != 1 && dim != 2) throw InputError("dimension must be 1 or 2");
    if (std::isinf(p)) return 2.0;
    return 2.0 * std::pow(5.0 + std::pow(2.0, 1.0 - p), static_cast<double>(dim) / p);
}

double stability_threshold(const OperatorSpec& spec, double p, long long n0, double r_rows,
                           double r_cols) {
    if (n0 < 1) throw InputError("threshold requires N0 >= 1");
    const int dim = 1;
    const double trunc = truncation_tradeoff(spec, n0, dim).value;
    return kappa_constant(p, dim) * std::pow(r_rows, inv_p(p)) *
           std::pow(r_cols, 1.0 - inv_p(p)) * trunc;
}

namespace {

std::vector<Point> block_centers(const OperatorSpec& spec, long long n0) {
    std::vector<Point> centers;
    if (spec.kind() == SpecKind::kToeplitz) {
        centers.emplace_back(0.0);
        return centers;
    }
    if (spec.lattice_kind()) {
        // Blocks at n and n + q are entrywise equal, so representatives of
        // N0 Z mod q are enough: q / gcd(N0, q) of them.
        const long long q = spec.period();
        const long long count = q / std::gcd(n0, q);
        for (long long t = 0; t < count; ++t)
            centers.emplace_back(static_cast<double>(n0 * t));
        return centers;
    }
    const IndexSet& cols = spec.dense_cols();
    if (cols.empty()) return centers;
    double lo = cols.point(0)[0], hi = lo;
    for (const Point& pt : cols.points()) {
        lo = std::min(lo, pt[0]);
        hi = std::max(hi, pt[0]);
    }
    const double n0d = static_cast<double>(n0);
    const long long t_lo = static_cast<long long>(std::ceil((lo - n0d) / n0d));
    const long long t_hi = static_cast<long long>(std::floor((hi + n0d) / n0d));
    for (long long t = t_lo; t <= t_hi; ++t)
        centers.emplace_back(static_cast<double>(t) * n0d);
    return centers;
}

void fill_constants(StabilityCertificate& cert, const OperatorSpec& spec, double p,
                    long long n0) {
    const int dim = 1;
    cert.p = p;
    cert.n0 = n0;
    cert.kappa = kappa_constant(p, dim);
    if (spec.lattice_kind()) {
        cert.r_rows = 1.0;
        cert.r_cols = 1.0;
    } else {
        cert.r_rows = spec.dense_rows().separation();
        cert.r_cols = spec.dense_cols().separation();
    }
    const TruncationTradeoff trunc = truncation_tradeoff(spec, n0, dim);
    cert.trunc_inf = trunc.value;
    cert.trunc_argmin = trunc.argmin;
    cert.threshold = cert.kappa * std::pow(cert.r_rows, inv_p(p)) *
                     std::pow(cert.r_cols, 1.0 - inv_p(p)) * cert.trunc_inf;
    cert.c2_upper = std::pow(cert.r_rows, inv_p(p)) * std::pow(cert.r_cols, 1.0 - inv_p(p)) *
                    c_norm(spec);
}

void decide(StabilityCertificate& cert, int dim) {
    if (cert.verdict == Verdict::kVacuous) return;
    if (round_down(cert.alpha) > round_up(cert.threshold)) {
        cert.verdict = Verdict::kCertifiedStable;
        cert.c1_lower =
            two_pow_minus_d_over_p(cert.p, dim) * (round_down(cert.alpha) - round_up(cert.threshold));
    } else {
        cert.verdict = Verdict::kNotCertified;
        cert.c1_lower = 0.0;
    }
}

}  // namespace

StabilityCertificate certify_condition_iii(const OperatorSpec& spec, double p, long long n0) {
    check_exponent(p);
    if (n0 < 1) throw InputError("certification requires N0 >= 1");
    StabilityCertificate cert;
    fill_constants(cert, spec, p, n0);

    const std::vector<Point> centers = block_centers(spec, n0);
    std::vector<BlockMatrix> blocks(centers.size());
    std::vector<bool> vacuous(centers.size(), true);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        blocks[i] = block_matrix(spec, centers[i], n0);
        vacuous[i] = blocks[i].vacuous();
    }

    std::vector<BlockBoundReport> reports(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        if (vacuous[i]) return;
        reports[i] = lower_bound_p(blocks[i], p);
        reports[i].center = centers[i];
        reports[i].half_width = n0;
    });

    double alpha = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (vacuous[i]) continue;
        any = true;
        alpha = std::min(alpha, reports[i].lower_bound);
        cert.blocks.push_back(reports[i]);
    }
    if (!any) {
        cert.verdict = Verdict::kVacuous;
        cert.alpha = 0.0;
        cert.note = "no nonvacuous blocks";
        return cert;
    }
    cert.alpha = alpha;
    cert.note = "condition (iii) block sweep over " + std::to_string(cert.blocks.size()) +
                " representative block(s)";
    decide(cert, 1);
    return cert;
}

ScanTable stability_scan(const OperatorSpec& spec, double p, long long n_min, long long n_max) {
    if (n_min < 1 || n_max < n_min) throw InputError("scan range must satisfy 1 <= Nmin <= Nmax");
    ScanTable table;
    table.rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (long long n = n_min; n <= n_max; ++n) {
        const StabilityCertificate cert = certify_condition_iii(spec, p, n);
        table.rows.push_back(
            ScanRow{n, cert.alpha, cert.threshold, cert.verdict == Verdict::kCertifiedStable});
    }
    return table;
}

StabilityCertificate diagonal_dominance_certify(const OperatorSpec& spec) {
    // The dominance argument lives on the integer lattice.
    if (!spec.lattice_kind() &&
        !(spec.dense_rows().integer_lattice() && spec.dense_cols().integer_lattice()))
        throw PreconditionError("diagonal dominance requires an integer-lattice spec");

    double inf_diag = 0.0;
    switch (spec.kind()) {
        case SpecKind::kToeplitz:
        case SpecKind::kTwistedToeplitz: {
            const auto it = spec.coeffs().find(0);
            inf_diag = it == spec.coeffs().end() ? 0.0 : std::abs(it->second);
            break;
        }
        case SpecKind::kPeriodicModulated: {
            const auto it = spec.coeffs().find(0);
            const double a0 = it == spec.coeffs().end() ? 0.0 : std::abs(it->second);
            double min_mod = std::numeric_limits<double>::infinity();
            for (const Complex& m : spec.modulation()) min_mod = std::min(min_mod, std::abs(m));
            inf_diag = a0 * min_mod;
            break;
        }
        case SpecKind::kDenseWindow: {
            inf_diag = std::numeric_limits<double>::infinity();
            for (const Point& col : spec.dense_cols().points()) {
                Complex v(0.0);
                bool in_rows = false;
                for (std::size_t i = 0; i < spec.dense_rows().size(); ++i)
                    if (spec.dense_rows().point(i) == col) {
                        in_rows = true;
                        v = entry_at(spec, col, col);
                        break;
                    }
                inf_diag = std::min(inf_diag, in_rows ? std::abs(v) : 0.0);
            }
            if (spec.dense_cols().empty()) inf_diag = 0.0;
            break;
        }
    }

    double off_sum = 0.0;
    const DiagonalProfile profile = diagonal_profile(spec);
    for (const auto& [k, v] : profile.values())
        if (k != 0) off_sum += v;

    StabilityCertificate cert;
    const double p = std::numeric_limits<double>::infinity();
    fill_constants(cert, spec, p, 1);
    cert.alpha = inf_diag;
    cert.dd_margin = inf_diag - 2.0 * off_sum;
    cert.note = "diagonal dominance (N0 = 1 route)";
    if (spec.kind() == SpecKind::kDenseWindow && spec.dense_cols().empty()) {
        cert.verdict = Verdict::kVacuous;
        return cert;
    }
    decide(cert, 1);
    return cert;
}

StabilityCertificate toeplitz_block_certify(const OperatorSpec& spec, double p, long long n0) {
    check_exponent(p);
    const BlockMatrix tilde = toeplitz_tilde_block(spec, n0);  // validates kind and N0 > k
    const long long k = spec.band_parameter();

    StabilityCertificate cert;
    const int dim = 1;
    cert.p = p;
    cert.n0 = n0;
    cert.kappa = kappa_constant(p, dim);
    cert.r_rows = 1.0;
    cert.r_cols = 1.0;
    // For a band matrix the truncation trade-off is at most (k/N0) ||A||_C.
    cert.trunc_inf = static_cast<double>(k) / static_cast<double>(n0) * c_norm(spec);
    cert.trunc_argmin = k;
    cert.threshold = cert.kappa * cert.trunc_inf;
    cert.c2_upper = c_norm(spec);

    BlockBoundReport rep = lower_bound_p(tilde, p);
    rep.center = Point(0.0);
    rep.half_width = n0;
    cert.alpha = rep.lower_bound;
    cert.blocks.push_back(std::move(rep));
    cert.note = "band-Toeplitz full-section route";
    decide(cert, dim);
    return cert;
}

double PTransferStep::q_min() const {
    return inv_q_hi <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_q_hi;
}

double PTransferStep::q_max() const {
    return inv_q_lo <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_q_lo;
}

PTransferStep p_transfer_step(double p, double gamma, int dim) {
    if (!(p >= 1.0)) throw InputError("p must lie in [1, inf]");
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    if (dim != 1 && dim != 2) throw InputError("dimension must be 1 or 2");

    const double radius = gamma / (1.0 + gamma) / static_cast<double>(dim);
    const double center = inv_p(p);

    PTransferStep out;
    const double lo = center - radius, hi = center + radius;
    out.inv_q_lo = std::max(0.0, lo);
    out.inv_q_hi = std::min(1.0, hi);
    out.lo_inclusive = lo < 0.0;   // the clamp point itself satisfies the strict bound
    out.hi_inclusive = hi > 1.0;
    out.steps_to_cover = static_cast<long long>(
        std::ceil(static_cast<double>(dim) * (1.0 + gamma) / gamma - 1e-9));
    return out;
}

}  // namespace stabilcert
