#include "stabilcert/paper_examples.hpp"

#include <cmath>
#include <limits>

#include "stabilcert/certifier.hpp"
#include "stabilcert/errors.hpp"

namespace stabilcert {

namespace {

OperatorSpec difference_spec() {
    return OperatorSpec::toeplitz({{0, Complex(1.0)}, {-1, Complex(-1.0)}});
}

}  // namespace

BlockMatrix difference_tilde_block(long long n) {
    if (n < 1) throw InputError("difference section requires N >= 1");
    return toeplitz_tilde_block(difference_spec(), n);
}

std::vector<std::vector<long long>> difference_left_inverse(long long n) {
    // Rows i = -N..N, columns j = -N-1..N+1.  Row i <= 0 carries -1 on
    // columns j < i; row i >= 1 carries +1 on columns j >= i.  Then
    // B(i, j) - B(i, j-1) = delta_{ij} on the column range of the section,
    // which is exactly the left-inverse recurrence.
    const std::size_t rows = static_cast<std::size_t>(2 * n + 1);
    const std::size_t cols = static_cast<std::size_t>(2 * n + 3);
    std::vector<std::vector<long long>> b(rows, std::vector<long long>(cols, 0));
    for (long long i = -n; i <= n; ++i) {
        const std::size_t ri = static_cast<std::size_t>(i + n);
        for (long long j = -n - 1; j <= n + 1; ++j) {
            const std::size_t cj = static_cast<std::size_t>(j + n + 1);
            if (i <= 0 && j < i) b[ri][cj] = -1;
            if (i >= 1 && j >= i) b[ri][cj] = 1;
        }
    }
    return b;
}

PaperExamplesReport reproduce_paper_examples() {
    PaperExamplesReport report;
    report.all_ok = true;

    const double inf = std::numeric_limits<double>::infinity();
    const double tol = 1e-9;
    for (double p : {1.0, 2.0, inf}) {
        for (long long n : {4LL, 8LL, 16LL, 32LL}) {
            const BlockMatrix tilde = difference_tilde_block(n);
            SandwichRow row;
            row.p = p;
            row.n = n;
            row.lower = 1.0 / static_cast<double>(n + 1);
            row.measured = lower_bound_p(tilde, p).lower_bound;
            row.upper = kappa_constant(p, 1) * 2.0 / static_cast<double>(n);
            row.ok = row.measured >= row.lower - tol && row.measured <= row.upper + tol;
            report.all_ok = report.all_ok && row.ok;
            report.sandwich.push_back(row);
        }
    }

    const double kappa2 = kappa_constant(2.0, 1);
    report.kappa2_squared = kappa2 * kappa2;
    report.kappa_ok = std::abs(report.kappa2_squared - 22.0) <= 1e-14 &&
                      kappa_constant(inf, 1) == 2.0 && kappa_constant(inf, 2) == 2.0;
    report.all_ok = report.all_ok && report.kappa_ok;

    for (long long n : {2LL, 4LL, 8LL}) {
        LeftInverseCheck check;
        check.n = n;
        const BlockMatrix tilde = difference_tilde_block(n);
        const auto b = difference_left_inverse(n);
        const std::size_t dim = static_cast<std::size_t>(2 * n + 1);

        // Integer product B * A_tilde; the section entries are in {-1, 0, 1}.
        check.product_is_identity = true;
        for (std::size_t i = 0; i < dim && check.product_is_identity; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                long long acc = 0;
                for (std::size_t k = 0; k < tilde.rows(); ++k)
                    acc += b[i][k] * static_cast<long long>(std::lround(tilde.real_at(k, j)));
                if (acc != (i == j ? 1 : 0)) {
                    check.product_is_identity = false;
                    break;
                }
            }
        }

        double max_row = 0.0, max_col = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < tilde.rows(); ++k) s += std::abs(static_cast<double>(b[i][k]));
            max_row = std::max(max_row, s);
        }
        for (std::size_t k = 0; k < tilde.rows(); ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) s += std::abs(static_cast<double>(b[i][k]));
            max_col = std::max(max_col, s);
        }
        check.b_norm_inf = max_row;
        check.b_norm_1 = max_col;
        check.ok = check.product_is_identity &&
                   check.b_norm_inf <= static_cast<double>(n + 1) &&
                   check.b_norm_1 <= static_cast<double>(n + 1);
        report.all_ok = report.all_ok && check.ok;
        report.left_inverse.push_back(check);
    }

    return report;
}

}  // namespace stabilcert
