#include "stabilcert/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stabilcert/errors.hpp"

namespace stabilcert {

namespace {

double off_diagonal_frobenius(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

double frobenius(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen_sym(std::vector<double> a, std::size_t n, double rel_tol) {
    if (a.size() != n * n) throw InputError("jacobi: matrix size mismatch");
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double scale = frobenius(a);
    const double tol = rel_tol * std::max(scale, 1e-300);
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
        if (off_diagonal_frobenius(a, n) <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                // Stable rotation choosing the smaller angle.
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    SymmetricEigen out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a[order[j] * n + order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = v[i * n + order[j]];
    }
    return out;
}

HermitianEigen jacobi_eigen_herm(const std::vector<std::complex<double>>& g, std::size_t n,
                                 double rel_tol) {
    if (g.size() != n * n) throw InputError("jacobi: matrix size mismatch");
    const std::size_t m = 2 * n;
    std::vector<double> embed(m * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = g[i * n + j].real();
            const double im = g[i * n + j].imag();
            embed[i * m + j] = re;
            embed[(i + n) * m + (j + n)] = re;
            embed[i * m + (j + n)] = -im;
            embed[(i + n) * m + j] = im;
        }
    }
    const SymmetricEigen se = jacobi_eigen_sym(std::move(embed), m, rel_tol);

    HermitianEigen out;
    out.values.reserve(n);
    for (std::size_t j = 0; j < m; j += 2) out.values.push_back(se.values[j]);
    out.min_vector.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.min_vector[i] =
            std::complex<double>(se.vector_entry(i, 0), se.vector_entry(i + n, 0));
    return out;
}

}  // namespace stabilcert
