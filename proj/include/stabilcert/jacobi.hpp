#ifndef STABILCERT_JACOBI_HPP
#define STABILCERT_JACOBI_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace stabilcert {

/// Cyclic Jacobi eigensolver for a dense real symmetric matrix (row-major,
/// n x n).  Sweeps run until the off-diagonal Frobenius mass falls below
/// rel_tol * ||A||_F of the input.  Eigenvalues return sorted ascending with
/// matching eigenvector columns.
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<double> vectors;  // row-major n x n, column j pairs with values[j]
    std::size_t n = 0;

    double vector_entry(std::size_t i, std::size_t j) const { return vectors[i * n + j]; }
};

SymmetricEigen jacobi_eigen_sym(std::vector<double> a, std::size_t n, double rel_tol = 1e-14);

/// Hermitian case, reduced to the real symmetric embedding
/// [[Re G, -Im G], [Im G, Re G]]; every eigenvalue of G appears twice.
struct HermitianEigen {
    std::vector<double> values;                       // ascending, deduplicated pairs
    std::vector<std::complex<double>> min_vector;     // eigenvector of the smallest value
};

HermitianEigen jacobi_eigen_herm(const std::vector<std::complex<double>>& g, std::size_t n,
                                 double rel_tol = 1e-14);

}  // namespace stabilcert

#endif  // STABILCERT_JACOBI_HPP
