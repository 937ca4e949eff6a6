#ifndef STABILCERT_BLOCK_BOUNDS_HPP
#define STABILCERT_BLOCK_BOUNDS_HPP

#include <string>
#include <vector>

#include "stabilcert/geometry.hpp"
#include "stabilcert/operator_spec.hpp"

namespace stabilcert {

/// The finite rectangular block chi_n^{2N} A chi_n^N restricted to its
/// support: rows are index points inside the open box (n-2N, n+2N), columns
/// inside (n-N, n+N).
struct BlockMatrix {
    std::vector<Point> row_points;
    std::vector<Point> col_points;
    std::vector<Complex> entries;  // row-major rows() x cols()
    bool real = true;

    std::size_t rows() const { return row_points.size(); }
    std::size_t cols() const { return col_points.size(); }
    bool vacuous() const { return col_points.empty(); }
    Complex at(std::size_t i, std::size_t j) const { return entries[i * cols() + j]; }
    double real_at(std::size_t i, std::size_t j) const { return entries[i * cols() + j].real(); }
};

enum class BoundMethod { kSvd, kLpInf, kLpOne, kVertexOne, kBrute };

std::string to_string(BoundMethod m);

struct BlockBoundReport {
    Point center;
    long long half_width = 0;
    double p = 2.0;
    double lower_bound = 0.0;
    BoundMethod method = BoundMethod::kSvd;
    std::vector<Complex> witness;  // minimizing c, empty when not tracked
};

/// Build the block of `spec` at center n (in N Z) and half-width N.
BlockMatrix block_matrix(const OperatorSpec& spec, const Point& n, long long half_width);

/// The band-Toeplitz section with every nonzero row: rows -N-k..N+k,
/// columns -N..N, where k is the band parameter.  Equals block_matrix at
/// half-width N+1 with its all-zero rows removed.
BlockMatrix toeplitz_tilde_block(const OperatorSpec& spec, long long n_half);

/// Columns inside the open window (-N, N) with every nonzero row included.
BlockMatrix full_column_block(const OperatorSpec& spec, long long n_half);

/// Assemble an explicit real matrix as a BlockMatrix (used by oracles/tests).
BlockMatrix make_block(const std::vector<std::vector<double>>& rows);

/// Exact minimal gain min_{c != 0} ||Mc||_p / ||c||_p for p in {1, 2, inf}.
///
/// p = 2: sqrt of the smallest Gram eigenvalue via cyclic Jacobi.
/// p = inf: one LP per column t: min s subject to -s <= (Mc)_i <= s,
///          c_t = 1, -1 <= c_j <= 1; minimum over t.
/// p = 1: one LP per sign pattern sigma (up to global sign): min sum u_i
///        subject to -u <= Mc <= u, sigma.c = 1, sigma_j c_j >= 0; capped at
///        20 columns.  Beyond the cap an exact corank vertex enumeration of
///        {c : ||Mc||_1 <= 1} takes over when the row excess is small.
BlockBoundReport lower_bound_p(const BlockMatrix& m, double p);

/// Deterministic mesh of the unit l^p sphere refined around the best cells.
/// Upper bound on the true minimal gain; cross-check oracle only.
double brute_lower_bound(const BlockMatrix& m, double p, long long samples);

namespace detail {
/// The two exact p = 1 routes, bypassing the work heuristic (test hooks).
double l1_gain_sign(const BlockMatrix& m);
double l1_gain_vertex(const BlockMatrix& m);
}  // namespace detail

}  // namespace stabilcert

#endif  // STABILCERT_BLOCK_BOUNDS_HPP
