#ifndef STABILCERT_PAPER_EXAMPLES_HPP
#define STABILCERT_PAPER_EXAMPLES_HPP

#include <vector>

#include "stabilcert/block_bounds.hpp"

namespace stabilcert {

/// One sandwich row for the difference matrix: the measured minimal gain of
/// the band section against its proven lower and upper bounds.
struct SandwichRow {
    double p = 2.0;
    long long n = 0;
    double lower = 0.0;     // 1/(N+1)
    double measured = 0.0;  // exact block lower bound
    double upper = 0.0;     // 2 (5 + 2^{1-p})^{1/p} * 2/N
    bool ok = false;
};

struct LeftInverseCheck {
    long long n = 0;
    bool product_is_identity = false;  // integer arithmetic, exact
    double b_norm_1 = 0.0;             // max column sum; <= N+1
    double b_norm_inf = 0.0;           // max row sum; <= N+1
    bool ok = false;
};

struct PaperExamplesReport {
    std::vector<SandwichRow> sandwich;
    double kappa2_squared = 0.0;  // == 22
    bool kappa_ok = false;
    std::vector<LeftInverseCheck> left_inverse;
    bool all_ok = false;
};

/// The section (a(j-j'))_{-N-1<=j<=N+1, -N<=j'<=N} of the difference spec
/// a(0) = 1, a(-1) = -1.
BlockMatrix difference_tilde_block(long long n);

/// Integer matrix of the explicit left inverse of the difference section.
std::vector<std::vector<long long>> difference_left_inverse(long long n);

/// Reproduces the worked example: the N^{-1} sandwich for p in {1, 2, inf}
/// and N in {4, 8, 16, 32}, the sqrt(22) identity, and the exact left-inverse
/// checks for N in {2, 4, 8}.
PaperExamplesReport reproduce_paper_examples();

}  // namespace stabilcert

#endif  // STABILCERT_PAPER_EXAMPLES_HPP
