#include "stabilcert/block_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stabilcert/errors.hpp"
#include "stabilcert/jacobi.hpp"
#include "stabilcert/simplex.hpp"
#include "stabilcert/threads.hpp"

namespace stabilcert {

std::string to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::kSvd: return "svd";
        case BoundMethod::kLpInf: return "lp_inf";
        case BoundMethod::kLpOne: return "lp_one";
        case BoundMethod::kVertexOne: return "vertex_one";
        case BoundMethod::kBrute: return "brute";
    }
    return "?";
}

namespace {

constexpr double kRankTol = 1e-12;

struct RealMat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major

    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

RealMat real_view(const BlockMatrix& m) {
    RealMat out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.a.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < out.rows * out.cols; ++i) out.a[i] = m.entries[i].real();
    return out;
}

RealMat drop_zero_rows(const RealMat& m) {
    RealMat out;
    out.cols = m.cols;
    for (std::size_t i = 0; i < m.rows; ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0.0) {
                nonzero = true;
                break;
            }
        if (nonzero) out.a.insert(out.a.end(), m.a.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                                  m.a.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
    }
    out.rows = out.a.size() / std::max<std::size_t>(1, out.cols);
    return out;
}

double max_abs(const RealMat& m) {
    double s = 0.0;
    for (double v : m.a) s = std::max(s, std::abs(v));
    return s;
}

std::vector<double> matvec(const RealMat& m, const std::vector<double>& x) {
    std::vector<double> y(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double l1(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

// Gauss-Jordan inverse with partial pivoting; throws on (near) singularity.
RealMat invert_square(RealMat m) {
    const std::size_t n = m.rows;
    if (m.cols != n) throw InternalError("invert_square: not square");
    RealMat inv;
    inv.rows = inv.cols = n;
    inv.a.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1.0;
    const double tol = kRankTol * std::max(1.0, max_abs(m));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(m.at(i, col)) > std::abs(m.at(piv, col))) piv = i;
        if (std::abs(m.at(piv, col)) <= tol) throw InternalError("invert_square: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const double d = 1.0 / m.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = m.at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// Orthonormal basis (as columns) of {x : a x = 0} via row-echelon form.
std::vector<std::vector<double>> null_space_basis(RealMat a) {
    const std::size_t r = a.rows, c = a.cols;
    const double tol = kRankTol * std::max(1.0, max_abs(a)) * static_cast<double>(std::max(r, c));
    std::vector<long long> pivot_col_of_row(r, -1);
    std::vector<bool> is_pivot_col(c, false);
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < r; ++i)
            if (std::abs(a.at(i, col)) > std::abs(a.at(piv, col))) piv = i;
        if (std::abs(a.at(piv, col)) <= tol) continue;
        if (piv != row)
            for (std::size_t j = 0; j < c; ++j) std::swap(a.at(piv, j), a.at(row, j));
        const double d = 1.0 / a.at(row, col);
        for (std::size_t j = 0; j < c; ++j) a.at(row, j) *= d;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row) continue;
            const double f = a.at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < c; ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivot_col_of_row[row] = static_cast<long long>(col);
        is_pivot_col[col] = true;
        ++row;
    }
    std::vector<std::vector<double>> basis;
    for (std::size_t free = 0; free < c; ++free) {
        if (is_pivot_col[free]) continue;
        std::vector<double> x(c, 0.0);
        x[free] = 1.0;
        for (std::size_t i = 0; i < row; ++i)
            x[static_cast<std::size_t>(pivot_col_of_row[i])] = -a.at(i, free);
        basis.push_back(std::move(x));
    }
    // Gram-Schmidt keeps downstream rank logic honest.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            double dot = 0.0;
            for (std::size_t j = 0; j < c; ++j) dot += basis[i][j] * basis[k][j];
            for (std::size_t j = 0; j < c; ++j) basis[i][j] -= dot * basis[k][j];
        }
        double norm = 0.0;
        for (double v : basis[i]) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : basis[i]) v /= norm;
    }
    return basis;
}

RealMat transpose(const RealMat& m) {
    RealMat t;
    t.rows = m.cols;
    t.cols = m.rows;
    t.a.resize(m.a.size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

RealMat matmul(const RealMat& a, const RealMat& b) {
    RealMat c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.a.assign(c.rows * c.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double v = a.at(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += v * b.at(k, j);
        }
    return c;
}

double binomial_capped(std::size_t n, std::size_t k, double cap) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double v = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
        if (v > cap) return cap * 2.0;
    }
    return v;
}

// ---------------------------------------------------------------------------
// p = 2: smallest singular value via the Gram matrix and cyclic Jacobi.
// ---------------------------------------------------------------------------

double smallest_singular_value(const BlockMatrix& m, std::vector<Complex>* witness) {
    const std::size_t n = m.cols();
    if (m.real) {
        RealMat g;
        g.rows = g.cols = n;
        g.a.assign(n * n, 0.0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double v = m.real_at(i, j);
                if (v == 0.0) continue;
                for (std::size_t k = 0; k < n; ++k) g.at(j, k) += v * m.real_at(i, k);
            }
        const SymmetricEigen eig = jacobi_eigen_sym(g.a, n);
        if (witness) {
            witness->resize(n);
            for (std::size_t i = 0; i < n; ++i) (*witness)[i] = Complex(eig.vector_entry(i, 0));
        }
        return std::sqrt(std::max(0.0, eig.values[0]));
    }
    std::vector<Complex> g(n * n, Complex(0.0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = std::conj(m.at(i, j));
            if (v == Complex(0.0)) continue;
            for (std::size_t k = 0; k < n; ++k) g[j * n + k] += v * m.at(i, k);
        }
    const HermitianEigen eig = jacobi_eigen_herm(g, n);
    if (witness) *witness = eig.min_vector;
    return std::sqrt(std::max(0.0, eig.values[0]));
}

// ---------------------------------------------------------------------------
// p = inf: one LP per pinned column.
// ---------------------------------------------------------------------------

double linf_column_lp(const RealMat& m, std::size_t t, std::vector<double>* c_out) {
    const std::size_t n = m.cols;
    const std::size_t nv = n;  // v_0..v_{n-2} (c_j + 1 for j != t), then s
    LinearProgram lp;
    lp.num_vars = nv;
    lp.objective.assign(nv, 0.0);
    lp.objective[nv - 1] = 1.0;

    for (std::size_t i = 0; i < m.rows; ++i) {
        double k = m.at(i, t);
        std::vector<double> pos(nv, 0.0), neg(nv, 0.0);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == t) continue;
            pos[idx] = m.at(i, j);
            neg[idx] = -m.at(i, j);
            k -= m.at(i, j);
            ++idx;
        }
        pos[nv - 1] = -1.0;
        neg[nv - 1] = -1.0;
        lp.a_ub.push_back(std::move(pos));
        lp.b_ub.push_back(-k);
        lp.a_ub.push_back(std::move(neg));
        lp.b_ub.push_back(k);
    }
    for (std::size_t j = 0; j + 1 < nv; ++j) {
        std::vector<double> box(nv, 0.0);
        box[j] = 1.0;
        lp.a_ub.push_back(std::move(box));
        lp.b_ub.push_back(2.0);
    }

    const SimplexResult res = solve_lp(lp);
    if (res.status != SimplexResult::Status::kOptimal)
        throw InternalError("l-inf gain LP must be feasible and bounded");
    if (c_out) {
        c_out->assign(n, 0.0);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n; ++j)
            (*c_out)[j] = (j == t) ? 1.0 : res.x[idx++] - 1.0;
    }
    return std::max(0.0, res.objective);
}

double linf_gain(const RealMat& m, std::vector<double>* witness) {
    std::vector<double> best_per_t(m.cols, std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> c_per_t(m.cols);
    parallel_for(m.cols, [&](std::size_t t) { best_per_t[t] = linf_column_lp(m, t, &c_per_t[t]); });
    std::size_t best = 0;
    for (std::size_t t = 1; t < m.cols; ++t)
        if (best_per_t[t] < best_per_t[best]) best = t;
    if (witness) *witness = c_per_t[best];
    return best_per_t[best];
}

// ---------------------------------------------------------------------------
// p = 1, route A: sign-pattern LPs (exact, up to 20 columns).
// ---------------------------------------------------------------------------

double l1_sign_lp(const RealMat& m, const std::vector<int>& sigma, std::vector<double>* c_out) {
    const std::size_t n = m.cols, r = m.rows;
    LinearProgram lp;
    lp.num_vars = n + r;  // w_0..w_{n-1}, u_0..u_{r-1}
    lp.objective.assign(n + r, 0.0);
    for (std::size_t i = 0; i < r; ++i) lp.objective[n + i] = 1.0;

    std::vector<double> ones(n + r, 0.0);
    for (std::size_t j = 0; j < n; ++j) ones[j] = 1.0;
    lp.a_eq.push_back(std::move(ones));
    lp.b_eq.push_back(1.0);

    for (std::size_t i = 0; i < r; ++i) {
        std::vector<double> pos(n + r, 0.0), neg(n + r, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m.at(i, j) * sigma[j];
            pos[j] = v;
            neg[j] = -v;
        }
        pos[n + i] = -1.0;
        neg[n + i] = -1.0;
        lp.a_ub.push_back(std::move(pos));
        lp.b_ub.push_back(0.0);
        lp.a_ub.push_back(std::move(neg));
        lp.b_ub.push_back(0.0);
    }

    const SimplexResult res = solve_lp(lp);
    if (res.status != SimplexResult::Status::kOptimal)
        throw InternalError("l1 gain LP must be feasible and bounded");
    if (c_out) {
        c_out->assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) (*c_out)[j] = sigma[j] * res.x[j];
    }
    return std::max(0.0, res.objective);
}

double l1_gain_sign_lps(const RealMat& m, std::vector<double>* witness) {
    const std::size_t n = m.cols;
    std::vector<int> sigma(n, 1);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_c;
    const std::size_t patterns = std::size_t{1} << (n - 1);  // global sign fixed
    for (std::size_t bits = 0; bits < patterns; ++bits) {
        for (std::size_t j = 1; j < n; ++j) sigma[j] = (bits >> (j - 1)) & 1 ? -1 : 1;
        std::vector<double> c;
        const double v = l1_sign_lp(m, sigma, &c);
        if (v < best) {
            best = v;
            best_c = std::move(c);
        }
    }
    if (witness) *witness = best_c;
    return best;
}

// ---------------------------------------------------------------------------
// p = 1, route B: exact vertex enumeration of {c : ||Mc||_1 <= 1}.
//
// Every vertex has at least cols-1 vanishing rows of Mc, i.e. Mc supported
// on at most corank+1 coordinates; the candidates are recovered from the
// left null space of M and one pseudo-inverse solve per support set.
// ---------------------------------------------------------------------------

struct L1MaxResult {
    double value = 0.0;               // max ||V b||_1 over ||Z b||_1 <= 1
    std::vector<double> arg;          // maximizing b
};

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// max ||V b||_1 subject to ||Z b||_1 <= 1; V == nullptr means the identity.
// Z must have full column rank (q x m, q >= m).
L1MaxResult max_l1_over_l1ball(const RealMat* v, const RealMat& z) {
    const std::size_t q = z.rows, m = z.cols;
    auto value_of = [&](const std::vector<double>& b) {
        if (!v) return l1(b);
        return l1(matvec(*v, b));
    };
    L1MaxResult best;

    if (m == 1) {
        std::vector<double> b{1.0};
        double denom = 0.0;
        for (std::size_t i = 0; i < q; ++i) denom += std::abs(z.at(i, 0));
        if (denom <= 0.0) throw InternalError("l1 vertex: rank-deficient direction");
        b[0] = 1.0 / denom;
        best.value = value_of(b);
        best.arg = b;
        return best;
    }
    if (q == m) {
        const RealMat zi = invert_square(z);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> b(m);
            for (std::size_t j = 0; j < m; ++j) b[j] = zi.at(j, i);
            const double val = value_of(b);
            if (val > best.value) {
                best.value = val;
                best.arg = std::move(b);
            }
        }
        return best;
    }

    const std::size_t corank = q - m;
    const std::vector<std::vector<double>> left_null = null_space_basis(transpose(z));
    if (left_null.size() != corank)
        throw InternalError("l1 vertex: left null space dimension mismatch");

    // Pseudo-inverse K = (Z^T Z)^{-1} Z^T, as dense columns.
    const RealMat zt = transpose(z);
    const RealMat gram = matmul(zt, z);
    const RealMat pinv = matmul(invert_square(gram), zt);  // m x q

    std::vector<std::size_t> subset(corank + 1);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    do {
        RealMat a;  // corank x (corank+1): left-null vectors restricted to the support
        a.rows = corank;
        a.cols = corank + 1;
        a.a.resize(a.rows * a.cols);
        for (std::size_t r = 0; r < corank; ++r)
            for (std::size_t c2 = 0; c2 <= corank; ++c2) a.at(r, c2) = left_null[r][subset[c2]];
        const std::vector<std::vector<double>> alphas = null_space_basis(a);
        if (alphas.empty()) continue;

        if (alphas.size() == 1) {
            std::vector<double> b(m, 0.0);
            for (std::size_t c2 = 0; c2 <= corank; ++c2)
                for (std::size_t j = 0; j < m; ++j) b[j] += alphas[0][c2] * pinv.at(j, subset[c2]);
            const double denom = l1(matvec(z, b));
            if (denom <= 1e-300) continue;
            for (double& x : b) x /= denom;
            const double val = value_of(b);
            if (val > best.value) {
                best.value = val;
                best.arg = std::move(b);
            }
        } else {
            // Degenerate support: a whole family of feasible directions.
            // Recurse on the family's coordinates.
            const std::size_t fam = alphas.size();
            RealMat zp;  // (corank+1) x fam
            zp.rows = corank + 1;
            zp.cols = fam;
            zp.a.resize(zp.rows * zp.cols);
            for (std::size_t r = 0; r <= corank; ++r)
                for (std::size_t c2 = 0; c2 < fam; ++c2) zp.at(r, c2) = alphas[c2][r];
            RealMat basis;  // m x fam: b(gamma) = basis * gamma
            basis.rows = m;
            basis.cols = fam;
            basis.a.assign(m * fam, 0.0);
            for (std::size_t c2 = 0; c2 < fam; ++c2)
                for (std::size_t s = 0; s <= corank; ++s)
                    for (std::size_t j = 0; j < m; ++j)
                        basis.at(j, c2) += alphas[c2][s] * pinv.at(j, subset[s]);
            RealMat vp;  // value matrix: V * basis (or basis itself)
            if (v)
                vp = matmul(*v, basis);
            else
                vp = basis;
            const L1MaxResult sub = max_l1_over_l1ball(&vp, zp);
            if (sub.value > best.value) {
                best.value = sub.value;
                best.arg = matvec(basis, sub.arg);
            }
        }
    } while (next_combination(subset, q));
    return best;
}

double l1_gain_vertex(const RealMat& m, std::vector<double>* witness) {
    // Rank gate: a genuinely rank-deficient matrix has gain 0.
    RealMat gram;
    gram.rows = gram.cols = m.cols;
    gram.a.assign(m.cols * m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const double v = m.at(i, j);
            if (v == 0.0) continue;
            for (std::size_t k = 0; k < m.cols; ++k) gram.at(j, k) += v * m.at(i, k);
        }
    const SymmetricEigen eig = jacobi_eigen_sym(gram.a, m.cols);
    const double scale = std::max(1e-300, eig.values.back());
    if (eig.values[0] <= 1e-24 * scale) {
        if (witness) {
            witness->resize(m.cols);
            for (std::size_t i = 0; i < m.cols; ++i) (*witness)[i] = eig.vector_entry(i, 0);
        }
        return 0.0;
    }
    const L1MaxResult res = max_l1_over_l1ball(nullptr, m);
    if (witness) *witness = res.arg;
    return 1.0 / res.value;
}

std::vector<Complex> to_complex(const std::vector<double>& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Complex(v[i]);
    return out;
}

}  // namespace

BlockMatrix block_matrix(const OperatorSpec& spec, const Point& n, long long half_width) {
    if (half_width < 1) throw InputError("block half-width must be >= 1");
    if (std::fmod(n[0], static_cast<double>(half_width)) != 0.0)
        throw InputError("block center must lie in N*Z");
    BlockMatrix blk;
    blk.real = spec.is_real();
    if (spec.lattice_kind()) {
        const long long n0 = static_cast<long long>(n[0]);
        for (long long j = n0 - 2 * half_width + 1; j <= n0 + 2 * half_width - 1; ++j)
            blk.row_points.emplace_back(static_cast<double>(j));
        for (long long j = n0 - half_width + 1; j <= n0 + half_width - 1; ++j)
            blk.col_points.emplace_back(static_cast<double>(j));
        blk.entries.resize(blk.rows() * blk.cols());
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j)
                blk.entries[i * blk.cols() + j] =
                    entry_at(spec, static_cast<long long>(blk.row_points[i][0]),
                             static_cast<long long>(blk.col_points[j][0]));
        return blk;
    }
    std::vector<std::size_t> row_pos, col_pos;
    for (std::size_t i = 0; i < spec.dense_rows().size(); ++i)
        if (chebyshev_dist(spec.dense_rows().point(i), n, 1) < 2.0 * static_cast<double>(half_width)) {
            row_pos.push_back(i);
            blk.row_points.push_back(spec.dense_rows().point(i));
        }
    for (std::size_t j = 0; j < spec.dense_cols().size(); ++j)
        if (chebyshev_dist(spec.dense_cols().point(j), n, 1) < static_cast<double>(half_width)) {
            col_pos.push_back(j);
            blk.col_points.push_back(spec.dense_cols().point(j));
        }
    blk.entries.assign(blk.rows() * blk.cols(), Complex(0.0));
    for (const DenseEntry& e : spec.dense_entries()) {
        const auto ri = std::find(row_pos.begin(), row_pos.end(), e.row);
        const auto ci = std::find(col_pos.begin(), col_pos.end(), e.col);
        if (ri == row_pos.end() || ci == col_pos.end()) continue;
        blk.entries[static_cast<std::size_t>(ri - row_pos.begin()) * blk.cols() +
                    static_cast<std::size_t>(ci - col_pos.begin())] = e.value;
    }
    return blk;
}

BlockMatrix toeplitz_tilde_block(const OperatorSpec& spec, long long n_half) {
    if (spec.kind() != SpecKind::kToeplitz)
        throw PreconditionError("the band section is defined for plain Toeplitz specs");
    const long long k = spec.band_parameter();
    if (n_half <= k) throw PreconditionError("band section requires N0 > band parameter");
    BlockMatrix blk;
    blk.real = spec.is_real();
    for (long long j = -n_half - k; j <= n_half + k; ++j)
        blk.row_points.emplace_back(static_cast<double>(j));
    for (long long j = -n_half; j <= n_half; ++j)
        blk.col_points.emplace_back(static_cast<double>(j));
    blk.entries.resize(blk.rows() * blk.cols());
    for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j)
            blk.entries[i * blk.cols() + j] =
                entry_at(spec, static_cast<long long>(blk.row_points[i][0]),
                         static_cast<long long>(blk.col_points[j][0]));
    return blk;
}

BlockMatrix full_column_block(const OperatorSpec& spec, long long n_half) {
    if (n_half < 1) throw InputError("window half-width must be >= 1");
    BlockMatrix blk;
    blk.real = spec.is_real();
    if (spec.lattice_kind()) {
        long long min_off = 0, max_off = 0;
        for (const auto& [k, v] : spec.coeffs())
            if (v != Complex(0.0)) {
                min_off = std::min(min_off, k);
                max_off = std::max(max_off, k);
            }
        for (long long j = -n_half + 1 + min_off; j <= n_half - 1 + max_off; ++j)
            blk.row_points.emplace_back(static_cast<double>(j));
        for (long long j = -n_half + 1; j <= n_half - 1; ++j)
            blk.col_points.emplace_back(static_cast<double>(j));
        blk.entries.resize(blk.rows() * blk.cols());
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j)
                blk.entries[i * blk.cols() + j] =
                    entry_at(spec, static_cast<long long>(blk.row_points[i][0]),
                             static_cast<long long>(blk.col_points[j][0]));
        return blk;
    }
    // Dense: all declared rows against the windowed columns.
    std::vector<std::size_t> col_pos;
    for (std::size_t j = 0; j < spec.dense_cols().size(); ++j)
        if (std::abs(spec.dense_cols().point(j)[0]) < static_cast<double>(n_half)) {
            col_pos.push_back(j);
            blk.col_points.push_back(spec.dense_cols().point(j));
        }
    blk.row_points = spec.dense_rows().points();
    blk.entries.assign(blk.rows() * blk.cols(), Complex(0.0));
    for (const DenseEntry& e : spec.dense_entries()) {
        const auto ci = std::find(col_pos.begin(), col_pos.end(), e.col);
        if (ci == col_pos.end()) continue;
        blk.entries[e.row * blk.cols() + static_cast<std::size_t>(ci - col_pos.begin())] = e.value;
    }
    return blk;
}

BlockMatrix make_block(const std::vector<std::vector<double>>& rows) {
    BlockMatrix blk;
    blk.real = true;
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw InputError("ragged matrix rows");
        blk.row_points.emplace_back(static_cast<double>(i));
    }
    for (std::size_t j = 0; j < c; ++j) blk.col_points.emplace_back(static_cast<double>(j));
    blk.entries.reserve(r * c);
    for (const auto& row : rows)
        for (double v : row) blk.entries.emplace_back(v);
    return blk;
}

BlockBoundReport lower_bound_p(const BlockMatrix& m, double p) {
    if (m.vacuous()) throw PreconditionError("lower bound of a vacuous block");
    if (p != 1.0 && p != 2.0 && !std::isinf(p))
        throw InputError("exact lower bounds support p in {1, 2, inf} only");

    BlockBoundReport rep;
    rep.p = p;

    if (p == 2.0) {
        rep.method = BoundMethod::kSvd;
        rep.lower_bound = smallest_singular_value(m, &rep.witness);
        return rep;
    }
    if (!m.real)
        throw UnsupportedMethodError(
            "p in {1, inf} lower bounds require a real matrix; use p = 2 or the brute oracle");

    const RealMat full = real_view(m);
    // Zero rows never change the gain and only inflate the programs.
    const RealMat mat = drop_zero_rows(full);
    if (mat.rows == 0) {
        rep.method = std::isinf(p) ? BoundMethod::kLpInf : BoundMethod::kLpOne;
        rep.lower_bound = 0.0;
        rep.witness.assign(m.cols(), Complex(0.0));
        rep.witness[0] = Complex(1.0);
        return rep;
    }

    std::vector<double> witness;
    if (std::isinf(p)) {
        rep.method = BoundMethod::kLpInf;
        rep.lower_bound = linf_gain(mat, &witness);
        rep.witness = to_complex(witness);
        return rep;
    }

    // p == 1: choose between the sign-pattern LPs and vertex enumeration by
    // estimated work; both are exact.
    const std::size_t n = mat.cols, q = mat.rows;
    const double cap_sign = 524288.0;  // 2^19 LPs: the 20-column cap
    const double sign_count = n <= 20 ? std::ldexp(1.0, static_cast<int>(n - 1)) : 2.0 * cap_sign;
    const double sign_cost = sign_count <= cap_sign
                                 ? sign_count * static_cast<double>((2 * q + 2) * (n + q)) *
                                       static_cast<double>(n + q)
                                 : std::numeric_limits<double>::infinity();
    double vertex_cost = std::numeric_limits<double>::infinity();
    if (q >= n) {
        const double subsets = binomial_capped(q, q - n + 1, 4e6);
        if (subsets <= 4e6) {
            const double per = static_cast<double>(q * n);
            vertex_cost = subsets * per + static_cast<double>(n) * n * q;
        }
    }
    constexpr double kWorkCap = 4e9;
    if (std::min(sign_cost, vertex_cost) > kWorkCap)
        throw ResourceError(
            "p = 1 exact bound exceeds the method caps (20 columns for sign-pattern "
            "enumeration; C(rows, rows-cols+1) vertex subsets otherwise)");
    if (sign_cost <= vertex_cost) {
        rep.method = BoundMethod::kLpOne;
        rep.lower_bound = l1_gain_sign_lps(mat, &witness);
    } else {
        rep.method = BoundMethod::kVertexOne;
        rep.lower_bound = l1_gain_vertex(mat, &witness);
    }
    rep.witness = to_complex(witness);
    return rep;
}

namespace detail {

double l1_gain_sign(const BlockMatrix& m) {
    if (!m.real) throw UnsupportedMethodError("p = 1 requires a real matrix");
    const RealMat mat = drop_zero_rows(real_view(m));
    return stabilcert::l1_gain_sign_lps(mat, nullptr);
}

double l1_gain_vertex(const BlockMatrix& m) {
    if (!m.real) throw UnsupportedMethodError("p = 1 requires a real matrix");
    const RealMat mat = drop_zero_rows(real_view(m));
    return stabilcert::l1_gain_vertex(mat, nullptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute oracle: deterministic cube-surface mesh, refined around best cells.
// ---------------------------------------------------------------------------

namespace {

// Ratio evaluator with the complex embedding flattened to real coordinates
// and the p in {1, 2, inf} norms special-cased; this is the hot loop of the
// mesh oracle.
class RatioEval {
  public:
    RatioEval(const BlockMatrix& m, double p)
        : rows_(m.rows()), cols_(m.cols()), real_(m.real), p_(p) {
        a_.reserve(rows_ * cols_);
        for (const Complex& v : m.entries) a_.push_back(v);
        y_.resize(rows_);
    }

    std::size_t dim() const { return cols_ * (real_ ? 1 : 2); }

    double operator()(const std::vector<double>& x) const {
        double cn;
        if (p_ == 1.0) {
            cn = 0.0;
            if (real_)
                for (std::size_t j = 0; j < cols_; ++j) cn += std::abs(x[j]);
            else
                for (std::size_t j = 0; j < cols_; ++j) cn += std::hypot(x[j], x[cols_ + j]);
        } else if (p_ == 2.0) {
            double s = 0.0;
            for (std::size_t j = 0; j < dim(); ++j) s += x[j] * x[j];
            cn = std::sqrt(s);
        } else if (std::isinf(p_)) {
            cn = 0.0;
            if (real_)
                for (std::size_t j = 0; j < cols_; ++j) cn = std::max(cn, std::abs(x[j]));
            else
                for (std::size_t j = 0; j < cols_; ++j)
                    cn = std::max(cn, std::hypot(x[j], x[cols_ + j]));
        } else {
            cn = 0.0;
            if (real_)
                for (std::size_t j = 0; j < cols_; ++j) cn += std::pow(std::abs(x[j]), p_);
            else
                for (std::size_t j = 0; j < cols_; ++j)
                    cn += std::pow(std::hypot(x[j], x[cols_ + j]), p_);
            cn = std::pow(cn, 1.0 / p_);
        }
        if (cn == 0.0) return std::numeric_limits<double>::infinity();

        for (std::size_t i = 0; i < rows_; ++i) {
            Complex acc(0.0);
            if (real_) {
                double re = 0.0;
                for (std::size_t j = 0; j < cols_; ++j) re += a_[i * cols_ + j].real() * x[j];
                acc = Complex(re);
            } else {
                for (std::size_t j = 0; j < cols_; ++j)
                    acc += a_[i * cols_ + j] * Complex(x[j], x[cols_ + j]);
            }
            y_[i] = acc;
        }
        double yn;
        if (p_ == 1.0) {
            yn = 0.0;
            for (const Complex& v : y_)
                yn += real_ ? std::abs(v.real()) : std::abs(v);
        } else if (p_ == 2.0) {
            double s = 0.0;
            for (const Complex& v : y_) s += std::norm(v);
            yn = std::sqrt(s);
        } else if (std::isinf(p_)) {
            yn = 0.0;
            for (const Complex& v : y_)
                yn = std::max(yn, real_ ? std::abs(v.real()) : std::abs(v));
        } else {
            yn = 0.0;
            for (const Complex& v : y_) yn += std::pow(std::abs(v), p_);
            yn = std::pow(yn, 1.0 / p_);
        }
        return yn / cn;
    }

  private:
    std::size_t rows_, cols_;
    bool real_;
    double p_;
    std::vector<Complex> a_;
    mutable std::vector<Complex> y_;
};

}  // namespace

double brute_lower_bound(const BlockMatrix& m, double p, long long samples) {
    if (m.vacuous()) throw PreconditionError("brute bound of a vacuous block");
    if (p < 1.0) throw InputError("brute oracle requires p >= 1");
    const RatioEval ratio_at(m, p);
    const std::size_t dim = ratio_at.dim();

    std::vector<double> x(dim, 0.0);
    if (dim == 1) {
        x[0] = 1.0;
        return ratio_at(x);
    }

    // Level 0: a grid on every face of the cube {||x||_inf = 1}; radial
    // scaling is free because the ratio is homogeneous.
    std::size_t g = 3;
    {
        const double budget = std::max<double>(512.0, static_cast<double>(samples)) * 0.7 /
                              static_cast<double>(2 * dim);
        const double per_axis = std::pow(budget, 1.0 / static_cast<double>(dim - 1));
        g = std::max<std::size_t>(3, static_cast<std::size_t>(per_axis));
        g = std::min<std::size_t>(g, 41);
        if (g % 2 == 0) ++g;
    }

    struct Candidate {
        double value;
        std::vector<double> point;
    };
    std::vector<Candidate> top;
    const std::size_t keep = 48;
    auto offer = [&](double value, const std::vector<double>& pt) {
        for (Candidate& c : top) {
            double dist = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dist = std::max(dist, std::abs(c.point[i] - pt[i]));
            if (dist < 1.0 / static_cast<double>(g)) {
                if (value < c.value) c = Candidate{value, pt};
                return;
            }
        }
        if (top.size() < keep) {
            top.push_back(Candidate{value, pt});
        } else {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < top.size(); ++i)
                if (top[i].value > top[worst].value) worst = i;
            if (value < top[worst].value) top[worst] = Candidate{value, pt};
        }
    };

    std::vector<std::size_t> counter(dim - 1, 0);
    for (std::size_t axis = 0; axis < dim; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            std::fill(counter.begin(), counter.end(), 0);
            for (;;) {
                std::vector<double> pt(dim);
                pt[axis] = sign;
                std::size_t ci = 0;
                for (std::size_t d2 = 0; d2 < dim; ++d2) {
                    if (d2 == axis) continue;
                    pt[d2] = -1.0 + 2.0 * static_cast<double>(counter[ci]) /
                                        static_cast<double>(g - 1);
                    ++ci;
                }
                offer(ratio_at(pt), pt);
                std::size_t k = 0;
                while (k < dim - 1 && ++counter[k] == g) counter[k++] = 0;
                if (k == dim - 1) break;
            }
        }
    }

    // Refinement: deterministic Nelder-Mead with restarts.  Compass-style
    // stencils stall on the oblique kinks of the p = 1 and p = inf
    // objectives; the simplex adapts its shape to the valley.
    auto nelder_mead = [&](Candidate& cand, double size, int max_iter) {
        const std::size_t n = dim;
        std::vector<std::vector<double>> xs(n + 1, cand.point);
        std::vector<double> fs(n + 1);
        for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += size;
        for (std::size_t i = 0; i <= n; ++i) fs[i] = ratio_at(xs[i]);
        std::vector<std::size_t> ord(n + 1);
        std::vector<double> centroid(n), xr(n), xe(n), xc(n);
        for (int iter = 0; iter < max_iter; ++iter) {
            std::iota(ord.begin(), ord.end(), std::size_t{0});
            std::sort(ord.begin(), ord.end(),
                      [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
            const std::size_t lo = ord[0], hi = ord[n], second = ord[n - 1];
            double diam = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                diam = std::max(diam, std::abs(xs[hi][i] - xs[lo][i]));
            if (diam < 1e-12 && fs[hi] - fs[lo] < 1e-14) break;
            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == hi) continue;
                for (std::size_t i = 0; i < n; ++i) centroid[i] += xs[k][i];
            }
            for (std::size_t i = 0; i < n; ++i) centroid[i] /= static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) xr[i] = 2.0 * centroid[i] - xs[hi][i];
            const double fr = ratio_at(xr);
            if (fr < fs[lo]) {
                for (std::size_t i = 0; i < n; ++i) xe[i] = 3.0 * centroid[i] - 2.0 * xs[hi][i];
                const double fe = ratio_at(xe);
                if (fe < fr) {
                    xs[hi] = xe;
                    fs[hi] = fe;
                } else {
                    xs[hi] = xr;
                    fs[hi] = fr;
                }
            } else if (fr < fs[second]) {
                xs[hi] = xr;
                fs[hi] = fr;
            } else {
                const bool outside = fr < fs[hi];
                for (std::size_t i = 0; i < n; ++i)
                    xc[i] = outside ? 0.5 * (centroid[i] + xr[i])
                                    : 0.5 * (centroid[i] + xs[hi][i]);
                const double fc = ratio_at(xc);
                if (fc < std::min(fr, fs[hi])) {
                    xs[hi] = xc;
                    fs[hi] = fc;
                } else {
                    for (std::size_t k = 0; k <= n; ++k) {
                        if (k == lo) continue;
                        for (std::size_t i = 0; i < n; ++i)
                            xs[k][i] = 0.5 * (xs[k][i] + xs[lo][i]);
                        fs[k] = ratio_at(xs[k]);
                    }
                }
            }
        }
        for (std::size_t k = 0; k <= n; ++k)
            if (fs[k] < cand.value) {
                cand.value = fs[k];
                cand.point = xs[k];
            }
    };

    const double base_step = 2.0 / static_cast<double>(g - 1);
    for (Candidate& cand : top)
        for (const double size : {base_step, base_step / 64.0, base_step / 4096.0})
            nelder_mead(cand, size, 250 * static_cast<int>(dim));

    double best = std::numeric_limits<double>::infinity();
    for (const Candidate& cand : top) best = std::min(best, cand.value);
    return best;
}

}  // namespace stabilcert
