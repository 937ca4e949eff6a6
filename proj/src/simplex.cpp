#include "stabilcert/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "stabilcert/errors.hpp"

namespace stabilcert {

namespace {

constexpr double kEps = 1e-11;
constexpr double kFeasTol = 1e-8;
constexpr long long kMaxPivots = 200000;

// Condensed-dictionary simplex: maximize c^T x s.t. Ax <= b, x >= 0.
// Tableau D is (m+2) x (n+2): column n holds the auxiliary variable used to
// reach feasibility, column n+1 the right-hand side; row m carries the real
// objective, row m+1 the feasibility objective.
class Dictionary {
  public:
    Dictionary(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
               const std::vector<double>& c)
        : m_(b.size()), n_(c.size()), nonbasic_(n_ + 1), basic_(m_), d_((m_ + 2) * (n_ + 2), 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = a[i][j];
            basic_[i] = static_cast<long long>(n_ + i);
            at(i, n_) = -1.0;
            at(i, n_ + 1) = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasic_[j] = static_cast<long long>(j);
            at(m_, j) = -c[j];
        }
        nonbasic_[n_] = -1;
        at(m_ + 1, n_) = 1.0;
    }

    // +objective on success; -inf infeasible; +inf unbounded.
    double solve(std::vector<double>& x) {
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
        if (m_ > 0 && at(r, n_ + 1) < -kFeasTol) {
            pivot(r, n_);
            if (!run(true) || at(m_ + 1, n_ + 1) < -kFeasTol)
                return -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                // The auxiliary variable is basic at level zero; pivot it out.
                std::size_t s = 0;
                for (std::size_t j = 1; j <= n_; ++j)
                    if (std::make_pair(at(i, j), nonbasic_[j]) <
                        std::make_pair(at(i, s), nonbasic_[s]))
                        s = j;
                if (std::abs(at(i, s)) > kEps) pivot(i, s);
            }
        }
        const bool ok = run(false);
        x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] >= 0 && basic_[i] < static_cast<long long>(n_))
                x[static_cast<std::size_t>(basic_[i])] = at(i, n_ + 1);
        return ok ? at(m_, n_ + 1) : std::numeric_limits<double>::infinity();
    }

  private:
    double& at(std::size_t i, std::size_t j) { return d_[i * (n_ + 2) + j]; }
    double at(std::size_t i, std::size_t j) const { return d_[i * (n_ + 2) + j]; }

    void pivot(std::size_t r, std::size_t s) {
        double* a = &d_[r * (n_ + 2)];
        const double inv = 1.0 / a[s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(at(i, s)) <= 1e-300) continue;
            double* row = &d_[i * (n_ + 2)];
            const double factor = row[s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j) row[j] -= a[j] * factor;
            row[s] = a[s] * factor;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) a[j] *= inv;
        for (std::size_t i = 0; i < m_ + 2; ++i)
            if (i != r) at(i, s) *= -inv;
        a[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    // feasibility = true runs on row m+1 (auxiliary objective).
    bool run(bool feasibility) {
        const std::size_t obj = feasibility ? m_ + 1 : m_;
        bool bland = false;
        long long stall = 0;
        double last = at(obj, n_ + 1);
        for (long long iter = 0; iter < kMaxPivots; ++iter) {
            long long s = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (!feasibility && nonbasic_[j] == -1) continue;  // aux must stay out
                if (at(obj, j) >= -kEps) continue;
                if (s < 0) {
                    s = static_cast<long long>(j);
                } else if (bland) {
                    // Bland's rule: smallest variable label enters.
                    if (nonbasic_[j] < nonbasic_[static_cast<std::size_t>(s)])
                        s = static_cast<long long>(j);
                } else if (std::make_pair(at(obj, j), nonbasic_[j]) <
                           std::make_pair(at(obj, static_cast<std::size_t>(s)),
                                          nonbasic_[static_cast<std::size_t>(s)])) {
                    s = static_cast<long long>(j);
                }
            }
            if (s < 0) return true;  // optimal
            const std::size_t sc = static_cast<std::size_t>(s);

            long long r = -1;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, sc) <= kEps) continue;
                const double ratio = at(i, n_ + 1) / at(i, sc);
                if (r < 0 ||
                    std::make_pair(ratio, basic_[i]) <
                        std::make_pair(at(static_cast<std::size_t>(r), n_ + 1) /
                                           at(static_cast<std::size_t>(r), sc),
                                       basic_[static_cast<std::size_t>(r)]))
                    r = static_cast<long long>(i);
            }
            if (r < 0) return false;  // unbounded
            pivot(static_cast<std::size_t>(r), sc);

            const double now = at(obj, n_ + 1);
            if (now > last + 1e-12) {
                stall = 0;
                last = now;
            } else if (++stall > static_cast<long long>(2 * (m_ + n_) + 16)) {
                bland = true;  // permanent: Bland's rule cannot cycle
            }
        }
        throw InternalError("simplex failed to terminate within the pivot budget");
    }

    std::size_t m_, n_;
    std::vector<long long> nonbasic_, basic_;
    std::vector<double> d_;
};

}  // namespace

SimplexResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(lp.a_ub.size() + 2 * lp.a_eq.size());
    for (std::size_t i = 0; i < lp.a_ub.size(); ++i) {
        if (lp.a_ub[i].size() != n) throw InputError("LP row size mismatch");
        a.push_back(lp.a_ub[i]);
        b.push_back(lp.b_ub[i]);
    }
    for (std::size_t i = 0; i < lp.a_eq.size(); ++i) {
        if (lp.a_eq[i].size() != n) throw InputError("LP row size mismatch");
        a.push_back(lp.a_eq[i]);
        b.push_back(lp.b_eq[i]);
        std::vector<double> neg(n);
        for (std::size_t j = 0; j < n; ++j) neg[j] = -lp.a_eq[i][j];
        a.push_back(std::move(neg));
        b.push_back(-lp.b_eq[i]);
    }
    std::vector<double> cmax(n);
    for (std::size_t j = 0; j < n; ++j) cmax[j] = -lp.objective[j];

    Dictionary dict(a, b, cmax);
    std::vector<double> x;
    const double value = dict.solve(x);

    SimplexResult out;
    if (value == -std::numeric_limits<double>::infinity()) {
        out.status = SimplexResult::Status::kInfeasible;
    } else if (value == std::numeric_limits<double>::infinity()) {
        out.status = SimplexResult::Status::kUnbounded;
    } else {
        out.status = SimplexResult::Status::kOptimal;
        out.objective = -value;
        out.x = std::move(x);
    }
    return out;
}

}  // namespace stabilcert
