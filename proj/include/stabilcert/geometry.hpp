#ifndef STABILCERT_GEOMETRY_HPP
#define STABILCERT_GEOMETRY_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace stabilcert {

using Complex = std::complex<double>;

/// A point in R^d with d <= 2; coordinates beyond d are kept at zero.
struct Point {
    std::array<double, 2> x{0.0, 0.0};

    Point() = default;
    explicit Point(double x0) : x{x0, 0.0} {}
    Point(double x0, double x1) : x{x0, x1} {}

    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
    bool operator==(const Point& o) const { return x == o.x; }
};

/// max_i |a_i - b_i| over the first `dim` coordinates.
double chebyshev_dist(const Point& a, const Point& b, int dim);

/// A finite, relatively-separated index set in R^d (d in {1,2}).
///
/// Points are ordered; sequences over the set are stored as dense vectors
/// aligned with this order.  R(Lambda) is computed exactly at construction
/// by breakpoint enumeration (half-open unit boxes anchored at coordinates
/// lambda_i - 1/2).
class IndexSet {
  public:
    IndexSet() = default;
    IndexSet(std::vector<Point> points, int dim);

    /// The 1-d integer window {lo, lo+1, ..., hi}.
    static IndexSet integer_range(long long lo, long long hi);
    /// A 1-d set from raw coordinates, in the given order.
    static IndexSet from_reals(const std::vector<double>& xs);

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    bool integer_lattice() const { return integer_lattice_; }
    /// R(Lambda); 0 for the empty set, >= 1 otherwise.
    double separation() const { return separation_; }

    bool operator==(const IndexSet& o) const {
        return dim_ == o.dim_ && points_ == o.points_;
    }

  private:
    std::vector<Point> points_;
    int dim_ = 1;
    bool integer_lattice_ = true;
    double separation_ = 0.0;
};

/// R(Lambda) = sup_x #(Lambda cap x + [-1/2,1/2)^d), exact.
double relative_separation(const std::vector<Point>& points, int dim);

/// psi_0(x) = prod_i max(min(2 - 2|x_i|, 1), 0).
double cutoff_psi0(const Point& x, int dim);
double cutoff_psi0(double x);

/// A scalar sequence over an IndexSet, stored densely in point order.
struct Sequence {
    IndexSet index;
    std::vector<Complex> values;

    Sequence() = default;
    Sequence(IndexSet idx, std::vector<Complex> vals);

    /// All-zero sequence over `idx`.
    static Sequence zeros(IndexSet idx);
    /// Indicator of the point at position `i`.
    static Sequence delta(IndexSet idx, std::size_t i);
};

/// ||v||_p for p in [1, inf]; p = inf is the sup norm.
double lp_norm(const std::vector<Complex>& values, double p);
double lp_norm(const std::vector<double>& values, double p);

/// Entries with ||lambda - y||_inf < N survive, the rest become zero.
/// The box is open, matching the strict inequality of the window operator.
Sequence window_mask(const Sequence& c, const Point& y, long long half_width);

/// Pointwise multiplication by psi_0((lambda - n)/N).
Sequence psi_multiply(const Sequence& c, const Point& n, long long scale);

/// The truncation operator chi_y^N as a value.
struct WindowOp {
    Point center;
    long long half_width = 1;

    Sequence apply(const Sequence& c) const {
        return window_mask(c, center, half_width);
    }
};

/// The cut-off multiplier Psi_n^N as a value.
struct CutoffMultiplier {
    Point center;        // n in N Z^d
    long long scale = 1; // N

    double weight(const Point& lambda, int dim) const;
    Sequence apply(const Sequence& c) const {
        return psi_multiply(c, center, scale);
    }
};

}  // namespace stabilcert

#endif  // STABILCERT_GEOMETRY_HPP
