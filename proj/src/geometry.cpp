#include "stabilcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "stabilcert/errors.hpp"

namespace stabilcert {

double chebyshev_dist(const Point& a, const Point& b, int dim) {
    double d = 0.0;
    for (int i = 0; i < dim; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

namespace {

void check_dim(int dim) {
    if (dim != 1 && dim != 2) throw InputError("dimension must be 1 or 2");
}

void check_finite(const std::vector<Point>& points, int dim) {
    for (const Point& p : points)
        for (int i = 0; i < dim; ++i)
            if (!std::isfinite(p[i])) throw InputError("non-finite point coordinate");
}

bool all_integral(const std::vector<Point>& points, int dim) {
    for (const Point& p : points)
        for (int i = 0; i < dim; ++i)
            if (p[i] != std::floor(p[i])) return false;
    return true;
}

// Points lambda with x in lambda + [-1/2, 1/2) are exactly those with
// lambda in (x - 1/2, x + 1/2].
std::size_t count_in_box(const std::vector<Point>& points, const Point& anchor, int dim) {
    std::size_t n = 0;
    for (const Point& p : points) {
        bool inside = true;
        for (int i = 0; i < dim; ++i) {
            const double d = p[i] - anchor[i];
            if (!(d > -0.5 && d <= 0.5)) {
                inside = false;
                break;
            }
        }
        if (inside) ++n;
    }
    return n;
}

}  // namespace

double relative_separation(const std::vector<Point>& points, int dim) {
    check_dim(dim);
    check_finite(points, dim);
    if (points.empty()) return 0.0;

    // The count is piecewise constant in the anchor x with upward jumps where
    // the box's closed right end x + 1/2 reaches a point, so anchors of the
    // form lambda_i - 1/2 per coordinate enumerate every attained value.
    std::vector<std::vector<double>> anchors(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        std::set<double> uniq;
        for (const Point& p : points) uniq.insert(p[i] - 0.5);
        anchors[static_cast<std::size_t>(i)].assign(uniq.begin(), uniq.end());
    }

    std::size_t best = 0;
    if (dim == 1) {
        for (double a0 : anchors[0])
            best = std::max(best, count_in_box(points, Point(a0), 1));
    } else {
        for (double a0 : anchors[0])
            for (double a1 : anchors[1])
                best = std::max(best, count_in_box(points, Point(a0, a1), 2));
    }
    return static_cast<double>(best);
}

IndexSet::IndexSet(std::vector<Point> points, int dim) : points_(std::move(points)), dim_(dim) {
    check_dim(dim_);
    check_finite(points_, dim_);
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (chebyshev_dist(points_[i], points_[j], dim_) == 0.0)
                throw InputError("index set points must be pairwise distinct");
    integer_lattice_ = all_integral(points_, dim_);
    separation_ = relative_separation(points_, dim_);
}

IndexSet IndexSet::integer_range(long long lo, long long hi) {
    std::vector<Point> pts;
    if (hi >= lo) pts.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long k = lo; k <= hi; ++k) pts.emplace_back(static_cast<double>(k));
    return IndexSet(std::move(pts), 1);
}

IndexSet IndexSet::from_reals(const std::vector<double>& xs) {
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.emplace_back(x);
    return IndexSet(std::move(pts), 1);
}

double cutoff_psi0(const Point& x, int dim) {
    check_dim(dim);
    double v = 1.0;
    for (int i = 0; i < dim; ++i) {
        if (!std::isfinite(x[i])) throw InputError("non-finite psi_0 argument");
        v *= std::max(std::min(2.0 - 2.0 * std::abs(x[i]), 1.0), 0.0);
    }
    return v;
}

double cutoff_psi0(double x) { return cutoff_psi0(Point(x), 1); }

Sequence::Sequence(IndexSet idx, std::vector<Complex> vals)
    : index(std::move(idx)), values(std::move(vals)) {
    if (index.size() != values.size())
        throw InputError("sequence length does not match its index set");
}

Sequence Sequence::zeros(IndexSet idx) {
    const std::size_t n = idx.size();
    return Sequence(std::move(idx), std::vector<Complex>(n, Complex(0.0)));
}

Sequence Sequence::delta(IndexSet idx, std::size_t i) {
    Sequence s = zeros(std::move(idx));
    s.values.at(i) = Complex(1.0);
    return s;
}

double lp_norm(const std::vector<Complex>& values, double p) {
    if (p < 1.0) throw InputError("lp_norm requires p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const Complex& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const Complex& v : values) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

double lp_norm(const std::vector<double>& values, double p) {
    if (p < 1.0) throw InputError("lp_norm requires p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

Sequence window_mask(const Sequence& c, const Point& y, long long half_width) {
    if (half_width < 1) throw InputError("window half-width must be >= 1");
    Sequence out = c;
    const int d = c.index.dim();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (!(chebyshev_dist(c.index.point(i), y, d) < static_cast<double>(half_width)))
            out.values[i] = Complex(0.0);
    }
    return out;
}

double CutoffMultiplier::weight(const Point& lambda, int dim) const {
    Point arg;
    for (int i = 0; i < dim; ++i)
        arg.x[static_cast<std::size_t>(i)] = (lambda[i] - center[i]) / static_cast<double>(scale);
    return cutoff_psi0(arg, dim);
}

Sequence psi_multiply(const Sequence& c, const Point& n, long long scale) {
    if (scale < 1) throw InputError("cut-off scale must be >= 1");
    const CutoffMultiplier psi{n, scale};
    Sequence out = c;
    const int d = c.index.dim();
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] *= psi.weight(c.index.point(i), d);
    return out;
}

}  // namespace stabilcert
