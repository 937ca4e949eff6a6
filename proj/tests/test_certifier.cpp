#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "stabilcert/certifier.hpp"
#include "stabilcert/errors.hpp"

using namespace stabilcert;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

OperatorSpec difference_spec() {
    return OperatorSpec::toeplitz({{0, Complex(1.0)}, {-1, Complex(-1.0)}});
}

OperatorSpec identity_spec() { return OperatorSpec::toeplitz({{0, Complex(1.0)}}); }

OperatorSpec stable_spec() {
    return OperatorSpec::toeplitz({{0, Complex(4.0)}, {1, Complex(1.0)}});
}

Sequence random_sequence(const IndexSet& idx, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<Complex> vals(idx.size());
    for (Complex& v : vals) v = Complex(dist(rng));
    return Sequence(idx, vals);
}

}  // namespace

TEST_CASE("kappa values") {
    CHECK(kappa_constant(2.0, 1) == doctest::Approx(4.69041575982343).epsilon(1e-14));
    const double k2 = kappa_constant(2.0, 1);
    CHECK(std::abs(k2 * k2 - 22.0) <= 1e-14);
    CHECK(kappa_constant(kInf, 1) == 2.0);
    CHECK(kappa_constant(kInf, 2) == 2.0);
    CHECK(kappa_constant(1.0, 1) == 12.0);
    CHECK_THROWS_AS(kappa_constant(0.5, 1), InputError);
}

TEST_CASE("threshold values") {
    CHECK(stability_threshold(identity_spec(), 2.0, 5) == 0.0);
    CHECK(stability_threshold(difference_spec(), 2.0, 8) ==
          doctest::Approx(1.172604).epsilon(1e-6));
    CHECK(stability_threshold(stable_spec(), 2.0, 8) ==
          doctest::Approx(2.931510).epsilon(1e-6));
}

TEST_CASE("identity certifies immediately") {
    const StabilityCertificate cert = certify_condition_iii(identity_spec(), 2.0, 1);
    CHECK(cert.verdict == Verdict::kCertifiedStable);
    CHECK(cert.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.threshold == 0.0);
    CHECK(cert.c1_lower == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-9));
    CHECK(cert.c2_upper == 1.0);
}

TEST_CASE("the stable example certifies at N0 = 8 with the published threshold") {
    const StabilityCertificate cert = certify_condition_iii(stable_spec(), 2.0, 8);
    CHECK(cert.verdict == Verdict::kCertifiedStable);
    CHECK(cert.threshold == doctest::Approx(2.931510).epsilon(1e-5));
    CHECK(cert.alpha >= 3.0);
    CHECK(cert.c1_lower >= 0.04);
    CHECK(cert.blocks.size() == 1);  // Toeplitz shift invariance
}

TEST_CASE("the difference matrix never certifies at small N0") {
    for (long long n0 : {4LL, 8LL, 16LL}) {
        const StabilityCertificate cert = certify_condition_iii(difference_spec(), 2.0, n0);
        CHECK(cert.verdict == Verdict::kNotCertified);
        CHECK(cert.alpha < cert.threshold);
    }
}

TEST_CASE("scan finds the first certified N") {
    const ScanTable table = stability_scan(stable_spec(), 2.0, 1, 16);
    long long first = -1;
    for (const ScanRow& row : table.rows)
        if (row.certified) {
            first = row.n;
            break;
        }
    CHECK(first == 8);
    // threshold crosses below 3 between N = 7 and N = 8
    CHECK(table.rows[6].threshold == doctest::Approx(3.350297).epsilon(1e-6));
    CHECK(table.rows[7].threshold == doctest::Approx(2.931510).epsilon(1e-6));

    const ScanTable id = stability_scan(identity_spec(), 2.0, 1, 10);
    for (const ScanRow& row : id.rows) {
        CHECK(row.certified);
        CHECK(row.alpha == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.threshold == 0.0);
    }

    const ScanTable diff = stability_scan(difference_spec(), 2.0, 1, 16);
    for (const ScanRow& row : diff.rows) CHECK(!row.certified);
}

TEST_CASE("scan thresholds are nonincreasing beyond the support radius") {
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<long long, Complex> coeffs;
        for (long long k = -2; k <= 2; ++k) coeffs[k] = Complex(dist(rng));
        const OperatorSpec spec = OperatorSpec::toeplitz(coeffs);
        const ScanTable table = stability_scan(spec, 2.0, 3, 24);
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            CHECK(table.rows[i].threshold <= table.rows[i - 1].threshold + 1e-12);
        CHECK(table.rows.back().threshold <=
              kappa_constant(2.0, 1) * 2.0 / 24.0 * c_norm(spec) + 1e-12);
    }
}

TEST_CASE("diagonal dominance margins") {
    const StabilityCertificate stable = diagonal_dominance_certify(stable_spec());
    CHECK(stable.verdict == Verdict::kCertifiedStable);
    REQUIRE(stable.dd_margin.has_value());
    CHECK(*stable.dd_margin == 2.0);
    CHECK(stable.c1_lower == doctest::Approx(2.0).epsilon(1e-9));

    const StabilityCertificate id = diagonal_dominance_certify(identity_spec());
    CHECK(id.verdict == Verdict::kCertifiedStable);
    CHECK(*id.dd_margin == 1.0);

    const StabilityCertificate diff = diagonal_dominance_certify(difference_spec());
    CHECK(diff.verdict == Verdict::kNotCertified);
    CHECK(*diff.dd_margin == -1.0);
}

TEST_CASE("the dominance margin equals alpha minus threshold on the lattice") {
    std::mt19937_64 rng(409);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::map<long long, Complex> coeffs;
        for (long long k = -2; k <= 2; ++k)
            if (rng() % 2 == 0) coeffs[k] = Complex(dist(rng));
        coeffs[0] = Complex(dist(rng) * 3.0);
        const OperatorSpec spec = OperatorSpec::toeplitz(coeffs);
        const StabilityCertificate cert = diagonal_dominance_certify(spec);
        CHECK(*cert.dd_margin ==
              doctest::Approx(cert.alpha - cert.threshold).epsilon(1e-12));
    }
}

TEST_CASE("band-section route certifies the stable example") {
    const StabilityCertificate cert = toeplitz_block_certify(stable_spec(), 2.0, 8);
    CHECK(cert.verdict == Verdict::kCertifiedStable);
    CHECK(cert.alpha >= 3.0);
    CHECK(cert.threshold == doctest::Approx(2.931510).epsilon(1e-5));

    const StabilityCertificate id = toeplitz_block_certify(identity_spec(), 2.0, 3);
    CHECK(id.verdict == Verdict::kCertifiedStable);
    CHECK(id.threshold == 0.0);
    CHECK(id.alpha == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(toeplitz_block_certify(stable_spec(), 2.0, 1), PreconditionError);
}

TEST_CASE("band-section route never certifies the unstable difference matrix") {
    for (long long n0 : {2LL, 4LL, 8LL, 16LL}) {
        const StabilityCertificate cert = toeplitz_block_certify(difference_spec(), 2.0, n0);
        CHECK(cert.verdict == Verdict::kNotCertified);
        // eq. (minimal.eq): the measured gain cannot beat kappa k/N ||A||_C
        CHECK(cert.alpha <= kappa_constant(2.0, 1) * 2.0 / static_cast<double>(n0) + 1e-9);
    }
}

TEST_CASE("band section equals the condition-(iii) block at the next scale") {
    // The band section at N0 carries columns [-N0, N0]; the open window of
    // the theorem block reaches that column set one scale later, and the
    // extra rows there are all zero.
    std::mt19937_64 rng(419);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 12; ++trial) {
        std::map<long long, Complex> coeffs;
        for (long long k = -1; k <= 1; ++k) coeffs[k] = Complex(dist(rng));
        const OperatorSpec spec = OperatorSpec::toeplitz(coeffs);
        const long long n0 = 3 + static_cast<long long>(rng() % 4);
        const StabilityCertificate tb = toeplitz_block_certify(spec, 2.0, n0);
        const StabilityCertificate iii = certify_condition_iii(spec, 2.0, n0 + 1);
        CHECK(tb.alpha == doctest::Approx(iii.alpha).epsilon(1e-10));
        if (tb.verdict == Verdict::kCertifiedStable)
            CHECK(iii.verdict == Verdict::kCertifiedStable);
    }
}

TEST_CASE("twisted blocks repeat with the coefficient period, exactly") {
    std::mt19937_64 rng(421);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::map<long long, Complex> coeffs;
    for (long long k = -3; k <= 3; ++k) coeffs[k] = Complex(dist(rng), dist(rng));
    const OperatorSpec tw = OperatorSpec::twisted_toeplitz(coeffs, Rational{1, 3});
    const long long n0 = 2;
    for (long long n : {0LL, 2LL, -4LL}) {
        const BlockMatrix at_n = block_matrix(tw, Point(static_cast<double>(n)), n0);
        const BlockMatrix at_nq =
            block_matrix(tw, Point(static_cast<double>(n + 3 * n0)), n0);
        REQUIRE(at_n.entries.size() == at_nq.entries.size());
        for (std::size_t i = 0; i < at_n.entries.size(); ++i)
            CHECK(std::abs(at_n.entries[i] - at_nq.entries[i]) <= 1e-15);
    }
}

TEST_CASE("representative blocks reproduce a full sweep") {
    std::mt19937_64 rng(431);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::map<long long, Complex> coeffs;
    for (long long k = -2; k <= 2; ++k) coeffs[k] = Complex(dist(rng), dist(rng));
    const OperatorSpec tw = OperatorSpec::twisted_toeplitz(coeffs, Rational{1, 3});
    const long long n0 = 2;
    const StabilityCertificate cert = certify_condition_iii(tw, 2.0, n0);
    CHECK(cert.blocks.size() == 3);  // q / gcd(2, 3) = 3 representatives

    double full_alpha = std::numeric_limits<double>::infinity();
    for (long long n = -30; n <= 30; n += n0) {
        const BlockMatrix blk = block_matrix(tw, Point(static_cast<double>(n)), n0);
        full_alpha = std::min(full_alpha, lower_bound_p(blk, 2.0).lower_bound);
    }
    CHECK(cert.alpha == doctest::Approx(full_alpha).epsilon(1e-10));
}

TEST_CASE("periodic-modulated representatives reproduce a full sweep") {
    std::mt19937_64 rng(439);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    const OperatorSpec pm = OperatorSpec::periodic_modulated(
        {{0, Complex(4.0)}, {1, Complex(dist(rng))}, {-1, Complex(dist(rng))}},
        {Complex(1.0), Complex(dist(rng)), Complex(dist(rng))});
    const long long n0 = 2;
    const StabilityCertificate cert = certify_condition_iii(pm, 2.0, n0);
    CHECK(cert.blocks.size() == 3);
    double full_alpha = std::numeric_limits<double>::infinity();
    for (long long n = -30; n <= 30; n += n0) {
        const BlockMatrix blk = block_matrix(pm, Point(static_cast<double>(n)), n0);
        full_alpha = std::min(full_alpha, lower_bound_p(blk, 2.0).lower_bound);
    }
    CHECK(cert.alpha == doctest::Approx(full_alpha).epsilon(1e-10));

    for (long long n : {-6LL, 0LL, 4LL}) {
        const BlockMatrix a = block_matrix(pm, Point(static_cast<double>(n)), n0);
        const BlockMatrix b = block_matrix(pm, Point(static_cast<double>(n + 3 * n0)), n0);
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            CHECK(std::abs(a.entries[i] - b.entries[i]) <= 1e-15);
    }
}

TEST_CASE("certificate soundness on random vectors") {
    const StabilityCertificate cert = certify_condition_iii(stable_spec(), 2.0, 8);
    REQUIRE(cert.verdict == Verdict::kCertifiedStable);
    std::mt19937_64 rng(433);
    const IndexSet support = IndexSet::integer_range(-32, 32);
    const IndexSet out_rows = IndexSet::integer_range(-34, 34);
    for (int trial = 0; trial < 200; ++trial) {
        const Sequence c = random_sequence(support, rng);
        const Sequence ac = apply_operator(stable_spec(), c, out_rows);
        const double nc = lp_norm(c.values, 2.0);
        const double na = lp_norm(ac.values, 2.0);
        CHECK(na >= (cert.c1_lower - 1e-9) * nc);
        CHECK(na <= (cert.c2_upper + 1e-9) * nc);
    }
}

TEST_CASE("dense windows certify against their separation constants") {
    // An identity-like dense window on a spread-out set certifies.
    const IndexSet pts = IndexSet::from_reals({-2.0, 0.0, 2.0});
    std::vector<DenseEntry> entries;
    for (std::size_t i = 0; i < 3; ++i) entries.push_back(DenseEntry{i, i, Complex(1.0)});
    const OperatorSpec spec = OperatorSpec::dense_window(pts, pts, entries);
    const StabilityCertificate cert = certify_condition_iii(spec, 2.0, 1);
    CHECK(cert.r_rows == 1.0);
    CHECK(cert.r_cols == 1.0);
    CHECK(cert.verdict == Verdict::kCertifiedStable);

    const OperatorSpec empty = OperatorSpec::dense_window(
        IndexSet::from_reals({}), IndexSet::from_reals({}), {});
    CHECK(certify_condition_iii(empty, 2.0, 2).verdict == Verdict::kVacuous);
}

TEST_CASE("unsupported and oversized requests raise typed errors") {
    const OperatorSpec tw =
        OperatorSpec::twisted_toeplitz({{0, Complex(1.0)}, {1, Complex(0.5)}}, Rational{1, 3});
    CHECK_THROWS_AS(certify_condition_iii(tw, 1.0, 2), UnsupportedMethodError);
    CHECK_THROWS_AS(certify_condition_iii(tw, kInf, 2), UnsupportedMethodError);
    CHECK_THROWS_AS(certify_condition_iii(tw, 1.5, 2), InputError);

    // Wide band at p = 1: both exact routes blow their work caps.
    std::map<long long, Complex> wide;
    for (long long k = -26; k <= 26; ++k) wide[k] = Complex(1.0 / (1.0 + std::abs(k)));
    const OperatorSpec fat = OperatorSpec::toeplitz(wide);
    CHECK_THROWS_AS(certify_condition_iii(fat, 1.0, 40), ResourceError);
}

TEST_CASE("p-transfer intervals") {
    const PTransferStep full = p_transfer_step(2.0, 1.0, 1);
    CHECK(full.inv_q_lo == 0.0);
    CHECK(full.inv_q_hi == 1.0);
    CHECK(!full.lo_inclusive);
    CHECK(!full.hi_inclusive);
    CHECK(full.steps_to_cover == 2);
    CHECK(full.q_min() == 1.0);
    CHECK(full.q_max() == kInf);

    const PTransferStep third = p_transfer_step(2.0, 1.0 / 3.0, 1);
    CHECK(third.inv_q_lo == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(third.inv_q_hi == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(third.q_min() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(third.q_max() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(third.steps_to_cover == 4);

    // q = p is always admissible
    const PTransferStep self = p_transfer_step(3.0, 0.05, 2);
    CHECK(self.inv_q_lo < 1.0 / 3.0);
    CHECK(self.inv_q_hi > 1.0 / 3.0);

    CHECK_THROWS_AS(p_transfer_step(2.0, 0.0, 1), InputError);
    CHECK_THROWS_AS(p_transfer_step(0.5, 1.0, 1), InputError);
}
