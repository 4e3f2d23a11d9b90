#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "groupest/bayes.hpp"
#include "groupest/protocols.hpp"

using namespace groupest;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kPi = std::numbers::pi;
const Su2 kSu2;

CoefficientVector<Su2::Label> unit_vector(const IrrepSet<Su2::Label>& s,
                                          std::initializer_list<double> vals) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return make_coefficient_vector(s, v);
}

CoefficientVector<Su2::Label> random_unit_vector(const IrrepSet<Su2::Label>& s,
                                                 std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uni(rng);
    v /= v.norm();
    return make_coefficient_vector(s, v);
}
}  // namespace

TEST_CASE("cost matrix entries from the CG series") {
    const auto s01 = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{2}});
    const auto c = cost_matrix(kSu2, refframe_cost(), s01);
    CHECK(c.entries(0, 0) == 0.0);
    CHECK(c.entries(0, 1) == -2.0);
    CHECK(c.entries(1, 0) == -2.0);
    CHECK(c.entries(1, 1) == -2.0);

    // odd-N copy set {1/2, 3/2}: exact tridiagonal, fully coupled
    const auto s_odd = su2::irrep_set_for_tensor_power(3, true);
    const auto codd = cost_matrix(kSu2, maxent_fidelity_cost(), s_odd);
    CHECK(codd.entries(0, 0) == -0.25);
    CHECK(codd.entries(0, 1) == -0.25);
    CHECK(codd.entries(1, 1) == -0.25);

    // even-N copy set {0, 1, 2}: the trivial-sector diagonal vanishes
    // (spin 1 does not occur in 0 x 0), the rest is tridiagonal
    const auto s_even = su2::irrep_set_for_tensor_power(4, true);
    const auto ceven = cost_matrix(kSu2, maxent_fidelity_cost(), s_even);
    Eigen::MatrixXd expected(3, 3);
    expected << 0.0, -0.25, 0.0, -0.25, -0.25, -0.25, 0.0, -0.25, -0.25;
    CHECK((ceven.entries - expected).cwiseAbs().maxCoeff() == 0.0);

    // singleton trivial set
    const auto s0 = make_irrep_set(kSu2, {Su2::Label{0}});
    CHECK(cost_matrix(kSu2, refframe_cost(), s0).entries(0, 0) == 0.0);
}

TEST_CASE("cost matrices are symmetric and nonpositive for Holevo costs") {
    const auto s = su2::irrep_set_for_tensor_power(8, false);
    for (const auto& spec : {refframe_cost(), maxent_fidelity_cost(), delta_cost(kSu2, s)}) {
        const auto c = cost_matrix(kSu2, spec, s);
        CHECK((c.entries - c.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(c.entries.maxCoeff() <= 0.0);
    }

    const Cyclic z16(16);
    std::vector<Cyclic::Label> window;
    for (int k = 0; k < 6; ++k) window.push_back({k});
    const auto zc = cost_matrix(z16, holevo_phase_cost(16), make_irrep_set(z16, window));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(zc.entries(a, b) == (std::abs(a - b) == 1 ? -0.5 : 0.0));
}

TEST_CASE("average cost evaluates the quadratic form") {
    const auto s01 = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{2}});
    const auto spec = refframe_cost();
    const auto c = cost_matrix(kSu2, spec, s01);
    CHECK_THAT(average_cost(spec, c, unit_vector(s01, {1.0, 0.0})), WithinAbs(6.0, 1e-14));
    CHECK_THAT(average_cost(spec, c, unit_vector(s01, {0.0, 1.0})), WithinAbs(4.0, 1e-14));

    // two copies of a maximally entangled pair, weights fixed by the input
    const auto s2 = su2::irrep_set_for_tensor_power(2, true);
    const auto v2 = unit_vector(s2, {0.5, std::sqrt(3.0) / 2.0});
    const auto cm = cost_matrix(kSu2, maxent_fidelity_cost(), s2);
    CHECK_THAT(average_cost(maxent_fidelity_cost(), cm, v2),
               WithinAbs(0.34599364905389035, 1e-12));

    const auto other = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{4}});
    CHECK_THROWS_AS(average_cost(spec, c, unit_vector(other, {1.0, 0.0})),
                    std::invalid_argument);
}

TEST_CASE("optimizer reproduces the two-label ground state") {
    const auto s01 = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{2}});
    const auto r = optimize_coefficients(kSu2, refframe_cost(), s01);
    CHECK_THAT(r.min_cost, WithinAbs(5.0 - std::sqrt(5.0), 1e-12));
    CHECK_THAT(r.coefficients.values[0], WithinAbs(0.5257311121191336, 1e-12));
    CHECK_THAT(r.coefficients.values[1], WithinAbs(0.8506508083520399, 1e-12));
    CHECK_THAT(r.matrix_cost, WithinAbs(r.min_cost, 1e-12));
    CHECK(std::abs(r.matrix_cost - r.quadrature_cost) < 1e-9);
    CHECK(r.diagnostics.at("eigen_residual") < 1e-12);
    CHECK(r.diagnostics.at("degenerate_minimum") == 0.0);
}

TEST_CASE("singleton set returns the lone unit weight") {
    const auto s0 = make_irrep_set(kSu2, {Su2::Label{0}});
    const auto r = optimize_coefficients(kSu2, refframe_cost(), s0);
    CHECK(r.coefficients.values[0] == 1.0);
    CHECK(r.min_cost == 6.0);
}

TEST_CASE("optimizer rejects a non-Holevo spec") {
    const auto s01 = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{2}});
    const CostSpec<Su2::Label> bad{0.0, {{Su2::Label{2}, 0.5}}};
    CHECK_THROWS_AS(optimize_coefficients(kSu2, bad, s01), std::invalid_argument);
}

TEST_CASE("consecutive Z_M label windows hit the tridiagonal ground energy") {
    for (int n = 1; n <= 8; ++n) {
        const Cyclic g(2 * n + 4);
        std::vector<Cyclic::Label> window;
        for (int k = 0; k < n; ++k) window.push_back({k});
        const auto r = optimize_coefficients(g, holevo_phase_cost(2 * n + 4),
                                             make_irrep_set(g, window));
        CHECK_THAT(r.min_cost, WithinAbs(1.0 - std::cos(kPi / (n + 1)), 1e-10));
    }
}

TEST_CASE("sign canonicalization and the reducible failure mode") {
    Eigen::VectorXd mixed(3);
    mixed << 0.8, -0.6, 0.0;
    CHECK_FALSE(detail::nonnegative_canonical(mixed, 1e-9).has_value());

    Eigen::VectorXd flipped(3);
    flipped << -0.8, -0.6, 1e-14;
    const auto fixed = detail::nonnegative_canonical(flipped, 1e-9);
    REQUIRE(fixed.has_value());
    CHECK((*fixed)[0] > 0.0);
    CHECK((*fixed)[2] == 0.0);
    CHECK_THAT(fixed->norm(), WithinAbs(1.0, 1e-14));

    // two disconnected blocks with exactly degenerate minima: the optimizer
    // must either produce a valid nonnegative ground vector or refuse loudly
    const auto split = make_irrep_set(
        kSu2, {Su2::Label{6}, Su2::Label{8}, Su2::Label{20}, Su2::Label{22}});
    const CostSpec<Su2::Label> hop{0.0, {{Su2::Label{2}, -1.0}}};
    try {
        const auto r = optimize_coefficients(kSu2, hop, split);
        CHECK_THAT(r.min_cost, WithinAbs(-2.0, 1e-10));
        CHECK(r.coefficients.values.minCoeff() >= 0.0);
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("reducible") != std::string::npos);
    }
}

TEST_CASE("likelihood density basics") {
    const auto s0 = make_irrep_set(kSu2, {Su2::Label{0}});
    const auto flat = unit_vector(s0, {1.0});
    for (double theta : {0.0, 0.7, kPi, 5.0})
        CHECK_THAT(likelihood_density(kSu2, flat, {theta}), WithinAbs(1.0, 1e-14));

    const auto s2 = su2::irrep_set_for_tensor_power(2, true);
    const auto v2 = unit_vector(s2, {0.5, std::sqrt(3.0) / 2.0});
    CHECK_THAT(likelihood_density(kSu2, v2, {0.0}), WithinAbs(9.598076211353316, 1e-12));
}

TEST_CASE("likelihood density integrates to one") {
    std::mt19937 rng(7);
    const auto rule = kSu2.class_rule(768);
    for (int n : {4, 9, 16, 40}) {
        const auto s = su2::irrep_set_for_tensor_power(n, false);
        const auto v = random_unit_vector(s, rng);
        double total = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            total += rule.weights[i] * likelihood_density(kSu2, v, rule.nodes[i]);
        CHECK_THAT(total, WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("matrix route equals the quadrature oracle") {
    std::mt19937 rng(11);
    for (int n : {4, 16, 40}) {
        const auto s = su2::irrep_set_for_tensor_power(n, false);
        for (const auto& spec : {refframe_cost(), maxent_fidelity_cost()}) {
            const auto c = cost_matrix(kSu2, spec, s);
            for (int rep = 0; rep < 5; ++rep) {
                const auto v = random_unit_vector(s, rng);
                CHECK_THAT(average_cost(spec, c, v),
                           WithinAbs(average_cost_quadrature(kSu2, spec, v), 1e-8));
            }
        }
    }
}

TEST_CASE("random Holevo costs keep the two routes equal") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> mag(0.05, 1.5);
    const auto s = su2::irrep_set_for_tensor_power(10, false);
    for (int rep = 0; rep < 10; ++rep) {
        CostSpec<Su2::Label> spec{mag(rng), {}};
        for (int t = 1; t <= 8; ++t)
            if (rng() % 2 == 0) spec.coeffs[Su2::Label{t}] = -mag(rng);
        REQUIRE(validate_holevo(kSu2, spec).ok());
        const auto c = cost_matrix(kSu2, spec, s);
        const auto v = random_unit_vector(s, rng);
        CHECK_THAT(average_cost(spec, c, v),
                   WithinAbs(average_cost_quadrature(kSu2, spec, v), 1e-8));
    }
}

TEST_CASE("random Z_M costs keep the two routes equal") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> mag(0.05, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Cyclic g(16);
    std::vector<Cyclic::Label> window;
    for (int k = 2; k < 9; ++k) window.push_back({k});
    const auto s = make_irrep_set(g, window);
    for (int rep = 0; rep < 10; ++rep) {
        CostSpec<Cyclic::Label> spec{mag(rng), {}};
        for (int k = 1; k <= 8; ++k) {
            if (rng() % 2 == 0) {
                const double a = -mag(rng);
                spec.coeffs[Cyclic::Label{k}] = a;
                spec.coeffs[Cyclic::Label{16 - k}] = a;  // reality pairing
            }
        }
        REQUIRE(validate_holevo(g, spec).ok());
        Eigen::VectorXd raw(static_cast<Eigen::Index>(s.size()));
        for (Eigen::Index i = 0; i < raw.size(); ++i) raw[i] = uni(rng);
        raw /= raw.norm();
        const auto v = make_coefficient_vector(s, raw);
        const auto c = cost_matrix(g, spec, s);
        CHECK_THAT(average_cost(spec, c, v),
                   WithinAbs(average_cost_quadrature(g, spec, v), 1e-10));
    }
}

TEST_CASE("maximum-likelihood (delta) cost optimizes cleanly") {
    // state labels 0..2; the truncation set must cover their CG span 0..4
    const auto state_set = su2::irrep_set_for_tensor_power(6, false);
    const auto truncation = make_irrep_set(
        kSu2, {Su2::Label{0}, Su2::Label{2}, Su2::Label{4}, Su2::Label{6}, Su2::Label{8}});
    const auto spec = delta_cost(kSu2, truncation);
    REQUIRE(validate_holevo(kSu2, spec).ok());
    const auto r = optimize_coefficients(kSu2, spec, state_set);
    CHECK(r.coefficients.values.minCoeff() >= 0.0);
    CHECK(r.diagnostics.at("oracle_gap") < 1e-8);
    // more likelihood mass than the flat strategy: the minimum is negative
    CHECK(r.min_cost < spec.constant);
}

TEST_CASE("no unit vector beats the reported minimum") {
    std::mt19937 rng(13);
    const auto s = su2::irrep_set_for_tensor_power(12, false);
    const auto spec = refframe_cost();
    const auto r = optimize_coefficients(kSu2, spec, s);
    const auto c = cost_matrix(kSu2, spec, s);
    for (int rep = 0; rep < 100; ++rep)
        CHECK(average_cost(spec, c, random_unit_vector(s, rng)) >= r.min_cost - 1e-10);
}

TEST_CASE("the measurement does not depend on the cost function") {
    // the density's signature admits no cost argument; evaluating the same
    // weights twice must agree bitwise
    std::mt19937 rng(17);
    const auto s = su2::irrep_set_for_tensor_power(6, false);
    const auto v = random_unit_vector(s, rng);
    for (int i = 0; i <= 100; ++i) {
        const ClassPoint x{2.0 * kPi * i / 100.0};
        CHECK(likelihood_density(kSu2, v, x) == likelihood_density(kSu2, v, x));
    }
}

TEST_CASE("scaling the cost scales the minimum and fixes the argmin") {
    const auto s = su2::irrep_set_for_tensor_power(10, false);
    const auto spec = refframe_cost();
    CostSpec<Su2::Label> scaled{2.5 * spec.constant, {}};
    for (const auto& [l, a] : spec.coeffs) scaled.coeffs[l] = 2.5 * a;

    const auto r1 = optimize_coefficients(kSu2, spec, s);
    const auto r2 = optimize_coefficients(kSu2, scaled, s);
    CHECK_THAT(r2.min_cost, WithinAbs(2.5 * r1.min_cost, 1e-10));
    CHECK((r1.coefficients.values - r2.coefficients.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("a constant cost averages to its constant under any strategy") {
    std::mt19937 rng(47);
    const CostSpec<Su2::Label> flat_cost{2.25, {}};
    for (int n : {4, 9}) {
        const auto s = su2::irrep_set_for_tensor_power(n, false);
        const auto v = random_unit_vector(s, rng);
        CHECK_THAT(average_cost_quadrature(kSu2, flat_cost, v), WithinAbs(2.25, 1e-9));
    }
}

TEST_CASE("under-resolved quadrature fails the node-doubling check") {
    // the N = 120 label ladder carries frequencies far beyond 64 nodes
    std::mt19937 rng(19);
    const auto s = su2::irrep_set_for_tensor_power(120, false);
    const auto v = random_unit_vector(s, rng);
    CHECK_THROWS_AS(average_cost_quadrature(kSu2, refframe_cost(), v, 64),
                    std::runtime_error);
    CHECK_NOTHROW(average_cost_quadrature(kSu2, refframe_cost(), v, 1024));
}

TEST_CASE("sampler rejects a nonpositive count") {
    const auto s0 = make_irrep_set(kSu2, {Su2::Label{0}});
    const auto flat = unit_vector(s0, {1.0});
    CHECK_THROWS_AS(sample_estimate_angle(kSu2, flat, 1, 0), std::domain_error);
}

TEST_CASE("coefficient vector validation") {
    const auto s01 = make_irrep_set(kSu2, {Su2::Label{0}, Su2::Label{2}});
    Eigen::VectorXd neg(2);
    neg << -0.6, 0.8;
    CHECK_THROWS_AS(make_coefficient_vector(s01, neg), std::domain_error);
    Eigen::VectorXd long_v(2);
    long_v << 1.0, 1.0;
    CHECK_THROWS_AS(make_coefficient_vector(s01, long_v), std::domain_error);
    Eigen::VectorXd short_v(1);
    short_v << 1.0;
    CHECK_THROWS_AS(make_coefficient_vector(s01, short_v), std::invalid_argument);
}

TEST_CASE("angle sampling: determinism and distribution") {
    const auto s0 = make_irrep_set(kSu2, {Su2::Label{0}});
    const auto flat = unit_vector(s0, {1.0});

    const auto a = sample_estimate_angle(kSu2, flat, 42, 2000);
    const auto b = sample_estimate_angle(kSu2, flat, 42, 2000);
    REQUIRE(a.size() == 2000);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].angle == b[i].angle);
    const auto c = sample_estimate_angle(kSu2, flat, 43, 2000);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].angle != c[i].angle;
    CHECK(differs);

    // flat likelihood samples the bare class weight: compare empirical CDF
    // against (theta - sin theta) / (2 pi)
    const auto big = sample_estimate_angle(kSu2, flat, 7, 100000);
    for (double q : {1.0, 2.0, kPi, 4.5}) {
        double below = 0.0;
        for (const auto& x : big) below += x.angle <= q ? 1.0 : 0.0;
        below /= double(big.size());
        CHECK_THAT(below, WithinAbs((q - std::sin(q)) / (2.0 * kPi), 0.01));
    }
}

TEST_CASE("Monte Carlo mean cost agrees with the quadrature value") {
    const auto spec = refframe_cost();
    for (int n : {4, 8}) {
        const auto s = su2::irrep_set_for_tensor_power(n, false);
        const auto r = optimize_coefficients(kSu2, spec, s);

        const int count = 200000;
        const auto samples = sample_estimate_angle(kSu2, r.coefficients, 2026 + n, count);
        double mean = 0.0, second = 0.0;
        for (const auto& x : samples) {
            const double value = evaluate_cost(kSu2, spec, x);
            mean += value;
            second += value * value;
        }
        mean /= count;
        second /= count;
        const double stderr_mc = std::sqrt((second - mean * mean) / count);
        CHECK(std::abs(mean - r.min_cost) < 4.0 * stderr_mc);
    }
}

TEST_CASE("Z_M sampling stays on group points and is seed-stable") {
    const Cyclic g(12);
    std::vector<Cyclic::Label> window;
    for (int k = 0; k < 4; ++k) window.push_back({k});
    const auto s = make_irrep_set(g, window);
    Eigen::VectorXd w(4);
    w << 0.5, 0.5, 0.5, 0.5;
    const auto v = make_coefficient_vector(s, w);

    const auto a = sample_estimate_angle(g, v, 5, 500);
    const auto b = sample_estimate_angle(g, v, 5, 500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].angle == b[i].angle);
        const double t = a[i].angle * 12 / (2.0 * kPi);
        CHECK_THAT(t, WithinAbs(std::round(t), 1e-9));
    }
}
