#include <cmath>
#include <random>

#include "doctest.h"
#include "reference.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/hermitize.hpp"
#include "schlogl/oracle.hpp"

using namespace schlogl;

namespace {

GeneratorMatrix two_state() { return build_generator(SchloglSystem::bistable(1.0, 1)); }

SchloglSystem random_system(std::mt19937_64& rng, int max_n) {
    std::uniform_real_distribution<double> u(0.05, 4.0);
    std::uniform_int_distribution<int> nt(1, max_n);
    return SchloglSystem(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), nt(rng));
}

}  // namespace

TEST_CASE("block embedding of the two-state generator") {
    const auto h = block_embed(two_state());
    CHECK(h.dim() == 4);
    CHECK(h.kind() == HermitianKind::BlockEmbedding);
    const auto& m = h.entries();
    CHECK(m.block(0, 0, 2, 2).norm() == 0.0);
    CHECK(m.block(2, 2, 2, 2).norm() == 0.0);
    CHECK(m(0, 3).real() == doctest::Approx(2.95));
    CHECK(m(3, 0).real() == doctest::Approx(2.95));
    // nonnegative eigenvalues of Q_H are the singular values of Q
    const auto ev = hermitian_eigenvalues(m);
    const auto sv = singular_values(two_state().entries());
    CHECK(ev.back() == doctest::Approx(sv.back()));
    CHECK(std::abs(ev[1]) < 1e-12);
}

TEST_CASE("block embedding of zero") {
    const GeneratorMatrix zero(RealMatrix::Zero(2, 2));
    const auto h = block_embed(zero);
    CHECK(h.entries().norm() == 0.0);
    for (double e : hermitian_eigenvalues(h.entries())) CHECK(e == 0.0);
}

TEST_CASE("semi-positive form") {
    const auto h = spd_form(two_state());
    const auto ev = hermitian_eigenvalues(h.entries());
    CHECK(std::abs(ev[0]) < 1e-10);
    for (double e : ev) CHECK(e >= -1e-12);
    RealMatrix d(2, 2);
    d << -1, 0, 0, -1;
    const auto id = spd_form(GeneratorMatrix(d));
    CHECK((id.entries() - ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("padding to a power of two") {
    const auto h = spd_form(build_generator(SchloglSystem::bistable(1.0, 4)));
    CHECK(h.dim() == 8);
    CHECK(h.n_qubits() == 3);
    CHECK(h.entries().block(5, 0, 3, 8).norm() == 0.0);
    CHECK_THROWS_AS(HermitianOperator(ComplexMatrix::Random(2, 2) + ref::cplx(0, 1) * ComplexMatrix::Identity(2, 2)),
                    DomainError);
}

TEST_CASE("constant state") {
    const auto w1 = constant_state(1);
    CHECK(w1[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(w1[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
    const auto w2 = constant_state(2);
    for (std::size_t i = 0; i < 4; ++i) CHECK(w2[i].real() == doctest::Approx(0.5));
    CHECK(constant_vector_unnormalized(2)(3).real() == doctest::Approx(0.25));
}

TEST_CASE("matrix exponential") {
    const auto u0 = unitary_of(HermitianOperator(ComplexMatrix::Zero(2, 2)));
    CHECK((u0.entries() - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(1, 1) = M_PI / 2;
    const auto u = unitary_of(HermitianOperator(d));
    CHECK(std::abs(u.entries()(0, 0) - ref::cplx(1, 0)) < 1e-14);
    CHECK(std::abs(u.entries()(1, 1) - ref::cplx(0, -1)) < 1e-14);
    CHECK_THROWS_AS(UnitaryOperator(2.0 * ComplexMatrix::Identity(2, 2)), DomainError);
}

TEST_CASE("unitary of Q_H against a truncated power series") {
    const auto h = block_embed(two_state());
    const auto u = unitary_of(h);
    // scale and square: exp(-iH) = exp(-iH/2^s)^(2^s)
    const int s = 10;
    const ComplexMatrix a = ref::cplx(0, -1) * h.entries() / std::pow(2.0, s);
    ComplexMatrix term = ComplexMatrix::Identity(4, 4), sum = term;
    for (int k = 1; k < 20; ++k) {
        term = term * a / double(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    CHECK((u.entries() - sum).norm() < 1e-10);
    CHECK(is_unitary(u.entries()));
    const auto u4 = u.power_of_two(2);
    CHECK((u4.entries() - u.entries() * u.entries() * u.entries() * u.entries()).norm() < 1e-12);
}

TEST_CASE("two-state diagonalization and zeromode") {
    const auto r = diagonalize(two_state());
    std::vector<double> ev;
    for (auto e : r.eigenvalues) ev.push_back(e.real());
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(-3.2));
    CHECK(std::abs(ev[1]) < 1e-12);
    const auto z = zeromode(two_state());
    CHECK(z[0] == doctest::Approx(0.921875));
    CHECK(z[1] == doctest::Approx(0.078125));
}

TEST_CASE("identity diagonalization") {
    const auto r = diagonalize(HermitianOperator(ComplexMatrix::Identity(4, 4)));
    for (auto e : r.eigenvalues) CHECK(e.real() == doctest::Approx(1.0));
}

TEST_CASE("zeromode of a non birth-death generator") {
    RealMatrix c(3, 3);
    c << -1, 0, 1, 1, -1, 0, 0, 1, -1;  // cycle 0 -> 1 -> 2 -> 0
    for (double v : zeromode(GeneratorMatrix(c))) CHECK(v == doctest::Approx(1.0 / 3));
}

TEST_CASE("zeromode agrees with a dense null vector") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto q = build_generator(random_system(rng, 30));
        Eigen::FullPivLU<RealMatrix> lu(q.entries());
        const RealMatrix ker = lu.kernel();
        REQUIRE(ker.cols() == 1);
        const RealVector k = ker.col(0) / ker.col(0).sum();
        const auto z = zeromode(q);
        for (int i = 0; i < q.dim(); ++i) CHECK(std::abs(z[std::size_t(i)] - k(i)) < 1e-9);
    }
}

TEST_CASE("zeromode tail stays clean") {
    // far tails sit below double precision of the peak; they must still decay
    const auto z = zeromode(build_generator(SchloglSystem::monostable(33.0, 200)));
    CHECK(count_local_maxima(z) == 1);
    CHECK(z.back() > 0.0);
    CHECK(z.back() < z[z.size() - 2]);
}

TEST_CASE("zeromode ambiguity") {
    const GeneratorMatrix zero(RealMatrix::Zero(3, 3));
    CHECK_THROWS_AS(zeromode(zero), AmbiguityError);
}

TEST_CASE("propagation limits") {
    const auto q = build_generator(SchloglSystem::bistable(2.0, 12));
    std::vector<double> p0(13, 0.0);
    p0[0] = 1.0;
    const auto same = propagate(q, p0, 0.0);
    for (int i = 0; i < 13; ++i) CHECK(same[i] == doctest::Approx(p0[i]).epsilon(1e-10));
    const double l1 = low_spectrum(q).lambda1;
    const auto late = propagate(q, p0, 50.0 / std::abs(l1));
    const auto z = zeromode(q);
    double tv = 0.0;
    for (int i = 0; i < 13; ++i) tv += std::abs(late[i] - z[i]);
    CHECK(0.5 * tv < 1e-6);
}

TEST_CASE("comparison metrics") {
    const auto same = compare({1, 2, 3}, {1, 2, 3});
    CHECK(same.rmsd == 0.0);
    CHECK(same.r_squared == doctest::Approx(1.0));
    const auto m = compare({1, 2}, {1, 4});
    CHECK(m.rmsd == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.abs_errors[1] == doctest::Approx(2.0));
    CHECK(m.pct_errors[1] == doctest::Approx(100.0));
    CHECK_THROWS_AS(compare({2, 2}, {1, 3}), DomainError);
    CHECK_THROWS_AS(compare({1, 2}, {1}), DomainError);
}

TEST_CASE("transition timescale") {
    CHECK(transition_timescale(-3.2) == doctest::Approx(0.3125));
    CHECK(transition_timescale(-1.5) == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(transition_timescale(-4.0) < transition_timescale(-2.0));
    CHECK_THROWS_AS(transition_timescale(0.0), DomainError);
}

TEST_CASE("spectral properties over random systems") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const auto q = build_generator(random_system(rng, 20));
        const auto r = diagonalize(q);
        int near_zero = 0;
        for (auto e : r.eigenvalues) {
            CHECK(e.real() <= 1e-9 * std::max(1.0, q.entries().cwiseAbs().maxCoeff()));
            CHECK(std::abs(e.imag()) < 1e-8);
            if (std::abs(e) < 1e-9) ++near_zero;
        }
        CHECK(near_zero == 1);
        const auto z = zeromode(q);
        double s = 0.0;
        for (double v : z) {
            CHECK(v >= 0.0);
            s += v;
        }
        CHECK(s == doctest::Approx(1.0));
        RealVector zv = Eigen::Map<const RealVector>(z.data(), Eigen::Index(z.size()));
        CHECK((q.entries() * zv).norm() < 1e-8 * std::max(1.0, q.entries().norm()));
        // Q_spd eigenvalues are the squared singular values
        const auto ev = hermitian_eigenvalues(spd_form(q).entries());
        const auto sv = singular_values(q.entries());
        for (std::size_t i = 0; i < sv.size(); ++i)
            CHECK(std::abs(ev[ev.size() - sv.size() + i] - sv[i] * sv[i]) < 1e-8 * std::max(1.0, sv.back() * sv.back()));
    }
}

TEST_CASE("local maxima") {
    CHECK(count_local_maxima({0.1, 0.3, 0.2, 0.05, 0.25, 0.1}) == 2);
    CHECK(count_local_maxima({0.5, 0.3, 0.2}) == 1);
    CHECK(count_local_maxima({0.1, 0.2, 0.7}) == 1);
}
