#include <random>

#include "doctest.h"
#include "reference.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/oracle.hpp"
#include "schlogl/schlogl_cme.hpp"

using namespace schlogl;

TEST_CASE("birth rate") {
    const auto sys = SchloglSystem::bistable(1.0, 10);
    CHECK(birth_rate(sys, 0) == doctest::Approx(0.25));
    // 3*2*1/2 + 0.25*2
    CHECK(birth_rate(SchloglSystem::bistable(2.0, 10), 2) == doctest::Approx(3.5));
    CHECK(birth_rate(sys, 10) == 0.0);
    CHECK_THROWS_AS(birth_rate(sys, 11), DomainError);
    CHECK_THROWS_AS(birth_rate(sys, -1), DomainError);
}

TEST_CASE("death rate") {
    const auto sys = SchloglSystem::bistable(1.0, 10);
    CHECK(death_rate(sys, 1) == doctest::Approx(2.95));
    CHECK(death_rate(sys, 0) == 0.0);
    // 3*2.95 + 0.6*3*2*1
    CHECK(death_rate(sys, 3) == doctest::Approx(12.45));
    CHECK_THROWS_AS(death_rate(sys, 11), DomainError);
}

TEST_CASE("two-state generator") {
    const GeneratorMatrix q = build_generator(SchloglSystem::bistable(1.0, 1));
    CHECK(q.dim() == 2);
    CHECK(q(0, 0) == doctest::Approx(-0.25));
    CHECK(q(0, 1) == doctest::Approx(2.95));
    CHECK(q(1, 0) == doctest::Approx(0.25));
    CHECK(q(1, 1) == doctest::Approx(-2.95));
    const auto ls = low_spectrum(q);
    CHECK(std::abs(ls.lambda0) < 1e-12);
    CHECK(ls.lambda1 == doctest::Approx(-3.2));
}

TEST_CASE("deterministic rate law") {
    CHECK(deterministic_rhs(SchloglSystem::bistable(1, 1), 0.0) == doctest::Approx(0.25));
    CHECK(deterministic_rhs(SchloglSystem::monostable(1, 1), 0.0) == doctest::Approx(7.375));
    const auto sys = SchloglSystem::bistable(1, 1);
    // 3x^2 - 0.6x^3 - 2.95x + 0.25 changes sign on [0, 0.5].
    const double root = ref::bisect([&](double x) { return 3 * x * x - 0.6 * x * x * x - 2.95 * x + 0.25; }, 0.0, 0.5);
    CHECK(std::abs(deterministic_rhs(sys, root)) < 1e-10);
}

TEST_CASE("presets and detailed balance") {
    CHECK(SchloglSystem::monostable(1, 3).is_equilibrium());
    const auto bi = SchloglSystem::bistable(1, 3);
    CHECK_FALSE(bi.is_equilibrium());
    CHECK(bi.detailed_balance_ratio() == doctest::Approx(59.0));
    CHECK_THROWS_AS(SchloglSystem::preset("tristable", 1, 3), DomainError);
}

TEST_CASE("system validation") {
    CHECK_THROWS_AS(SchloglSystem(3, 0.6, 0.25, 2.95, 1, 1, 0.0, 3), DomainError);
    CHECK_THROWS_AS(SchloglSystem(-3, 0.6, 0.25, 2.95, 1, 1, 1.0, 3), DomainError);
    CHECK_THROWS_AS(SchloglSystem(3, 0.6, 0.25, 2.95, 1, 1, 1.0, 0), DomainError);
}

TEST_CASE("generator properties over random systems") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::uniform_int_distribution<int> nt(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const SchloglSystem sys(u(rng), u(rng), u(rng) + 0.01, u(rng) + 0.01, u(rng), u(rng) + 0.01, u(rng) + 0.1, nt(rng));
        const GeneratorMatrix q = build_generator(sys);
        for (int j = 0; j < q.dim(); ++j) {
            CHECK(q.entries().col(j).sum() == 0.0);
            CHECK(q(j, j) + q.entries().col(j).tail(q.dim() - j - 1).sum() + q.entries().col(j).head(j).sum() == 0.0);
            for (int i = 0; i < q.dim(); ++i) {
                if (std::abs(i - j) > 1) CHECK(q(i, j) == 0.0);
                if (i != j) CHECK(q(i, j) >= 0.0);
                // snapping moves an entry by at most 2^-52 of its column total
                if (i == j + 1) CHECK(std::abs(q(i, j) - birth_rate(sys, j)) <= std::ldexp(-q(j, j), -52));
            }
            CHECK(q(j, j) <= 0.0);
        }
        for (int n = 0; n <= sys.n_trunc(); ++n) {
            CHECK(birth_rate(sys, n) >= 0.0);
            CHECK(death_rate(sys, n) >= 0.0);
        }
    }
}

TEST_CASE("padding keeps the generator property") {
    const GeneratorMatrix q = build_generator(SchloglSystem::bistable(2.0, 4)).padded_to(8);
    CHECK(q.dim() == 8);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(q.entries().col(j).sum()) < 1e-12);
    CHECK(q(6, 6) == 0.0);
}

TEST_CASE("config loading") {
    const auto sys = load_system_json(R"({"preset": "monostable", "V": 2.5, "N_trunc": 7, "k1": 4})");
    CHECK(sys.k1() == 4.0);
    CHECK(sys.a() == 0.5);
    CHECK(sys.volume() == 2.5);
    CHECK(sys.n_trunc() == 7);
    CHECK_THROWS_AS(load_system_json("{"), DomainError);
    CHECK_THROWS_AS(load_system_json(R"({"V": "big"})"), DomainError);
    CHECK_THROWS_AS(load_system_json(R"({"V": 0})"), DomainError);
    CHECK_THROWS_AS(load_system_file("/nonexistent/system.json"), IoError);
}
