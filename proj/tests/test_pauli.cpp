#include <random>

#include "doctest.h"
#include "reference.hpp"
#include "schlogl/circuit.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/oracle.hpp"
#include "schlogl/pauli.hpp"

using namespace schlogl;

namespace {

std::vector<double> coeffs(const PauliSum& p) {
    std::vector<double> c;
    for (const auto& t : p.terms()) c.push_back(t.coefficient);
    return c;
}

}  // namespace

TEST_CASE("single-qubit decompositions") {
    const auto id = decompose(HermitianOperator(ComplexMatrix::Identity(2, 2)));
    REQUIRE(id.size() == 1);
    CHECK(id.terms()[0].string == "I");
    CHECK(id.terms()[0].coefficient == doctest::Approx(1.0));
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    const auto zs = decompose(HermitianOperator(z));
    REQUIRE(zs.size() == 1);
    CHECK(zs.terms()[0].string == "Z");
}

TEST_CASE("pauli matrices follow the kron convention") {
    for (const char* s : {"XY", "ZI", "IZ", "YZX", "XXZ"})
        CHECK((pauli_matrix(s) - ref::pauli(s)).norm() == 0.0);
    CHECK(canonical_index("ZX") == 13);
    CHECK(string_of_index(13, 2) == "ZX");
    const auto m = to_mask("XI");
    CHECK(m.x == 2);
    CHECK(m.z == 0);
}

TEST_CASE("term counts of the bistable semi-positive form") {
    const auto p2 = decompose(spd_form(build_generator(SchloglSystem::bistable(8.5, 3))));
    CHECK(p2.size() == 10);
    const auto p3 = decompose(spd_form(build_generator(SchloglSystem::bistable(8.5, 7))));
    CHECK(p3.size() == 28);
}

TEST_CASE("round trip over random Hermitian matrices") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto h = ref::random_hermitian(1 << n, rng);
            const auto p = decompose(HermitianOperator(h));
            // independent reconstruction
            ref::CMat back = ref::CMat::Zero(1 << n, 1 << n);
            for (const auto& t : p.terms()) back += t.coefficient * ref::pauli(t.string);
            CHECK((back - h).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK((p.to_matrix() - h).cwiseAbs().maxCoeff() <= 1e-10);
            const auto text = PauliSum::from_text(p.to_text());
            CHECK(coeffs(text) == coeffs(p));
        }
    }
}

TEST_CASE("decompose rejects non power of two") {
    CHECK_THROWS_AS(PauliSum(2, {{1.0, "XYZ"}}), DomainError);
    CHECK_THROWS_AS(PauliSum(2, {{1.0, "XQ"}}), DomainError);
    CHECK_THROWS_AS(PauliSum(2, {{1.0, "XX"}, {2.0, "XX"}}), DomainError);
}

TEST_CASE("sorting rules") {
    const PauliSum p(1, {{-2.0, "X"}, {3.0, "Y"}, {1.0, "Z"}});
    CHECK(coeffs(sort_terms(p, Ordering::PositiveFirst)) == std::vector<double>{3, 1, -2});
    CHECK(coeffs(sort_terms(p, Ordering::Magnitude)) == std::vector<double>{3, -2, 1});
    CHECK(coeffs(sort_terms(p, Ordering::Default)) == std::vector<double>{-2, 3, 1});
    // w0 = |+>: <X> = 1, <Y> = <Z> = 0
    const auto opt = sort_terms(p, Ordering::Optimized);
    REQUIRE(opt.size() == 1);
    CHECK(opt.terms()[0].string == "X");
    CHECK(parse_ordering("magnitude") == Ordering::Magnitude);
    CHECK_THROWS_AS(parse_ordering("random"), DomainError);
}

TEST_CASE("sorting keeps the operator") {
    const auto p = decompose(spd_form(build_generator(SchloglSystem::bistable(3.0, 7))));
    for (auto o : {Ordering::PositiveFirst, Ordering::Magnitude}) {
        const auto s = sort_terms(p, o);
        CHECK(s.size() == p.size());
        CHECK((s.to_matrix() - p.to_matrix()).norm() <= 1e-14 * p.to_matrix().norm());
    }
}

TEST_CASE("truncation") {
    const auto p = decompose(spd_form(build_generator(SchloglSystem::bistable(8.5, 3))));
    const auto full = truncate(p, int(p.size()));
    CHECK((full.to_matrix() - p.to_matrix()).norm() == 0.0);
    CHECK(truncate(p, 6).size() == 6);
    CHECK_THROWS_AS(truncate(p, 0), DomainError);
    CHECK_THROWS_AS(truncate(p, int(p.size()) + 1), DomainError);
}

TEST_CASE("optimized terms of the 3-qubit operator keep the zero eigenvalue") {
    const auto p = decompose(spd_form(build_generator(SchloglSystem::bistable(8.5, 7))));
    const auto opt = sort_terms(p, Ordering::Optimized);
    CHECK(opt.size() == 6);
    const auto ev = hermitian_eigenvalues(opt.to_matrix());
    CHECK(std::abs(ev[0]) < 0.005);
}

TEST_CASE("one norm bounds the spectrum") {
    std::mt19937_64 rng(5);
    const auto h = ref::random_hermitian(8, rng);
    const auto p = decompose(HermitianOperator(h));
    const auto ev = hermitian_eigenvalues(h);
    CHECK(std::max(std::abs(ev.front()), std::abs(ev.back())) <= p.one_norm() + 1e-12);
}
