#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "threebox/quantum.hpp"

#include <cmath>

using namespace threebox::quantum;

namespace {

const double kThird = 1.0 / 3.0;

Ket initial_ket() {
    double a = 1.0 / std::sqrt(3.0);
    return make_ket({{a, 0}, {a, 0}, {a, 0}});
}

Ket final_ket() {
    double a = 1.0 / std::sqrt(3.0);
    return make_ket({{a, 0}, {a, 0}, {-a, 0}});
}

}  // namespace

TEST_CASE("make_ket enforces normalization") {
    CHECK_THROWS_AS(make_ket({{1, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_ket({}), std::invalid_argument);
    CHECK_NOTHROW(make_ket({{0, 1}}));
}

TEST_CASE("inner product and basis kets") {
    Ket b0 = basis_ket(3, 0), b1 = basis_ket(3, 1);
    CHECK(inner(b0, b0) == Complex(1, 0));
    CHECK(inner(b0, b1) == Complex(0, 0));
    CHECK(std::abs(inner(initial_ket(), basis_ket(3, 2)).real() - 1.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("matrix helpers satisfy basic identities") {
    Matrix p = outer(basis_ket(2, 0));
    CHECK(multiply(p, p) == p);
    Matrix id = identity(2);
    CHECK(multiply(id, p) == p);
    Matrix h = {{{0, 0}, {0, 1}}, {{0, -1}, {0, 0}}};
    Matrix hd = adjoint(h);
    CHECK(hd[0][1] == Complex(0, 1));
    CHECK(hd[1][0] == Complex(0, -1));
}

TEST_CASE("three box scenario passes validation") {
    Scenario s = build_three_box_scenario();
    CHECK(s.dim == 3);
    CHECK(validate_scenario(s).empty());
    CHECK(s.measurements.count("M1") == 1);
    CHECK(s.measurements.count("M2") == 1);
    CHECK(s.measurements.count("MA") == 1);
}

TEST_CASE("validation flags a non-idempotent projector") {
    Scenario s = build_three_box_scenario();
    s.measurements["M1"].outcomes[0].projector[0][0] = Complex(0.5, 0);
    CHECK_FALSE(validate_scenario(s).empty());
}

TEST_CASE("shuffle unitaries route the preparation and post-selection") {
    Unitary ui = three_box_initial_shuffle();
    Unitary uf = three_box_final_shuffle();
    CHECK(is_unitary(ui));
    CHECK(is_unitary(uf));

    Ket from_third = apply_unitary(basis_ket(3, 2), ui);
    Ket want = initial_ket();
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(from_third.amplitudes[i] - want.amplitudes[i]) < 1e-9);

    Ket routed = apply_unitary(final_ket(), uf);
    CHECK(std::abs(routed.amplitudes[2] - Complex(1, 0)) < 1e-9);
    CHECK(std::abs(routed.amplitudes[0]) < 1e-9);
    CHECK(std::abs(routed.amplitudes[1]) < 1e-9);
}

TEST_CASE("projective update renormalizes the post state") {
    Scenario s = build_three_box_scenario();
    auto branches = measure(initial_ket(), s.measurements.at("M1"));
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) {
        if (b.label == "1") {
            CHECK(b.probability == doctest::Approx(kThird).epsilon(1e-12));
            CHECK(std::abs(b.post.amplitudes[0] - Complex(1, 0)) < 1e-12);
        } else {
            CHECK(b.label == "not1");
            CHECK(b.probability == doctest::Approx(2 * kThird).epsilon(1e-12));
            CHECK(std::abs(b.post.amplitudes[0]) < 1e-12);
        }
    }
}

TEST_CASE("paradox table from sequential measurement") {
    Scenario s = build_three_box_scenario();
    auto check_table = [&](const std::string& box, const std::string& seen,
                           const std::string& not_seen) {
        auto d = sequence_distribution(s, {box, "MA"});
        CHECK(d.at({seen, "A"}) == doctest::Approx(1.0 / 9).epsilon(1e-12));
        CHECK(d.at({not_seen, "A"}) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.at({seen, "notA"}) == doctest::Approx(2.0 / 9).epsilon(1e-12));
        CHECK(d.at({not_seen, "notA"}) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    };
    check_table("M1", "1", "not1");
    check_table("M2", "2", "not2");

    auto base = sequence_distribution(s, {"MA"});
    CHECK(base.at({"A"}) == doctest::Approx(1.0 / 9).epsilon(1e-12));
}

TEST_CASE("sequence distribution covers the full outcome product") {
    Scenario s = build_three_box_scenario();
    auto d = sequence_distribution(s, {"M1", "M2"});
    CHECK(d.size() == 4);
    CHECK(d.count({"1", "2"}) == 1);
    CHECK(d.at({"1", "2"}) == doctest::Approx(0.0).epsilon(1e-12));
    double total = 0;
    for (const auto& [k, p] : d) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("do-nothing steps are skipped") {
    Scenario s = build_three_box_scenario();
    auto with = sequence_distribution(s, {"N", "MA"});
    auto without = sequence_distribution(s, {"MA"});
    CHECK(with == without);
}

TEST_CASE("unknown labels are rejected") {
    Scenario s = build_three_box_scenario();
    CHECK_THROWS_AS(sequence_distribution(s, {"M9"}), std::invalid_argument);
}

TEST_CASE("apply_unitary checks dimensions and unitarity") {
    Unitary bad{{{{1, 0}, {0, 0}}, {{0, 0}, {0.5, 0}}}};
    CHECK_THROWS_AS(apply_unitary(basis_ket(2, 0), bad), std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(basis_ket(3, 0), bad), std::invalid_argument);
}
