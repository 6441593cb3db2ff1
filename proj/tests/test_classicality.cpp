#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "threebox/classicality.hpp"
#include "threebox/rng.hpp"
#include "threebox/zoo.hpp"

using namespace threebox;
using namespace threebox::classicality;

namespace {

Rational rat(int n, int d = 1) { return Rational(n, d); }

OperationalStats quantum_stats() { return to_stats(zoo::quantum_three_box()); }

// hand-built stats for direct unit control
OperationalStats stats_with(Rational seen_post_1, Rational seen_no_post_1,
                            Rational not_seen_post_1, Rational seen_post_2,
                            Rational seen_no_post_2, Rational not_seen_post_2, Rational p_n) {
    OperationalStats s;
    s.post_outcome = "A";
    s.no_post_outcome = "notA";
    s.no_measurement_post = p_n;
    BoxTable b1{"M1", "1", "not1", seen_post_1, seen_no_post_1, not_seen_post_1, rat(0)};
    b1.not_seen_no_post = 1 - b1.seen_post - b1.seen_no_post - b1.not_seen_post;
    BoxTable b2{"M2", "2", "not2", seen_post_2, seen_no_post_2, not_seen_post_2, rat(0)};
    b2.not_seen_no_post = 1 - b2.seen_post - b2.seen_no_post - b2.not_seen_post;
    s.boxes = {b1, b2};
    return s;
}

}  // namespace

TEST_CASE("quantum statistics read as an undetectable double paradox") {
    auto s = quantum_stats();
    auto gaps = ndm_gap(s);
    CHECK(gaps.at("M1") == rat(0));
    CHECK(gaps.at("M2") == rat(0));
    CHECK(ndm_holds(s));

    auto pps = pps_score(s);
    CHECK(pps.score == rat(2));
    CHECK(pps.ndm);
    CHECK(pps.true_paradox);

    auto bound = nim_bound_check(s);
    CHECK(bound.slack == rat(-1, 9));
    CHECK_FALSE(bound.holds);

    auto lgi = lgi_value(s);
    CHECK(lgi.value == rat(-13, 9));
    CHECK(lgi.violated);
}

TEST_CASE("detectable models break NDM but not the score") {
    for (const auto& [name, gap] : std::initializer_list<std::pair<const char*, Rational>>{
             {"kirkpatrick", rat(1, 8)}, {"ravon_vaidman", rat(1, 6)},
             {"leifer_spekkens", rat(1, 4)}}) {
        auto s = to_stats(zoo::builtin(name));
        for (const auto& [box, g] : ndm_gap(s)) CHECK(g == gap);
        CHECK_FALSE(ndm_holds(s));
        auto pps = pps_score(s);
        CHECK(pps.score == rat(2));
        CHECK_FALSE(pps.true_paradox);
    }
}

TEST_CASE("score is undefined when a box never post-selects") {
    auto s = stats_with(rat(0), rat(1, 4), rat(0), rat(0), rat(1, 4), rat(0), rat(0));
    CHECK_THROWS_AS(pps_score(s), std::domain_error);
}

TEST_CASE("LGI needs exactly two boxes") {
    auto s = quantum_stats();
    s.boxes.pop_back();
    CHECK_THROWS_AS(lgi_value(s), std::invalid_argument);
}

TEST_CASE("counterfactual recomposition gaps match the worked values") {
    CHECK(counterfactual_consistency(quantum_stats(), "M1") == rat(0));
    CHECK(counterfactual_consistency(quantum_stats(), "M2") == rat(0));
    auto k = to_stats(zoo::kirkpatrick_model());
    CHECK(counterfactual_consistency(k, "M1") == rat(3, 28));
    auto rv = to_stats(zoo::ravon_vaidman_model());
    CHECK(counterfactual_consistency(rv, "M1") == rat(2, 15));
    auto ls = to_stats(zoo::leifer_spekkens_model());
    CHECK(counterfactual_consistency(ls, "ML") == rat(1, 6));
    CHECK_THROWS_AS(counterfactual_consistency(k, "M9"), std::invalid_argument);
}

TEST_CASE("zero gaps tie the inequality to the score algebraically") {
    SplitMix64 rng(20260815);
    for (int trial = 0; trial < 200; ++trial) {
        // random two-box stats with both NDM gaps forced to zero
        auto r = [&](int den) { return Rational(rng.next() % (den + 1), den); };
        Rational n = r(24);
        Rational s1 = n * r(24), s2 = n * r(24);
        Rational m1 = r(24) * (1 - n), m2 = r(24) * (1 - n);
        auto s = stats_with(s1, m1, n - s1, s2, m2, n - s2, n);
        CHECK(ndm_holds(s));
        auto lgi = lgi_value(s);
        if (n == 0) continue;
        auto pps = pps_score(s);
        CHECK((pps.score > 1) == (lgi.value < rat(-1)));
        CHECK((pps.score > 1) == lgi.violated);
        CHECK((pps.score > 1) == !nim_bound_check(s).holds);
    }
}

TEST_CASE("decomposition splits the sixteen state model by sure answers") {
    auto m = zoo::mr3_model();
    auto d = macrorealist_decomposition(m.model, preparation_of(m, "initial"), m.roles);
    REQUIRE(d.has_value());
    REQUIRE(d->size() == 3);
    CHECK((*d)[0].box == "1");
    CHECK((*d)[1].box == "2");
    CHECK((*d)[2].box == "rest");
    for (const auto& part : *d) CHECK(part.weight == rat(1, 3));
    CHECK((*d)[0].nu.weight("l1") == rat(2, 3));
    CHECK((*d)[0].nu.weight("l4") == rat(1, 3));
    CHECK((*d)[2].nu.weight("l9") == rat(2, 3));
    CHECK((*d)[2].nu.weight("l16") == rat(1, 3));
}

TEST_CASE("indefinite support states defeat the decomposition") {
    auto m = zoo::kirkpatrick_model();
    auto d = macrorealist_decomposition(m.model, preparation_of(m, "initial"), m.roles);
    CHECK_FALSE(d.has_value());
}

TEST_CASE("macrorealist grades separate the zoo") {
    auto grade = [](const char* name) {
        auto m = zoo::builtin(name);
        std::map<std::string, ontic::Preparation> eigen;
        const auto& names = m.roles.eigen_preparations;
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::string box = i < m.roles.boxes.size() ? m.roles.boxes[i].seen : "rest";
            eigen[box] = preparation_of(m, names[i]);
        }
        return classify_mr(m.model, preparation_of(m, m.initial), eigen, m.roles);
    };
    CHECK(grade("leifer_spekkens") == MrClass::mr1);
    CHECK(grade("mr2") == MrClass::mr2);
    CHECK(grade("mr3") == MrClass::mr3);
    CHECK(grade("kirkpatrick") == MrClass::not_macrorealist);
    CHECK(grade("cheating") == MrClass::not_macrorealist);
}

TEST_CASE("classification without eigen preparations is undetermined") {
    auto m = zoo::mr3_model();
    CHECK(classify_mr(m.model, preparation_of(m, "initial"), {}, m.roles) ==
          MrClass::undetermined);
}

TEST_CASE("conditioning checks expose which update rule leaks") {
    auto mr3 = zoo::mr3_model();
    auto r = nim1_nim2_check(mr3.model, preparation_of(mr3, "initial"), mr3.roles);
    CHECK(r.via_decomposition);
    CHECK_FALSE(r.nim1);
    CHECK_FALSE(r.nim2);
    REQUIRE(r.nim2_witness.has_value());

    auto ls = zoo::leifer_spekkens_model();
    auto rl = nim1_nim2_check(ls.model, preparation_of(ls, "initial"), ls.roles);
    CHECK(rl.via_decomposition);
    CHECK_FALSE(rl.nim1);
    CHECK(rl.nim2);

    auto cheat = zoo::cheating_model();
    auto rc = nim1_nim2_check(cheat.model, preparation_of(cheat, "initial"), cheat.roles);
    CHECK_FALSE(rc.via_decomposition);
    CHECK(rc.nim1);
    CHECK(rc.nim2);
}

TEST_CASE("eigen preparations show their own detectability gaps") {
    auto ls = zoo::leifer_spekkens_model();
    std::map<std::string, ontic::Preparation> eigen;
    for (const auto& name : ls.roles.eigen_preparations)
        eigen[name] = preparation_of(ls, name);
    auto gaps = eigenstate_ndm_gaps(ls.model, eigen, ls.roles);
    CHECK(gaps.at("left").at("ML") == rat(1, 2));  // shaking the occupied box rattles
    CHECK(gaps.at("left").at("MR") == rat(0));     // the empty box stays silent
    CHECK(gaps.at("top").at("ML") == rat(1, 4));

    auto q = zoo::quantum_three_box();
    std::map<std::string, quantum::Ket> kets;
    for (const auto& name : q.roles.eigen_preparations) kets[name] = ket_of(q, name);
    auto qgaps = eigenstate_ndm_gaps(q.scenario, kets, q.roles);
    for (const auto& [prep, per] : qgaps)
        for (const auto& [meas, g] : per) CHECK(g == rat(0));
}

TEST_CASE("checking both boxes exposes a double ball") {
    auto cheat = zoo::cheating_model();
    auto occ = double_occupancy(cheat);
    CHECK(occ.forward == rat(1, 9));
    CHECK(occ.backward == rat(1, 9));
    CHECK(occ.value() == rat(1, 9));

    CHECK(double_occupancy(zoo::quantum_three_box()).value() == rat(0));
    CHECK(double_occupancy(zoo::mr3_model()).value() == rat(0));
    CHECK(double_occupancy(zoo::kirkpatrick_model()).value() == rat(1, 4));
}

TEST_CASE("full report is deterministic and self-consistent") {
    auto m = zoo::mr2_model(rat(1, 100), rat(1, 100), rat(1, 100), rat(1, 100), rat(1, 100));
    auto a = analyze(m);
    auto b = analyze(m);
    CHECK(a.stats.no_measurement_post == b.stats.no_measurement_post);
    CHECK(a.mr == b.mr);
    CHECK(a.mr == MrClass::mr2);
    CHECK(a.ndm);
    REQUIRE(a.pps.has_value());
    CHECK(a.pps->true_paradox);
    CHECK(a.lgi.value == rat(-13, 9));
    CHECK_FALSE(a.mr1_contradiction);
    REQUIRE(a.nim12.has_value());
    CHECK_FALSE(a.nim12->nim1);
}

TEST_CASE("report on a named preparation") {
    auto m = zoo::mr3_model();
    auto r = analyze(m, "e1");
    CHECK(r.preparation == "e1");
    CHECK(r.stats.boxes[0].seen_marginal() == rat(1));
}
