#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "threebox/ontic.hpp"

using namespace threebox;
using namespace threebox::ontic;

namespace {

Rational rat(int n, int d = 1) { return Rational(n, d); }

// Two states, one binary measurement Q that answers "yes" surely on s0 and
// with chance 1/3 on s1, identity updates.
Model tiny_model() {
    Model m;
    m.states = {"s0", "s1"};
    Measurement q;
    q.name = "Q";
    q.outcomes = {"yes", "no"};
    q.response["s0"] = {{"yes", rat(1)}, {"no", rat(0)}};
    q.response["s1"] = {{"yes", rat(1, 3)}, {"no", rat(2, 3)}};
    m.measurements["Q"] = q;
    return m;
}

}  // namespace

TEST_CASE("preparation drops zero weights and keeps totals") {
    Preparation p(std::map<std::string, Rational>{
        {"a", rat(1, 2)}, {"b", rat(1, 2)}, {"c", rat(0)}});
    CHECK(p.support() == std::vector<std::string>{"a", "b"});
    CHECK(p.weight("c") == rat(0));
    CHECK(p.total() == rat(1));
    CHECK_THROWS_AS(Preparation(std::map<std::string, Rational>{{"a", rat(-1, 2)}}),
                    std::invalid_argument);
}

TEST_CASE("point mass puts everything on one state") {
    Preparation p = Preparation::point_mass("x");
    CHECK(p.weight("x") == rat(1));
    CHECK(p.support().size() == 1);
}

TEST_CASE("missing update rows default to staying put") {
    Model m = tiny_model();
    const auto& q = m.measurement("Q");
    CHECK(q.updated("s0", "yes") == Preparation::point_mass("s0"));
    CHECK(q.updated("s1", "no") == Preparation::point_mass("s1"));
}

TEST_CASE("validation accepts the tiny model and catches broken rows") {
    Model m = tiny_model();
    CHECK(validate_model(m).empty());

    Model broken = tiny_model();
    broken.measurements["Q"].response["s1"]["yes"] = rat(1, 2);  // row sums to 7/6
    CHECK_FALSE(validate_model(broken).empty());

    Model negative = tiny_model();
    negative.measurements["Q"].response["s0"] = {{"yes", rat(3, 2)}, {"no", rat(-1, 2)}};
    CHECK_FALSE(validate_model(negative).empty());

    Model stray = tiny_model();
    stray.measurements["Q"].response["ghost"] = {{"yes", rat(1)}, {"no", rat(0)}};
    CHECK_FALSE(validate_model(stray).empty());

    Model missing = tiny_model();
    missing.states.push_back("s2");  // no response row for it
    CHECK_FALSE(validate_model(missing).empty());
}

TEST_CASE("outcome probabilities are exact mixtures") {
    Model m = tiny_model();
    Preparation p(std::map<std::string, Rational>{{"s0", rat(1, 4)}, {"s1", rat(3, 4)}});
    auto probs = outcome_probability(m, p, "Q");
    CHECK(probs.at("yes") == rat(1, 4) + rat(3, 4) * rat(1, 3));
    CHECK(probs.at("no") == rat(3, 4) * rat(2, 3));
    CHECK(probs.at("yes") + probs.at("no") == rat(1));
}

TEST_CASE("conditioning follows the Bayes rule") {
    Model m = tiny_model();
    Preparation p(std::map<std::string, Rational>{{"s0", rat(1, 2)}, {"s1", rat(1, 2)}});
    auto e = evolve_preparation(m, p, "Q", "yes");
    CHECK(e.probability == rat(2, 3));
    CHECK(e.post.weight("s0") == rat(3, 4));
    CHECK(e.post.weight("s1") == rat(1, 4));

    auto never = Preparation::point_mass("s0");
    CHECK_THROWS_AS(evolve_preparation(m, never, "Q", "no"), std::domain_error);
}

TEST_CASE("update kernels push the distribution through") {
    Model m = tiny_model();
    auto& q = m.measurements["Q"];
    q.update["s1"]["yes"] = Preparation(
        std::map<std::string, Rational>{{"s0", rat(1, 2)}, {"s1", rat(1, 2)}});
    Preparation p(std::map<std::string, Rational>{{"s0", rat(1, 2)}, {"s1", rat(1, 2)}});
    auto e = evolve_preparation(m, p, "Q", "yes");
    // posterior before the kernel: 3/4 s0, 1/4 s1; the kernel splits s1's share
    CHECK(e.post.weight("s0") == rat(3, 4) + rat(1, 8));
    CHECK(e.post.weight("s1") == rat(1, 8));
}

TEST_CASE("sequence distribution is an exact probability vector over all cells") {
    Model m = tiny_model();
    Preparation p(std::map<std::string, Rational>{{"s0", rat(1, 2)}, {"s1", rat(1, 2)}});
    auto d = sequence_distribution(m, p, {"Q", "Q"});
    CHECK(d.size() == 4);
    Rational total(0);
    for (const auto& [k, v] : d) total += v;
    CHECK(total == rat(1));
    // identity updates: repeating the question never flips a sure answer
    CHECK(d.at({"yes", "no"}) == rat(1, 2) * rat(1, 3) * rat(2, 3));
    CHECK(d.at({"no", "yes"}) == rat(1, 2) * rat(2, 3) * rat(1, 3));
}

TEST_CASE("marginalizing over a non-invasive measurement leaves later stats alone") {
    Model m = tiny_model();
    Preparation p(std::map<std::string, Rational>{{"s0", rat(2, 5)}, {"s1", rat(3, 5)}});
    CHECK(is_nim(m, "Q"));
    auto direct = outcome_probability(m, p, "Q");
    auto joint = sequence_distribution(m, p, {"Q", "Q"});
    for (const auto& o : {"yes", "no"}) {
        Rational marginal(0);
        for (const auto& first : {"yes", "no"}) marginal += joint.at({first, o});
        CHECK(marginal == direct.at(o));
    }
}

TEST_CASE("a shuffling kernel is not NIM") {
    Model m = tiny_model();
    m.measurements["Q"].update["s0"]["yes"] = Preparation::point_mass("s1");
    CHECK_FALSE(is_nim(m, "Q"));
    CHECK(is_nim(m, "Q", {"s1"}));  // restricted to states it never moves
}

TEST_CASE("mixtures must be convex") {
    Preparation a = Preparation::point_mass("x");
    Preparation b = Preparation::point_mass("y");
    auto mixed = mix_preparations({{rat(1, 3), a}, {rat(2, 3), b}});
    CHECK(mixed.weight("x") == rat(1, 3));
    CHECK(mixed.weight("y") == rat(2, 3));
    CHECK_THROWS_AS(mix_preparations({{rat(1, 2), a}}), std::invalid_argument);
    CHECK_THROWS_AS(mix_preparations({{rat(-1, 2), a}, {rat(3, 2), b}}), std::invalid_argument);
}

TEST_CASE("unknown measurements and states are reported") {
    Model m = tiny_model();
    CHECK_THROWS_AS(m.measurement("R"), std::invalid_argument);
    Preparation ghost = Preparation::point_mass("zz");
    CHECK_FALSE(validate_preparation(m, ghost).empty());
}
