#include "threebox/zoo.hpp"

#include <cmath>
#include <stdexcept>

namespace threebox::zoo {

namespace {

using ontic::Measurement;
using ontic::Model;
using ontic::Preparation;

Rational rat(const char* text) { return parse_rational(text); }

Roles standard_roles() {
    Roles r;
    r.boxes = {{"M1", "1", "not1"}, {"M2", "2", "not2"}};
    r.final_measurement = "MA";
    r.post_outcome = "A";
    r.no_post_outcome = "notA";
    r.do_nothing = "N";
    return r;
}

BoxTable table(const char* measurement, const char* seen, const char* not_seen,
               const char* seen_post, const char* seen_no_post, const char* not_seen_post,
               const char* not_seen_no_post) {
    return BoxTable{measurement, seen,           not_seen,
                    rat(seen_post),  rat(seen_no_post), rat(not_seen_post),
                    rat(not_seen_no_post)};
}

OperationalStats standard_expected(const char* seen_post, const char* seen_no_post,
                                   const char* not_seen_post, const char* not_seen_no_post,
                                   const char* no_measurement_post) {
    OperationalStats s;
    s.post_outcome = "A";
    s.no_post_outcome = "notA";
    s.boxes = {
        table("M1", "1", "not1", seen_post, seen_no_post, not_seen_post, not_seen_no_post),
        table("M2", "2", "not2", seen_post, seen_no_post, not_seen_post, not_seen_no_post)};
    s.no_measurement_post = rat(no_measurement_post);
    return s;
}

// deterministic response row helper
std::map<std::string, Rational> sure(const std::string& outcome) {
    return {{outcome, Rational(1)}};
}

Preparation prep(std::map<std::string, Rational> weights) { return Preparation(std::move(weights)); }

}  // namespace

NamedModel quantum_three_box() {
    NamedModel m;
    m.name = "quantum_three_box";
    m.kind = NamedModel::Kind::quantum;
    m.scenario = quantum::build_three_box_scenario();

    const double r2 = 1.0 / std::sqrt(2.0);
    m.kets["initial"] = m.scenario.initial;
    m.kets["e1"] = quantum::basis_ket(3, 0);
    m.kets["e2"] = quantum::basis_ket(3, 1);
    m.kets["e3"] = quantum::basis_ket(3, 2);
    m.kets["s13"] = quantum::make_ket({{r2, 0}, {0, 0}, {r2, 0}});
    m.kets["s23"] = quantum::make_ket({{0, 0}, {r2, 0}, {r2, 0}});
    m.initial = "initial";

    m.roles = standard_roles();
    m.roles.eigen_preparations = {"e1", "e2", "e3"};
    m.expected = standard_expected("1/9", "2/9", "0", "2/3", "1/9");
    m.metadata["summary"] = "dimension-3 state-vector model of the three-box wager";
    return m;
}

NamedModel cheating_model() {
    Model model;
    model.states = {"l1", "l2", "l3", "l4"};

    Measurement m1{"M1", {"1", "not1"}, {}, {}};
    m1.response = {{"l1", sure("1")}, {"l2", sure("not1")}, {"l3", sure("not1")}, {"l4", sure("1")}};
    Measurement m2{"M2", {"2", "not2"}, {}, {}};
    m2.response = {{"l1", sure("not2")}, {"l2", sure("2")}, {"l3", sure("not2")}, {"l4", sure("2")}};
    Measurement ma{"MA", {"A", "notA"}, {}, {}};
    ma.response = {{"l1", sure("notA")}, {"l2", sure("notA")}, {"l3", sure("notA")}, {"l4", sure("A")}};
    model.measurements = {{"M1", m1}, {"M2", m2}, {"MA", ma}};

    NamedModel m;
    m.name = "cheating";
    m.kind = NamedModel::Kind::ontic;
    m.model = std::move(model);
    m.preparations["initial"] =
        prep({{"l1", rat("2/9")}, {"l2", rat("2/9")}, {"l3", rat("4/9")}, {"l4", rat("1/9")}});
    m.initial = "initial";
    m.roles = standard_roles();
    m.expected = standard_expected("1/9", "2/9", "0", "2/3", "1/9");
    m.metadata["summary"] = "two-ball cheat: reproduces single-check tables, caught by checking both boxes";
    return m;
}

namespace {

// shared 16-state table for the macrorealist models
Model sixteen_state_model() {
    Model model;
    for (int i = 1; i <= 16; ++i) model.states.push_back("l" + std::to_string(i));

    auto state = [](int i) { return "l" + std::to_string(i); };
    auto in_box1 = [](int i) { return i <= 4; };
    auto in_box2 = [](int i) { return i >= 5 && i <= 8; };

    const std::map<int, int> m1_map = {{3, 1}, {4, 2}, {11, 9}, {12, 10}, {15, 13}, {16, 14}};
    const std::map<int, int> m2_map = {{7, 5}, {8, 6}, {13, 9}, {14, 10}, {15, 11}, {16, 12}};
    const bool answers_a[17] = {false, false, true,  true,  false, false, true,  true,  false,
                                false, true,  true,  false, true,  false, false, true};

    Measurement m1{"M1", {"1", "not1"}, {}, {}};
    Measurement m2{"M2", {"2", "not2"}, {}, {}};
    Measurement ma{"MA", {"A", "notA"}, {}, {}};
    for (int i = 1; i <= 16; ++i) {
        m1.response[state(i)] = sure(in_box1(i) ? "1" : "not1");
        m2.response[state(i)] = sure(in_box2(i) ? "2" : "not2");
        ma.response[state(i)] = sure(answers_a[i] ? "A" : "notA");
        if (auto it = m1_map.find(i); it != m1_map.end())
            for (const auto& o : m1.outcomes)
                m1.update[state(i)][o] = Preparation::point_mass(state(it->second));
        if (auto it = m2_map.find(i); it != m2_map.end())
            for (const auto& o : m2.outcomes)
                m2.update[state(i)][o] = Preparation::point_mass(state(it->second));
    }
    model.measurements = {{"M1", m1}, {"M2", m2}, {"MA", ma}};
    return model;
}

std::map<std::string, Preparation> shared_superpositions() {
    return {{"s13", prep({{"l1", rat("1/3")}, {"l4", rat("1/6")}, {"l9", rat("1/3")}, {"l12", rat("1/6")}})},
            {"s23", prep({{"l5", rat("1/3")}, {"l8", rat("1/6")}, {"l9", rat("1/3")}, {"l14", rat("1/6")}})},
            {"initial", prep({{"l1", rat("2/9")},
                              {"l4", rat("1/9")},
                              {"l5", rat("2/9")},
                              {"l8", rat("1/9")},
                              {"l9", rat("2/9")},
                              {"l16", rat("1/9")}})}};
}

}  // namespace

NamedModel mr3_model() {
    NamedModel m;
    m.name = "mr3";
    m.kind = NamedModel::Kind::ontic;
    m.model = sixteen_state_model();
    m.preparations = shared_superpositions();
    m.preparations["e1"] = prep({{"l1", rat("2/3")}, {"l2", rat("1/3")}});
    m.preparations["e2"] = prep({{"l5", rat("2/3")}, {"l6", rat("1/3")}});
    m.preparations["e3"] = prep({{"l9", rat("2/3")}, {"l10", rat("1/3")}});
    m.initial = "initial";
    m.roles = standard_roles();
    m.roles.eigen_preparations = {"e1", "e2", "e3"};
    m.expected = standard_expected("1/9", "2/9", "0", "2/3", "1/9");
    m.metadata["summary"] = "macrorealist model matching the quantum tables via novel conditional states";
    return m;
}

NamedModel mr2_model(const Rational& a1, const Rational& a2, const Rational& a,
                     const Rational& b, const Rational& c) {
    const Rational third("1/3");
    if (!(a1 > 0 && a1 < third)) throw std::invalid_argument("mr2 requires 0 < a1 < 1/3");
    if (!(a2 > 0 && a2 < third)) throw std::invalid_argument("mr2 requires 0 < a2 < 1/3");
    if (!(a > 0 && b > 0 && c > 0)) throw std::invalid_argument("mr2 requires a, b, c > 0");
    const Rational s = a + b + c;
    if (!(s < third)) throw std::invalid_argument("mr2 requires a + b + c < 1/3");

    NamedModel m;
    m.name = "mr2";
    m.kind = NamedModel::Kind::ontic;
    m.model = sixteen_state_model();
    m.preparations = shared_superpositions();
    m.preparations["e1"] = prep({{"l1", rat("2/3") - a1}, {"l2", third - a1}, {"l3", a1}, {"l4", a1}});
    m.preparations["e2"] = prep({{"l5", rat("2/3") - a2}, {"l6", third - a2}, {"l7", a2}, {"l8", a2}});
    m.preparations["e3"] = prep({{"l9", rat("2/3") - s},
                                 {"l10", third - s},
                                 {"l11", a},
                                 {"l12", a},
                                 {"l13", b},
                                 {"l14", b},
                                 {"l15", c},
                                 {"l16", c}});
    m.initial = "initial";
    m.roles = standard_roles();
    m.roles.eigen_preparations = {"e1", "e2", "e3"};
    m.expected = standard_expected("1/9", "2/9", "0", "2/3", "1/9");
    m.metadata["summary"] = "mr3 state space with smeared eigen preparations";
    m.metadata["a1"] = format_rational(a1);
    m.metadata["a2"] = format_rational(a2);
    m.metadata["a"] = format_rational(a);
    m.metadata["b"] = format_rational(b);
    m.metadata["c"] = format_rational(c);
    return m;
}

namespace {

// the card-game models share all rows except lambda0's first-check odds
NamedModel card_game_model(const char* name, const char* p_seen, const char* p_not_seen,
                           const char* summary) {
    Model model;
    model.states = {"l0", "l1", "l2", "l3", "l4"};

    Measurement m1{"M1", {"1", "not1"}, {}, {}};
    m1.response = {{"l0", {{"1", rat(p_seen)}, {"not1", rat(p_not_seen)}}},
                   {"l1", sure("not1")},
                   {"l2", sure("1")},
                   {"l3", sure("1")},
                   {"l4", {{"1", rat("1/2")}, {"not1", rat("1/2")}}}};
    m1.update["l0"]["1"] = Preparation::point_mass("l1");
    m1.update["l0"]["not1"] = Preparation::point_mass("l3");

    Measurement m2{"M2", {"2", "not2"}, {}, {}};
    m2.response = {{"l0", {{"2", rat(p_seen)}, {"not2", rat(p_not_seen)}}},
                   {"l1", sure("2")},
                   {"l2", sure("not2")},
                   {"l3", {{"2", rat("1/2")}, {"not2", rat("1/2")}}},
                   {"l4", sure("not2")}};
    m2.update["l0"]["2"] = Preparation::point_mass("l2");
    m2.update["l0"]["not2"] = Preparation::point_mass("l4");

    Measurement ma{"MA", {"A", "notA"}, {}, {}};
    ma.response = {{"l0", sure("notA")},
                   {"l1", {{"A", rat("1/2")}, {"notA", rat("1/2")}}},
                   {"l2", {{"A", rat("1/2")}, {"notA", rat("1/2")}}},
                   {"l3", sure("notA")},
                   {"l4", sure("notA")}};

    model.measurements = {{"M1", m1}, {"M2", m2}, {"MA", ma}};

    NamedModel m;
    m.name = name;
    m.kind = NamedModel::Kind::ontic;
    m.model = std::move(model);
    m.preparations["initial"] = Preparation::point_mass("l0");
    m.initial = "initial";
    m.roles = standard_roles();
    m.metadata["summary"] = summary;
    return m;
}

}  // namespace

NamedModel kirkpatrick_model() {
    NamedModel m = card_game_model("kirkpatrick", "1/4", "3/4",
                                   "card-game model: detectable disturbance, P_N(A) = 0");
    m.expected = standard_expected("1/8", "1/8", "0", "3/4", "0");
    return m;
}

NamedModel ravon_vaidman_model() {
    NamedModel m = card_game_model("ravon_vaidman", "1/3", "2/3",
                                   "card-game variant with first-check probability 1/3");
    m.expected = standard_expected("1/6", "1/6", "0", "2/3", "0");
    return m;
}

NamedModel leifer_spekkens_model() {
    Model model;
    model.states = {"bl", "br", "tl", "tr"};

    Preparation left_column = prep({{"bl", rat("1/2")}, {"tl", rat("1/2")}});
    Preparation right_column = prep({{"br", rat("1/2")}, {"tr", rat("1/2")}});
    Preparation top_row = prep({{"tl", rat("1/2")}, {"tr", rat("1/2")}});

    // shaking a compartment rattles (and scatters the ball inside it) or
    // stays silent (and leaves the ball alone)
    Measurement ml{"ML", {"L", "notL"}, {}, {}};
    ml.response = {{"bl", sure("L")}, {"tl", sure("L")}, {"br", sure("notL")}, {"tr", sure("notL")}};
    ml.update["bl"]["L"] = left_column;
    ml.update["tl"]["L"] = left_column;

    Measurement mr{"MR", {"R", "notR"}, {}, {}};
    mr.response = {{"br", sure("R")}, {"tr", sure("R")}, {"bl", sure("notR")}, {"tl", sure("notR")}};
    mr.update["br"]["R"] = right_column;
    mr.update["tr"]["R"] = right_column;

    Measurement mt{"MT", {"T", "notT"}, {}, {}};
    mt.response = {{"tl", sure("T")}, {"tr", sure("T")}, {"bl", sure("notT")}, {"br", sure("notT")}};
    mt.update["tl"]["T"] = top_row;
    mt.update["tr"]["T"] = top_row;

    model.measurements = {{"ML", ml}, {"MR", mr}, {"MT", mt}};

    NamedModel m;
    m.name = "leifer_spekkens";
    m.kind = NamedModel::Kind::ontic;
    m.model = std::move(model);
    m.preparations["initial"] = prep({{"bl", rat("1/2")}, {"br", rat("1/2")}});
    m.preparations["left"] = Preparation::point_mass("bl");
    m.preparations["right"] = Preparation::point_mass("br");
    m.preparations["top"] = top_row;
    m.initial = "initial";

    m.roles.boxes = {{"ML", "L", "notL"}, {"MR", "R", "notR"}};
    m.roles.final_measurement = "MT";
    m.roles.post_outcome = "T";
    m.roles.no_post_outcome = "notT";
    m.roles.do_nothing = "N";
    m.roles.eigen_preparations = {"left", "right", "top"};

    OperationalStats s;
    s.post_outcome = "T";
    s.no_post_outcome = "notT";
    s.boxes = {table("ML", "L", "notL", "1/4", "1/4", "0", "1/2"),
               table("MR", "R", "notR", "1/4", "1/4", "0", "1/2")};
    s.no_measurement_post = Rational(0);
    m.expected = s;
    m.metadata["summary"] = "four-position box shaken per compartment: MR1 and NIM2, detectable gap 1/4";
    return m;
}

std::vector<std::string> builtin_names() {
    return {"quantum_three_box", "cheating", "mr3", "mr2", "kirkpatrick", "ravon_vaidman",
            "leifer_spekkens"};
}

NamedModel builtin(const std::string& name) {
    if (name == "quantum_three_box") return quantum_three_box();
    if (name == "cheating") return cheating_model();
    if (name == "mr3") return mr3_model();
    if (name == "mr2")
        return mr2_model(rat("1/100"), rat("1/100"), rat("1/100"), rat("1/100"), rat("1/100"));
    if (name == "kirkpatrick") return kirkpatrick_model();
    if (name == "ravon_vaidman") return ravon_vaidman_model();
    if (name == "leifer_spekkens") return leifer_spekkens_model();
    throw std::invalid_argument("unknown builtin model: '" + name + "'");
}

std::vector<InstabilityRecord> repeat_instability(const ontic::Model& m) {
    std::vector<InstabilityRecord> records;
    for (const auto& [label, meas] : m.measurements)
        for (const auto& state : m.states)
            for (const auto& outcome : meas.outcomes) {
                if (meas.response_probability(state, outcome) == 0) continue;
                for (const auto& target : meas.updated(state, outcome).support())
                    if (meas.response_probability(target, outcome) != 1)
                        records.push_back({label, state, outcome, target});
            }
    return records;
}

}  // namespace threebox::zoo
