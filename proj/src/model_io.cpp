#include "threebox/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace threebox::io {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json rational_json(const Rational& r) { return format_rational(r); }

Rational rational_from(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": rational must be a \"n/d\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

json complex_json(const quantum::Complex& c) { return json::array({c.real(), c.imag()}); }

quantum::Complex complex_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": complex number must be a [re, im] pair");
    return quantum::Complex(j[0].get<double>(), j[1].get<double>());
}

json ket_json(const quantum::Ket& k) {
    json out = json::array();
    for (const auto& c : k.amplitudes) out.push_back(complex_json(c));
    return out;
}

quantum::Ket ket_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": ket must be an array of [re, im] pairs");
    quantum::Vector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(complex_from(j[i], where + "[" + std::to_string(i) + "]"));
    return quantum::Ket{std::move(v)};
}

json matrix_json(const quantum::Matrix& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& c : row) r.push_back(complex_json(c));
        out.push_back(r);
    }
    return out;
}

quantum::Matrix matrix_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": matrix must be an array of rows");
    quantum::Matrix m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array()) throw ParseError(where + ": matrix row must be an array");
        quantum::Vector r;
        for (std::size_t k = 0; k < row.size(); ++k)
            r.push_back(complex_from(row[k], where + "[" + std::to_string(i) + "][" +
                                                 std::to_string(k) + "]"));
        m.push_back(std::move(r));
    }
    return m;
}

json preparation_json(const ontic::Preparation& p) {
    json out = json::object();
    for (const auto& [state, w] : p.weights()) out[state] = rational_json(w);
    return out;
}

ontic::Preparation preparation_from(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": preparation must be an object");
    std::map<std::string, Rational> weights;
    for (const auto& [state, w] : j.items()) weights[state] = rational_from(w, where + "." + state);
    try {
        return ontic::Preparation(std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

json roles_json(const Roles& r) {
    json boxes = json::array();
    for (const auto& b : r.boxes)
        boxes.push_back({{"measurement", b.measurement}, {"seen", b.seen}, {"not_seen", b.not_seen}});
    json out{{"boxes", boxes},
             {"final_measurement", r.final_measurement},
             {"post_outcome", r.post_outcome},
             {"no_post_outcome", r.no_post_outcome},
             {"do_nothing", r.do_nothing}};
    if (!r.eigen_preparations.empty()) out["eigen_preparations"] = r.eigen_preparations;
    return out;
}

Roles roles_from(const json& j) {
    if (!j.is_object()) throw ParseError("roles: must be an object");
    Roles r;
    for (const auto& b : j.at("boxes"))
        r.boxes.push_back({b.at("measurement").get<std::string>(), b.at("seen").get<std::string>(),
                           b.at("not_seen").get<std::string>()});
    r.final_measurement = j.at("final_measurement").get<std::string>();
    r.post_outcome = j.at("post_outcome").get<std::string>();
    r.no_post_outcome = j.at("no_post_outcome").get<std::string>();
    r.do_nothing = j.value("do_nothing", "N");
    if (j.contains("eigen_preparations"))
        r.eigen_preparations = j.at("eigen_preparations").get<std::vector<std::string>>();
    return r;
}

json stats_json(const OperationalStats& s) {
    json boxes = json::array();
    for (const auto& b : s.boxes)
        boxes.push_back({{"measurement", b.measurement},
                         {"seen", b.seen},
                         {"not_seen", b.not_seen},
                         {"seen_post", rational_json(b.seen_post)},
                         {"seen_no_post", rational_json(b.seen_no_post)},
                         {"not_seen_post", rational_json(b.not_seen_post)},
                         {"not_seen_no_post", rational_json(b.not_seen_no_post)}});
    return json{{"boxes", boxes},
                {"post_outcome", s.post_outcome},
                {"no_post_outcome", s.no_post_outcome},
                {"no_measurement_post", rational_json(s.no_measurement_post)}};
}

OperationalStats stats_from(const json& j) {
    OperationalStats s;
    s.post_outcome = j.at("post_outcome").get<std::string>();
    s.no_post_outcome = j.at("no_post_outcome").get<std::string>();
    s.no_measurement_post = rational_from(j.at("no_measurement_post"), "expected_stats");
    for (const auto& b : j.at("boxes")) {
        BoxTable t;
        t.measurement = b.at("measurement").get<std::string>();
        t.seen = b.at("seen").get<std::string>();
        t.not_seen = b.at("not_seen").get<std::string>();
        t.seen_post = rational_from(b.at("seen_post"), t.measurement);
        t.seen_no_post = rational_from(b.at("seen_no_post"), t.measurement);
        t.not_seen_post = rational_from(b.at("not_seen_post"), t.measurement);
        t.not_seen_no_post = rational_from(b.at("not_seen_no_post"), t.measurement);
        s.boxes.push_back(t);
    }
    return s;
}

json ontic_measurement_json(const ontic::Measurement& m) {
    json response = json::object();
    for (const auto& [state, row] : m.response) {
        json r = json::object();
        for (const auto& [outcome, p] : row)
            if (p != 0) r[outcome] = rational_json(p);
        response[state] = r;
    }
    json update = json::array();
    for (const auto& [state, row] : m.update)
        for (const auto& [outcome, post] : row)
            update.push_back(
                {{"state", state}, {"outcome", outcome}, {"post", preparation_json(post)}});
    json out{{"outcomes", m.outcomes}, {"response", response}};
    if (!update.empty()) out["update"] = update;
    return out;
}

ontic::Measurement ontic_measurement_from(const std::string& label, const json& j) {
    ontic::Measurement m;
    m.name = label;
    m.outcomes = j.at("outcomes").get<std::vector<std::string>>();
    for (const auto& [state, row] : j.at("response").items())
        for (const auto& [outcome, p] : row.items())
            m.response[state][outcome] = rational_from(p, label + "/" + state);
    // states with an all-zero sparse row still need a row entry
    for (const auto& [state, row] : j.at("response").items())
        if (m.response.find(state) == m.response.end()) m.response[state] = {};
    if (j.contains("update"))
        for (const auto& entry : j.at("update")) {
            std::string state = entry.at("state").get<std::string>();
            std::string outcome = entry.at("outcome").get<std::string>();
            m.update[state][outcome] =
                preparation_from(entry.at("post"), label + "/" + state + "/" + outcome);
        }
    return m;
}

}  // namespace

std::string model_to_json(const NamedModel& m) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = m.is_quantum() ? "quantum" : "ontic";
    out["name"] = m.name;
    if (!m.metadata.empty()) out["metadata"] = m.metadata;
    out["roles"] = roles_json(m.roles);
    out["initial_preparation"] = m.initial;
    out["expected_stats"] = stats_json(m.expected);

    if (m.is_quantum()) {
        out["dim"] = m.scenario.dim;
        json kets = json::object();
        for (const auto& [name, ket] : m.kets) kets[name] = ket_json(ket);
        out["kets"] = kets;
        json measurements = json::object();
        for (const auto& [label, meas] : m.scenario.measurements) {
            json outcomes = json::array();
            for (const auto& o : meas.outcomes)
                outcomes.push_back({{"label", o.label}, {"projector", matrix_json(o.projector)}});
            measurements[label] = json{{"outcomes", outcomes}};
        }
        out["measurements"] = measurements;
    } else {
        out["states"] = m.model.states;
        json measurements = json::object();
        for (const auto& [label, meas] : m.model.measurements)
            measurements[label] = ontic_measurement_json(meas);
        out["measurements"] = measurements;
        json preparations = json::object();
        for (const auto& [name, prep] : m.preparations) preparations[name] = preparation_json(prep);
        out["preparations"] = preparations;
    }
    return out.dump(2) + "\n";
}

NamedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw ParseError("model file must be a JSON object");
        int version = j.at("format_version").get<int>();
        if (version != kFormatVersion)
            throw ParseError("unsupported format_version " + std::to_string(version));
        std::string kind = j.at("kind").get<std::string>();

        NamedModel m;
        m.name = j.value("name", "unnamed");
        if (j.contains("metadata"))
            m.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        m.roles = roles_from(j.at("roles"));
        m.initial = j.at("initial_preparation").get<std::string>();
        if (j.contains("expected_stats")) m.expected = stats_from(j.at("expected_stats"));

        if (kind == "quantum") {
            m.kind = NamedModel::Kind::quantum;
            m.scenario.dim = j.at("dim").get<std::size_t>();
            m.scenario.do_nothing_label = m.roles.do_nothing;
            for (const auto& [name, ket] : j.at("kets").items())
                m.kets[name] = ket_from(ket, "kets." + name);
            for (const auto& [label, meas] : j.at("measurements").items()) {
                quantum::Measurement qm;
                qm.name = label;
                for (const auto& o : meas.at("outcomes"))
                    qm.outcomes.push_back({o.at("label").get<std::string>(),
                                           matrix_from(o.at("projector"), label)});
                m.scenario.measurements[label] = std::move(qm);
            }
            auto it = m.kets.find(m.initial);
            if (it == m.kets.end())
                throw ParseError("initial_preparation '" + m.initial + "' is not among kets");
            m.scenario.initial = it->second;
        } else if (kind == "ontic") {
            m.kind = NamedModel::Kind::ontic;
            m.model.states = j.at("states").get<std::vector<std::string>>();
            for (const auto& [label, meas] : j.at("measurements").items())
                m.model.measurements[label] = ontic_measurement_from(label, meas);
            for (const auto& [name, prep] : j.at("preparations").items())
                m.preparations[name] = preparation_from(prep, "preparations." + name);
            if (m.preparations.find(m.initial) == m.preparations.end())
                throw ParseError("initial_preparation '" + m.initial +
                                 "' is not among preparations");
        } else {
            throw ParseError("unknown kind '" + kind + "'");
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
}

NamedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

void save_model(const NamedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << model_to_json(m);
}

std::string report_to_json(const classicality::Report& r) {
    json gaps = json::object();
    for (const auto& [label, gap] : r.ndm_gaps) gaps[label] = rational_json(gap);
    json counterfactual = json::object();
    for (const auto& [label, gap] : r.counterfactual_gaps)
        counterfactual[label] = rational_json(gap);

    json out{{"schema", "threebox.report/1"},
             {"model", r.model},
             {"preparation", r.preparation},
             {"stats", stats_json(r.stats)},
             {"ndm_gaps", gaps},
             {"ndm", r.ndm},
             {"nim_bound", {{"slack", rational_json(r.nim_bound.slack)}, {"holds", r.nim_bound.holds}}},
             {"lgi", {{"value", rational_json(r.lgi.value)}, {"violated", r.lgi.violated}}},
             {"counterfactual_gaps", counterfactual},
             {"counterfactual_max", rational_json(r.counterfactual_max)},
             {"double_occupancy",
              {{"forward", rational_json(r.occupancy.forward)},
               {"backward", rational_json(r.occupancy.backward)},
               {"value", rational_json(r.occupancy.value())}}},
             {"mr_class", classicality::to_string(r.mr)},
             {"mr1_contradiction", r.mr1_contradiction}};
    if (r.pps)
        out["pps"] = {{"score", rational_json(r.pps->score)},
                      {"ndm", r.pps->ndm},
                      {"true_paradox", r.pps->true_paradox}};
    else
        out["pps"] = nullptr;
    if (r.nim12) {
        json n{{"nim1", r.nim12->nim1},
               {"nim2", r.nim12->nim2},
               {"via_decomposition", r.nim12->via_decomposition}};
        if (r.nim12->nim1_witness)
            n["nim1_witness"] = {{"box", r.nim12->nim1_witness->box},
                                 {"state", r.nim12->nim1_witness->state}};
        if (r.nim12->nim2_witness)
            n["nim2_witness"] = {{"box", r.nim12->nim2_witness->box},
                                 {"state", r.nim12->nim2_witness->state}};
        out["nim12"] = n;
    } else {
        out["nim12"] = nullptr;
    }
    if (!r.eigen_gaps.empty()) {
        json eg = json::object();
        for (const auto& [prep, per_meas] : r.eigen_gaps) {
            json row = json::object();
            for (const auto& [label, gap] : per_meas) row[label] = rational_json(gap);
            eg[prep] = row;
        }
        out["eigen_gaps"] = eg;
    }
    return out.dump(2) + "\n";
}

std::string distribution_to_json(const RationalDistribution& d) {
    json out = json::object();
    for (const auto& [key, p] : d) out[join_labels(key)] = rational_json(p);
    return out.dump(2) + "\n";
}

std::string distribution_to_json(const quantum::Distribution& d) {
    json out = json::object();
    for (const auto& [key, p] : d) out[join_labels(key)] = p;
    return out.dump(2) + "\n";
}

std::string transcript_to_json(const game::Transcript& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds) {
        json round{{"index", r.index},
                   {"choice", r.choice},
                   {"bob_outcomes", r.bob_outcomes},
                   {"bet_placed", r.bet_placed}};
        round["alice_outcome"] = r.alice_outcome.empty() ? json(nullptr) : json(r.alice_outcome);
        if (!r.alice_outcome.empty()) round["post_selected"] = r.post_selected;
        if (r.bet_placed) round["alice_won"] = r.alice_won;
        if (!r.immediate_winner.empty()) round["immediate_winner"] = r.immediate_winner;
        rounds.push_back(round);
    }
    json out{{"schema", "threebox.transcript/1"},
             {"model", t.model},
             {"seed", t.seed},
             {"strategy", t.strategy},
             {"rounds", rounds}};
    return out.dump(2) + "\n";
}

std::string transcript_to_csv(const game::Transcript& t) {
    std::ostringstream out;
    out << "index,choice,bob_outcomes,alice_outcome,post_selected,bet_placed,alice_won,"
           "immediate_winner\n";
    for (const auto& r : t.rounds) {
        std::string outcomes;
        for (const auto& o : r.bob_outcomes) {
            if (!outcomes.empty()) outcomes += ";";
            outcomes += o;
        }
        out << r.index << "," << r.choice << "," << outcomes << "," << r.alice_outcome << ","
            << (r.alice_outcome.empty() ? "" : (r.post_selected ? "1" : "0")) << ","
            << (r.bet_placed ? "1" : "0") << "," << (r.bet_placed ? (r.alice_won ? "1" : "0") : "")
            << "," << r.immediate_winner << "\n";
    }
    return out.str();
}

std::string ledger_to_json(const game::Ledger& l) {
    json out{{"schema", "threebox.ledger/1"},
             {"rounds", l.rounds},
             {"bets_placed", l.bets_placed},
             {"alice_bet_wins", l.alice_bet_wins},
             {"bob_bet_wins", l.bob_bet_wins},
             {"alice_immediate_wins", l.alice_immediate_wins},
             {"bob_immediate_wins", l.bob_immediate_wins},
             {"odds", l.odds},
             {"alice_net", l.alice_net}};
    if (l.bets_placed > 0) out["alice_win_rate"] = l.alice_win_rate();
    return out.dump(2) + "\n";
}

std::string umpire_to_json(const game::UmpireReport& r) {
    json choices = json::array();
    for (const auto& c : r.choices)
        choices.push_back({{"choice", c.choice},
                           {"rounds", c.rounds},
                           {"post_count", c.post_count},
                           {"p_hat", c.p_hat},
                           {"sigma", c.sigma}});
    json pairs = json::array();
    for (const auto& [a, b] : r.flagged_pairs) pairs.push_back(json::array({a, b}));
    json out{{"schema", "threebox.umpire/1"},
             {"choices", choices},
             {"flagged", r.flagged},
             {"flagged_pairs", pairs}};
    return out.dump(2) + "\n";
}

std::string cheat_check_to_json(const game::CheatCheckResult& r) {
    json out{{"schema", "threebox.cheat_check/1"},
             {"rounds_forward", r.rounds_forward},
             {"hits_forward", r.hits_forward},
             {"empirical_forward", r.empirical_forward()},
             {"exact_forward", rational_json(r.exact_forward)},
             {"rounds_backward", r.rounds_backward},
             {"hits_backward", r.hits_backward},
             {"empirical_backward", r.empirical_backward()},
             {"exact_backward", rational_json(r.exact_backward)}};
    return out.dump(2) + "\n";
}

}  // namespace threebox::io
