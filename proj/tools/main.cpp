#include "threebox/classicality.hpp"
#include "threebox/game.hpp"
#include "threebox/model_io.hpp"
#include "threebox/zoo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace threebox;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

// A model argument is a builtin name, a file path, or a file name under
// $THREEBOX_FIXTURE_DIR.
NamedModel resolve_model(const std::string& arg) {
    for (const auto& name : zoo::builtin_names())
        if (name == arg) return zoo::builtin(name);
    if (std::filesystem::exists(arg)) return io::load_model(arg);
    if (const char* dir = std::getenv("THREEBOX_FIXTURE_DIR")) {
        for (const auto& candidate :
             {std::filesystem::path(dir) / arg, std::filesystem::path(dir) / (arg + ".json")})
            if (std::filesystem::exists(candidate)) return io::load_model(candidate.string());
    }
    throw io::ParseError("'" + arg + "' is neither a builtin model nor a readable file");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io::ParseError("cannot write '" + out_path + "'");
    out << text;
}

std::vector<std::string> split_labels(const std::string& csv) {
    std::vector<std::string> labels;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) labels.push_back(item);
    return labels;
}

std::string stats_text(const OperationalStats& s) {
    std::ostringstream out;
    for (const auto& b : s.boxes) {
        out << b.measurement << " then post-selection:\n";
        out << "  P(" << b.seen << ", " << s.post_outcome << ") = "
            << format_rational(b.seen_post) << "\n";
        out << "  P(" << b.not_seen << ", " << s.post_outcome << ") = "
            << format_rational(b.not_seen_post) << "\n";
        out << "  P(" << b.seen << ", " << s.no_post_outcome << ") = "
            << format_rational(b.seen_no_post) << "\n";
        out << "  P(" << b.not_seen << ", " << s.no_post_outcome << ") = "
            << format_rational(b.not_seen_no_post) << "\n";
    }
    out << "no measurement: P(" << s.post_outcome << ") = "
        << format_rational(s.no_measurement_post) << "\n";
    return out.str();
}

std::string report_text(const classicality::Report& r) {
    std::ostringstream out;
    out << "model: " << r.model << " (preparation: " << r.preparation << ")\n";
    out << stats_text(r.stats);
    out << "detectability gaps:";
    for (const auto& [box, gap] : r.ndm_gaps) out << " " << box << "=" << format_rational(gap);
    out << (r.ndm ? "  -> undetectable" : "  -> detectable") << "\n";
    if (r.pps) {
        out << "paradox score: " << format_rational(r.pps->score)
            << (r.pps->true_paradox ? "  (true pre/post-selection paradox)" : "") << "\n";
    } else {
        out << "paradox score: undefined (a box never post-selects)\n";
    }
    out << "non-invasive bound slack: " << format_rational(r.nim_bound.slack)
        << (r.nim_bound.holds ? "  (holds)" : "  (violated)") << "\n";
    out << "two-box inequality: " << format_rational(r.lgi.value)
        << (r.lgi.violated ? "  (violated)" : "  (satisfied)") << "\n";
    out << "counterfactual gap:";
    for (const auto& [box, gap] : r.counterfactual_gaps)
        out << " " << box << "=" << format_rational(gap);
    out << "  max=" << format_rational(r.counterfactual_max) << "\n";
    out << "double occupancy: " << format_rational(r.occupancy.value()) << "\n";
    out << "macrorealist grade: " << classicality::to_string(r.mr) << "\n";
    if (r.nim12) {
        out << "conditioning: seen-branch " << (r.nim12->nim1 ? "exact" : "disturbed")
            << ", unseen-branch " << (r.nim12->nim2 ? "exact" : "disturbed");
        if (r.nim12->nim1_witness)
            out << "  [seen witness: " << r.nim12->nim1_witness->box << "/"
                << r.nim12->nim1_witness->state << "]";
        if (r.nim12->nim2_witness)
            out << "  [unseen witness: " << r.nim12->nim2_witness->box << "/"
                << r.nim12->nim2_witness->state << "]";
        out << "\n";
    }
    return out.str();
}

int run_validate(const std::string& model_arg, bool as_json) {
    auto m = resolve_model(model_arg);
    std::vector<std::pair<std::string, std::string>> issues;
    if (m.is_quantum()) {
        for (const auto& i : quantum::validate_scenario(m.scenario))
            issues.emplace_back(i.where, i.what);
    } else {
        for (const auto& i : ontic::validate_model(m.model)) issues.emplace_back(i.where, i.what);
        for (const auto& [name, prep] : m.preparations)
            for (const auto& i : ontic::validate_preparation(m.model, prep))
                issues.emplace_back(name + ": " + i.where, i.what);
    }
    if (as_json) {
        std::cout << "{\"model\": \"" << m.name << "\", \"issues\": [";
        for (std::size_t i = 0; i < issues.size(); ++i)
            std::cout << (i ? ", " : "") << "{\"where\": \"" << issues[i].first
                      << "\", \"what\": \"" << issues[i].second << "\"}";
        std::cout << "], \"ok\": " << (issues.empty() ? "true" : "false") << "}\n";
    } else if (issues.empty()) {
        std::cout << m.name << ": ok\n";
    } else {
        for (const auto& [where, what] : issues)
            std::cout << m.name << ": " << where << ": " << what << "\n";
    }
    return issues.empty() ? kExitOk : kExitCheckFailed;
}

int run_stats(const std::string& model_arg, const std::string& prep, const std::string& seq,
              bool as_json, const std::string& out_path) {
    auto m = resolve_model(model_arg);
    std::string prep_name = prep.empty() ? m.initial : prep;
    if (!seq.empty()) {
        auto d = model_sequence_distribution(m, prep_name, split_labels(seq));
        if (as_json) {
            emit(io::distribution_to_json(d), out_path);
        } else {
            std::ostringstream out;
            for (const auto& [key, p] : d)
                out << join_labels(key) << ": " << format_rational(p) << "\n";
            emit(out.str(), out_path);
        }
        return kExitOk;
    }
    auto s = to_stats(m, prep_name);
    if (as_json) {
        auto r = classicality::analyze(m, prep_name);
        emit(io::report_to_json(r), out_path);
    } else {
        emit(stats_text(s), out_path);
    }
    return kExitOk;
}

int run_check(const std::string& model_arg, const std::string& prep, bool as_json,
              const std::string& out_path) {
    auto m = resolve_model(model_arg);
    std::string prep_name = prep.empty() ? m.initial : prep;

    std::vector<std::string> problems;
    if (m.is_quantum()) {
        for (const auto& i : quantum::validate_scenario(m.scenario))
            problems.push_back(i.where + ": " + i.what);
    } else {
        for (const auto& i : ontic::validate_model(m.model))
            problems.push_back(i.where + ": " + i.what);
    }

    auto r = classicality::analyze(m, prep_name);
    if (prep_name == m.initial && !m.expected.boxes.empty()) {
        const auto& s = r.stats;
        bool match = s.boxes.size() == m.expected.boxes.size() &&
                     s.no_measurement_post == m.expected.no_measurement_post;
        for (std::size_t i = 0; match && i < s.boxes.size(); ++i)
            match = s.boxes[i].seen_post == m.expected.boxes[i].seen_post &&
                    s.boxes[i].seen_no_post == m.expected.boxes[i].seen_no_post &&
                    s.boxes[i].not_seen_post == m.expected.boxes[i].not_seen_post &&
                    s.boxes[i].not_seen_no_post == m.expected.boxes[i].not_seen_no_post;
        if (!match) problems.push_back("statistics do not match the stored table");
    }
    if (r.mr1_contradiction)
        problems.push_back("MR1 grade with zero eigen gaps contradicts the violated inequality");

    if (as_json) {
        emit(io::report_to_json(r), out_path);
    } else {
        std::ostringstream out;
        out << report_text(r);
        for (const auto& p : problems) out << "problem: " << p << "\n";
        out << (problems.empty() ? "check: ok" : "check: FAILED") << "\n";
        emit(out.str(), out_path);
    }
    return problems.empty() ? kExitOk : kExitCheckFailed;
}

int run_export(const std::string& model_arg, const std::string& out_path) {
    auto m = resolve_model(model_arg);
    emit(io::model_to_json(m), out_path);
    return kExitOk;
}

int run_interactive(const NamedModel& m, std::uint64_t seed, double odds) {
    std::cout << "model " << m.name << "; boxes:";
    for (const auto& b : m.roles.boxes) std::cout << " " << b.measurement;
    std::cout << "; enter labels per round (e.g. '" << m.roles.boxes[0].measurement << "' or '"
              << m.roles.boxes[0].measurement << " " << m.roles.boxes[1].measurement
              << "'), '" << m.roles.do_nothing << "' to pass, 'q' to quit\n";
    game::Transcript t;
    t.model = m.name;
    t.seed = seed;
    t.strategy = "interactive";
    std::string line;
    std::uint64_t i = 0;
    while (std::cout << "round " << i << "> " && std::getline(std::cin, line)) {
        std::istringstream in(line);
        std::vector<std::string> labels;
        std::string word;
        while (in >> word) labels.push_back(word);
        if (labels.size() == 1 && (labels[0] == "q" || labels[0] == "quit")) break;
        game::Play play;
        if (!(labels.size() == 1 && labels[0] == m.roles.do_nothing)) play.labels = labels;
        play.double_check = play.labels.size() > 1;
        auto rng = SplitMix64::substream(seed, i);
        game::Round round;
        try {
            round = game::play_one(m, play, rng, i);
        } catch (const std::exception& e) {
            std::cout << "  invalid play: " << e.what() << "\n";
            continue;
        }
        ++i;
        for (std::size_t k = 0; k < round.bob_outcomes.size(); ++k)
            std::cout << "  " << play.labels[k] << " -> " << round.bob_outcomes[k] << "\n";
        if (!round.immediate_winner.empty())
            std::cout << "  settled immediately for " << round.immediate_winner << "\n";
        if (!round.alice_outcome.empty())
            std::cout << "  final measurement -> " << round.alice_outcome << "\n";
        if (round.bet_placed)
            std::cout << "  bet: " << (round.alice_won ? "alice wins" : "bob wins") << "\n";
        t.rounds.push_back(round);
    }
    auto ledger = game::settle_bets(t, odds);
    std::cout << io::ledger_to_json(ledger);
    return kExitOk;
}

int run_game(const std::string& model_arg, std::uint64_t rounds, std::uint64_t seed,
             const std::string& strategy_text, double odds, bool umpire, bool cheat_probe,
             bool interactive, bool as_json, const std::string& out_path,
             const std::string& csv_path) {
    auto m = resolve_model(model_arg);
    if (interactive) return run_interactive(m, seed, odds);
    if (cheat_probe) {
        auto result = game::cheat_check(m, rounds, seed);
        if (as_json) {
            emit(io::cheat_check_to_json(result), out_path);
        } else {
            std::ostringstream out;
            out << "forward:  " << result.hits_forward << "/" << result.rounds_forward
                << " both seen (exact " << format_rational(result.exact_forward) << ")\n";
            out << "backward: " << result.hits_backward << "/" << result.rounds_backward
                << " both seen (exact " << format_rational(result.exact_backward) << ")\n";
            emit(out.str(), out_path);
        }
        return kExitOk;
    }
    auto strategy = game::parse_strategy(strategy_text, m);
    auto t = game::play_rounds(m, strategy, rounds, seed);
    if (!csv_path.empty()) emit(io::transcript_to_csv(t), csv_path);
    std::ostringstream out;
    if (umpire) {
        auto report = game::umpire_frequencies(t);
        if (as_json) {
            out << io::umpire_to_json(report);
        } else {
            for (const auto& c : report.choices)
                out << c.choice << ": " << c.post_count << "/" << c.rounds
                    << " post-selected (rate " << c.p_hat << ", sigma " << c.sigma << ")\n";
            out << (report.flagged ? "umpire: rates differ beyond 3 sigma\n"
                                   : "umpire: rates consistent\n");
        }
        emit(out.str(), out_path);
        return report.flagged ? kExitCheckFailed : kExitOk;
    }
    auto ledger = game::settle_bets(t, odds);
    if (as_json) {
        out << io::ledger_to_json(ledger);
    } else {
        out << "rounds: " << ledger.rounds << "\n";
        out << "bets placed: " << ledger.bets_placed << " (alice " << ledger.alice_bet_wins
            << ", bob " << ledger.bob_bet_wins << ")\n";
        if (ledger.alice_immediate_wins + ledger.bob_immediate_wins > 0)
            out << "immediate settlements: alice " << ledger.alice_immediate_wins << ", bob "
                << ledger.bob_immediate_wins << "\n";
        out << "alice net: " << ledger.alice_net << " at odds " << ledger.odds << "\n";
    }
    emit(out.str(), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-box pre/post-selection paradox toolkit"};
    app.require_subcommand(1);

    std::string builtin_list;
    for (const auto& name : zoo::builtin_names()) builtin_list += "\n  " + name;
    app.footer("builtin models:" + builtin_list +
               "\nmodel arguments also accept JSON files (searched in $THREEBOX_FIXTURE_DIR)");

    std::string model_arg, prep, seq, out_path, csv_path, strategy_text = "probe";
    bool as_json = false, umpire = false, cheat_probe = false, interactive = false;
    std::uint64_t rounds = 1000, seed = 1;
    double odds = 1.0;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("model", model_arg, "builtin name or JSON file")->required();
    };

    auto* validate = app.add_subcommand("validate", "structural checks on a model file");
    add_model(validate);
    validate->add_flag("--json", as_json, "machine-readable output");

    auto* stats = app.add_subcommand("stats", "exact outcome statistics");
    add_model(stats);
    stats->add_option("--prep", prep, "preparation name (default: the model's initial)");
    stats->add_option("--seq", seq, "comma-separated measurement sequence");
    stats->add_flag("--json", as_json, "machine-readable output");
    stats->add_option("--out", out_path, "write to a file instead of stdout");

    auto* check = app.add_subcommand("check", "full classicality analysis with verdicts");
    add_model(check);
    check->add_option("--prep", prep, "preparation name (default: the model's initial)");
    check->add_flag("--json", as_json, "machine-readable output");
    check->add_option("--out", out_path, "write to a file instead of stdout");

    auto* game_cmd = app.add_subcommand("game", "simulate the wager");
    add_model(game_cmd);
    game_cmd->add_option("--rounds", rounds, "number of rounds")->check(CLI::PositiveNumber);
    game_cmd->add_option("--seed", seed, "RNG seed");
    game_cmd->add_option("--strategy", strategy_text,
                         "probe | random[:p] | cheat[:q] | fixed:LABEL");
    game_cmd->add_option("--odds", odds, "stake paid per lost bet");
    game_cmd->add_flag("--umpire", umpire, "compare post-selection rates across choices");
    game_cmd->add_flag("--cheat-check", cheat_probe, "double-check protocol in both orders");
    game_cmd->add_flag("--interactive", interactive, "play round by round on stdin");
    game_cmd->add_flag("--json", as_json, "machine-readable output");
    game_cmd->add_option("--out", out_path, "write to a file instead of stdout");
    game_cmd->add_option("--csv", csv_path, "also write the transcript as CSV");

    auto* export_cmd = app.add_subcommand("export", "write a model as JSON");
    add_model(export_cmd);
    export_cmd->add_option("--out", out_path, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(model_arg, as_json);
        if (app.got_subcommand(stats)) return run_stats(model_arg, prep, seq, as_json, out_path);
        if (app.got_subcommand(check)) return run_check(model_arg, prep, as_json, out_path);
        if (app.got_subcommand(game_cmd))
            return run_game(model_arg, rounds, seed, strategy_text, odds, umpire, cheat_probe,
                            interactive, as_json, out_path, csv_path);
        if (app.got_subcommand(export_cmd)) return run_export(model_arg, out_path);
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
