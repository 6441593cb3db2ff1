#include "threebox/classicality.hpp"
#include "threebox/game.hpp"
#include "threebox/model_io.hpp"
#include "threebox/zoo.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace threebox;

namespace {

// probabilities cross the boundary as exact fraction strings; the python
// wrapper turns them into Fraction objects
std::map<std::string, std::string> distribution_dict(const RationalDistribution& d) {
    std::map<std::string, std::string> out;
    for (const auto& [key, p] : d) out[join_labels(key)] = format_rational(p);
    return out;
}

}  // namespace

PYBIND11_MODULE(_threebox, m) {
    m.doc() = "exact engine for three-box pre/post-selection experiments";

    py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<NamedModel>(m, "Model")
        .def_property_readonly("name", [](const NamedModel& s) { return s.name; })
        .def_property_readonly("kind",
                               [](const NamedModel& s) {
                                   return std::string(s.is_quantum() ? "quantum" : "ontic");
                               })
        .def_property_readonly("initial_preparation",
                               [](const NamedModel& s) { return s.initial; })
        .def_property_readonly("preparations",
                               [](const NamedModel& s) { return preparation_names(s); })
        .def_property_readonly("boxes",
                               [](const NamedModel& s) {
                                   std::vector<std::string> out;
                                   for (const auto& b : s.roles.boxes)
                                       out.push_back(b.measurement);
                                   return out;
                               })
        .def_property_readonly("metadata", [](const NamedModel& s) { return s.metadata; })
        .def("__repr__", [](const NamedModel& s) {
            return "<Model '" + s.name + "' (" + (s.is_quantum() ? "quantum" : "ontic") + ")>";
        });

    m.def("builtin_names", &zoo::builtin_names, "names of the bundled models");
    m.def("builtin", &zoo::builtin, py::arg("name"), "construct a bundled model");
    m.def("load_model", &io::load_model, py::arg("path"), "read a model from a JSON file");
    m.def("model_from_json", &io::model_from_json, py::arg("text"));
    m.def("model_to_json", &io::model_to_json, py::arg("model"));
    m.def("save_model", &io::save_model, py::arg("model"), py::arg("path"));

    m.def(
        "validate",
        [](const NamedModel& s) {
            std::vector<std::string> out;
            if (s.is_quantum()) {
                for (const auto& i : quantum::validate_scenario(s.scenario))
                    out.push_back(i.where + ": " + i.what);
            } else {
                for (const auto& i : ontic::validate_model(s.model))
                    out.push_back(i.where + ": " + i.what);
            }
            return out;
        },
        py::arg("model"), "structural issues, empty when the model is well formed");

    m.def(
        "sequence_distribution",
        [](const NamedModel& s, const std::vector<std::string>& labels,
           const std::string& prep) {
            return distribution_dict(
                model_sequence_distribution(s, prep.empty() ? s.initial : prep, labels));
        },
        py::arg("model"), py::arg("labels"), py::arg("prep") = std::string(),
        "exact joint distribution over outcome strings, as fraction strings");

    m.def(
        "report_json",
        [](const NamedModel& s, const std::string& prep) {
            return io::report_to_json(
                prep.empty() ? classicality::analyze(s) : classicality::analyze(s, prep));
        },
        py::arg("model"), py::arg("prep") = std::string(),
        "full classicality report as a JSON string");

    m.def(
        "play_json",
        [](const NamedModel& s, const std::string& strategy, std::uint64_t rounds,
           std::uint64_t seed) {
            auto t = game::play_rounds(s, game::parse_strategy(strategy, s), rounds, seed);
            return io::transcript_to_json(t);
        },
        py::arg("model"), py::arg("strategy") = "probe", py::arg("rounds") = 1000,
        py::arg("seed") = 1, "wager transcript as a JSON string");

    m.def(
        "ledger_json",
        [](const NamedModel& s, const std::string& strategy, std::uint64_t rounds,
           std::uint64_t seed, double odds) {
            auto t = game::play_rounds(s, game::parse_strategy(strategy, s), rounds, seed);
            return io::ledger_to_json(game::settle_bets(t, odds));
        },
        py::arg("model"), py::arg("strategy") = "probe", py::arg("rounds") = 1000,
        py::arg("seed") = 1, py::arg("odds") = 1.0, "settled wager totals as a JSON string");

    m.def(
        "umpire_json",
        [](const NamedModel& s, std::uint64_t rounds, std::uint64_t seed) {
            auto t = game::play_rounds(s, game::parse_strategy("probe", s), rounds, seed);
            return io::umpire_to_json(game::umpire_frequencies(t));
        },
        py::arg("model"), py::arg("rounds") = 3000, py::arg("seed") = 1,
        "post-selection rate comparison across choices, as a JSON string");

    m.def(
        "cheat_check_json",
        [](const NamedModel& s, std::uint64_t rounds, std::uint64_t seed) {
            return io::cheat_check_to_json(game::cheat_check(s, rounds, seed));
        },
        py::arg("model"), py::arg("rounds") = 2000, py::arg("seed") = 1,
        "double-check protocol results as a JSON string");
}
