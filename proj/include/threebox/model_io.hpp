#pragma once

#include "threebox/classicality.hpp"
#include "threebox/game.hpp"
#include "threebox/model.hpp"

#include <stdexcept>
#include <string>

namespace threebox::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model file format (format_version 1): kind discriminator "quantum" or
// "ontic", rationals as "n" or "n/d" strings, complex amplitudes as
// [re, im] pairs, update kernels sparse (missing rows are identities).
NamedModel model_from_json(const std::string& text);
std::string model_to_json(const NamedModel& m);

NamedModel load_model(const std::string& path);
void save_model(const NamedModel& m, const std::string& path);

std::string report_to_json(const classicality::Report& r);

std::string distribution_to_json(const RationalDistribution& d);
std::string distribution_to_json(const quantum::Distribution& d);

std::string transcript_to_json(const game::Transcript& t);
std::string transcript_to_csv(const game::Transcript& t);
std::string ledger_to_json(const game::Ledger& l);
std::string umpire_to_json(const game::UmpireReport& r);
std::string cheat_check_to_json(const game::CheatCheckResult& r);

}  // namespace threebox::io
