#pragma once

// JSON serialization of the public result types. Floating values are written
// with 9 significant digits; every artifact parses back into its structure.

#include <json.hpp>

#include "permsym/ci.hpp"
#include "permsym/compare.hpp"
#include "permsym/levelsym.hpp"
#include "permsym/oscillator.hpp"
#include "permsym/spin.hpp"
#include "permsym/symgroup.hpp"

namespace permsym {

using nlohmann::json;

/// v rounded to `digits` significant decimal digits.
[[nodiscard]] double round_significant(double v, int digits = 9);

void to_json(json& j, const SpinValue& s);
void from_json(const json& j, SpinValue& s);

void to_json(json& j, const Permutation& p);
void from_json(const json& j, Permutation& p);

void to_json(json& j, const ConjugacyClass& c);
void from_json(const json& j, ConjugacyClass& c);

void to_json(json& j, const IrrepId& irrep);
void from_json(const json& j, IrrepId& irrep);

void to_json(json& j, const CharacterTable& t);
void from_json(const json& j, CharacterTable& t);

void to_json(json& j, const LevelDescriptor& level);
void from_json(const json& j, LevelDescriptor& level);

void to_json(json& j, const AccidentalDegeneracy& d);
void from_json(const json& j, AccidentalDegeneracy& d);

void to_json(json& j, const SalcSet& s);
void from_json(const json& j, SalcSet& s);

void to_json(json& j, const MultipletTable& t);
void from_json(const json& j, MultipletTable& t);

void to_json(json& j, const AllowedIrrepMap& a);
void from_json(const json& j, AllowedIrrepMap& a);

void to_json(json& j, const CIState& s);
void from_json(const json& j, CIState& s);

void to_json(json& j, const MatchedState& s);
void from_json(const json& j, MatchedState& s);

void to_json(json& j, const MissingLevel& l);
void from_json(const json& j, MissingLevel& l);

void to_json(json& j, const SpuriousState& s);
void from_json(const json& j, SpuriousState& s);

void to_json(json& j, const ComparisonReport& r);
void from_json(const json& j, ComparisonReport& r);

/// Energies are finite except for horizons; those are written as null when infinite.
[[nodiscard]] json finite_or_null(double v);
[[nodiscard]] double finite_or_infinity(const json& j);

}  // namespace permsym
