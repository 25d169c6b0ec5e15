#include "permsym/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "permsym/errors.hpp"

namespace permsym {

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return round_significant(v);
  return nullptr;
}

double finite_or_infinity(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

namespace {

json quanta_key(int n_sym, int n_last) { return json::array({n_sym, n_last}); }

void read_quanta_key(const json& j, int& n_sym, int& n_last) {
  if (!j.is_array() || j.size() != 2) throw DomainError("quanta_key must be [n_sym, n_last]");
  n_sym = j[0].get<int>();
  n_last = j[1].get<int>();
}

}  // namespace

void to_json(json& j, const SpinValue& s) { j = s.value(); }

void from_json(const json& j, SpinValue& s) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      s.twice = 2 * std::stoi(text);
    } else {
      if (text.substr(slash + 1) != "2") throw DomainError("spin must be an integer or half-integer: " + text);
      s.twice = std::stoi(text.substr(0, slash));
    }
    return;
  }
  const double twice = 2.0 * j.get<double>();
  if (std::abs(twice - std::round(twice)) > 1e-9 || twice < 0) {
    throw DomainError("spin must be a non-negative integer or half-integer");
  }
  s.twice = static_cast<int>(std::lround(twice));
}

void to_json(json& j, const Permutation& p) { j = p.images(); }

void from_json(const json& j, Permutation& p) { p = Permutation(j.get<std::vector<int>>()); }

void to_json(json& j, const ConjugacyClass& c) {
  j = json{{"cycle_type", c.type.parts}, {"size", c.size}, {"order", c.order}};
}

void from_json(const json& j, ConjugacyClass& c) {
  c.type.parts = j.at("cycle_type").get<std::vector<int>>();
  c.size = j.at("size").get<std::int64_t>();
  c.order = j.at("order").get<int>();
}

void to_json(json& j, const IrrepId& irrep) {
  j = json{{"label", irrep.label}, {"dimension", irrep.dimension}};
}

void from_json(const json& j, IrrepId& irrep) {
  irrep.label = j.at("label").get<std::string>();
  irrep.dimension = j.at("dimension").get<int>();
}

void to_json(json& j, const CharacterTable& t) {
  j = json{{"n", t.n},
           {"group_name", t.group_name},
           {"classes", t.classes},
           {"class_aliases", t.class_aliases},
           {"irreps", t.irreps},
           {"chars", t.chars}};
}

void from_json(const json& j, CharacterTable& t) {
  t.n = j.at("n").get<int>();
  t.group_name = j.at("group_name").get<std::string>();
  t.classes = j.at("classes").get<std::vector<ConjugacyClass>>();
  t.class_aliases = j.at("class_aliases").get<std::vector<std::string>>();
  t.irreps = j.at("irreps").get<std::vector<IrrepId>>();
  t.chars = j.at("chars").get<std::vector<std::vector<int>>>();
  if (auto violation = validate_table(t)) {
    throw DomainError("character table failed validation: " + violation->describe());
  }
}

void to_json(json& j, const LevelDescriptor& level) {
  j = json{{"quanta_key", quanta_key(level.n_sym, level.n_last)},
           {"energy", round_significant(level.energy)},
           {"degeneracy", level.degeneracy},
           {"parity", level.parity}};
  if (!level.irrep_mults.empty()) j["irrep_mults"] = level.irrep_mults;
}

void from_json(const json& j, LevelDescriptor& level) {
  read_quanta_key(j.at("quanta_key"), level.n_sym, level.n_last);
  level.energy = j.at("energy").get<double>();
  level.degeneracy = j.at("degeneracy").get<int>();
  level.parity = j.at("parity").get<int>();
  level.irrep_mults.clear();
  if (j.contains("irrep_mults")) level.irrep_mults = j.at("irrep_mults").get<std::map<std::string, int>>();
}

void to_json(json& j, const AccidentalDegeneracy& d) {
  j = json{{"first", quanta_key(d.first.first, d.first.second)},
           {"second", quanta_key(d.second.first, d.second.second)},
           {"energy_gap", round_significant(d.energy_gap)}};
}

void from_json(const json& j, AccidentalDegeneracy& d) {
  read_quanta_key(j.at("first"), d.first.first, d.first.second);
  read_quanta_key(j.at("second"), d.second.first, d.second.second);
  d.energy_gap = j.at("energy_gap").get<double>();
}

void to_json(json& j, const SalcSet& s) {
  json vectors = json::array();
  for (const auto& v : s.vectors) {
    json row = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(round_significant(v(i)));
    vectors.push_back(std::move(row));
  }
  j = json{{"irrep", s.irrep}, {"copies", s.copies}, {"vectors", std::move(vectors)}};
}

void from_json(const json& j, SalcSet& s) {
  s.irrep = j.at("irrep").get<IrrepId>();
  s.copies = j.at("copies").get<int>();
  s.vectors.clear();
  for (const auto& row : j.at("vectors")) {
    const auto values = row.get<std::vector<double>>();
    s.vectors.push_back(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
}

void to_json(json& j, const MultipletTable& t) {
  j = json::array();
  for (const auto& [spin, count] : t.counts) {
    j.push_back(json{{"S", spin}, {"multiplet", spin.multiplet_name()}, {"count", count}});
  }
}

void from_json(const json& j, MultipletTable& t) {
  t.counts.clear();
  for (const auto& entry : j) t.counts[entry.at("S").get<SpinValue>()] = entry.at("count").get<int>();
}

void to_json(json& j, const AllowedIrrepMap& a) {
  j = json::object();
  for (const auto& [label, spins] : a.spins) {
    json names = json::array();
    for (const auto& s : spins) names.push_back(s.multiplet_name());
    j[label] = json{{"allowed", !spins.empty()}, {"S", spins}, {"multiplets", std::move(names)}};
  }
}

void from_json(const json& j, AllowedIrrepMap& a) {
  a.spins.clear();
  for (const auto& [label, entry] : j.items()) a.spins[label] = entry.at("S").get<std::vector<SpinValue>>();
}

void to_json(json& j, const CIState& s) {
  j = json{{"energy", round_significant(s.energy)},
           {"S2", round_significant(s.s_squared)},
           {"S", s.spin},
           {"Ms", s.twice_ms / 2.0},
           {"parity", s.parity}};
}

void from_json(const json& j, CIState& s) {
  s.energy = j.at("energy").get<double>();
  s.s_squared = j.at("S2").get<double>();
  s.spin = j.at("S").get<SpinValue>();
  s.twice_ms = static_cast<int>(std::lround(2.0 * j.at("Ms").get<double>()));
  s.parity = j.at("parity").get<int>();
}

void to_json(json& j, const MatchedState& s) {
  j = json{{"ci_index", s.ci_index},
           {"ci_energy", round_significant(s.ci_energy)},
           {"exact_energy", round_significant(s.exact_energy)},
           {"quanta_key", quanta_key(s.n_sym, s.n_last)},
           {"S", s.spin},
           {"Ms", s.twice_ms / 2.0},
           {"parity", s.parity}};
}

void from_json(const json& j, MatchedState& s) {
  s.ci_index = j.at("ci_index").get<std::size_t>();
  s.ci_energy = j.at("ci_energy").get<double>();
  s.exact_energy = j.at("exact_energy").get<double>();
  read_quanta_key(j.at("quanta_key"), s.n_sym, s.n_last);
  s.spin = j.at("S").get<SpinValue>();
  s.twice_ms = static_cast<int>(std::lround(2.0 * j.at("Ms").get<double>()));
  s.parity = j.at("parity").get<int>();
}

void to_json(json& j, const MissingLevel& l) {
  j = json{{"quanta_key", quanta_key(l.n_sym, l.n_last)},
           {"energy", round_significant(l.energy)},
           {"irrep_mults", l.irrep_mults},
           {"forbidden_only", l.forbidden_only}};
}

void from_json(const json& j, MissingLevel& l) {
  read_quanta_key(j.at("quanta_key"), l.n_sym, l.n_last);
  l.energy = j.at("energy").get<double>();
  l.irrep_mults = j.at("irrep_mults").get<std::map<std::string, int>>();
  l.forbidden_only = j.at("forbidden_only").get<bool>();
}

void to_json(json& j, const SpuriousState& s) {
  j = json{{"ci_index", s.ci_index},
           {"energy", round_significant(s.energy)},
           {"S", s.spin},
           {"Ms", s.twice_ms / 2.0},
           {"parity", s.parity}};
}

void from_json(const json& j, SpuriousState& s) {
  s.ci_index = j.at("ci_index").get<std::size_t>();
  s.energy = j.at("energy").get<double>();
  s.spin = j.at("S").get<SpinValue>();
  s.twice_ms = static_cast<int>(std::lround(2.0 * j.at("Ms").get<double>()));
  s.parity = j.at("parity").get<int>();
}

void to_json(json& j, const ComparisonReport& r) {
  j = json{{"matched", r.matched},
           {"missing", r.missing},
           {"spurious", r.spurious},
           {"tolerance", r.tolerance},
           {"horizon", finite_or_null(r.horizon)},
           {"unclassified", r.unclassified},
           {"vacuous", r.vacuous},
           {"verified", r.verified()}};
}

void from_json(const json& j, ComparisonReport& r) {
  r.matched = j.at("matched").get<std::vector<MatchedState>>();
  r.missing = j.at("missing").get<std::vector<MissingLevel>>();
  r.spurious = j.at("spurious").get<std::vector<SpuriousState>>();
  r.tolerance = j.at("tolerance").get<double>();
  r.horizon = finite_or_infinity(j.at("horizon"));
  r.unclassified = j.at("unclassified").get<std::size_t>();
  r.vacuous = j.at("vacuous").get<bool>();
}

}  // namespace permsym
