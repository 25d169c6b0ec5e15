#include "permsym/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "permsym/errors.hpp"

namespace permsym {

double default_tolerance(int n) {
  switch (n) {
    case 3: return kDefaultTolN3;
    case 4: return kDefaultTolN4;
    default: throw DomainError("no default tolerance for N = " + std::to_string(n));
  }
}

bool ComparisonReport::verified() const {
  return spurious.empty() &&
         std::all_of(missing.begin(), missing.end(), [](const MissingLevel& l) { return l.forbidden_only; });
}

double convergence_horizon(const CIResult& fine, const CIResult& coarse, double tol) {
  using Key = std::pair<int, int>;
  std::map<Key, std::vector<double>> fine_blocks;
  std::map<Key, std::vector<double>> coarse_blocks;
  for (const auto& s : fine.states) fine_blocks[{s.twice_ms, s.parity}].push_back(s.energy);
  for (const auto& s : coarse.states) coarse_blocks[{s.twice_ms, s.parity}].push_back(s.energy);

  double horizon = std::numeric_limits<double>::infinity();
  for (const auto& [key, values] : fine_blocks) {
    auto it = coarse_blocks.find(key);
    const std::vector<double> empty;
    const auto& reference = it == coarse_blocks.end() ? empty : it->second;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i >= reference.size() || reference[i] - values[i] > tol) {
        horizon = std::min(horizon, values[i]);
        break;
      }
    }
  }
  return horizon;
}

double enumeration_horizon(const OscillatorModel& m, int max_total_quanta) {
  const int next = max_total_quanta + 1;
  double lowest = std::numeric_limits<double>::infinity();
  for (int n_sym = 0; n_sym <= next; ++n_sym) lowest = std::min(lowest, level_energy(m, n_sym, next - n_sym));
  return lowest;
}

ComparisonReport compare(const OscillatorModel& m, const CIResult& ci,
                         const std::vector<LevelDescriptor>& exact, const AllowedIrrepMap& allowed,
                         double tol, double horizon) {
  if (!(tol > 0.0)) throw DomainError("compare: tolerance must be positive");
  if (exact.empty()) throw DomainError("compare: no exact levels supplied");
  if (ci.n != m.n) throw SizeMismatchError("compare: CI result and model have different N");

  int max_quanta = 0;
  for (const auto& level : exact) {
    if (level.irrep_mults.empty()) throw DomainError("compare: exact levels must be classified first");
    max_quanta = std::max(max_quanta, level.n_sym + level.n_last);
  }

  ComparisonReport report;
  report.tolerance = tol;
  report.horizon = std::min(horizon, enumeration_horizon(m, max_quanta));

  auto holds_allowed_irrep = [&](const LevelDescriptor& level, SpinValue s) {
    for (const auto& [label, mult] : level.irrep_mults) {
      if (mult == 0) continue;
      const auto& spins = allowed.spins.at(label);
      if (std::find(spins.begin(), spins.end(), s) != spins.end()) return true;
    }
    return false;
  };

  std::set<std::pair<int, int>> hit;
  for (std::size_t idx = 0; idx < ci.states.size(); ++idx) {
    const auto& state = ci.states[idx];
    if (state.energy >= report.horizon) {
      ++report.unclassified;
      continue;
    }
    const LevelDescriptor* best = nullptr;
    double best_gap = std::numeric_limits<double>::infinity();
    for (const auto& level : exact) {
      const double gap = std::abs(level.energy - state.energy);
      if (gap > tol || gap >= best_gap) continue;
      if (level.parity != state.parity || !holds_allowed_irrep(level, state.spin)) continue;
      best = &level;
      best_gap = gap;
    }
    if (best) {
      hit.insert({best->n_sym, best->n_last});
      report.matched.push_back({idx, state.energy, best->energy, best->n_sym, best->n_last,
                                state.spin, state.twice_ms, state.parity});
    } else {
      report.spurious.push_back({idx, state.energy, state.spin, state.twice_ms, state.parity});
    }
  }

  std::vector<double> classified_energies;
  for (const auto& level : exact) {
    if (level.energy >= report.horizon) continue;
    classified_energies.push_back(level.energy);
    if (hit.contains({level.n_sym, level.n_last})) continue;
    MissingLevel miss{level.n_sym, level.n_last, level.energy, level.irrep_mults, true};
    for (const auto& [label, mult] : level.irrep_mults) {
      if (mult > 0 && allowed.allowed(label)) miss.forbidden_only = false;
    }
    report.missing.push_back(std::move(miss));
  }

  std::sort(classified_energies.begin(), classified_energies.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < classified_energies.size(); ++i) {
    const double gap = classified_energies[i] - classified_energies[i - 1];
    if (gap > 1e-12) min_gap = std::min(min_gap, gap);
  }
  report.vacuous = !std::isfinite(tol) || tol >= min_gap;
  return report;
}

}  // namespace permsym
