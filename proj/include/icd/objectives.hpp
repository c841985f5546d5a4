#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "icd/discriminator.hpp"
#include "icd/parameters.hpp"
#include "icd/rational.hpp"
#include "icd/signal.hpp"

namespace icd {

// Whether any therapy bit is set.
bool reachability(const TherapySignal& t);

// Reachability of every signal under the nominal parameters.
std::vector<bool> baseline_reach(std::span<const PreparedSignal> signals, const ParameterDomain& d);

// Fraction of signals whose reachability differs from the baseline.
Rational effectiveness(const ParamVector& v, const ParameterDomain& d,
                       std::span<const PreparedSignal> signals, const std::vector<bool>& baseline);

// Same, from therapy signal pairs (nominal, attacked).
Rational effectiveness(std::span<const TherapySignal> nominal, std::span<const TherapySignal> attacked);

struct FrontPoint {
  int distance = 0;
  Rational effectiveness;
  ParamVector witness;

  bool operator==(const FrontPoint&) const = default;
};

// Non-dominated points sorted by distance; effectiveness strictly increases.
struct ParetoFront {
  std::vector<FrontPoint> points;

  std::size_t size() const noexcept { return points.size(); }
  bool operator==(const ParetoFront&) const = default;
};

// Drops dominated candidates. Among equal (distance, effectiveness) pairs the
// lexicographically smallest witness is kept.
ParetoFront pareto_filter(std::vector<FrontPoint> candidates);

// Mean of test minus train effectiveness over the front witnesses.
Rational validation_score(const ParetoFront& front, const ParameterDomain& d,
                          std::span<const PreparedSignal> train, std::span<const PreparedSignal> test);

// Integral over [0, dist_max] of the best effectiveness reachable within
// distance s (a right-continuous step function, 0 before the first point).
Rational auc(const ParetoFront& front, const ParameterDomain& d);
Rational auc(const ParetoFront& front, int dist_max);

// distance,effectiveness,VF_th,VT_th,AFib_th,VFdur,VTdur,NSRcor_th,stb
void write_front_csv(std::ostream& out, const ParetoFront& front, const ParameterDomain& d);

struct FrontRow {
  int distance = 0;
  double effectiveness = 0;
  ParamVector witness;
};
std::vector<FrontRow> read_front_csv(std::istream& in, const ParameterDomain& d);

// Shortest decimal that round-trips the value.
std::string format_decimal(double v);

}  // namespace icd
