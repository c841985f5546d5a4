#include "icd/objectives.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "icd/error.hpp"

namespace icd {

bool reachability(const TherapySignal& t) {
  return std::any_of(t.bits.begin(), t.bits.end(), [](bool b) { return b; });
}

std::vector<bool> baseline_reach(std::span<const PreparedSignal> signals, const ParameterDomain& d) {
  const Params nominal = to_params(ParamVector::nominal(d), d);
  std::vector<bool> out;
  out.reserve(signals.size());
  for (const auto& s : signals) out.push_back(reachability(run(s, nominal)));
  return out;
}

Rational effectiveness(const ParamVector& v, const ParameterDomain& d,
                       std::span<const PreparedSignal> signals, const std::vector<bool>& baseline) {
  if (signals.empty()) throw Error("effectiveness of an empty signal set is undefined");
  if (baseline.size() != signals.size()) throw Error("baseline size does not match signal count");
  const Params p = to_params(v, d);
  std::int64_t flips = 0;
  for (std::size_t j = 0; j < signals.size(); ++j)
    flips += reachability(run(signals[j], p)) != baseline[j] ? 1 : 0;
  return Rational(flips, static_cast<std::int64_t>(signals.size()));
}

Rational effectiveness(std::span<const TherapySignal> nominal, std::span<const TherapySignal> attacked) {
  if (nominal.empty() || nominal.size() != attacked.size())
    throw Error("therapy signal sets must be non-empty and of equal size");
  std::int64_t flips = 0;
  for (std::size_t j = 0; j < nominal.size(); ++j)
    flips += reachability(nominal[j]) != reachability(attacked[j]) ? 1 : 0;
  return Rational(flips, static_cast<std::int64_t>(nominal.size()));
}

ParetoFront pareto_filter(std::vector<FrontPoint> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const FrontPoint& a, const FrontPoint& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.effectiveness != b.effectiveness) return a.effectiveness > b.effectiveness;
    return a.witness < b.witness;
  });
  ParetoFront front;
  for (auto& c : candidates) {
    if (!front.points.empty() && c.effectiveness <= front.points.back().effectiveness) continue;
    front.points.push_back(std::move(c));
  }
  return front;
}

Rational validation_score(const ParetoFront& front, const ParameterDomain& d,
                          std::span<const PreparedSignal> train, std::span<const PreparedSignal> test) {
  if (front.points.empty()) throw Error("validation score of an empty front is undefined");
  const auto train_base = baseline_reach(train, d);
  const auto test_base = baseline_reach(test, d);
  Rational sum;
  for (const auto& p : front.points)
    sum += effectiveness(p.witness, d, test, test_base) - effectiveness(p.witness, d, train, train_base);
  return sum / Rational(static_cast<std::int64_t>(front.points.size()));
}

Rational auc(const ParetoFront& front, const ParameterDomain& d) { return auc(front, dist_max(d)); }

Rational auc(const ParetoFront& front, int dmax) {
  Rational area;
  Rational best;
  const auto& pts = front.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    best = std::max(best, pts[i].effectiveness);
    const int from = std::min(pts[i].distance, dmax);
    const int to = i + 1 < pts.size() ? std::min(pts[i + 1].distance, dmax) : dmax;
    if (to > from) area += best * Rational(to - from);
  }
  return area;
}

std::string format_decimal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

void write_front_csv(std::ostream& out, const ParetoFront& front, const ParameterDomain& d) {
  out << "distance,effectiveness";
  for (ParamId id : kAllParams) out << ',' << param_name(id);
  out << '\n';
  for (const auto& p : front.points) {
    out << p.distance << ',' << format_decimal(p.effectiveness.to_double());
    for (ParamId id : kAllParams) out << ',' << format_decimal(d[id].value(p.witness[id]));
    out << '\n';
  }
}

std::vector<FrontRow> read_front_csv(std::istream& in, const ParameterDomain& d) {
  std::vector<FrontRow> rows;
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("distance", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 2 + kParamCount)
      throw ParseError("front CSV line " + std::to_string(line_no) + ": expected " +
                       std::to_string(2 + kParamCount) + " columns");
    FrontRow row;
    try {
      row.distance = std::stoi(cells[0]);
      row.effectiveness = std::stod(cells[1]);
      for (std::size_t i = 0; i < kParamCount; ++i) {
        const auto id = kAllParams[i];
        const auto idx = index_of_value(d, id, std::stod(cells[2 + i]));
        if (!idx)
          throw ParseError("front CSV line " + std::to_string(line_no) + ": " + cells[2 + i] +
                           " is not a programmable " + std::string(param_name(id)) + " value");
        row.witness[id] = *idx;
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("front CSV line " + std::to_string(line_no) + ": malformed number");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace icd
