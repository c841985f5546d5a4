#include "icd/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "icd/error.hpp"
#include "icd/signal_io.hpp"

namespace icd {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kParamCount> kNames = {
    "VF_th", "VT_th", "AFib_th", "VFdur", "VTdur", "NSRcor_th", "stb"};

constexpr std::array<Unit, kParamCount> kUnits = {
    Unit::Bpm, Unit::Bpm, Unit::Bpm, Unit::Seconds, Unit::Seconds, Unit::Score, Unit::Ms2};

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-6; }

double snap(double x) { return std::round(x * 1e6) / 1e6; }

void append_range(std::vector<double>& out, double start, double step, double stop) {
  auto r = expand_range(start, step, stop);
  out.insert(out.end(), r.begin(), r.end());
}

int find_index(const std::vector<double>& values, double v) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::abs(values[i] - v) < 1e-9) return static_cast<int>(i) + 1;
  return 0;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(context + ": not a number: '" + s + "'");
  }
}

}  // namespace

std::string_view param_name(ParamId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<ParamId> param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (kNames[i] == name) return static_cast<ParamId>(i);
  return std::nullopt;
}

Unit param_unit(ParamId id) { return kUnits[static_cast<std::size_t>(id)]; }

std::string_view unit_name(Unit unit) {
  switch (unit) {
    case Unit::Bpm: return "BPM";
    case Unit::Seconds: return "s";
    case Unit::Score: return "score";
    case Unit::Ms2: return "ms2";
  }
  return "?";
}

std::vector<double> expand_range(double start, double step, double stop) {
  if (step <= 0) throw DomainError("range step must be positive");
  if (stop < start) throw DomainError("range stop precedes start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(snap(start + static_cast<double>(i) * step));
  return out;
}

std::int64_t ParameterDomain::engine_value(ParamId id, double v) const {
  switch (param_unit(id)) {
    case Unit::Bpm: {
      if (v <= 0) throw DomainError(std::string(param_name(id)) + ": BPM must be positive");
      if (near_integer(v)) {
        const auto bpm = static_cast<std::int64_t>(std::llround(v));
        return rounding_ == BpmRounding::Ceil ? (60000 + bpm - 1) / bpm : (2 * 60000 + bpm) / (2 * bpm);
      }
      const double ms = 60000.0 / v;
      return rounding_ == BpmRounding::Ceil ? static_cast<std::int64_t>(std::ceil(ms - 1e-9))
                                            : static_cast<std::int64_t>(std::floor(ms + 0.5));
    }
    case Unit::Seconds: return std::llround(v * 1000.0);
    case Unit::Score: return std::llround(v * 100.0);
    case Unit::Ms2: return std::llround(v);
  }
  return 0;
}

void ParameterDomain::validate() const {
  for (ParamId id : kAllParams) {
    const auto& list = (*this)[id];
    const std::string name(param_name(id));
    if (list.values.empty()) throw DomainError(name + ": empty value list");
    for (std::size_t i = 1; i < list.values.size(); ++i)
      if (!(list.values[i - 1] < list.values[i])) throw DomainError(name + ": values not strictly ascending");
    if (list.nominal_index < 1 || list.nominal_index > list.size())
      throw DomainError(name + ": nominal index out of range");
    std::set<std::int64_t> seen;
    for (double v : list.values) {
      switch (param_unit(id)) {
        case Unit::Seconds:
          if (!near_integer(v * 1000.0)) throw DomainError(name + ": value not a whole number of ms");
          break;
        case Unit::Score:
          if (!near_integer(v * 100.0)) throw DomainError(name + ": score must have two decimals");
          break;
        case Unit::Ms2:
          if (!near_integer(v)) throw DomainError(name + ": stability must be an integer ms^2");
          break;
        case Unit::Bpm: break;
      }
      if (!seen.insert(engine_value(id, v)).second)
        throw DomainError(name + ": two programmable values map to the same engine value");
    }
  }
}

std::uint64_t ParameterDomain::grid_size() const {
  std::uint64_t n = 1;
  for (ParamId id : kAllParams) n *= static_cast<std::uint64_t>((*this)[id].size());
  return n;
}

ParameterDomain expand_domains() {
  ParameterDomain d;
  auto set = [&](ParamId id, std::vector<double> values, double nominal) {
    auto& list = d[id];
    list.values = std::move(values);
    list.nominal_index = find_index(list.values, nominal);
  };
  std::vector<double> v;

  append_range(v, 110, 5, 210);
  append_range(v, 220, 10, 250);
  set(ParamId::VfTh, std::exchange(v, {}), 200);

  append_range(v, 90, 5, 210);
  v.push_back(220);
  set(ParamId::VtTh, std::exchange(v, {}), 160);

  append_range(v, 100, 10, 300);
  set(ParamId::AfibTh, std::exchange(v, {}), 170);

  append_range(v, 1, 0.5, 5);
  append_range(v, 6, 1, 15);
  set(ParamId::VfDur, std::exchange(v, {}), 1.0);

  append_range(v, 1, 0.5, 5);
  append_range(v, 6, 1, 15);
  append_range(v, 20, 5, 30);
  set(ParamId::VtDur, std::exchange(v, {}), 2.5);

  append_range(v, 0.70, 0.01, 0.96);
  set(ParamId::NsrCor, std::exchange(v, {}), 0.94);

  append_range(v, 6, 2, 32);
  append_range(v, 35, 5, 60);
  append_range(v, 70, 10, 120);
  set(ParamId::Stb, std::exchange(v, {}), 20);

  d.validate();
  return d;
}

ParameterDomain domains_from_json(const json& doc) {
  ParameterDomain d = expand_domains();
  if (!doc.is_object()) throw DomainError("domain file must be a JSON object");
  if (auto it = doc.find("bpm_rounding"); it != doc.end()) {
    const auto mode = it->get<std::string>();
    if (mode == "half_up") d.set_rounding(BpmRounding::HalfUp);
    else if (mode == "ceil") d.set_rounding(BpmRounding::Ceil);
    else throw DomainError("bpm_rounding must be \"half_up\" or \"ceil\"");
  }
  const json params = doc.value("parameters", json::object());
  if (!params.is_object()) throw DomainError("\"parameters\" must be an object");
  for (const auto& [name, spec] : params.items()) {
    const auto id = param_from_name(name);
    if (!id) throw DomainError("unknown parameter '" + name + "'");
    if (!spec.contains("values") || !spec["values"].is_array())
      throw DomainError(name + ": missing \"values\" array");
    std::vector<double> values;
    for (const auto& item : spec["values"]) {
      if (item.is_number()) {
        values.push_back(item.get<double>());
      } else if (item.is_string()) {
        const auto text = item.get<std::string>();
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
        if (parts.size() != 3) throw DomainError(name + ": range must read n:k:m, got '" + text + "'");
        append_range(values, parse_double(parts[0], name), parse_double(parts[1], name),
                     parse_double(parts[2], name));
      } else {
        throw DomainError(name + ": values must be numbers or \"n:k:m\" strings");
      }
    }
    auto& list = d[*id];
    list.values = std::move(values);
    const double nominal = spec.contains("nominal") ? spec["nominal"].get<double>() : list.values.front();
    list.nominal_index = find_index(list.values, nominal);
    if (list.nominal_index == 0) throw DomainError(name + ": nominal value is not in the list");
  }
  d.validate();
  return d;
}

ParameterDomain load_domains(const std::filesystem::path& path) {
  try {
    return domains_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

json domains_to_json(const ParameterDomain& d) {
  json params = json::object();
  for (ParamId id : kAllParams) {
    const auto& list = d[id];
    params[std::string(param_name(id))] = {{"unit", std::string(unit_name(param_unit(id)))},
                                           {"nominal", list.value(list.nominal_index)},
                                           {"values", list.values}};
  }
  return {{"bpm_rounding", d.rounding() == BpmRounding::Ceil ? "ceil" : "half_up"},
          {"parameters", std::move(params)}};
}

ParamVector ParamVector::nominal(const ParameterDomain& d) {
  ParamVector v;
  for (ParamId id : kAllParams) v[id] = d[id].nominal_index;
  return v;
}

std::size_t ParamVectorHash::operator()(const ParamVector& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int i : v.idx) h = (h ^ static_cast<std::size_t>(i)) * 1099511628211ull;
  return h;
}

Params to_params(const ParamVector& v, const ParameterDomain& d) {
  for (ParamId id : kAllParams)
    if (v[id] < 1 || v[id] > d[id].size())
      throw DomainError(std::string(param_name(id)) + ": index " + std::to_string(v[id]) + " out of range");
  Params p;
  p.vf_th_ms = static_cast<int>(d.engine_value_at(ParamId::VfTh, v[ParamId::VfTh]));
  p.vt_th_ms = static_cast<int>(d.engine_value_at(ParamId::VtTh, v[ParamId::VtTh]));
  p.afib_th_ms = static_cast<int>(d.engine_value_at(ParamId::AfibTh, v[ParamId::AfibTh]));
  p.vfdur_ms = static_cast<int>(d.engine_value_at(ParamId::VfDur, v[ParamId::VfDur]));
  p.vtdur_ms = static_cast<int>(d.engine_value_at(ParamId::VtDur, v[ParamId::VtDur]));
  p.nsrcor_centi = static_cast<int>(d.engine_value_at(ParamId::NsrCor, v[ParamId::NsrCor]));
  p.stb = static_cast<int>(d.engine_value_at(ParamId::Stb, v[ParamId::Stb]));
  return p;
}

int distance(const ParamVector& v, const ParameterDomain& d) {
  int out = 0;
  for (ParamId id : kAllParams) out = std::max(out, std::abs(v[id] - d[id].nominal_index));
  return out;
}

int dist_max(const ParameterDomain& d) {
  int out = 0;
  for (ParamId id : kAllParams) {
    const auto& list = d[id];
    out = std::max({out, list.size() - list.nominal_index, list.nominal_index - 1});
  }
  return out;
}

Box box(int s, const ParameterDomain& d) {
  Box b;
  for (ParamId id : kAllParams) {
    const auto& list = d[id];
    b[static_cast<std::size_t>(id)] = {std::max(list.nominal_index - s, 1),
                                       std::min(list.nominal_index + s, list.size())};
  }
  return b;
}

FreeMask parse_free_params(std::string_view text) {
  if (trim(text) == "all" || trim(text).empty()) return kAllFree;
  FreeMask mask{};
  std::stringstream ss{std::string(text)};
  for (std::string part; std::getline(ss, part, ',');) {
    const auto name = trim(part);
    const auto id = param_from_name(name);
    if (!id) throw DomainError("unknown parameter '" + name + "'");
    mask[static_cast<std::size_t>(*id)] = true;
  }
  return mask;
}

std::string format_free_params(const FreeMask& mask) {
  std::string out;
  for (ParamId id : kAllParams) {
    if (!mask[static_cast<std::size_t>(id)]) continue;
    if (!out.empty()) out += ',';
    out += param_name(id);
  }
  return out;
}

Box restricted_box(int s, const ParameterDomain& d, const FreeMask& free) {
  Box b = box(s, d);
  for (ParamId id : kAllParams)
    if (!free[static_cast<std::size_t>(id)])
      b[static_cast<std::size_t>(id)] = {d[id].nominal_index, d[id].nominal_index};
  return b;
}

std::uint64_t box_size(const Box& b) {
  std::uint64_t n = 1;
  for (const auto& r : b) n *= static_cast<std::uint64_t>(r.width());
  return n;
}

std::optional<int> index_of_value(const ParameterDomain& d, ParamId id, double programmed) {
  const int i = find_index(d[id].values, programmed);
  if (i == 0) return std::nullopt;
  return i;
}

ParamVector parse_param_overrides(std::string_view text, const ParameterDomain& d) {
  ParamVector v = ParamVector::nominal(d);
  std::stringstream ss{std::string(text)};
  for (std::string part; std::getline(ss, part, ',');) {
    if (trim(part).empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw DomainError("override must read NAME=VALUE, got '" + part + "'");
    const auto name = trim(std::string_view(part).substr(0, eq));
    const auto id = param_from_name(name);
    if (!id) throw DomainError("unknown parameter '" + name + "'");
    const double value = parse_double(trim(std::string_view(part).substr(eq + 1)), name);
    const auto idx = index_of_value(d, *id, value);
    if (!idx) throw DomainError(name + ": " + trim(std::string_view(part).substr(eq + 1)) +
                                " is not a programmable value");
    v[*id] = *idx;
  }
  return v;
}

}  // namespace icd
