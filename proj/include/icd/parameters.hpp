#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "icd/discriminator.hpp"

namespace icd {

// Parameter order used by every vector, report column and SMT variable list.
enum class ParamId : std::size_t { VfTh, VtTh, AfibTh, VfDur, VtDur, NsrCor, Stb };
inline constexpr std::size_t kParamCount = 7;

inline constexpr std::array<ParamId, kParamCount> kAllParams = {
    ParamId::VfTh, ParamId::VtTh, ParamId::AfibTh, ParamId::VfDur,
    ParamId::VtDur, ParamId::NsrCor, ParamId::Stb};

enum class Unit { Bpm, Seconds, Score, Ms2 };

std::string_view param_name(ParamId id);                     // "VF_th", ...
std::optional<ParamId> param_from_name(std::string_view name);
std::string_view unit_name(Unit unit);
Unit param_unit(ParamId id);

enum class BpmRounding { HalfUp, Ceil };

// Programmable values of one parameter, ascending in the programmed unit.
struct ParameterList {
  std::vector<double> values;
  int nominal_index = 1;  // 1-based

  int size() const noexcept { return static_cast<int>(values.size()); }
  double value(int index) const { return values.at(static_cast<std::size_t>(index - 1)); }
};

// Parses "n:k:m" into n, n+k, ..., m. Values are snapped to 1e-6 so decimal
// steps land on the nearest double of the printed value.
std::vector<double> expand_range(double start, double step, double stop);

class ParameterDomain {
public:
  ParameterDomain() = default;

  const ParameterList& operator[](ParamId id) const { return lists_[static_cast<std::size_t>(id)]; }
  ParameterList& operator[](ParamId id) { return lists_[static_cast<std::size_t>(id)]; }

  BpmRounding rounding() const noexcept { return rounding_; }
  void set_rounding(BpmRounding r) noexcept { rounding_ = r; }

  // Engine value (ms, ms, ms, ms, ms, score x 100, ms^2) of a programmed value.
  std::int64_t engine_value(ParamId id, double programmed) const;
  std::int64_t engine_value_at(ParamId id, int index) const {
    return engine_value(id, (*this)[id].value(index));
  }

  // Throws DomainError on empty/unsorted lists, bad nominal index, values
  // that do not map onto integer engine units, or engine collisions.
  void validate() const;

  std::uint64_t grid_size() const;

private:
  std::array<ParameterList, kParamCount> lists_{};
  BpmRounding rounding_ = BpmRounding::HalfUp;
};

// The full programmable grid with the factory nominal settings.
ParameterDomain expand_domains();

// Override file: {"bpm_rounding": "half_up"|"ceil",
//                 "parameters": {"VF_th": {"nominal": 200, "values": [...] or ["110:5:210", 220]}}}
// Parameters not listed keep their default list.
ParameterDomain domains_from_json(const nlohmann::json& doc);
ParameterDomain load_domains(const std::filesystem::path& path);
nlohmann::json domains_to_json(const ParameterDomain& d);

// 1-based indices into each parameter list.
struct ParamVector {
  std::array<int, kParamCount> idx{};

  int& operator[](ParamId id) { return idx[static_cast<std::size_t>(id)]; }
  int operator[](ParamId id) const { return idx[static_cast<std::size_t>(id)]; }
  auto operator<=>(const ParamVector&) const = default;

  static ParamVector nominal(const ParameterDomain& d);
};

struct ParamVectorHash {
  std::size_t operator()(const ParamVector& v) const noexcept;
};

Params to_params(const ParamVector& v, const ParameterDomain& d);

// max_i |I_i - I*_i|
int distance(const ParamVector& v, const ParameterDomain& d);
int dist_max(const ParameterDomain& d);

struct IndexRange {
  int lo = 1;
  int hi = 1;
  int width() const noexcept { return hi - lo + 1; }
  bool contains(int i) const noexcept { return lo <= i && i <= hi; }
  bool operator==(const IndexRange&) const = default;
};

using Box = std::array<IndexRange, kParamCount>;

// Index ranges within distance s of the nominal vector, clamped to each list.
Box box(int s, const ParameterDomain& d);

// Parameters allowed to move; the rest stay at nominal.
using FreeMask = std::array<bool, kParamCount>;
inline constexpr FreeMask kAllFree = {true, true, true, true, true, true, true};

FreeMask parse_free_params(std::string_view comma_list);  // "VF_th,VTdur" or "all"
std::string format_free_params(const FreeMask& mask);

// box(s) with non-free parameters pinned to their nominal index.
Box restricted_box(int s, const ParameterDomain& d, const FreeMask& free);
std::uint64_t box_size(const Box& b);

// Index of a programmed value in a list, if it is on the grid.
std::optional<int> index_of_value(const ParameterDomain& d, ParamId id, double programmed);

// Parses "VF_th=220,VTdur=5" (programmed units) on top of the nominal vector.
ParamVector parse_param_overrides(std::string_view text, const ParameterDomain& d);

}  // namespace icd
