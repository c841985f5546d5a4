#include "icd/signal_io.hpp"

#include <fstream>
#include <sstream>

#include "icd/error.hpp"

namespace icd {

using nlohmann::json;

namespace {

template <typename T>
std::vector<T> read_array(const json& obj, const char* field, const std::string& id) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError("missing field", id, field);
  if (!it->is_array()) throw ParseError("expected an array", id, field);
  std::vector<T> out;
  out.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& v = (*it)[i];
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ParseError("expected an integer", id, field, i);
      out.push_back(v.get<T>());
    } else {
      if (!v.is_number()) throw ParseError("expected a number", id, field, i);
      out.push_back(v.get<T>());
    }
  }
  return out;
}

}  // namespace

std::vector<FeatureSignal> signals_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("signals") || !doc["signals"].is_array())
    throw ParseError("top-level object must contain a \"signals\" array");
  std::vector<FeatureSignal> out;
  for (std::size_t n = 0; n < doc["signals"].size(); ++n) {
    const json& obj = doc["signals"][n];
    const std::string pos = "#" + std::to_string(n);
    if (!obj.is_object()) throw ParseError("signal entry must be an object", pos);
    if (!obj.contains("id") || !obj["id"].is_string()) throw ParseError("missing string id", pos, "id");
    FeatureSignal s;
    s.id = obj["id"].get<std::string>();
    if (!obj.contains("label") || !obj["label"].is_string())
      throw ParseError("missing string label", s.id, "label");
    try {
      s.label = label_from_name(obj["label"].get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), s.id, "label");
    }
    s.vints = read_array<int>(obj, "vints", s.id);
    s.aints = read_array<int>(obj, "aints", s.id);
    s.atrial_count = read_array<int>(obj, "atrial_count", s.id);
    s.fcc = read_array<double>(obj, "fcc", s.id);
    validate(s);
    out.push_back(std::move(s));
  }
  return out;
}

json signals_to_json(const std::vector<FeatureSignal>& signals, const json& metadata) {
  json arr = json::array();
  for (const auto& s : signals) {
    arr.push_back({{"id", s.id},
                   {"label", std::string(label_name(s.label))},
                   {"vints", s.vints},
                   {"aints", s.aints},
                   {"atrial_count", s.atrial_count},
                   {"fcc", s.fcc}});
  }
  json doc = {{"signals", std::move(arr)}};
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<FeatureSignal> load_signals(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
  return signals_from_json(doc);
}

void save_signals(const std::vector<FeatureSignal>& signals, const std::filesystem::path& path,
                  const json& metadata) {
  write_file_atomic(path, signals_to_json(signals, metadata).dump() + "\n");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace icd
