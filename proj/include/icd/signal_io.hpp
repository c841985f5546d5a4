#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "icd/signal.hpp"

namespace icd {

// Signal-set file: {"signals":[{"id","label","vints","aints","atrial_count","fcc"}], "metadata":{...}}.
// Every parsed signal is validated; failures raise ParseError naming the
// signal id and the field.
std::vector<FeatureSignal> signals_from_json(const nlohmann::json& doc);
nlohmann::json signals_to_json(const std::vector<FeatureSignal>& signals,
                               const nlohmann::json& metadata = nlohmann::json::object());

std::vector<FeatureSignal> load_signals(const std::filesystem::path& path);
void save_signals(const std::vector<FeatureSignal>& signals, const std::filesystem::path& path,
                  const nlohmann::json& metadata = nlohmann::json::object());

// Writes via a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace icd
