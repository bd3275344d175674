// Output-directory plumbing shared by the experiment commands.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace heartml::report {

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);
// dump(2) with a trailing newline; nlohmann keeps object keys sorted, so
// the bytes are deterministic.
void write_json_file(const std::string& path, const nlohmann::json& doc);

std::string join_path(const std::string& directory, const std::string& name);

} // namespace heartml::report
