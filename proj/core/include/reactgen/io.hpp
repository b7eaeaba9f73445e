#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace reactgen {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::vector<uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, const void* data, size_t nbytes);

std::vector<std::string> split_lines(const std::string& text);
std::vector<std::string> split_ws(const std::string& text);

// Throws with `what` naming the missing file; used by pipeline stages so that
// running a command before its inputs exist gives an actionable message.
void require_file(const std::filesystem::path& path, const std::string& produced_by);

}  // namespace reactgen
