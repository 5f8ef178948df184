#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stratval {

// Writes via a sibling temp file + rename so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Whole file as a string; io_error when unreadable.
std::string read_file(const std::filesystem::path& path);

// FNV-1a 64-bit digest, reported next to every input so runs can be tied to
// the exact bytes they saw.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Comma split with surrounding-whitespace trim; no quoting (none of the
// file formats here need it).
std::vector<std::string> split_csv_row(const std::string& line);

// Splits into whitespace-separated tokens.
std::vector<std::string> split_tokens(const std::string& line);

bool parse_ll(const std::string& token, long long& out);
bool parse_double(const std::string& token, double& out);

}  // namespace stratval
