#pragma once

#include <filesystem>
#include <string>

namespace hurwitz {

// Lowercase hex SHA-256 of a file's contents; throws on I/O failure.
std::string sha256_file(const std::filesystem::path& path);

std::string sha256_string(const std::string& data);

} // namespace hurwitz
