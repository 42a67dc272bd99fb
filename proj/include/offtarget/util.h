#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace offtarget {

using Tokens = std::vector<std::string>;

std::string join(const Tokens& tokens, std::string_view sep = " ");
Tokens split_whitespace(std::string_view text);
std::string trim(std::string_view text);

// True iff `bytes` is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

// Splits a UTF-8 string into code points (each returned as a string).
std::vector<std::string> utf8_chars(std::string_view word);

// FNV-1a, used for stream keys and file checksums.
std::uint64_t fnv1a64(std::string_view bytes);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

// Fixed-format double for CSV output, stable across reruns.
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace offtarget
