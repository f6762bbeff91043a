// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace trustyweb {

// Splits on Unicode whitespace (UTF-8 aware). Malformed byte sequences are
// treated as opaque non-space bytes; splitting never fails.
std::vector<std::string> split_unicode_whitespace(std::string_view text);

std::string ascii_lower(std::string_view s);

// Best-effort tag stripping for HTML tokenization. Replaces tags with a
// single space so adjacent text runs do not fuse into one token.
std::string html_to_text(std::string_view html);

std::string format_rfc3339(std::chrono::system_clock::time_point tp);

// Accepts seconds precision with optional fractional part and 'Z' or
// numeric UTC offset. Throws Error{parse}.
std::chrono::system_clock::time_point parse_rfc3339(std::string_view s);

std::string now_rfc3339();

std::string base64_encode(std::string_view data);
std::string base64_decode(std::string_view text); // throws Error{parse}

} // namespace trustyweb
