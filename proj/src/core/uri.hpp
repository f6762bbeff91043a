// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "core/digest.hpp"

namespace trustyweb {

// Split form of an absolute URI. `path` is empty or starts with '/'.
struct UriParts {
    std::string scheme;
    std::string authority;
    std::string path;
    std::string query;    // without '?'
    std::string fragment; // without '#'
    bool has_query = false;
    bool has_fragment = false;
};

std::optional<UriParts> parse_uri(std::string_view raw);

// Lowercases the host and elides the default ports 80 and 443.
std::string normalize_authority(std::string_view authority);

// RFC 3986 reference resolution of `ref` against absolute `base`.
std::string resolve_reference(const std::string& base, const std::string& ref);

// A URI whose final path segment is the canonical hex form of a digest.
// Grammar: <scheme>"://"<authority><prefix_path>"/"<hex64>
struct TrustyUri {
    std::string scheme;
    std::string authority;
    std::string prefix_path; // "" or "/seg(/seg)*", no trailing slash
    Digest digest;

    std::string to_string() const;
    static std::optional<TrustyUri> parse(std::string_view raw);

    bool operator==(const TrustyUri&) const = default;
};

struct PlainUri {
    std::string raw;

    bool operator==(const PlainUri&) const = default;
};

using ClassifiedUri = std::variant<TrustyUri, PlainUri>;

// Purely syntactic: TrustyUri iff the final path segment is 64 lowercase hex
// characters and the URI carries no query or fragment. Throws Error{parse}
// on unparseable input.
ClassifiedUri classify_uri(const std::string& raw);

bool is_trusty(const ClassifiedUri& u);

// Mints the trusty URI for `content` under `base`. The base must be an
// absolute http(s) URI without query/fragment whose final segment is not
// itself a digest. Throws Error{parse}.
TrustyUri mint(const std::string& base, std::span<const std::uint8_t> content);
TrustyUri mint(const std::string& base, std::string_view content);

struct VerificationOutcome {
    bool match = false;
    Digest expected;
    Digest actual;
};

VerificationOutcome verify(const TrustyUri& uri, std::span<const std::uint8_t> content);
VerificationOutcome verify(const TrustyUri& uri, std::string_view content);

} // namespace trustyweb
