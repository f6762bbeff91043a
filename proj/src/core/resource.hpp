// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/uri.hpp"

namespace trustyweb {

struct Resource {
    std::vector<std::uint8_t> content;
    std::string media_type = "application/octet-stream";

    std::size_t size() const { return content.size(); }
    std::string_view text() const {
        return {reinterpret_cast<const char*>(content.data()), content.size()};
    }

    static Resource from_text(std::string_view body, std::string media_type);
};

bool is_html_media_type(std::string_view media_type);
bool is_text_media_type(std::string_view media_type);

// Outbound anchor links in document order; each extracted link appears in
// exactly one list.
struct LinkSet {
    std::vector<TrustyUri> trusty_links;
    std::vector<PlainUri> plain_links;
};

// Anchor href extraction with best-effort tag scanning. Relative references
// are resolved against base_uri before classification. Non-HTML media types
// yield an empty LinkSet. Throws Error{charset} for charsets other than
// UTF-8 / US-ASCII.
LinkSet extract_links(const Resource& resource, const std::string& base_uri);

// Parent pointer of a publication: the chain terminates at the publisher
// root (the publisher's mutable base URI), or at a trusty URI that is either
// stored locally or explicitly marked external.
struct ParentLink {
    enum class Kind { Root, Internal, External };

    Kind kind = Kind::Root;
    std::string uri; // trusty URI text for Internal/External; base URI for Root

    static ParentLink root(std::string publisher_base) {
        return {Kind::Root, std::move(publisher_base)};
    }
    static ParentLink internal(std::string trusty_uri) {
        return {Kind::Internal, std::move(trusty_uri)};
    }
    static ParentLink external(std::string trusty_uri) {
        return {Kind::External, std::move(trusty_uri)};
    }

    bool is_root() const { return kind == Kind::Root; }
    bool operator==(const ParentLink&) const = default;
};

struct PublicationMeta {
    std::string published_at; // RFC 3339 UTC
    ParentLink parent;
    std::string author_id;

    nlohmann::json to_json() const;
};

PublicationMeta build_chain_entry(const Resource& content, const ParentLink& parent,
                                  const std::string& author,
                                  std::chrono::system_clock::time_point now);

} // namespace trustyweb
