// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/digest.hpp"
#include "core/resource.hpp"
#include "core/uri.hpp"

namespace trustyweb {

struct PublicationRecord {
    Digest digest;
    TrustyUri uri;
    PublicationMeta meta;
    std::string media_type;
    std::uint64_t size = 0;
    bool parent_external = false;

    nlohmann::json to_json() const;
    static PublicationRecord from_json(const nlohmann::json& j);
};

// Append-only, digest-addressed store with publish-once semantics.
// Content lives under <root>/objects/<ab>/<hex>.bin with a JSON record
// sidecar; the per-author index is a JSON file under <root>.
class Store {
public:
    Store(std::filesystem::path root, std::string base_uri);

    // Must be called before the first publish; minted URIs embed it.
    void set_base_uri(std::string base_uri);
    const std::string& base_uri() const { return base_uri_; }

    struct PublishResult {
        PublicationRecord record;
        bool created = false; // false on idempotent re-publish
    };

    // Idempotent for byte-identical content. Throws ParentNotFound,
    // ClockSkew (client timestamp outside +/-5 min of the store clock),
    // ProvableCollision, StorageFailure.
    PublishResult publish(const Resource& resource, const std::string& author,
                          const ParentLink& parent,
                          const std::optional<std::string>& client_published_at = {});

    struct Fetched {
        Resource resource;
        PublicationRecord record;
    };

    // Re-verifies stored bytes against the digest before returning.
    // Throws NotFound, IntegrityFailure.
    Fetched fetch(const Digest& digest) const;

    // Parent chain from the record up to the publisher root, newest first.
    std::vector<PublicationRecord> chain_of(const Digest& digest) const;

    bool contains(const Digest& digest) const;
    std::size_t record_count() const;
    std::vector<std::string> author_digests(const std::string& author) const;

    static constexpr std::chrono::seconds kClockSkewTolerance{300};

private:
    std::filesystem::path object_path(const Digest& d) const;
    std::filesystem::path record_path(const Digest& d) const;
    PublicationRecord load_record(const Digest& d) const;
    void append_author_index(const std::string& author, const std::string& digest_hex);

    std::filesystem::path root_;
    std::string base_uri_;
    mutable std::shared_mutex mutex_;
};

} // namespace trustyweb
