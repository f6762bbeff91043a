// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/digest.hpp"
#include "core/resource.hpp"
#include "core/uri.hpp"

namespace trustyweb {

// Unicode-whitespace split + ASCII lowercase fold; no stemming.
std::vector<std::string> tokenize(std::string_view text);

struct IndexEntry {
    TrustyUri uri;
    std::string host;
    std::set<std::string> terms;
    std::string verified_at; // RFC 3339
    LinkSet outbound;

    nlohmann::json to_json() const;
    static IndexEntry from_json(const nlohmann::json& j);
};

// Keyword index over crawl-verified pages. Entries are immutable once
// added: content cannot change under a trusty URI.
class SearchIndex {
public:
    explicit SearchIndex(std::filesystem::path dir);

    void add(IndexEntry entry);
    bool contains(const Digest& digest) const;
    std::size_t size() const;

    struct Hit {
        TrustyUri uri;
        int score = 0;
        std::string verified_at;

        nlohmann::json to_json() const;
    };

    // Entries containing all query tokens, ranked by match count desc,
    // then verified_at desc, then URI text asc (total order).
    std::vector<Hit> query(const std::string& raw_terms) const;

    std::optional<IndexEntry> lookup(const Digest& digest) const;

    std::vector<IndexEntry> entries() const;
    void save() const;

    nlohmann::json stats() const;

private:
    void load();

    std::filesystem::path dir_;
    std::map<std::string, IndexEntry> by_digest_;
    mutable std::mutex mutex_;
};

} // namespace trustyweb
