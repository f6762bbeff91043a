// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/search_index.hpp"

namespace trustyweb {

struct FetchResult {
    int status = 0; // 0 = transport failure
    std::vector<std::uint8_t> body;
    std::string content_type;
};

using Fetcher = std::function<FetchResult(const std::string& url)>;
using CrawlClock = std::function<std::string()>; // RFC 3339 now

Fetcher default_fetcher(int timeout_ms = 5000);

struct CrawlRejection {
    std::string uri;
    std::string expected; // hex
    std::string actual;   // hex

    nlohmann::json to_json() const;
};

struct CrawlReport {
    std::size_t indexed = 0;
    std::size_t fetched = 0;
    std::vector<CrawlRejection> rejected;
    std::vector<std::pair<std::string, std::string>> errors; // (uri, reason)
    std::vector<std::string> pending; // left in the frontier when budget ran out

    nlohmann::json to_json() const;
};

// Breadth-first crawl that follows only the trusty links of pages whose
// bytes verified against their URI. Mismatching pages are rejected and
// their links are not followed. Per-URI network failures are recorded and
// skipped; throws CrawlEmpty when every seed fails outright.
CrawlReport crawl(SearchIndex& index, const std::vector<TrustyUri>& seeds, int budget,
                  const Fetcher& fetch = default_fetcher(),
                  const CrawlClock& clock = nullptr);

} // namespace trustyweb
