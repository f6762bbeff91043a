// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/crawler.hpp"

#include <deque>
#include <set>

#include "core/errors.hpp"
#include "core/http_util.hpp"
#include "core/text.hpp"

namespace trustyweb {

Fetcher default_fetcher(int timeout_ms) {
    return [timeout_ms](const std::string& url) {
        auto res = http_get(url, timeout_ms);
        return FetchResult{res.status, std::move(res.body), res.content_type};
    };
}

nlohmann::json CrawlRejection::to_json() const {
    return {{"uri", uri}, {"expected", expected}, {"actual", actual}};
}

nlohmann::json CrawlReport::to_json() const {
    nlohmann::json rej = nlohmann::json::array();
    for (const auto& r : rejected) rej.push_back(r.to_json());
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& [uri, reason] : errors) errs.push_back({{"uri", uri}, {"reason", reason}});
    return {
        {"indexed", indexed},
        {"fetched", fetched},
        {"rejected", rej},
        {"errors", errs},
        {"pending", pending},
    };
}

CrawlReport crawl(SearchIndex& index, const std::vector<TrustyUri>& seeds, int budget,
                  const Fetcher& fetch, const CrawlClock& clock) {
    if (seeds.empty()) throw Error(Errc::invalid_argument, "no seeds");
    if (budget < 1) throw Error(Errc::invalid_argument, "budget must be >= 1");

    CrawlClock now = clock ? clock : CrawlClock(&now_rfc3339);

    CrawlReport report;
    std::deque<TrustyUri> frontier;
    std::set<std::string> scheduled; // digests ever enqueued: no digest fetched twice
    for (const auto& s : seeds) {
        if (scheduled.insert(s.digest.to_hex()).second) frontier.push_back(s);
    }
    const std::size_t seed_count = frontier.size();

    std::size_t seed_failures = 0;
    std::size_t popped = 0;

    while (!frontier.empty()) {
        if (report.fetched >= static_cast<std::size_t>(budget)) {
            for (const auto& u : frontier) report.pending.push_back(u.to_string());
            break;
        }
        TrustyUri uri = frontier.front();
        frontier.pop_front();

        bool was_seed = popped < seed_count;
        ++popped;
        ++report.fetched;

        if (index.contains(uri.digest)) {
            // immutable entry: availability re-check only
            auto res = fetch(uri.to_string());
            if (res.status != 200) {
                report.errors.emplace_back(uri.to_string(),
                                           "availability re-check failed");
            }
            continue;
        }

        auto res = fetch(uri.to_string());
        if (res.status != 200) {
            report.errors.emplace_back(uri.to_string(),
                                       res.status == 0 ? "unreachable"
                                                       : "HTTP " + std::to_string(res.status));
            if (was_seed) ++seed_failures;
            continue;
        }

        Resource page;
        page.content = std::move(res.body);
        page.media_type = res.content_type.empty() ? "application/octet-stream"
                                                   : res.content_type;

        auto outcome = verify(uri, page.content);
        if (!outcome.match) {
            report.rejected.push_back({uri.to_string(), outcome.expected.to_hex(),
                                       outcome.actual.to_hex()});
            continue; // never indexed, links never followed
        }

        IndexEntry entry;
        entry.uri = uri;
        entry.host = normalize_authority(uri.authority);
        entry.verified_at = now();

        std::string text;
        if (is_html_media_type(page.media_type)) {
            try {
                entry.outbound = extract_links(page, uri.to_string());
            } catch (const Error& e) {
                report.errors.emplace_back(uri.to_string(), e.what());
            }
            text = html_to_text(page.text());
        } else if (is_text_media_type(page.media_type)) {
            text = std::string(page.text());
        }
        for (const auto& tok : tokenize(text)) entry.terms.insert(tok);

        for (const auto& link : entry.outbound.trusty_links) {
            if (scheduled.insert(link.digest.to_hex()).second) {
                frontier.push_back(link);
            }
        }

        index.add(std::move(entry));
        ++report.indexed;
    }

    if (report.indexed == 0 && seed_failures == seed_count) {
        throw Error(Errc::crawl_empty, "all seeds failed");
    }
    index.save();
    return report;
}

} // namespace trustyweb
