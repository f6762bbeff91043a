// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/search_index.hpp"

#include <algorithm>
#include <fstream>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace trustyweb {

std::vector<std::string> tokenize(std::string_view text) {
    auto words = split_unicode_whitespace(text);
    for (auto& w : words) w = ascii_lower(w);
    return words;
}

nlohmann::json IndexEntry::to_json() const {
    nlohmann::json trusty = nlohmann::json::array();
    for (const auto& t : outbound.trusty_links) trusty.push_back(t.to_string());
    nlohmann::json plain = nlohmann::json::array();
    for (const auto& p : outbound.plain_links) plain.push_back(p.raw);
    return {
        {"uri", uri.to_string()},
        {"host", host},
        {"terms", terms},
        {"verified_at", verified_at},
        {"outbound", {{"trusty", trusty}, {"plain", plain}}},
    };
}

IndexEntry IndexEntry::from_json(const nlohmann::json& j) {
    IndexEntry e;
    auto uri = TrustyUri::parse(j.at("uri").get<std::string>());
    if (!uri) throw Error(Errc::parse, "bad index entry URI");
    e.uri = *uri;
    e.host = j.at("host").get<std::string>();
    for (const auto& t : j.at("terms")) e.terms.insert(t.get<std::string>());
    e.verified_at = j.at("verified_at").get<std::string>();
    for (const auto& t : j.at("outbound").at("trusty")) {
        if (auto u = TrustyUri::parse(t.get<std::string>())) e.outbound.trusty_links.push_back(*u);
    }
    for (const auto& p : j.at("outbound").at("plain")) {
        e.outbound.plain_links.push_back(PlainUri{p.get<std::string>()});
    }
    return e;
}

SearchIndex::SearchIndex(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    load();
}

void SearchIndex::load() {
    auto p = dir_ / "index.json";
    if (!fs::exists(p)) return;
    std::ifstream in(p);
    if (!in) throw Error(Errc::io, "cannot open " + p.string());
    nlohmann::json j;
    in >> j;
    for (const auto& e : j.at("entries")) {
        auto entry = IndexEntry::from_json(e);
        by_digest_[entry.uri.digest.to_hex()] = std::move(entry);
    }
}

void SearchIndex::save() const {
    std::lock_guard lock(mutex_);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [hex, entry] : by_digest_) entries.push_back(entry.to_json());
    nlohmann::json j = {{"entries", entries}};
    auto p = dir_ / "index.json";
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
        out << j.dump(2);
    }
    fs::rename(tmp, p);
}

void SearchIndex::add(IndexEntry entry) {
    std::lock_guard lock(mutex_);
    by_digest_.emplace(entry.uri.digest.to_hex(), std::move(entry));
}

bool SearchIndex::contains(const Digest& digest) const {
    std::lock_guard lock(mutex_);
    return by_digest_.count(digest.to_hex()) > 0;
}

std::size_t SearchIndex::size() const {
    std::lock_guard lock(mutex_);
    return by_digest_.size();
}

nlohmann::json SearchIndex::Hit::to_json() const {
    return {{"uri", uri.to_string()}, {"score", score}, {"verified_at", verified_at}};
}

std::vector<SearchIndex::Hit> SearchIndex::query(const std::string& raw_terms) const {
    auto tokens = tokenize(raw_terms);
    std::lock_guard lock(mutex_);
    std::vector<Hit> hits;
    if (tokens.empty()) return hits;
    for (const auto& [hex, entry] : by_digest_) {
        int matched = 0;
        for (const auto& tok : tokens) {
            if (entry.terms.count(tok)) ++matched;
        }
        if (matched == static_cast<int>(tokens.size())) {
            hits.push_back({entry.uri, matched, entry.verified_at});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.verified_at != b.verified_at) return a.verified_at > b.verified_at;
        return a.uri.to_string() < b.uri.to_string();
    });
    return hits;
}

std::optional<IndexEntry> SearchIndex::lookup(const Digest& digest) const {
    std::lock_guard lock(mutex_);
    auto it = by_digest_.find(digest.to_hex());
    if (it == by_digest_.end()) return std::nullopt;
    return it->second;
}

std::vector<IndexEntry> SearchIndex::entries() const {
    std::lock_guard lock(mutex_);
    std::vector<IndexEntry> out;
    out.reserve(by_digest_.size());
    for (const auto& [hex, entry] : by_digest_) out.push_back(entry);
    return out;
}

nlohmann::json SearchIndex::stats() const {
    std::lock_guard lock(mutex_);
    std::set<std::string> hosts;
    std::size_t terms = 0;
    for (const auto& [hex, entry] : by_digest_) {
        hosts.insert(entry.host);
        terms += entry.terms.size();
    }
    return {
        {"entries", by_digest_.size()},
        {"hosts", hosts.size()},
        {"total_terms", terms},
    };
}

} // namespace trustyweb
