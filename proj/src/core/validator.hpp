// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/http_util.hpp"
#include "core/uri.hpp"

namespace trustyweb {

struct ValidationReport {
    std::string uri;
    Digest expected;
    Digest actual;
    bool match = false;
    std::optional<std::string> first_seen;
    std::string validator_id;

    nlohmann::json to_json() const;
    static ValidationReport from_json(const nlohmann::json& j);
};

// One validating entity. Recomputes digests over supplied or self-fetched
// bytes and keeps an append-only seen-ledger (digest -> first successful
// validation time) backing the permanence checks.
class Validator {
public:
    explicit Validator(std::filesystem::path data_dir, std::string id = "");

    void set_id(std::string authority);
    const std::string& id() const { return id_; }

    // Authority remap used when the validator fetches a URI itself: useful
    // behind proxies and for partitioned-view fixtures.
    void map_host(const std::string& authority, const std::string& target_authority);

    ValidationReport validate_bytes(const TrustyUri& uri,
                                    std::span<const std::uint8_t> content);

    // Directive mode: the validator fetches the URI itself.
    // Throws FetchFailed when the host is unreachable or non-200.
    ValidationReport validate_fetch(const TrustyUri& uri, int timeout_ms = 5000);

    std::optional<std::string> first_seen(const Digest& digest) const;

private:
    void record_seen(const Digest& digest);
    void load_ledger();
    void save_ledger() const;

    std::filesystem::path data_dir_;
    std::string id_;
    std::map<std::string, std::string> seen_; // hex -> first_seen (append-only)
    std::map<std::string, std::string> host_map_;
    mutable std::mutex mutex_;
};

// HTTP surface:
//   POST /validate            body = content, header X-Trusty-Uri
//   GET  /validate?uri=<uri>  directive mode; 502 FetchFailed
//   GET  /seen/<hex64>        {"first_seen": ...} or 404
class ValidatorServer {
public:
    explicit ValidatorServer(Validator& validator);

    int bind(const std::string& host, int port);
    void start(); // also sets the validator id to the bound authority if unset
    void stop();
    std::string authority() const { return http_.authority(); }

private:
    void install_routes();

    Validator& validator_;
    HttpServerHandle http_;
};

struct QuorumOutcome {
    std::vector<ValidationReport> reports;
    std::vector<std::pair<std::string, std::string>> failures; // (validator, reason)
    std::size_t agreeing = 0;
    std::size_t threshold = 0;
    bool accepted = false;

    nlohmann::json to_json() const;
};

std::size_t majority_threshold(std::size_t n_validators);

// Pure aggregation rule: accepted iff (match=true count) >= threshold.
QuorumOutcome aggregate_quorum(std::vector<ValidationReport> reports,
                               std::vector<std::pair<std::string, std::string>> failures,
                               std::size_t threshold);

// Queries all validators concurrently in directive mode. Unreachable
// validators count as non-agreeing; throws AllValidatorsUnreachable when
// none responds at all.
QuorumOutcome quorum_validate(const TrustyUri& uri,
                              const std::vector<std::string>& validator_authorities,
                              std::optional<std::size_t> threshold = std::nullopt,
                              int timeout_ms = 5000);

} // namespace trustyweb
