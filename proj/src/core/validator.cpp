// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/validator.hpp"

#include <fstream>
#include <future>

#include <httplib.h>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace trustyweb {

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json j = {
        {"uri", uri},
        {"expected", expected.to_hex()},
        {"actual", actual.to_hex()},
        {"match", match},
        {"validator_id", validator_id},
    };
    if (first_seen) j["first_seen"] = *first_seen;
    return j;
}

ValidationReport ValidationReport::from_json(const nlohmann::json& j) {
    ValidationReport r;
    r.uri = j.at("uri").get<std::string>();
    auto expected = Digest::from_hex(j.at("expected").get<std::string>());
    auto actual = Digest::from_hex(j.at("actual").get<std::string>());
    if (!expected || !actual) throw Error(Errc::parse, "bad validation report digests");
    r.expected = *expected;
    r.actual = *actual;
    r.match = j.at("match").get<bool>();
    if (j.contains("first_seen")) r.first_seen = j.at("first_seen").get<std::string>();
    r.validator_id = j.value("validator_id", "");
    return r;
}

Validator::Validator(fs::path data_dir, std::string id)
    : data_dir_(std::move(data_dir)), id_(std::move(id)) {
    fs::create_directories(data_dir_);
    load_ledger();
}

void Validator::set_id(std::string authority) {
    std::lock_guard lock(mutex_);
    id_ = std::move(authority);
}

void Validator::map_host(const std::string& authority, const std::string& target_authority) {
    std::lock_guard lock(mutex_);
    host_map_[normalize_authority(authority)] = target_authority;
}

void Validator::load_ledger() {
    auto p = data_dir_ / "seen.json";
    if (!fs::exists(p)) return;
    std::ifstream in(p);
    nlohmann::json j;
    in >> j;
    for (auto it = j.begin(); it != j.end(); ++it) {
        seen_[it.key()] = it.value().get<std::string>();
    }
}

void Validator::save_ledger() const {
    auto p = data_dir_ / "seen.json";
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        nlohmann::json j(seen_);
        out << j.dump(2);
    }
    fs::rename(tmp, p);
}

void Validator::record_seen(const Digest& digest) {
    // first_seen is immutable once set
    auto hex = digest.to_hex();
    if (seen_.count(hex)) return;
    seen_[hex] = now_rfc3339();
    save_ledger();
}

ValidationReport Validator::validate_bytes(const TrustyUri& uri,
                                           std::span<const std::uint8_t> content) {
    auto outcome = verify(uri, content);
    std::lock_guard lock(mutex_);
    if (outcome.match) record_seen(uri.digest);
    ValidationReport report;
    report.uri = uri.to_string();
    report.expected = outcome.expected;
    report.actual = outcome.actual;
    report.match = outcome.match;
    auto it = seen_.find(uri.digest.to_hex());
    if (it != seen_.end()) report.first_seen = it->second;
    report.validator_id = id_;
    return report;
}

ValidationReport Validator::validate_fetch(const TrustyUri& uri, int timeout_ms) {
    std::string fetch_uri = uri.to_string();
    {
        std::lock_guard lock(mutex_);
        auto it = host_map_.find(normalize_authority(uri.authority));
        if (it != host_map_.end()) {
            TrustyUri remapped = uri;
            remapped.authority = it->second;
            fetch_uri = remapped.to_string();
        }
    }
    auto res = http_get(fetch_uri, timeout_ms);
    if (res.status != 200) {
        throw Error(Errc::fetch_failed,
                    "fetch failed for " + uri.to_string() +
                        (res.status ? " (HTTP " + std::to_string(res.status) + ")"
                                    : " (unreachable)"));
    }
    return validate_bytes(uri, res.body);
}

std::optional<std::string> Validator::first_seen(const Digest& digest) const {
    std::lock_guard lock(mutex_);
    auto it = seen_.find(digest.to_hex());
    if (it == seen_.end()) return std::nullopt;
    return it->second;
}

ValidatorServer::ValidatorServer(Validator& validator) : validator_(validator) {
    install_routes();
}

int ValidatorServer::bind(const std::string& host, int port) {
    return http_.bind(host, port);
}

void ValidatorServer::start() {
    if (validator_.id().empty()) validator_.set_id(http_.authority());
    http_.start();
}

void ValidatorServer::stop() {
    http_.stop();
}

void ValidatorServer::install_routes() {
    auto& srv = http_.server();

    srv.Post("/validate", [this](const httplib::Request& req, httplib::Response& res) {
        auto uri_text = req.get_header_value("X-Trusty-Uri");
        auto uri = TrustyUri::parse(uri_text);
        if (!uri) {
            res.status = 400;
            res.set_content(R"({"error":"InvalidArgument","message":"X-Trusty-Uri must be a trusty URI"})",
                            "application/json");
            return;
        }
        auto report = validator_.validate_bytes(
            *uri, std::span<const std::uint8_t>(
                      reinterpret_cast<const std::uint8_t*>(req.body.data()), req.body.size()));
        res.set_content(report.to_json().dump(), "application/json");
    });

    srv.Get("/validate", [this](const httplib::Request& req, httplib::Response& res) {
        auto uri_text = req.get_param_value("uri");
        auto uri = TrustyUri::parse(uri_text);
        if (!uri) {
            res.status = 400;
            res.set_content(R"({"error":"InvalidArgument","message":"uri must be a trusty URI"})",
                            "application/json");
            return;
        }
        try {
            auto report = validator_.validate_fetch(*uri);
            res.set_content(report.to_json().dump(), "application/json");
        } catch (const Error& e) {
            res.status = 502;
            nlohmann::json j = {{"error", e.code_name()}, {"message", e.what()}};
            res.set_content(j.dump(), "application/json");
        }
    });

    srv.Get(R"(/seen/([0-9a-f]{64}))", [this](const httplib::Request& req, httplib::Response& res) {
        auto digest = Digest::from_hex(req.matches[1].str());
        auto ts = validator_.first_seen(*digest);
        if (!ts) {
            res.status = 404;
            res.set_content(R"({"error":"NotFound"})", "application/json");
            return;
        }
        nlohmann::json j = {{"first_seen", *ts}};
        res.set_content(j.dump(), "application/json");
    });
}

nlohmann::json QuorumOutcome::to_json() const {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : reports) reps.push_back(r.to_json());
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& [v, reason] : failures) {
        fails.push_back({{"validator", v}, {"reason", reason}});
    }
    return {
        {"reports", reps},
        {"failures", fails},
        {"agreeing", agreeing},
        {"threshold", threshold},
        {"accepted", accepted},
    };
}

std::size_t majority_threshold(std::size_t n_validators) {
    return n_validators / 2 + 1;
}

QuorumOutcome aggregate_quorum(std::vector<ValidationReport> reports,
                               std::vector<std::pair<std::string, std::string>> failures,
                               std::size_t threshold) {
    QuorumOutcome out;
    out.reports = std::move(reports);
    out.failures = std::move(failures);
    out.threshold = threshold;
    for (const auto& r : out.reports) {
        if (r.match) ++out.agreeing;
    }
    out.accepted = out.agreeing >= out.threshold;
    return out;
}

QuorumOutcome quorum_validate(const TrustyUri& uri,
                              const std::vector<std::string>& validator_authorities,
                              std::optional<std::size_t> threshold, int timeout_ms) {
    if (validator_authorities.empty()) {
        throw Error(Errc::invalid_argument, "no validators given");
    }
    std::size_t t = threshold.value_or(majority_threshold(validator_authorities.size()));
    if (t < 1 || t > validator_authorities.size()) {
        throw Error(Errc::invalid_argument, "threshold out of range");
    }

    struct PerValidator {
        std::optional<ValidationReport> report;
        std::string failure;
        bool reachable = false;
    };

    std::vector<std::future<PerValidator>> futures;
    futures.reserve(validator_authorities.size());
    for (const auto& authority : validator_authorities) {
        futures.push_back(std::async(std::launch::async, [authority, &uri, timeout_ms] {
            PerValidator pv;
            auto url = "http://" + authority + "/validate?uri=" + url_encode(uri.to_string());
            auto res = http_get(url, timeout_ms);
            if (res.status == 0) {
                pv.failure = "unreachable";
                return pv;
            }
            pv.reachable = true;
            if (res.status != 200) {
                std::string reason = "HTTP " + std::to_string(res.status);
                try {
                    reason = nlohmann::json::parse(res.body).value("error", reason);
                } catch (...) {
                }
                pv.failure = reason;
                return pv;
            }
            try {
                pv.report = ValidationReport::from_json(
                    nlohmann::json::parse(res.body.begin(), res.body.end()));
            } catch (...) {
                pv.failure = "malformed report";
            }
            return pv;
        }));
    }

    std::vector<ValidationReport> reports;
    std::vector<std::pair<std::string, std::string>> failures;
    std::size_t reachable = 0;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        auto pv = futures[i].get();
        if (pv.reachable) ++reachable;
        if (pv.report) {
            reports.push_back(std::move(*pv.report));
        } else {
            failures.emplace_back(validator_authorities[i], pv.failure);
        }
    }
    if (reachable == 0) {
        throw Error(Errc::all_validators_unreachable, "no validator responded");
    }
    return aggregate_quorum(std::move(reports), std::move(failures), t);
}

} // namespace trustyweb
