// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/store_server.hpp"

#include <httplib.h>

#include "core/errors.hpp"

namespace trustyweb {

namespace {

void reply_error(httplib::Response& res, int status, const Error& e) {
    res.status = status;
    nlohmann::json j = {{"error", e.code_name()}, {"message", e.what()}};
    res.set_content(j.dump(), "application/json");
}

int status_for(Errc code) {
    switch (code) {
    case Errc::not_found: return 404;
    case Errc::integrity_failure: return 500;
    case Errc::provable_collision: return 409;
    case Errc::parent_not_found: return 422;
    case Errc::clock_skew: return 422;
    case Errc::parse: return 400;
    default: return 500;
    }
}

} // namespace

StoreServer::StoreServer(Store& store) : store_(store) {
    install_routes();
}

int StoreServer::bind(const std::string& host, int port) {
    return http_.bind(host, port);
}

void StoreServer::start() {
    http_.start();
}

void StoreServer::stop() {
    http_.stop();
}

void StoreServer::install_routes() {
    auto& srv = http_.server();

    srv.Get(R"(/([0-9a-f]{64}))", [this](const httplib::Request& req, httplib::Response& res) {
        auto digest = Digest::from_hex(req.matches[1].str());
        try {
            auto fetched = store_.fetch(*digest);
            res.status = 200;
            res.set_header("X-Trusty-Parent", fetched.record.meta.parent.uri);
            res.set_header("X-Trusty-Published", fetched.record.meta.published_at);
            res.set_content(std::string(fetched.resource.text()), fetched.resource.media_type);
        } catch (const Error& e) {
            reply_error(res, status_for(e.code()), e);
        }
    });

    srv.Post("/publish", [this](const httplib::Request& req, httplib::Response& res) {
        std::string author = req.get_header_value("X-Trusty-Author");
        if (author.empty()) {
            reply_error(res, 400, Error(Errc::invalid_argument, "missing X-Trusty-Author"));
            return;
        }
        std::string parent_hdr = req.get_header_value("X-Trusty-Parent");
        std::string external_hdr = req.get_header_value("X-Trusty-Parent-External");
        bool external = external_hdr == "1" || external_hdr == "true";

        ParentLink parent = ParentLink::root(store_.base_uri());
        if (!parent_hdr.empty() && parent_hdr != "root") {
            if (!TrustyUri::parse(parent_hdr)) {
                reply_error(res, 422,
                            Error(Errc::parent_not_found,
                                  "parent is not a trusty URI: " + parent_hdr));
                return;
            }
            parent = external ? ParentLink::external(parent_hdr)
                              : ParentLink::internal(parent_hdr);
        }

        Resource r;
        r.content.assign(req.body.begin(), req.body.end());
        r.media_type = req.get_header_value("Content-Type");
        if (r.media_type.empty()) r.media_type = "application/octet-stream";

        std::optional<std::string> client_ts;
        if (req.has_header("X-Trusty-Published")) {
            client_ts = req.get_header_value("X-Trusty-Published");
        }

        try {
            auto result = store_.publish(r, author, parent, client_ts);
            res.status = result.created ? 201 : 200;
            res.set_content(result.record.to_json().dump(), "application/json");
        } catch (const Error& e) {
            reply_error(res, status_for(e.code()), e);
        }
    });

    srv.Get(R"(/chain/([0-9a-f]{64}))", [this](const httplib::Request& req, httplib::Response& res) {
        auto digest = Digest::from_hex(req.matches[1].str());
        try {
            auto chain = store_.chain_of(*digest);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& record : chain) arr.push_back(record.to_json());
            res.status = 200;
            res.set_content(arr.dump(), "application/json");
        } catch (const Error& e) {
            reply_error(res, status_for(e.code()), e);
        }
    });

    srv.Get("/status", [this](const httplib::Request&, httplib::Response& res) {
        nlohmann::json j = {{"records", store_.record_count()}, {"base", store_.base_uri()}};
        res.set_content(j.dump(), "application/json");
    });
}

StoreServer::RemotePublishResult StoreServer::publish_remote(
    const std::string& endpoint, const Resource& resource, const std::string& author,
    const std::string& parent_uri, bool parent_external, int timeout_ms) {
    auto parts = parse_uri(endpoint);
    if (!parts) throw Error(Errc::parse, "bad store endpoint: " + endpoint);

    httplib::Client client("http://" + parts->authority);
    client.set_connection_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
    client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);

    httplib::Headers headers = {{"X-Trusty-Author", author}};
    if (!parent_uri.empty()) headers.emplace("X-Trusty-Parent", parent_uri);
    if (parent_external) headers.emplace("X-Trusty-Parent-External", "1");

    auto res = client.Post("/publish", headers,
                           std::string(resource.text()), resource.media_type);
    if (!res) {
        throw Error(Errc::network, "store unreachable: " + endpoint);
    }
    if (res->status != 200 && res->status != 201) {
        std::string code = "HTTP " + std::to_string(res->status);
        try {
            code = nlohmann::json::parse(res->body).value("error", code);
        } catch (...) {
        }
        Errc errc = Errc::network;
        if (code == "ParentNotFound") errc = Errc::parent_not_found;
        else if (code == "ProvableCollision") errc = Errc::provable_collision;
        else if (code == "ClockSkew") errc = Errc::clock_skew;
        throw Error(errc, "publish rejected by " + endpoint + ": " + code);
    }
    return {res->status == 201, nlohmann::json::parse(res->body)};
}

} // namespace trustyweb
