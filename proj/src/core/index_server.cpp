// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/index_server.hpp"

#include <httplib.h>

namespace trustyweb {

IndexServer::IndexServer(SearchIndex& index) : index_(index) {
    install_routes();
}

int IndexServer::bind(const std::string& host, int port) {
    return http_.bind(host, port);
}

void IndexServer::start() {
    http_.start();
}

void IndexServer::stop() {
    http_.stop();
}

void IndexServer::install_routes() {
    auto& srv = http_.server();

    srv.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
        auto q = req.get_param_value("q");
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& hit : index_.query(q)) arr.push_back(hit.to_json());
        res.set_content(arr.dump(), "application/json");
    });

    srv.Get("/lookup", [this](const httplib::Request& req, httplib::Response& res) {
        auto hex = req.get_param_value("digest");
        nlohmann::json arr = nlohmann::json::array();
        if (auto digest = Digest::from_hex(hex)) {
            if (auto entry = index_.lookup(*digest)) {
                arr.push_back(SearchIndex::Hit{entry->uri, 0, entry->verified_at}.to_json());
            }
        }
        res.set_content(arr.dump(), "application/json");
    });

    srv.Get("/status", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(index_.stats().dump(), "application/json");
    });
}

} // namespace trustyweb
