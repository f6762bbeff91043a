// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "core/http_util.hpp"
#include "core/store.hpp"

namespace trustyweb {

// HTTP surface of the publisher store:
//   GET  /<hex64>        content bytes; X-Trusty-Parent / X-Trusty-Published
//   POST /publish        body + X-Trusty-Author / X-Trusty-Parent headers
//   GET  /chain/<hex64>  JSON array of publication records
//   GET  /status         store statistics
class StoreServer {
public:
    explicit StoreServer(Store& store);

    int bind(const std::string& host, int port);
    void start();
    void stop();
    std::string authority() const { return http_.authority(); }
    int port() const { return http_.port(); }

    // HTTP client for POST /publish on a remote store.
    struct RemotePublishResult {
        bool created = false;
        nlohmann::json record;
    };
    static RemotePublishResult publish_remote(const std::string& endpoint,
                                              const Resource& resource,
                                              const std::string& author,
                                              const std::string& parent_uri, // "" or "root" = root
                                              bool parent_external,
                                              int timeout_ms = 5000);

private:
    void install_routes();

    Store& store_;
    HttpServerHandle http_;
};

} // namespace trustyweb
