// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/http_util.hpp"
#include "core/search_index.hpp"

namespace trustyweb {

// HTTP surface of the trusty search engine:
//   GET /search?q=<terms>     JSON array of {uri, score, verified_at}
//   GET /lookup?digest=<hex>  same shape, keyed by content digest
//   GET /status               index statistics
class IndexServer {
public:
    explicit IndexServer(SearchIndex& index);

    int bind(const std::string& host, int port);
    void start();
    void stop();
    std::string authority() const { return http_.authority(); }
    int port() const { return http_.port(); }

private:
    void install_routes();

    SearchIndex& index_;
    HttpServerHandle http_;
};

} // namespace trustyweb
