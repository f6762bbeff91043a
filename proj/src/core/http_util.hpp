// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace trustyweb {

// Owns an httplib server and its listener thread. Binding and serving are
// split so fixtures can learn the port before any request is handled.
class HttpServerHandle {
public:
    HttpServerHandle();
    ~HttpServerHandle();

    HttpServerHandle(const HttpServerHandle&) = delete;
    HttpServerHandle& operator=(const HttpServerHandle&) = delete;

    httplib::Server& server();

    // port 0 binds an ephemeral port; returns the bound port.
    int bind(const std::string& host, int port);
    void start();
    void stop();

    int port() const { return port_; }
    const std::string& host() const { return host_; }
    std::string authority() const;

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::string host_;
    int port_ = 0;
    bool running_ = false;
};

struct HttpResponse {
    int status = 0; // 0 = transport failure
    std::vector<std::uint8_t> body;
    std::string content_type;
    std::function<std::string(const std::string&)> get_header;
};

// GET an absolute http:// URL. status 0 on connect/transport failure.
HttpResponse http_get(const std::string& url, int timeout_ms = 5000);

std::string url_encode(const std::string& value);

} // namespace trustyweb
