// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/http_util.hpp"

#include <httplib.h>

#include "core/errors.hpp"
#include "core/uri.hpp"

namespace trustyweb {

HttpServerHandle::HttpServerHandle() : server_(std::make_unique<httplib::Server>()) {}

HttpServerHandle::~HttpServerHandle() {
    stop();
}

httplib::Server& HttpServerHandle::server() {
    return *server_;
}

int HttpServerHandle::bind(const std::string& host, int port) {
    host_ = host;
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
        if (port_ < 0) throw Error(Errc::network, "cannot bind " + host);
    } else {
        if (!server_->bind_to_port(host, port)) {
            throw Error(Errc::network, "cannot bind " + host + ":" + std::to_string(port));
        }
        port_ = port;
    }
    return port_;
}

void HttpServerHandle::start() {
    if (running_) return;
    running_ = true;
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void HttpServerHandle::stop() {
    if (!running_) return;
    server_->stop();
    if (thread_.joinable()) thread_.join();
    running_ = false;
}

std::string HttpServerHandle::authority() const {
    return host_ + ":" + std::to_string(port_);
}

HttpResponse http_get(const std::string& url, int timeout_ms) {
    auto parts = parse_uri(url);
    if (!parts || parts->scheme != "http") {
        throw Error(Errc::parse, "expected an absolute http URL: " + url);
    }
    httplib::Client client("http://" + parts->authority);
    client.set_connection_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
    client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);

    std::string target = parts->path.empty() ? "/" : parts->path;
    if (parts->has_query) target += "?" + parts->query;

    auto res = client.Get(target);
    HttpResponse out;
    if (!res) {
        out.status = 0;
        return out;
    }
    out.status = res->status;
    out.body.assign(res->body.begin(), res->body.end());
    out.content_type = res->get_header_value("Content-Type");
    auto headers = std::make_shared<httplib::Headers>(res->headers);
    out.get_header = [headers](const std::string& name) -> std::string {
        auto it = headers->find(name);
        return it == headers->end() ? std::string() : it->second;
    };
    return out;
}

std::string url_encode(const std::string& value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : value) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0x0f]);
        }
    }
    return out;
}

} // namespace trustyweb
