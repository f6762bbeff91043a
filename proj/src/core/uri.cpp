// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/uri.hpp"

#include <algorithm>
#include <cctype>

#include "core/errors.hpp"

namespace trustyweb {

namespace {

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
    });
}

struct Reference {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

// RFC 3986 component split; accepts relative references.
Reference split_reference(std::string_view raw) {
    Reference r;
    auto frag = raw.find('#');
    if (frag != std::string_view::npos) {
        r.fragment = std::string(raw.substr(frag + 1));
        raw = raw.substr(0, frag);
    }
    auto q = raw.find('?');
    if (q != std::string_view::npos) {
        r.query = std::string(raw.substr(q + 1));
        raw = raw.substr(0, q);
    }
    auto colon = raw.find(':');
    auto slash = raw.find('/');
    if (colon != std::string_view::npos && (slash == std::string_view::npos || colon < slash) &&
        valid_scheme(raw.substr(0, colon))) {
        r.scheme = std::string(raw.substr(0, colon));
        raw = raw.substr(colon + 1);
    }
    if (raw.size() >= 2 && raw[0] == '/' && raw[1] == '/') {
        raw = raw.substr(2);
        auto end = raw.find('/');
        if (end == std::string_view::npos) {
            r.authority = std::string(raw);
            raw = {};
        } else {
            r.authority = std::string(raw.substr(0, end));
            raw = raw.substr(end);
        }
    }
    r.path = std::string(raw);
    return r;
}

// RFC 3986 §5.2.4.
std::string remove_dot_segments(std::string_view path) {
    std::string in(path);
    std::string out;
    while (!in.empty()) {
        if (in.rfind("../", 0) == 0) in.erase(0, 3);
        else if (in.rfind("./", 0) == 0) in.erase(0, 2);
        else if (in.rfind("/./", 0) == 0) in.replace(0, 3, "/");
        else if (in == "/.") in = "/";
        else if (in.rfind("/../", 0) == 0 || in == "/..") {
            in.replace(0, in == "/.." ? 3 : 4, "/");
            auto pos = out.find_last_of('/');
            out.erase(pos == std::string::npos ? 0 : pos);
        } else if (in == "." || in == "..") in.clear();
        else {
            std::size_t start = in[0] == '/' ? 1 : 0;
            auto next = in.find('/', start);
            out.append(in.substr(0, next == std::string::npos ? in.size() : next));
            in.erase(0, next == std::string::npos ? in.size() : next);
        }
    }
    return out;
}

std::string merge_paths(const Reference& base, std::string_view ref_path) {
    if (base.authority && base.path.empty()) {
        return "/" + std::string(ref_path);
    }
    auto pos = base.path.find_last_of('/');
    if (pos == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, pos + 1) + std::string(ref_path);
}

std::string recompose(const Reference& r) {
    std::string out;
    if (r.scheme) { out += *r.scheme; out += ':'; }
    if (r.authority) { out += "//"; out += *r.authority; }
    out += r.path;
    if (r.query) { out += '?'; out += *r.query; }
    if (r.fragment) { out += '#'; out += *r.fragment; }
    return out;
}

std::string_view final_segment(std::string_view path) {
    auto pos = path.find_last_of('/');
    return pos == std::string_view::npos ? path : path.substr(pos + 1);
}

} // namespace

std::optional<UriParts> parse_uri(std::string_view raw) {
    Reference r = split_reference(raw);
    if (!r.scheme || !r.authority || r.authority->empty()) return std::nullopt;
    if (!r.path.empty() && r.path[0] != '/') return std::nullopt;
    UriParts p;
    p.scheme = *r.scheme;
    for (char& c : p.scheme) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    p.authority = *r.authority;
    p.path = r.path;
    if (r.query) { p.query = *r.query; p.has_query = true; }
    if (r.fragment) { p.fragment = *r.fragment; p.has_fragment = true; }
    return p;
}

std::string normalize_authority(std::string_view authority) {
    std::string out(authority);
    // host portion is case-insensitive; port digits unaffected by tolower
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    auto strip = [&](const char* suffix) {
        std::string_view s(out);
        std::string_view suf(suffix);
        if (s.size() > suf.size() && s.substr(s.size() - suf.size()) == suf) {
            out.resize(out.size() - suf.size());
        }
    };
    strip(":80");
    strip(":443");
    return out;
}

std::string resolve_reference(const std::string& base, const std::string& ref) {
    Reference b = split_reference(base);
    if (!b.scheme) {
        throw Error(Errc::parse, "base URI is not absolute: " + base);
    }
    Reference r = split_reference(ref);
    Reference t;
    if (r.scheme) {
        t.scheme = r.scheme;
        t.authority = r.authority;
        t.path = remove_dot_segments(r.path);
        t.query = r.query;
    } else {
        t.scheme = b.scheme;
        if (r.authority) {
            t.authority = r.authority;
            t.path = remove_dot_segments(r.path);
            t.query = r.query;
        } else {
            t.authority = b.authority;
            if (r.path.empty()) {
                t.path = b.path;
                t.query = r.query ? r.query : b.query;
            } else {
                t.path = remove_dot_segments(
                    r.path[0] == '/' ? r.path : merge_paths(b, r.path));
                t.query = r.query;
            }
        }
    }
    t.fragment = r.fragment;
    return recompose(t);
}

std::string TrustyUri::to_string() const {
    return scheme + "://" + authority + prefix_path + "/" + digest.to_hex();
}

std::optional<TrustyUri> TrustyUri::parse(std::string_view raw) {
    auto parts = parse_uri(raw);
    if (!parts) return std::nullopt;
    if (parts->has_query || parts->has_fragment) return std::nullopt;
    std::string_view path(parts->path);
    auto seg = final_segment(path);
    if (!is_hex64(seg)) return std::nullopt;
    auto digest = Digest::from_hex(seg);
    if (!digest) return std::nullopt;
    TrustyUri u;
    u.scheme = parts->scheme;
    u.authority = parts->authority;
    u.prefix_path = std::string(path.substr(0, path.size() - seg.size() - 1));
    u.digest = *digest;
    return u;
}

ClassifiedUri classify_uri(const std::string& raw) {
    if (auto t = TrustyUri::parse(raw)) return *t;
    // plain covers any absolute URI that is not trusty, including
    // authority-less schemes (mailto:, urn:)
    Reference r = split_reference(raw);
    bool valid = r.scheme && ((r.authority && !r.authority->empty()) || !r.path.empty());
    if (!valid) {
        throw Error(Errc::parse, "unparseable URI: " + raw);
    }
    return PlainUri{raw};
}

bool is_trusty(const ClassifiedUri& u) {
    return std::holds_alternative<TrustyUri>(u);
}

TrustyUri mint(const std::string& base, std::span<const std::uint8_t> content) {
    auto parts = parse_uri(base);
    if (!parts) {
        throw Error(Errc::parse, "malformed base URI: " + base);
    }
    if (parts->scheme != "http" && parts->scheme != "https") {
        throw Error(Errc::parse, "base URI scheme must be http or https: " + base);
    }
    if (parts->has_query || parts->has_fragment) {
        throw Error(Errc::parse, "base URI must not carry query or fragment: " + base);
    }
    std::string prefix = parts->path;
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    if (is_hex64(final_segment(prefix))) {
        throw Error(Errc::parse, "base URI already ends in a digest segment: " + base);
    }
    TrustyUri u;
    u.scheme = parts->scheme;
    u.authority = parts->authority;
    u.prefix_path = prefix;
    u.digest = compute_digest(content);
    return u;
}

TrustyUri mint(const std::string& base, std::string_view content) {
    return mint(base, std::span<const std::uint8_t>(
                          reinterpret_cast<const std::uint8_t*>(content.data()),
                          content.size()));
}

VerificationOutcome verify(const TrustyUri& uri, std::span<const std::uint8_t> content) {
    VerificationOutcome out;
    out.expected = uri.digest;
    out.actual = compute_digest(content);
    out.match = out.expected == out.actual;
    return out;
}

VerificationOutcome verify(const TrustyUri& uri, std::string_view content) {
    return verify(uri, std::span<const std::uint8_t>(
                           reinterpret_cast<const std::uint8_t*>(content.data()),
                           content.size()));
}

} // namespace trustyweb
