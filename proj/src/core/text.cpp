// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/text.hpp"

#include <cctype>
#include <cstdio>
#include <ctime>

#include "core/errors.hpp"

namespace trustyweb {

namespace {

bool is_space_cp(char32_t cp) {
    switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d:
    case 0x20: case 0x85: case 0xa0:
    case 0x1680:
    case 0x2028: case 0x2029: case 0x202f: case 0x205f:
    case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200a;
    }
}

// Decodes one UTF-8 code point at `i`; advances `i` past it. Invalid bytes
// decode as themselves (latin-1 style) one byte at a time.
char32_t next_cp(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) { cp = b0; len = 1; }
    else if ((b0 & 0xe0) == 0xc0) { cp = b0 & 0x1f; len = 2; }
    else if ((b0 & 0xf0) == 0xe0) { cp = b0 & 0x0f; len = 3; }
    else if ((b0 & 0xf8) == 0xf0) { cp = b0 & 0x07; len = 4; }
    else { ++i; return b0; }

    if (i + len > s.size()) { ++i; return b0; }
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xc0) != 0x80) { ++i; return b0; }
        cp = (cp << 6) | (b & 0x3f);
    }
    i += len;
    return cp;
}

} // namespace

std::vector<std::string> split_unicode_whitespace(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    std::size_t word_start = 0;
    bool in_word = false;
    while (i < text.size()) {
        std::size_t cp_start = i;
        char32_t cp = next_cp(text, i);
        if (is_space_cp(cp)) {
            if (in_word) {
                out.emplace_back(text.substr(word_start, cp_start - word_start));
                in_word = false;
            }
        } else if (!in_word) {
            word_start = cp_start;
            in_word = true;
        }
    }
    if (in_word) out.emplace_back(text.substr(word_start));
    return out;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string html_to_text(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    bool in_tag = false;
    for (char c : html) {
        if (c == '<') { in_tag = true; out.push_back(' '); }
        else if (c == '>') { in_tag = false; }
        else if (!in_tag) { out.push_back(c); }
    }
    return out;
}

std::string format_rfc3339(std::chrono::system_clock::time_point tp) {
    std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::chrono::system_clock::time_point parse_rfc3339(std::string_view s) {
    std::string str(s);
    std::tm tm{};
    int consumed = 0;
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n",
                    &tm.tm_year, &tm.tm_mon, &tm.tm_mday,
                    &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &consumed) != 6) {
        throw Error(Errc::parse, "invalid RFC 3339 timestamp: " + str);
    }
    if (tm.tm_mon < 1 || tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 ||
        tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) {
        throw Error(Errc::parse, "out-of-range RFC 3339 timestamp: " + str);
    }
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;

    std::string_view rest = std::string_view(str).substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest[0] == '.') {
        std::size_t k = 1;
        while (k < rest.size() && std::isdigit(static_cast<unsigned char>(rest[k]))) ++k;
        if (k == 1) throw Error(Errc::parse, "invalid fractional seconds: " + str);
        rest = rest.substr(k);
    }

    long offset_s = 0;
    if (rest == "Z" || rest == "z") {
        // UTC
    } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':') {
        int oh = (rest[1] - '0') * 10 + (rest[2] - '0');
        int om = (rest[4] - '0') * 10 + (rest[5] - '0');
        offset_s = (oh * 3600 + om * 60) * (rest[0] == '-' ? -1 : 1);
    } else {
        throw Error(Errc::parse, "invalid RFC 3339 offset: " + str);
    }

    std::time_t t = timegm(&tm);
    return std::chrono::system_clock::from_time_t(t - offset_s);
}

std::string now_rfc3339() {
    return format_rfc3339(std::chrono::system_clock::now());
}

namespace {
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}
} // namespace

std::string base64_encode(std::string_view data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= data.size()) {
        unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                     (static_cast<unsigned char>(data[i + 1]) << 8) |
                     static_cast<unsigned char>(data[i + 2]);
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += kB64[v & 63];
        i += 3;
    }
    if (i + 1 == data.size()) {
        unsigned v = static_cast<unsigned char>(data[i]) << 16;
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == data.size()) {
        unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                     (static_cast<unsigned char>(data[i + 1]) << 8);
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::string base64_decode(std::string_view text) {
    std::string out;
    int acc = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        int v = b64_value(c);
        if (v < 0) throw Error(Errc::parse, "invalid base64 input");
        acc = (acc << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += static_cast<char>((acc >> bits) & 0xff);
        }
    }
    return out;
}

} // namespace trustyweb
