// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/digest.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "core/errors.hpp"

namespace trustyweb {

namespace {

constexpr char kHexMap[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

} // namespace

std::string Digest::to_hex() const {
    std::string out(kSize * 2, '0');
    for (std::size_t i = 0; i < kSize; ++i) {
        out[i * 2] = kHexMap[bytes[i] >> 4];
        out[i * 2 + 1] = kHexMap[bytes[i] & 0x0f];
    }
    return out;
}

std::optional<Digest> Digest::from_hex(std::string_view hex) {
    if (hex.size() != kSize * 2) return std::nullopt;
    Digest d;
    for (std::size_t i = 0; i < kSize; ++i) {
        int hi = hex_nibble(hex[i * 2]);
        int lo = hex_nibble(hex[i * 2 + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        d.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return d;
}

bool is_hex64(std::string_view s) {
    if (s.size() != 64) return false;
    for (char c : s) {
        if (hex_nibble(c) < 0) return false;
    }
    return true;
}

Sha256::Sha256() {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error(Errc::storage_failure, "failed to initialize SHA-256 context");
    }
    ctx_ = ctx;
}

Sha256::~Sha256() {
    if (ctx_) EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

Sha256::Sha256(Sha256&& other) noexcept
    : ctx_(std::exchange(other.ctx_, nullptr)), finished_(other.finished_) {}

Sha256& Sha256::operator=(Sha256&& other) noexcept {
    if (this != &other) {
        if (ctx_) EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
        ctx_ = std::exchange(other.ctx_, nullptr);
        finished_ = other.finished_;
    }
    return *this;
}

void Sha256::update(const void* data, std::size_t len) {
    if (finished_ || !ctx_) {
        throw Error(Errc::invalid_argument, "SHA-256 state already finished");
    }
    if (len == 0) return;
    if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, len) != 1) {
        throw Error(Errc::storage_failure, "SHA-256 update failed");
    }
}

Digest Sha256::finish() {
    if (finished_ || !ctx_) {
        throw Error(Errc::invalid_argument, "SHA-256 state already finished");
    }
    Digest d;
    unsigned int out_len = 0;
    if (EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), d.bytes.data(), &out_len) != 1 ||
        out_len != Digest::kSize) {
        throw Error(Errc::storage_failure, "SHA-256 finalization failed");
    }
    finished_ = true;
    return d;
}

Digest compute_digest(std::span<const std::uint8_t> content) {
    Sha256 h;
    h.update(content.data(), content.size());
    return h.finish();
}

Digest compute_digest(std::string_view content) {
    Sha256 h;
    h.update(content.data(), content.size());
    return h.finish();
}

Digest compute_digest_streaming(std::istream& in, std::size_t chunk_size) {
    if (chunk_size == 0) {
        throw Error(Errc::invalid_argument, "chunk_size must be >= 1");
    }
    Sha256 h;
    std::vector<char> buf(chunk_size);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(chunk_size));
        std::streamsize got = in.gcount();
        if (got > 0) h.update(buf.data(), static_cast<std::size_t>(got));
    }
    if (in.bad()) {
        throw Error(Errc::io, "read failure while streaming digest");
    }
    return h.finish();
}

Digest digest_file(const std::filesystem::path& path, std::size_t chunk_size) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io, "cannot open file: " + path.string());
    }
    return compute_digest_streaming(in, chunk_size);
}

} // namespace trustyweb
