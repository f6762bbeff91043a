// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace trustyweb {

// 256-bit content digest. Canonical text form is 64 lowercase hex characters.
struct Digest {
    static constexpr std::size_t kSize = 32;

    std::array<std::uint8_t, kSize> bytes{};

    std::string to_hex() const;

    // Accepts exactly 64 lowercase hex characters (the canonical form).
    static std::optional<Digest> from_hex(std::string_view hex);

    auto operator<=>(const Digest&) const = default;
};

// Incremental SHA-256. Single-use: finish() consumes the state.
class Sha256 {
public:
    Sha256();
    ~Sha256();

    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;
    Sha256(Sha256&& other) noexcept;
    Sha256& operator=(Sha256&& other) noexcept;

    void update(const void* data, std::size_t len);
    Digest finish();

private:
    void* ctx_ = nullptr; // EVP_MD_CTX
    bool finished_ = false;
};

Digest compute_digest(std::span<const std::uint8_t> content);
Digest compute_digest(std::string_view content);

// Equivalent to compute_digest over the stream's full contents, read in
// chunks of chunk_size bytes. Throws Error{io} on read failure.
Digest compute_digest_streaming(std::istream& in, std::size_t chunk_size);

Digest digest_file(const std::filesystem::path& path, std::size_t chunk_size = 65536);

bool is_hex64(std::string_view s);

} // namespace trustyweb
