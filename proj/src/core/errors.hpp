// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace trustyweb {

enum class Errc {
    parse,
    io,
    network,
    not_found,
    integrity_failure,
    provable_collision,
    parent_not_found,
    clock_skew,
    storage_failure,
    charset,
    untrusted_attestor,
    propagation_from_untrusted,
    link_index_out_of_range,
    fetch_failed,
    all_validators_unreachable,
    crawl_empty,
    malformed_line,
    non_monotone_ordering,
    not_found_anywhere,
    untrusted_unverifiable,
    invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace trustyweb
