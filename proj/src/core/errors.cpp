// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"

namespace trustyweb {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::parse: return "ParseError";
    case Errc::io: return "IoFailure";
    case Errc::network: return "NetworkError";
    case Errc::not_found: return "NotFound";
    case Errc::integrity_failure: return "IntegrityFailure";
    case Errc::provable_collision: return "ProvableCollision";
    case Errc::parent_not_found: return "ParentNotFound";
    case Errc::clock_skew: return "ClockSkew";
    case Errc::storage_failure: return "StorageFailure";
    case Errc::charset: return "UndecodableCharset";
    case Errc::untrusted_attestor: return "UntrustedAttestor";
    case Errc::propagation_from_untrusted: return "PropagationFromUntrusted";
    case Errc::link_index_out_of_range: return "LinkIndexOutOfRange";
    case Errc::fetch_failed: return "FetchFailed";
    case Errc::all_validators_unreachable: return "AllValidatorsUnreachable";
    case Errc::crawl_empty: return "CrawlEmpty";
    case Errc::malformed_line: return "MalformedLine";
    case Errc::non_monotone_ordering: return "NonMonotoneOrdering";
    case Errc::not_found_anywhere: return "NotFoundAnywhere";
    case Errc::untrusted_unverifiable: return "UntrustedUnverifiable";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace trustyweb
