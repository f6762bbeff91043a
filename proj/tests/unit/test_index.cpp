// Copyright 2026 trustyweb contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/crawler.hpp"
#include "core/errors.hpp"
#include "core/http_util.hpp"
#include "core/index_server.hpp"
#include "core/search_index.hpp"
#include "core/store.hpp"
#include "core/store_server.hpp"
#include "harness/fixture_network.hpp"

using namespace trustyweb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        static unsigned c = 0;
        path = fs::temp_directory_path() /
               (std::string("trustyweb-") + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(c++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// Three-page site: index links to two leaves.
struct SmallSite {
    TempDir dir{"site"};
    Store store{dir.path / "store", "http://placeholder/"};
    StoreServer server{store};
    TrustyUri leaf1, leaf2, root;

    SmallSite() {
        server.bind("127.0.0.1", 0);
        store.set_base_uri("http://" + server.authority() + "/");
        server.start();
        auto pub = [&](const std::string& body) {
            return store
                .publish(Resource::from_text(body, "text/html; charset=utf-8"), "site",
                         ParentLink::root(store.base_uri()))
                .record.uri;
        };
        leaf1 = pub("<html><body><p>leaf one sunlight</p></body></html>");
        leaf2 = pub("<html><body><p>leaf two moonlight</p></body></html>");
        root = pub("<html><body><p>index page starlight</p>"
                   "<a href=\"/" + leaf1.digest.to_hex() + "\">one</a>"
                   "<a href=\"/" + leaf2.digest.to_hex() + "\">two</a>"
                   "</body></html>");
    }
    ~SmallSite() { server.stop(); }
};

} // namespace

TEST_CASE("query requires every token and ranks deterministically") {
    TempDir dir("index");
    SearchIndex index(dir.path);

    auto entry = [&](const char* hexc, const char* host, std::set<std::string> terms,
                     const char* ts) {
        IndexEntry e;
        e.uri.scheme = "http";
        e.uri.authority = host;
        e.uri.digest = *Digest::from_hex(std::string(64, *hexc));
        e.host = host;
        e.terms = std::move(terms);
        e.verified_at = ts;
        return e;
    };
    index.add(entry("a", "h1", {"shared", "alpha"}, "2020-01-01T00:00:00Z"));
    index.add(entry("b", "h2", {"shared", "beta"}, "2021-01-01T00:00:00Z"));

    auto hits = index.query("shared");
    REQUIRE(hits.size() == 2);
    // tie on score: newer verified_at first
    CHECK(hits[0].verified_at == "2021-01-01T00:00:00Z");
    CHECK(hits[1].verified_at == "2020-01-01T00:00:00Z");

    CHECK(index.query("shared alpha").size() == 1);
    CHECK(index.query("absent").empty());
    CHECK(index.query("shared absent").empty());
    CHECK(index.query("").empty());
    CHECK(index.query("SHARED").size() == 2); // query tokens fold too
}

TEST_CASE("index persists and reloads") {
    TempDir dir("ipersist");
    TrustyUri uri;
    {
        SearchIndex index(dir.path);
        IndexEntry e;
        e.uri.scheme = "http";
        e.uri.authority = "h1";
        e.uri.digest = compute_digest(std::string_view("page"));
        uri = e.uri;
        e.host = "h1";
        e.terms = {"persisted", "words"};
        e.verified_at = "2020-01-01T00:00:00Z";
        e.outbound.plain_links.push_back(PlainUri{"http://h1/x.html"});
        index.add(e);
        index.save();
    }
    SearchIndex reloaded(dir.path);
    CHECK(reloaded.size() == 1);
    auto hits = reloaded.query("persisted words");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].uri == uri);
    auto entry = reloaded.lookup(uri.digest);
    REQUIRE(entry.has_value());
    CHECK(entry->outbound.plain_links.size() == 1);
}

TEST_CASE("crawl indexes the whole verified graph breadth-first") {
    SmallSite site;
    TempDir dir("crawl1");
    SearchIndex index(dir.path);
    auto report = crawl(index, {site.root}, 10);
    CHECK(report.indexed == 3);
    CHECK(report.rejected.empty());
    CHECK(report.errors.empty());
    CHECK(report.pending.empty());
    CHECK(index.size() == 3);
    CHECK(index.query("sunlight").size() == 1);
    CHECK(index.query("starlight").size() == 1);

    // soundness: every indexed entry still verifies against its origin
    for (const auto& entry : index.entries()) {
        auto res = http_get(entry.uri.to_string());
        REQUIRE(res.status == 200);
        CHECK(verify(entry.uri, res.body).match);
    }
}

TEST_CASE("budget cuts the crawl and leaves the rest pending") {
    SmallSite site;
    TempDir dir("crawl2");
    SearchIndex index(dir.path);
    auto report = crawl(index, {site.root}, 1);
    CHECK(report.indexed == 1);
    CHECK(report.pending.size() == 2); // closure: nothing silently dropped
}

TEST_CASE("tampered pages are rejected and their links not followed") {
    SmallSite site;
    testsupport::MirrorHost mirror(site.store);
    mirror.bind_and_start("127.0.0.1");
    mirror.set_tampering(true);

    TrustyUri mirrored_root = site.root;
    mirrored_root.authority = mirror.authority();

    TempDir dir("crawl3");
    SearchIndex index(dir.path);
    auto report = crawl(index, {mirrored_root}, 10);
    CHECK(report.indexed == 0);
    REQUIRE(report.rejected.size() == 1);
    CHECK(report.rejected[0].uri == mirrored_root.to_string());
    CHECK(report.rejected[0].expected == site.root.digest.to_hex());
    CHECK(report.rejected[0].actual != report.rejected[0].expected);
    CHECK(index.size() == 0);

    mirror.stop();
}

TEST_CASE("mixed graph: honest seed indexed, tampered linked page rejected") {
    SmallSite site;
    testsupport::MirrorHost mirror(site.store);
    mirror.bind_and_start("127.0.0.1");
    mirror.set_tampering(true);

    // root page on the honest host linking to a leaf on the tampering mirror
    TrustyUri bad_leaf = site.leaf1;
    bad_leaf.authority = mirror.authority();
    auto page = site.store.publish(
        Resource::from_text("<html><body><p>mixed rainlight</p><a href=\"http://" +
                                mirror.authority() + "/" + site.leaf1.digest.to_hex() +
                                "\">bad</a></body></html>",
                            "text/html; charset=utf-8"),
        "site", ParentLink::root(site.store.base_uri()));

    TempDir dir("crawl4");
    SearchIndex index(dir.path);
    auto report = crawl(index, {page.record.uri}, 10);
    CHECK(report.indexed == 1);
    REQUIRE(report.rejected.size() == 1);
    CHECK(report.rejected[0].uri == bad_leaf.to_string());

    mirror.stop();
}

TEST_CASE("unreachable seeds make the crawl empty") {
    TempDir dir("crawl5");
    SearchIndex index(dir.path);
    TrustyUri dead;
    dead.scheme = "http";
    dead.authority = "127.0.0.1:1"; // nothing listens there
    dead.digest = compute_digest(std::string_view("dead"));
    CHECK_THROWS_AS(crawl(index, {dead}, 3), Error);
}

TEST_CASE("re-crawl of an indexed digest only re-checks availability") {
    SmallSite site;
    TempDir dir("crawl6");
    SearchIndex index(dir.path);
    crawl(index, {site.root}, 10);
    CHECK(index.size() == 3);
    auto report = crawl(index, {site.root}, 10);
    CHECK(report.indexed == 0); // entries are immutable once indexed
    CHECK(report.errors.empty());
    CHECK(index.size() == 3);
}

TEST_CASE("crawl stamps entries with the supplied clock") {
    SmallSite site;
    TempDir dir("crawl7");
    SearchIndex index(dir.path);
    crawl(index, {site.root}, 10, default_fetcher(),
          [] { return std::string("2020-05-05T05:05:05Z"); });
    for (const auto& entry : index.entries()) {
        CHECK(entry.verified_at == "2020-05-05T05:05:05Z");
    }
}

TEST_CASE("index server answers search, lookup and status") {
    SmallSite site;
    TempDir dir("iserve");
    SearchIndex index(dir.path);
    crawl(index, {site.root}, 10);

    IndexServer server(index);
    server.bind("127.0.0.1", 0);
    server.start();

    auto res = http_get("http://" + server.authority() + "/search?q=moonlight");
    REQUIRE(res.status == 200);
    auto hits = nlohmann::json::parse(res.body.begin(), res.body.end());
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].at("uri") == site.leaf2.to_string());
    CHECK(hits[0].contains("score"));
    CHECK(hits[0].contains("verified_at"));

    auto lookup = http_get("http://" + server.authority() +
                           "/lookup?digest=" + site.leaf1.digest.to_hex());
    REQUIRE(lookup.status == 200);
    auto found = nlohmann::json::parse(lookup.body.begin(), lookup.body.end());
    REQUIRE(found.size() == 1);
    CHECK(found[0].at("uri") == site.leaf1.to_string());

    auto status = http_get("http://" + server.authority() + "/status");
    REQUIRE(status.status == 200);
    auto stats = nlohmann::json::parse(status.body.begin(), status.body.end());
    CHECK(stats.at("entries") == 3);

    server.stop();
}
