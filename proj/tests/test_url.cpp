#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codai/url.hpp"

namespace url = codai::url;

TEST_CASE("parse splits scheme, host, port, path, query, fragment") {
    auto u = url::parse("https://User@Shop.Acme.IT:8443/a/b?q=1#frag");
    REQUIRE(u);
    CHECK(u->scheme == "https");
    CHECK(u->host == "shop.acme.it");
    CHECK(u->port == "8443");
    CHECK(u->path == "/a/b");
    CHECK(u->query == "q=1");
    CHECK(u->fragment == "frag");
    CHECK(u->serialize() == "https://shop.acme.it:8443/a/b?q=1#frag");
}

TEST_CASE("parse rejects scheme-less and host-less input") {
    CHECK_FALSE(url::parse("example.it"));
    CHECK_FALSE(url::parse("http://"));
    CHECK_FALSE(url::parse("mailto:info@acme.it"));
}

TEST_CASE("resolve handles the reference forms") {
    auto base = *url::parse("https://acme.it/dir/page.html");
    CHECK(url::resolve(base, "/x")->serialize() == "https://acme.it/x");
    CHECK(url::resolve(base, "y")->serialize() == "https://acme.it/dir/y");
    CHECK(url::resolve(base, "../z")->serialize() == "https://acme.it/z");
    CHECK(url::resolve(base, "//other.com/p")->serialize() == "https://other.com/p");
    CHECK(url::resolve(base, "http://other.com/p")->serialize() == "http://other.com/p");
    CHECK(url::resolve(base, "#top")->serialize() == "https://acme.it/dir/page.html#top");
    CHECK_FALSE(url::resolve(base, "mailto:info@acme.it"));
    CHECK_FALSE(url::resolve(base, "javascript:void(0)"));
}

TEST_CASE("registrable domain honors multi-label suffixes and the default rule") {
    url::SuffixRules rules;
    CHECK(rules.registrable_domain("www.acme.it") == "acme.it");
    CHECK(rules.registrable_domain("shop.acme.co.uk") == "acme.co.uk");
    CHECK(rules.registrable_domain("acme.it") == "acme.it");
    CHECK(rules.registrable_domain("localhost") == "localhost");
    // unknown TLD falls back to the implicit "*" rule
    CHECK(rules.registrable_domain("a.b.unknowntld") == "b.unknowntld");
}

TEST_CASE("display_length strips scheme and one trailing slash, keeps www") {
    CHECK(url::display_length("https://a.it/") == 4);
    CHECK(url::display_length("http://www.example.com") == 15);
    CHECK(url::display_length("https://x.it") == url::display_length("http://x.it/"));
    CHECK(url::display_length("https://x.it") == 4);
}

TEST_CASE("host_matches_domain requires label boundaries") {
    CHECK(url::host_matches_domain("facebook.com", "facebook.com"));
    CHECK(url::host_matches_domain("www.Facebook.com", "facebook.com"));
    CHECK(url::host_matches_domain("it.linkedin.com", "linkedin.com"));
    CHECK_FALSE(url::host_matches_domain("notfacebook.com", "facebook.com"));
    CHECK_FALSE(url::host_matches_domain("facebook.com.evil.it", "facebook.com"));
}
