#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codai/errors.hpp"
#include "codai/html.hpp"

namespace html = codai::html;

TEST_CASE("scan collects tags, attributes, and doctype") {
    auto doc = html::scan("<!DOCTYPE html><html lang=\"it\"><a href='/x'>x</a></html>");
    CHECK(doc.has_doctype);
    auto anchors = doc.anchor_targets();
    REQUIRE(anchors.size() == 1);
    CHECK(anchors[0] == "/x");
    auto htmls = doc.tags_named("html");
    REQUIRE(htmls.size() == 1);
    CHECK(htmls[0]->attribute("lang") == std::string("it"));
}

TEST_CASE("unquoted and valueless attributes parse") {
    auto doc = html::scan("<img src=/pic.png alt><meta charset=utf-8>");
    auto imgs = doc.tags_named("img");
    REQUIRE(imgs.size() == 1);
    CHECK(imgs[0]->attribute("src") == std::string("/pic.png"));
    CHECK(imgs[0]->has_attribute("alt"));
    CHECK(doc.tags_named("meta")[0]->attribute("charset") == std::string("utf-8"));
}

TEST_CASE("comments, closers, and script bodies are skipped") {
    auto doc = html::scan(
        "<!-- <a href=no> --><script>var s = '<a href=no2>';</script>"
        "<STYLE>a { color: red }</STYLE><a href=yes></a>");
    auto anchors = doc.anchor_targets();
    REQUIRE(anchors.size() == 1);
    CHECK(anchors[0] == "yes");
}

TEST_CASE("malformed markup degrades instead of failing") {
    CHECK_NOTHROW(html::scan("<a href"));
    CHECK_NOTHROW(html::scan("text < 5 and > 3"));
    CHECK_NOTHROW(html::scan("<a href='unclosed"));
    auto doc = html::scan("<a href=a.html<b>bold</b>");
    CHECK(doc.anchor_targets().size() == 1);
}

TEST_CASE("undecodable bodies raise DataError") {
    CHECK_THROWS_AS(html::scan(std::string("\xFF\xFE h t m l", 9)), codai::DataError);
    CHECK_THROWS_AS(html::scan(std::string("<a>\0</a>", 8)), codai::DataError);
}

TEST_CASE("case-insensitive tag and attribute names") {
    auto doc = html::scan("<A HREF=\"/X\"></A><IFRAME TITLE=t></IFRAME>");
    CHECK(doc.anchor_targets() == std::vector<std::string>{"/X"});
    CHECK(doc.tags_named("iframe")[0]->has_attribute("title"));
}
