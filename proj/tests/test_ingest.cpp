#include <doctest.h>

#include "locrec/ingest.hpp"
#include "locrec/util.hpp"

using namespace locrec;

static TaggingRules syracuse_rules() {
    TaggingRules r;
    r.local_keywords = {"Binghamton", "Syracuse"};
    r.nonlocal_keywords = {"US Government", "Celebrity"};
    r.category_map = TaggingRules::default_category_map();
    return r;
}

TEST_CASE("extract_subcategory") {
    CHECK(*extract_subcategory("https://www.syracuse.com/auto/2018/12/"
                               "new_silverado_in_february_2019.html") == "auto");
    CHECK_FALSE(extract_subcategory("https://host.com/").has_value());
    CHECK_FALSE(extract_subcategory("https://host.com").has_value());
    CHECK(*extract_subcategory("https://host.com/crime/2019/01/x.html") == "crime");
    CHECK(*extract_subcategory("https://host.com/CRIME/x.html") == "crime");
    // the terminal filename is not a subcategory
    CHECK_FALSE(extract_subcategory("https://host.com/index.html").has_value());
    // trailing-slash single segment is a directory, not a filename
    CHECK(*extract_subcategory("https://host.com/crime/") == "crime");
    CHECK_THROWS_AS(extract_subcategory("not a url"), DataError);
    CHECK_THROWS_AS(extract_subcategory("https:///path"), DataError);
}

TEST_CASE("tag_locality keyword rules") {
    auto rules = syracuse_rules();
    auto t1 = tag_locality("a1",
                           "US government quietly spends millions to guard "
                           "confederate cemeteries",
                           "https://x.com/news/a.html", rules);
    CHECK(t1.locality == Locality::NonLocal);
    CHECK_FALSE(t1.unmatched);

    auto t2 = tag_locality(
        "a2", "On this date: Binghamton 'evacuated' in nation's largest drill",
        "https://x.com/news/b.html", rules);
    CHECK(t2.locality == Locality::Local);

    // local keywords win when both match
    auto t3 = tag_locality("a3", "Binghamton reacts to US Government shutdown",
                           "https://x.com/news/c.html", rules);
    CHECK(t3.locality == Locality::Local);

    // no keyword match: NonLocal default, flagged for the audit list
    auto t4 = tag_locality("a4", "Quiet day everywhere",
                           "https://x.com/news/d.html", rules);
    CHECK(t4.locality == Locality::NonLocal);
    CHECK(t4.unmatched);

    // overrides beat keywords
    rules.overrides["a5"] = Locality::Local;
    auto t5 = tag_locality("a5", "Celebrity gossip roundup",
                           "https://x.com/ent/e.html", rules);
    CHECK(t5.locality == Locality::Local);

    // keywords match the URL too
    auto t6 = tag_locality("a6", "Game recap",
                           "https://www.syracuse.com/sports/f.html", rules);
    CHECK(t6.locality == Locality::Local);
}

static Interaction ev(const char* user, const char* item, int64_t ts) {
    return {user, item, ts};
}

TEST_CASE("build_sessions groups by user and calendar day") {
    // one user, two same-day events -> one session in timestamp order
    std::vector<Interaction> events = {ev("u1", "B", 1000 + 17 * 3600),
                                       ev("u1", "A", 1000 + 9 * 3600)};
    auto sessions = build_sessions(events, 0);
    REQUIRE(sessions.size() == 1);
    CHECK(sessions[0].events[0].article_id == "A");
    CHECK(sessions[0].events[1].article_id == "B");

    // singleton sessions are excluded
    CHECK(build_sessions({ev("u1", "A", 100)}, 0).empty());
    CHECK(build_sessions({ev("u1", "A", 100), ev("u2", "B", 200)}, 0).empty());

    // midnight boundary splits the same user into two sessions
    std::vector<Interaction> split_events = {
        ev("u1", "A", 86000), ev("u1", "B", 86300),  // day 0
        ev("u1", "C", 86500), ev("u1", "D", 86800)};  // day 1
    auto split = build_sessions(split_events, 0);
    REQUIRE(split.size() == 2);
    CHECK(split[0].day == 0);
    CHECK(split[1].day == 1);
    CHECK(split[0].events.size() == 2);

    // a timezone offset moves the boundary
    auto shifted = build_sessions(split_events, -3600);
    REQUIRE(shifted.size() == 1);
    CHECK(shifted[0].events.size() == 4);

    // empty input is fine
    CHECK(build_sessions({}, 0).empty());

    // equal timestamps keep input order
    auto tied = build_sessions({ev("u1", "X", 500), ev("u1", "Y", 500)}, 0);
    REQUIRE(tied.size() == 1);
    CHECK(tied[0].events[0].article_id == "X");
}

TEST_CASE("events CSV parsing and malformed-row collection") {
    std::string csv =
        "user_id,timestamp,url,title,main_category\n"
        "u1,2018-12-01T09:00:00Z,https://s.com/crime/a.html,\"Crime, up "
        "north\",news\n"
        "u1,1543654800,https://s.com/sports/b.html,Game day,sports\n"
        "u2,not-a-time,https://s.com/x/c.html,Broken,\n"
        "u3,1543654800,relative/url.html,Broken too,\n";
    auto parsed = parse_events_csv(csv);
    CHECK(parsed.total_rows == 4);
    REQUIRE(parsed.events.size() == 2);
    CHECK(parsed.malformed.size() == 2);
    CHECK(parsed.events[0].title == "Crime, up north");
    CHECK(parsed.events[0].timestamp == 1543654800);
    CHECK(parsed.events[0].main_category == MainCategory::News);
    CHECK(parsed.malformed[0].find("line 4") != std::string::npos);
}

TEST_CASE("ingest end to end with derived catalog") {
    std::vector<RawEvent> events = {
        {"u1", "https://s.com/crime/a.html", "Syracuse robbery report",
         1543654800, std::nullopt},
        {"u1", "https://s.com/politics/b.html", "US Government shutdown",
         1543655800, std::nullopt},
        {"u2", "https://s.com/crime/a.html", "Syracuse robbery report",
         1543656800, std::nullopt},
    };
    auto rules = syracuse_rules();
    rules.nonlocal_keywords = {"US Government"};
    auto result = ingest(events, nullptr, rules, 0);

    CHECK(result.catalog.size() == 2);
    const Article& a = result.catalog.at("a000001");
    CHECK(a.locality == Locality::Local);
    CHECK(a.main_category == MainCategory::News);
    CHECK(a.subcategory == "crime");
    CHECK(result.catalog.at("a000002").locality == Locality::NonLocal);

    // u1 has a 2-session, u2 only a singleton
    REQUIRE(result.sessions.size() == 1);
    CHECK(result.sessions[0].user_id == "u1");
    CHECK(result.dropped_singletons == 1);
    CHECK(result.unmatched_audit.empty());

    auto stats = dataset_stats(result.catalog, result.sessions);
    CHECK(stats.articles == 2);
    CHECK(stats.local_articles == 1);
    CHECK(stats.nonlocal_articles == 1);
    CHECK(stats.local_articles + stats.nonlocal_articles == stats.articles);
    CHECK(stats.sessions == 1);
}

TEST_CASE("ingest with sidecar drops unresolvable events") {
    std::vector<CatalogRow> sidecar = {
        {"art1", "https://s.com/crime/a.html", "Syracuse robbery", std::nullopt}};
    std::vector<RawEvent> events = {
        {"u1", "https://s.com/crime/a.html", "Syracuse robbery", 100, std::nullopt},
        {"u1", "https://s.com/unknown/z.html", "Mystery", 200, std::nullopt},
        {"u1", "https://s.com/crime/a.html", "Syracuse robbery", 300, std::nullopt},
    };
    auto result = ingest(events, &sidecar, syracuse_rules(), 0);
    CHECK(result.dropped_unresolvable == 1);
    REQUIRE(result.sessions.size() == 1);
    CHECK(result.sessions[0].events.size() == 2);
    CHECK(result.sessions[0].events[0].article_id == "art1");
}

TEST_CASE("dataset_stats percentage split") {
    Catalog c;
    for (int i = 0; i < 3; ++i) {
        Article a;
        a.article_id = "l" + std::to_string(i);
        a.locality = Locality::Local;
        a.main_category = MainCategory::News;
        c.add(a);
    }
    Article n;
    n.article_id = "n0";
    n.locality = Locality::NonLocal;
    n.main_category = MainCategory::Sports;
    c.add(n);
    auto stats = dataset_stats(c, {});
    CHECK(stats.share[(int)Locality::Local][(int)MainCategory::News] ==
          doctest::Approx(0.75));
    CHECK(stats.share[(int)Locality::NonLocal][(int)MainCategory::Sports] ==
          doctest::Approx(0.25));

    auto empty = dataset_stats(Catalog{}, {});
    CHECK(empty.articles == 0);
    CHECK(empty.sessions == 0);
}

TEST_CASE("session and catalog store round trip") {
    std::vector<RawEvent> events = {
        {"u1", "https://s.com/crime/a.html", "Syracuse robbery", 100, std::nullopt},
        {"u1", "https://s.com/sports/b.html", "Syracuse game", 200, std::nullopt},
        {"u2", "https://s.com/crime/a.html", "Syracuse robbery", 86400 + 100,
         std::nullopt},
        {"u2", "https://s.com/sports/b.html", "Syracuse game", 86400 + 200,
         std::nullopt},
    };
    auto result = ingest(events, nullptr, syracuse_rules(), 0);
    auto sessions2 = deserialize_sessions(serialize_sessions(result.sessions));
    REQUIRE(sessions2.size() == result.sessions.size());
    for (size_t i = 0; i < sessions2.size(); ++i) {
        CHECK(sessions2[i].session_id == result.sessions[i].session_id);
        CHECK(sessions2[i].day == result.sessions[i].day);
        REQUIRE(sessions2[i].events.size() == result.sessions[i].events.size());
        for (size_t j = 0; j < sessions2[i].events.size(); ++j)
            CHECK(sessions2[i].events[j].article_id ==
                  result.sessions[i].events[j].article_id);
    }
    auto catalog2 = deserialize_catalog(serialize_catalog(result.catalog));
    CHECK(catalog2.size() == result.catalog.size());
    CHECK(catalog2.at("a000001").subcategory == "crime");

    // deterministic: same input serializes identically
    auto again = ingest(events, nullptr, syracuse_rules(), 0);
    CHECK(serialize_sessions(again.sessions) ==
          serialize_sessions(result.sessions));
    CHECK(serialize_catalog(again.catalog) == serialize_catalog(result.catalog));
}

TEST_CASE("audit serialization") {
    std::vector<RawEvent> events = {
        {"u1", "https://s.com/x/a.html", "Nothing matches here", 100, std::nullopt},
        {"u1", "https://s.com/x/b.html", "Syracuse thing", 200, std::nullopt},
    };
    auto result = ingest(events, nullptr, syracuse_rules(), 0);
    REQUIRE(result.unmatched_audit.size() == 1);
    std::string audit = serialize_audit(result.catalog, result.unmatched_audit);
    CHECK(audit == "a000001\tNothing matches here\n");
}

TEST_CASE("timestamp and timezone parsing") {
    CHECK(*parse_timestamp("0") == 0);
    CHECK(*parse_timestamp("1543654800") == 1543654800);
    CHECK(*parse_timestamp("2018-12-01T09:00:00Z") == 1543654800);
    CHECK(*parse_timestamp("2018-12-01T09:00:00") == 1543654800);
    CHECK(*parse_timestamp("2018-12-01T09:00:00+01:00") == 1543651200);
    CHECK(*parse_timestamp("2018-12-01") == 1543622400);
    CHECK_FALSE(parse_timestamp("yesterday").has_value());
    CHECK(*parse_tz_offset("UTC") == 0);
    CHECK(*parse_tz_offset("-05:00") == -18000);
    CHECK(*parse_tz_offset("+0530") == 19800);
    CHECK_FALSE(parse_tz_offset("EST").has_value());
}
