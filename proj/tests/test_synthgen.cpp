#include <doctest.h>

#include "locrec/ingest.hpp"
#include "locrec/synthgen.hpp"

using namespace locrec;

TEST_CASE("generation is deterministic under the seed") {
    GeneratorConfig c;
    c.n_users = 20;
    c.n_days = 5;
    c.n_articles = 200;
    auto d1 = generate(c);
    auto d2 = generate(c);
    CHECK(render_events_csv(d1) == render_events_csv(d2));
    CHECK(render_catalog_csv(d1) == render_catalog_csv(d2));

    c.seed = 43;
    auto d3 = generate(c);
    CHECK(render_events_csv(d1) != render_events_csv(d3));
}

TEST_CASE("locality mix lands in the binomial 99% interval") {
    GeneratorConfig c;
    c.n_users = 1;
    c.n_days = 2;
    c.n_articles = 10000;
    c.locality_mix = 0.74;
    auto ds = generate(c);
    long local = 0;
    for (const auto& row : ds.catalog)
        if (row.title.rfind("Syracuse", 0) == 0) ++local;
    // mean 7400, sd = sqrt(n p (1-p)) ~= 43.9; 99% ~= +-2.576 sd
    CHECK(local > 7400 - 114);
    CHECK(local < 7400 + 114);
}

TEST_CASE("zero-weight archetype is never sampled") {
    GeneratorConfig c;
    c.n_users = 50;
    c.n_days = 3;
    c.n_articles = 300;
    c.archetypes = GeneratorConfig::default_archetypes();
    Archetype never;
    never.name = "never";
    never.weight = 0.0;
    // a bucket nobody else touches would surface in the output if sampled
    never.prefs = {{Bucket::parse("nonlocal-other"), 1.0}};
    c.archetypes[0].prefs = {{Bucket::parse("local-news"), 1.0}};
    c.archetypes[1].prefs = {{Bucket::parse("local-sports"), 1.0}};
    c.archetypes.push_back(never);

    auto ds = generate(c);
    std::unordered_map<std::string, const CatalogRow*> by_url;
    for (const auto& row : ds.catalog) by_url[row.url] = &row;
    for (const auto& ev : ds.events) {
        const CatalogRow* row = by_url.at(ev.url);
        CHECK(row->title.rfind("Syracuse", 0) == 0);
        CHECK((row->main_category == MainCategory::News ||
               row->main_category == MainCategory::Sports));
    }
}

TEST_CASE("infeasible config is rejected") {
    GeneratorConfig c;
    c.n_articles = 50;
    c.locality_mix = 1.0;  // no nonlocal articles
    c.archetypes.clear();
    Archetype a;
    a.name = "impossible";
    a.weight = 1.0;
    a.prefs = {{Bucket::parse("nonlocal-news"), 1.0}};
    c.archetypes = {a};
    CHECK_THROWS_AS(generate(c), ConfigError);
}

TEST_CASE("locality_mix 1.0 yields zero nonlocal articles") {
    GeneratorConfig c;
    c.n_users = 10;
    c.n_days = 3;
    c.n_articles = 400;
    c.locality_mix = 1.0;
    // keep archetypes feasible: local buckets only
    c.archetypes.clear();
    Archetype a;
    a.name = "local-only";
    a.prefs = {{Bucket::parse("local-news"), 0.5},
               {Bucket::parse("local-sports"), 0.5}};
    c.archetypes = {a};

    auto ds = generate(c);
    TaggingRules rules;
    rules.local_keywords = {"Syracuse"};
    rules.nonlocal_keywords = {"National"};
    auto r = ingest(ds.events, &ds.catalog, rules, 0);
    auto stats = dataset_stats(r.catalog, r.sessions);
    CHECK(stats.nonlocal_articles == 0);
    CHECK(stats.local_articles == stats.articles);
}

TEST_CASE("generated files round-trip through ingest") {
    GeneratorConfig c;
    c.n_users = 40;
    c.n_days = 6;
    c.n_articles = 300;
    auto ds = generate(c);

    auto parsed = parse_events_csv(render_events_csv(ds));
    CHECK(parsed.malformed.empty());
    CHECK(parsed.events.size() == ds.events.size());

    auto sidecar = parse_catalog_csv(render_catalog_csv(ds));
    CHECK(sidecar.size() == ds.catalog.size());

    TaggingRules rules;
    rules.local_keywords = {"Syracuse"};
    rules.nonlocal_keywords = {"National"};
    auto r = ingest(parsed.events, &sidecar, rules, 0);
    CHECK(r.dropped_unresolvable == 0);
    CHECK(r.unmatched_audit.empty());
    CHECK(r.sessions.size() > 100);
    for (const auto& s : r.sessions) {
        CHECK(s.events.size() >= 2);
        for (size_t i = 1; i < s.events.size(); ++i)
            CHECK(s.events[i - 1].timestamp <= s.events[i].timestamp);
    }
    // planted tags survive the keyword pass
    for (const auto& a : r.catalog.articles()) {
        if (a.title.rfind("Syracuse", 0) == 0)
            CHECK(a.locality == Locality::Local);
        else
            CHECK(a.locality == Locality::NonLocal);
    }
}
