#include "locrec/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "locrec/util.hpp"

namespace locrec {

std::string Bucket::name() const {
    return std::string(to_string(locality)) + "-" + to_string(category);
}

Bucket Bucket::parse(const std::string& name) {
    auto dash = name.find('-');
    if (dash != std::string::npos) {
        auto loc = parse_locality(name.substr(0, dash));
        auto cat = parse_main_category(name.substr(dash + 1));
        if (loc && cat) return {*loc, *cat};
    }
    throw ConfigError("unknown bucket: " + name);
}

std::vector<Archetype> GeneratorConfig::default_archetypes() {
    auto b = [](const char* n) { return Bucket::parse(n); };
    Archetype enthusiast;
    enthusiast.name = "local-enthusiast";
    enthusiast.weight = 0.6;
    enthusiast.stickiness = 0.8;
    enthusiast.prefs = {
        {b("local-sports"), 0.30},   {b("local-news"), 0.30},
        {b("local-lifeculture"), 0.12}, {b("nonlocal-news"), 0.16},
        {b("nonlocal-other"), 0.12},
    };
    Archetype global;
    global.name = "global-reader";
    global.weight = 0.4;
    global.stickiness = 0.35;
    global.local_taste = 0.5;
    global.prefs = {
        {b("nonlocal-news"), 0.40}, {b("nonlocal-lifeculture"), 0.26},
        {b("nonlocal-sports"), 0.11}, {b("nonlocal-other"), 0.08},
        {b("local-news"), 0.11},    {b("local-sports"), 0.04},
    };
    return {enthusiast, global};
}

static void normalize(std::array<double, 4>& mix) {
    double sum = 0;
    for (double v : mix) {
        if (v < 0) throw ConfigError("negative category mix entry");
        sum += v;
    }
    if (sum <= 0) throw ConfigError("category mix sums to zero");
    for (double& v : mix) v /= sum;
}

void GeneratorConfig::validate() {
    if (n_users < 1 || n_days < 2 || n_articles < 1)
        throw ConfigError("n_users/n_days/n_articles out of range");
    if (locality_mix < 0 || locality_mix > 1)
        throw ConfigError("locality_mix must be in [0,1]");
    if (stickiness < 0 || stickiness > 1)
        throw ConfigError("stickiness must be in [0,1]");
    if (session_length_mean <= 1 || session_length_max < 2)
        throw ConfigError("session length parameters out of range");
    normalize(local_category_mix);
    normalize(nonlocal_category_mix);
    if (archetypes.empty()) archetypes = default_archetypes();
    double wsum = 0;
    for (auto& a : archetypes) {
        if (a.weight < 0) throw ConfigError("negative archetype weight");
        wsum += a.weight;
        double psum = 0;
        for (auto& [bucket, p] : a.prefs) {
            if (p < 0) throw ConfigError("negative preference weight");
            psum += p;
        }
        if (psum <= 0)
            throw ConfigError("archetype '" + a.name + "' has empty preferences");
        for (auto& [bucket, p] : a.prefs) p /= psum;
        if (a.stickiness && (*a.stickiness < 0 || *a.stickiness > 1))
            throw ConfigError("archetype stickiness must be in [0,1]");
        if (a.local_taste < 0 || a.local_taste >= 1)
            throw ConfigError("archetype local_taste must be in [0,1)");
    }
    if (wsum <= 0) throw ConfigError("archetype weights sum to zero");
    for (auto& a : archetypes) a.weight /= wsum;
}

GeneratorConfig GeneratorConfig::load(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad generator config " + path + ": " + e.what());
    }
    GeneratorConfig c;
    c.seed = j.value("seed", c.seed);
    c.n_users = j.value("n_users", c.n_users);
    c.n_days = j.value("n_days", c.n_days);
    c.n_articles = j.value("n_articles", c.n_articles);
    c.locality_mix = j.value("locality_mix", c.locality_mix);
    c.session_length_mean = j.value("session_length_mean", c.session_length_mean);
    c.session_length_max = j.value("session_length_max", c.session_length_max);
    c.stickiness = j.value("stickiness", c.stickiness);
    c.local_popularity_skew =
        j.value("local_popularity_skew", c.local_popularity_skew);
    c.nonlocal_popularity_skew =
        j.value("nonlocal_popularity_skew", c.nonlocal_popularity_skew);
    auto read_mix = [&](const char* key, std::array<double, 4>& mix) {
        if (!j.contains(key)) return;
        static const char* cats[] = {"news", "sports", "lifeculture", "other"};
        for (int i = 0; i < 4; ++i) mix[(size_t)i] = j[key].value(cats[i], 0.0);
    };
    read_mix("local_category_mix", c.local_category_mix);
    read_mix("nonlocal_category_mix", c.nonlocal_category_mix);
    if (j.contains("archetypes")) {
        for (const auto& aj : j["archetypes"]) {
            Archetype a;
            a.name = aj.value("name", "archetype");
            a.weight = aj.value("weight", 1.0);
            if (aj.contains("stickiness"))
                a.stickiness = aj["stickiness"].get<double>();
            a.local_taste = aj.value("local_taste", 0.0);
            for (auto& [bucket, p] : aj.at("prefs").items())
                a.prefs.push_back({Bucket::parse(bucket), p.get<double>()});
            c.archetypes.push_back(std::move(a));
        }
    }
    c.validate();
    return c;
}

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}
    double uniform() { return (double)(gen() >> 11) * 0x1.0p-53; }
    // index into a cumulative-weight table; zero-weight entries are
    // unreachable since uniform() < 1
    size_t pick(const std::vector<double>& cumulative) {
        double u = uniform() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        size_t i = (size_t)(it - cumulative.begin());
        return std::min(i, cumulative.size() - 1);
    }
};

const std::vector<std::string>& subcategory_pool(MainCategory c) {
    static const std::vector<std::string> news = {"crime", "politics", "news",
                                                  "weather"};
    static const std::vector<std::string> sports = {"sports", "orangebasketball",
                                                    "highschoolsports"};
    static const std::vector<std::string> life = {"auto", "food", "entertainment"};
    static const std::vector<std::string> other = {"opinion"};
    switch (c) {
        case MainCategory::News: return news;
        case MainCategory::Sports: return sports;
        case MainCategory::LifeCulture: return life;
        case MainCategory::Other: return other;
    }
    return other;
}

int bucket_index(Locality l, MainCategory c) {
    return (int)l * 4 + (int)c;
}

}  // namespace

SyntheticDataset generate(const GeneratorConfig& config_in) {
    GeneratorConfig config = config_in;
    config.validate();
    Rng rng(config.seed);
    SyntheticDataset ds;

    // articles per (locality x category) bucket, plus zipf popularity tables
    std::vector<std::vector<size_t>> bucket_articles(8);
    for (int i = 0; i < config.n_articles; ++i) {
        Locality loc = rng.uniform() < config.locality_mix ? Locality::Local
                                                           : Locality::NonLocal;
        const auto& mix = loc == Locality::Local ? config.local_category_mix
                                                 : config.nonlocal_category_mix;
        std::vector<double> cum;
        double acc = 0;
        for (double v : mix) cum.push_back(acc += v);
        MainCategory cat = (MainCategory)rng.pick(cum);
        const auto& pool = subcategory_pool(cat);
        const std::string& sub = pool[(size_t)(rng.uniform() * (double)pool.size()) %
                                      pool.size()];
        CatalogRow row;
        char id[16];
        std::snprintf(id, sizeof(id), "g%06d", i + 1);
        row.article_id = id;
        char urlbuf[128];
        std::snprintf(urlbuf, sizeof(urlbuf),
                      "https://news.example.com/%s/2019/01/story_%06d.html",
                      sub.c_str(), i + 1);
        row.url = urlbuf;
        row.title = std::string(loc == Locality::Local ? "Syracuse" : "National") +
                    " " + to_string(cat) + " story " + std::to_string(i + 1);
        row.main_category = cat;
        bucket_articles[(size_t)bucket_index(loc, cat)].push_back((size_t)i);
        ds.catalog.push_back(std::move(row));
    }

    std::vector<std::vector<double>> bucket_cum(8);
    for (size_t b = 0; b < 8; ++b) {
        double skew = b < 4 ? config.local_popularity_skew
                            : config.nonlocal_popularity_skew;
        double acc = 0;
        for (size_t r = 0; r < bucket_articles[b].size(); ++r) {
            acc += 1.0 / std::pow((double)(r + 1), skew);
            bucket_cum[b].push_back(acc);
        }
    }

    // every positively-weighted preference bucket must contain articles
    for (const auto& a : config.archetypes)
        for (const auto& [bucket, p] : a.prefs)
            if (p > 0 &&
                bucket_articles[(size_t)bucket_index(bucket.locality,
                                                     bucket.category)].empty())
                throw ConfigError("archetype '" + a.name +
                                  "' prefers empty bucket " + bucket.name());

    std::vector<double> arch_cum;
    double acc = 0;
    for (const auto& a : config.archetypes) arch_cum.push_back(acc += a.weight);
    std::vector<size_t> user_archetype((size_t)config.n_users);
    for (int u = 0; u < config.n_users; ++u)
        user_archetype[(size_t)u] = rng.pick(arch_cum);

    std::vector<std::vector<double>> pref_cum;
    for (const auto& a : config.archetypes) {
        std::vector<double> cum;
        double s = 0;
        for (const auto& [bucket, p] : a.prefs) cum.push_back(s += p);
        pref_cum.push_back(std::move(cum));
    }

    double continue_p = 1.0 - 1.0 / config.session_length_mean;
    for (int day = 0; day < config.n_days; ++day) {
        for (int u = 0; u < config.n_users; ++u) {
            const Archetype& arch = config.archetypes[user_archetype[(size_t)u]];
            double stickiness = arch.stickiness.value_or(config.stickiness);
            int len = 1;
            while (len < config.session_length_max && rng.uniform() < continue_p)
                ++len;
            int current_bucket = -1;
            for (int j = 0; j < len; ++j) {
                if (current_bucket < 0 || rng.uniform() >= stickiness) {
                    const auto& [bucket, p] =
                        arch.prefs[rng.pick(pref_cum[user_archetype[(size_t)u]])];
                    current_bucket = bucket_index(bucket.locality, bucket.category);
                }
                const auto& articles = bucket_articles[(size_t)current_bucket];
                size_t rank = rng.pick(bucket_cum[(size_t)current_bucket]);
                // local tastes are archetype-specific: rotate the popularity
                // order so archetypes with different local_taste concentrate
                // on different hot articles; non-local content is shared
                if (current_bucket < 4)
                    rank = (rank + (size_t)(arch.local_taste *
                                            (double)articles.size())) %
                           articles.size();
                size_t art = articles[rank];
                RawEvent ev;
                char uid[16];
                std::snprintf(uid, sizeof(uid), "u%05d", u + 1);
                ev.user_id = uid;
                ev.url = ds.catalog[art].url;
                ev.title = ds.catalog[art].title;
                ev.main_category = ds.catalog[art].main_category;
                ev.timestamp =
                    (int64_t)(config.start_day + day) * 86400 + 6 * 3600 + j * 300;
                ds.events.push_back(std::move(ev));
            }
        }
    }
    return ds;
}

std::string render_events_csv(const SyntheticDataset& ds) {
    std::ostringstream out;
    out << "user_id,timestamp,url,title,main_category\n";
    for (const auto& ev : ds.events) {
        out << csv_escape(ev.user_id) << ',' << ev.timestamp << ','
            << csv_escape(ev.url) << ',' << csv_escape(ev.title) << ','
            << (ev.main_category ? to_string(*ev.main_category) : "") << '\n';
    }
    return out.str();
}

std::string render_catalog_csv(const SyntheticDataset& ds) {
    std::ostringstream out;
    out << "article_id,url,title,main_category\n";
    for (const auto& row : ds.catalog) {
        out << csv_escape(row.article_id) << ',' << csv_escape(row.url) << ','
            << csv_escape(row.title) << ','
            << (row.main_category ? to_string(*row.main_category) : "") << '\n';
    }
    return out.str();
}

std::string render_rules_json() {
    return R"({
  "local_keywords": ["Syracuse"],
  "nonlocal_keywords": ["National"]
}
)";
}

}  // namespace locrec
