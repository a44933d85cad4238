#include "locrec/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "locrec/util.hpp"

namespace locrec {

void TaggingRules::validate() const {
    if (local_keywords.empty() || nonlocal_keywords.empty())
        throw ConfigError("tagging rules need non-empty keyword lists");
}

std::map<std::string, MainCategory> TaggingRules::default_category_map() {
    return {
        {"crime", MainCategory::News},
        {"politics", MainCategory::News},
        {"news", MainCategory::News},
        {"weather", MainCategory::News},
        {"sports", MainCategory::Sports},
        {"orangebasketball", MainCategory::Sports},
        {"highschoolsports", MainCategory::Sports},
        {"auto", MainCategory::LifeCulture},
        {"food", MainCategory::LifeCulture},
        {"entertainment", MainCategory::LifeCulture},
        {"lifeculture", MainCategory::LifeCulture},
    };
}

TaggingRules TaggingRules::load(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad rules file " + path + ": " + e.what());
    }
    TaggingRules r;
    for (const auto& k : j.value("local_keywords", nlohmann::json::array()))
        r.local_keywords.push_back(k.get<std::string>());
    for (const auto& k : j.value("nonlocal_keywords", nlohmann::json::array()))
        r.nonlocal_keywords.push_back(k.get<std::string>());
    if (j.contains("overrides")) {
        for (auto& [id, val] : j["overrides"].items()) {
            auto loc = parse_locality(val.get<std::string>());
            if (!loc) throw ConfigError("bad override locality for " + id);
            r.overrides[id] = *loc;
        }
    }
    r.category_map = default_category_map();
    if (j.contains("category_map")) {
        for (auto& [sub, val] : j["category_map"].items()) {
            auto c = parse_main_category(val.get<std::string>());
            if (!c) throw ConfigError("bad category for subdirectory " + sub);
            r.category_map[to_lower(sub)] = *c;
        }
    }
    r.validate();
    return r;
}

static std::optional<MainCategory> parse_category_cell(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    auto c = parse_main_category(to_lower(cell));
    if (!c) throw DataError("unknown main_category label: " + cell);
    return c;
}

ParsedEvents parse_events_csv(const std::string& content) {
    ParsedEvents out;
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) return out;
    auto header = split_csv_row(line);
    auto col = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i)
            if (to_lower(header[i]) == name) return (int)i;
        return -1;
    };
    int c_user = col("user_id"), c_ts = col("timestamp"), c_url = col("url"),
        c_title = col("title"), c_cat = col("main_category");
    if (c_user < 0 || c_ts < 0 || c_url < 0 || c_title < 0)
        throw DataError("events file missing required columns "
                        "user_id,timestamp,url,title");

    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        ++out.total_rows;
        auto f = split_csv_row(line);
        auto bad = [&](const std::string& why) {
            out.malformed.push_back("line " + std::to_string(lineno) + ": " + why);
        };
        if ((int)f.size() <= std::max({c_user, c_ts, c_url, c_title})) {
            bad("too few columns");
            continue;
        }
        RawEvent ev;
        ev.user_id = f[(size_t)c_user];
        ev.url = f[(size_t)c_url];
        ev.title = f[(size_t)c_title];
        auto ts = parse_timestamp(f[(size_t)c_ts]);
        if (ev.user_id.empty()) { bad("empty user_id"); continue; }
        if (!ts) { bad("unparseable timestamp '" + f[(size_t)c_ts] + "'"); continue; }
        ev.timestamp = *ts;
        if (ev.url.rfind("http://", 0) != 0 && ev.url.rfind("https://", 0) != 0) {
            bad("url not absolute: " + ev.url);
            continue;
        }
        try {
            if (c_cat >= 0 && (int)f.size() > c_cat)
                ev.main_category = parse_category_cell(f[(size_t)c_cat]);
        } catch (const DataError& e) {
            bad(e.what());
            continue;
        }
        out.events.push_back(std::move(ev));
    }
    return out;
}

std::vector<CatalogRow> parse_catalog_csv(const std::string& content) {
    std::vector<CatalogRow> out;
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty catalog file");
    auto header = split_csv_row(line);
    auto col = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i)
            if (to_lower(header[i]) == name) return (int)i;
        return -1;
    };
    int c_id = col("article_id"), c_url = col("url"), c_title = col("title"),
        c_cat = col("main_category");
    if (c_id < 0 || c_url < 0 || c_title < 0)
        throw DataError("catalog file missing required columns "
                        "article_id,url,title");
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_row(line);
        if ((int)f.size() <= std::max({c_id, c_url, c_title}))
            throw DataError("catalog line " + std::to_string(lineno) +
                            ": too few columns");
        CatalogRow row;
        row.article_id = f[(size_t)c_id];
        row.url = f[(size_t)c_url];
        row.title = f[(size_t)c_title];
        if (c_cat >= 0 && (int)f.size() > c_cat)
            row.main_category = parse_category_cell(f[(size_t)c_cat]);
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<std::string> extract_subcategory(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw DataError("malformed url (no scheme): " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == scheme_end + 3)
        throw DataError("malformed url (empty host): " + url);
    if (path_start == std::string::npos) return std::nullopt;

    std::string path = url.substr(path_start + 1);
    // cut query/fragment
    auto q = path.find_first_of("?#");
    if (q != std::string::npos) path = path.substr(0, q);

    std::vector<std::string> segments;
    std::string seg;
    for (char c : path) {
        if (c == '/') {
            if (!seg.empty()) segments.push_back(seg);
            seg.clear();
        } else {
            seg += c;
        }
    }
    bool trailing_filename = !seg.empty();  // path did not end with '/'
    if (trailing_filename) segments.push_back(seg);

    // The terminal filename is not a subcategory.
    size_t usable = segments.size() - (trailing_filename ? 1 : 0);
    if (usable == 0) return std::nullopt;
    return to_lower(segments[0]);
}

TagResult tag_locality(const ItemId& article_id, const std::string& title,
                       const std::string& url, const TaggingRules& rules) {
    auto ov = rules.overrides.find(article_id);
    if (ov != rules.overrides.end()) return {ov->second, false};
    for (const auto& kw : rules.local_keywords)
        if (icontains(title, kw) || icontains(url, kw))
            return {Locality::Local, false};
    for (const auto& kw : rules.nonlocal_keywords)
        if (icontains(title, kw) || icontains(url, kw))
            return {Locality::NonLocal, false};
    return {Locality::NonLocal, true};
}

static int64_t floor_div_day(int64_t t) {
    return t >= 0 ? t / 86400 : (t - 86399) / 86400;
}

static std::vector<Session> build_sessions_counted(
    const std::vector<Interaction>& interactions, int tz_offset_seconds,
    long* dropped_singletons) {
    struct Key {
        std::string user;
        int day;
        bool operator<(const Key& o) const {
            return day != o.day ? day < o.day : user < o.user;
        }
    };
    std::map<Key, std::vector<std::pair<size_t, Interaction>>> groups;
    for (size_t i = 0; i < interactions.size(); ++i) {
        const auto& ev = interactions[i];
        int day = (int)floor_div_day(ev.timestamp + tz_offset_seconds);
        groups[{ev.user_id, day}].push_back({i, ev});
    }
    std::vector<Session> sessions;
    long singletons = 0;
    long seq = 0;
    for (auto& [key, evs] : groups) {
        if (evs.size() < 2) {
            ++singletons;
            continue;
        }
        // timestamp order, ties by input position
        std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
            if (a.second.timestamp != b.second.timestamp)
                return a.second.timestamp < b.second.timestamp;
            return a.first < b.first;
        });
        Session s;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "s%06ld", ++seq);
        s.session_id = buf;
        s.user_id = key.user;
        s.day = key.day;
        for (auto& [pos, ev] : evs) s.events.push_back(ev);
        sessions.push_back(std::move(s));
    }
    if (dropped_singletons) *dropped_singletons = singletons;
    return sessions;
}

std::vector<Session> build_sessions(const std::vector<Interaction>& interactions,
                                    int tz_offset_seconds) {
    return build_sessions_counted(interactions, tz_offset_seconds, nullptr);
}

static MainCategory resolve_category(std::optional<MainCategory> explicit_label,
                                     const std::optional<std::string>& sub,
                                     const TaggingRules& rules) {
    if (explicit_label) return *explicit_label;
    if (sub) {
        auto it = rules.category_map.find(*sub);
        if (it != rules.category_map.end()) return it->second;
    }
    return MainCategory::Other;
}

IngestResult ingest(const std::vector<RawEvent>& events,
                    const std::vector<CatalogRow>* sidecar,
                    const TaggingRules& rules, int tz_offset_seconds) {
    rules.validate();
    IngestResult out;
    std::unordered_map<std::string, ItemId> url_to_id;

    auto add_article = [&](const ItemId& id, const std::string& url,
                           const std::string& title,
                           std::optional<MainCategory> label) {
        Article a;
        a.article_id = id;
        a.url = url;
        a.title = title;
        auto sub = extract_subcategory(url);
        if (sub) a.subcategory = *sub;
        a.main_category = resolve_category(label, sub, rules);
        TagResult tag = tag_locality(id, title, url, rules);
        a.locality = tag.locality;
        if (tag.unmatched) out.unmatched_audit.push_back(id);
        out.catalog.add(std::move(a));
        url_to_id[url] = id;
    };

    if (sidecar) {
        for (const auto& row : *sidecar)
            add_article(row.article_id, row.url, row.title, row.main_category);
    } else {
        long next = 0;
        for (const auto& ev : events) {
            if (url_to_id.count(ev.url)) continue;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "a%06ld", ++next);
            add_article(buf, ev.url, ev.title, ev.main_category);
        }
    }

    std::vector<Interaction> interactions;
    interactions.reserve(events.size());
    for (const auto& ev : events) {
        auto it = url_to_id.find(ev.url);
        if (it == url_to_id.end()) {
            ++out.dropped_unresolvable;
            continue;
        }
        interactions.push_back({ev.user_id, it->second, ev.timestamp});
    }
    out.sessions = build_sessions_counted(interactions, tz_offset_seconds,
                                          &out.dropped_singletons);
    return out;
}

DatasetStats dataset_stats(const Catalog& catalog,
                           const std::vector<Session>& sessions) {
    DatasetStats s;
    s.articles = (long)catalog.size();
    s.sessions = (long)sessions.size();
    long counts[2][4] = {};
    for (const auto& a : catalog.articles()) {
        if (a.locality == Locality::Local) ++s.local_articles;
        else ++s.nonlocal_articles;
        counts[(int)a.locality][(int)a.main_category]++;
    }
    if (s.articles > 0)
        for (int l = 0; l < 2; ++l)
            for (int c = 0; c < 4; ++c)
                s.share[l][c] = (double)counts[l][c] / (double)s.articles;
    return s;
}

std::string format_stats(const DatasetStats& s) {
    std::ostringstream out;
    out << "articles          " << s.articles << "\n";
    out << "local articles    " << s.local_articles << "\n";
    out << "non-local articles " << s.nonlocal_articles << "\n";
    out << "sessions          " << s.sessions << "\n";
    static const MainCategory cats[] = {MainCategory::News, MainCategory::Sports,
                                        MainCategory::LifeCulture,
                                        MainCategory::Other};
    for (Locality l : {Locality::Local, Locality::NonLocal}) {
        out << to_string(l) << ":";
        for (MainCategory c : cats) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), " %s=%.2f%%", to_string(c),
                          100.0 * s.share[(int)l][(int)c]);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string serialize_sessions(const std::vector<Session>& sessions) {
    std::ostringstream out;
    for (const auto& s : sessions) {
        out << s.session_id << '\t' << s.user_id << '\t' << format_day(s.day)
            << '\t';
        for (size_t i = 0; i < s.events.size(); ++i) {
            if (i) out << ',';
            out << s.events[i].article_id;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<Session> deserialize_sessions(const std::string& content) {
    std::vector<Session> out;
    std::istringstream in(content);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::string part;
        std::istringstream ls(line);
        while (std::getline(ls, part, '\t')) parts.push_back(part);
        if (parts.size() != 4)
            throw DataError("session store line " + std::to_string(lineno) +
                            ": expected 4 tab-separated fields");
        int y, mo, d;
        if (std::sscanf(parts[2].c_str(), "%d-%d-%d", &y, &mo, &d) != 3)
            throw DataError("session store line " + std::to_string(lineno) +
                            ": bad date " + parts[2]);
        Session s;
        s.session_id = parts[0];
        s.user_id = parts[1];
        s.day = days_from_civil(y, (unsigned)mo, (unsigned)d);
        std::istringstream items(parts[3]);
        std::string item;
        int64_t idx = 0;
        while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            // original timestamps are not stored; keep order
            s.events.push_back({s.user_id, item, (int64_t)s.day * 86400 + idx++});
        }
        if (s.events.size() < 2)
            throw DataError("session store line " + std::to_string(lineno) +
                            ": fewer than 2 items");
        out.push_back(std::move(s));
    }
    return out;
}

std::string serialize_catalog(const Catalog& catalog) {
    std::ostringstream out;
    for (const auto& a : catalog.articles()) {
        std::string title = a.title;
        std::replace(title.begin(), title.end(), '\t', ' ');
        out << a.article_id << '\t' << a.url << '\t' << title << '\t'
            << to_string(a.locality) << '\t' << to_string(a.main_category)
            << '\t' << (a.subcategory.empty() ? "-" : a.subcategory) << '\n';
    }
    return out.str();
}

Catalog deserialize_catalog(const std::string& content) {
    Catalog catalog;
    std::istringstream in(content);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::string part;
        std::istringstream ls(line);
        while (std::getline(ls, part, '\t')) parts.push_back(part);
        if (parts.size() != 6)
            throw DataError("catalog store line " + std::to_string(lineno) +
                            ": expected 6 tab-separated fields");
        Article a;
        a.article_id = parts[0];
        a.url = parts[1];
        a.title = parts[2];
        auto loc = parse_locality(parts[3]);
        auto cat = parse_main_category(parts[4]);
        if (!loc || !cat)
            throw DataError("catalog store line " + std::to_string(lineno) +
                            ": bad tags");
        a.locality = *loc;
        a.main_category = *cat;
        if (parts[5] != "-") a.subcategory = parts[5];
        catalog.add(std::move(a));
    }
    return catalog;
}

std::string serialize_audit(const Catalog& catalog,
                            const std::vector<ItemId>& unmatched) {
    std::ostringstream out;
    for (const auto& id : unmatched)
        out << id << '\t' << catalog.at(id).title << '\n';
    return out.str();
}

}  // namespace locrec
