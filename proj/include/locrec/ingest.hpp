#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locrec/domain.hpp"

namespace locrec {

struct TaggingRules {
    std::vector<std::string> local_keywords;
    std::vector<std::string> nonlocal_keywords;
    std::map<ItemId, Locality> overrides;  // absolute precedence
    // first URL path segment -> main category, used when no explicit label
    std::map<std::string, MainCategory> category_map;

    void validate() const;
    static TaggingRules load(const std::string& path);
    static std::map<std::string, MainCategory> default_category_map();
};

struct RawEvent {
    std::string user_id;
    std::string url;
    std::string title;
    int64_t timestamp = 0;
    std::optional<MainCategory> main_category;
};

struct ParsedEvents {
    std::vector<RawEvent> events;
    std::vector<std::string> malformed;  // "line N: reason"
    long total_rows = 0;
};

// Events file: CSV with header user_id,timestamp,url,title[,main_category].
ParsedEvents parse_events_csv(const std::string& content);

// Catalog sidecar: CSV with header article_id,url,title[,main_category].
struct CatalogRow {
    ItemId article_id;
    std::string url;
    std::string title;
    std::optional<MainCategory> main_category;
};
std::vector<CatalogRow> parse_catalog_csv(const std::string& content);

// First path segment after the host, lowercased. Empty optional when the
// path has nothing before the terminal filename. Throws DataError on a
// malformed URL.
std::optional<std::string> extract_subcategory(const std::string& url);

struct TagResult {
    Locality locality;
    bool unmatched = false;  // neither keyword list nor overrides applied
};
TagResult tag_locality(const ItemId& article_id, const std::string& title,
                       const std::string& url, const TaggingRules& rules);

struct IngestResult {
    Catalog catalog;
    std::vector<Session> sessions;
    std::vector<ItemId> unmatched_audit;  // ids defaulted to NonLocal
    long dropped_unresolvable = 0;        // events whose url missed the sidecar
    long dropped_singletons = 0;          // one-interaction groups
};

// Builds the tagged catalog and day-long sessions. When `sidecar` is given
// its article ids are used and unresolvable events are dropped; otherwise
// the catalog is derived from the events (ids assigned by first appearance).
IngestResult ingest(const std::vector<RawEvent>& events,
                    const std::vector<CatalogRow>* sidecar,
                    const TaggingRules& rules, int tz_offset_seconds);

// Grouping by (user, calendar day) with singleton groups removed; output
// sorted by (day, user_id).
std::vector<Session> build_sessions(const std::vector<Interaction>& interactions,
                                    int tz_offset_seconds);

struct DatasetStats {
    long articles = 0;
    long local_articles = 0;
    long nonlocal_articles = 0;
    long sessions = 0;
    // share of all articles per (locality x main category), in [0,1]
    double share[2][4] = {};
};
DatasetStats dataset_stats(const Catalog& catalog,
                           const std::vector<Session>& sessions);
std::string format_stats(const DatasetStats& s);

// Line-oriented store formats.
std::string serialize_sessions(const std::vector<Session>& sessions);
std::vector<Session> deserialize_sessions(const std::string& content);
std::string serialize_catalog(const Catalog& catalog);
Catalog deserialize_catalog(const std::string& content);
std::string serialize_audit(const Catalog& catalog,
                            const std::vector<ItemId>& unmatched);

}  // namespace locrec
