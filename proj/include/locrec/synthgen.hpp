#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locrec/domain.hpp"
#include "locrec/ingest.hpp"

namespace locrec {

// (locality, main category) bucket, e.g. "local-sports".
struct Bucket {
    Locality locality = Locality::Local;
    MainCategory category = MainCategory::News;

    std::string name() const;
    static Bucket parse(const std::string& name);
    bool operator==(const Bucket&) const = default;
};

struct Archetype {
    std::string name;
    double weight = 1.0;
    // preference profile over buckets; normalized at validation
    std::vector<std::pair<Bucket, double>> prefs;
    // per-archetype override of the global stickiness
    std::optional<double> stickiness;
    // rotation of the popularity order inside local buckets, in [0,1).
    // Distinct values give archetypes disjoint local tastes while non-local
    // content stays universally shared.
    double local_taste = 0.0;
};

struct GeneratorConfig {
    uint64_t seed = 42;
    int n_users = 350;
    int n_days = 40;
    int n_articles = 2000;
    int start_day = 17866;  // 2018-12-01

    double locality_mix = 0.74;  // fraction of local articles
    // per-locality category shares (News, Sports, LifeCulture, Other)
    std::array<double, 4> local_category_mix{0.45, 0.40, 0.15, 0.0};
    std::array<double, 4> nonlocal_category_mix{0.54, 0.13, 0.27, 0.06};

    std::vector<Archetype> archetypes;  // defaults filled by validate()

    double session_length_mean = 4.0;
    int session_length_max = 12;
    double stickiness = 0.7;  // P(next click stays in current bucket)
    // zipf exponents within a bucket; local interest is concentrated on a
    // few hot articles, non-local reading is diffuse
    double local_popularity_skew = 1.1;
    double nonlocal_popularity_skew = 0.85;

    void validate();  // fills defaults, checks feasibility
    static GeneratorConfig load(const std::string& path);
    static std::vector<Archetype> default_archetypes();
};

struct SyntheticDataset {
    std::vector<CatalogRow> catalog;
    std::vector<RawEvent> events;
};

// Fully determined by config.seed; repeated calls with an equal config
// produce identical output.
SyntheticDataset generate(const GeneratorConfig& config);

// File renderings in the formats ingest consumes, plus a matching rules
// file whose keywords reproduce the planted locality tags.
std::string render_events_csv(const SyntheticDataset& ds);
std::string render_catalog_csv(const SyntheticDataset& ds);
std::string render_rules_json();

}  // namespace locrec
