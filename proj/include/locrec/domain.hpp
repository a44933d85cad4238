#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace locrec {

// Error taxonomy: usage/config problems, bad input data, scenario-level
// failures (empty partitions, no surviving sessions). The CLI maps these
// to distinct exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ItemId = std::string;

enum class Locality { Local, NonLocal };
enum class MainCategory { News, Sports, LifeCulture, Other };

const char* to_string(Locality l);
const char* to_string(MainCategory c);
std::optional<Locality> parse_locality(const std::string& s);
std::optional<MainCategory> parse_main_category(const std::string& s);

struct Article {
    ItemId article_id;
    std::string url;
    std::string title;
    Locality locality = Locality::NonLocal;
    MainCategory main_category = MainCategory::Other;
    std::string subcategory;  // empty = absent; lowercase, no '/'
};

class Catalog {
public:
    void add(Article a);
    const Article* find(const ItemId& id) const;
    const Article& at(const ItemId& id) const;
    bool contains(const ItemId& id) const { return by_id_.count(id) > 0; }
    size_t size() const { return articles_.size(); }
    const std::vector<Article>& articles() const { return articles_; }

private:
    std::vector<Article> articles_;
    std::unordered_map<ItemId, size_t> by_id_;
};

struct Interaction {
    std::string user_id;
    ItemId article_id;
    int64_t timestamp = 0;  // epoch seconds, UTC
};

struct Session {
    std::string session_id;
    std::string user_id;
    int day = 0;  // days since 1970-01-01 in the dataset timezone
    std::vector<Interaction> events;
};

// Pure predicate over articles. The kinds form a containment chain:
// LocalSubcategory(m,s) implies LocalMainCategory(m) implies Locality(Local)
// implies All.
struct ItemFilter {
    enum class Kind {
        All,
        Locality,
        MainCategory,
        LocalMainCategory,
        Subcategory,
        LocalSubcategory,
    };

    Kind kind = Kind::All;
    locrec::Locality locality = locrec::Locality::Local;
    locrec::MainCategory category = locrec::MainCategory::News;
    std::string subcategory;

    bool accepts(const Article& a) const;

    static ItemFilter all();
    static ItemFilter by_locality(locrec::Locality l);
    static ItemFilter by_category(locrec::MainCategory c);
    static ItemFilter local_category(locrec::MainCategory c);
    static ItemFilter by_subcategory(locrec::MainCategory c, std::string sub);
    static ItemFilter local_subcategory(locrec::MainCategory c, std::string sub);

    // Textual form used in configs and reports, e.g. "all", "local",
    // "local-sports", "news/crime", "local-news/crime".
    std::string name() const;
    static ItemFilter parse(const std::string& name);
};

enum class Method { AR, MC, SR, SKNN };

const char* to_string(Method m);
std::optional<Method> parse_method(const std::string& s);

struct ScenarioSpec {
    Method method = Method::SKNN;
    ItemFilter train_filter;
    ItemFilter test_filter;
    std::vector<int> cutoffs{10, 20};  // strictly increasing, each >= 1

    void validate() const;
};

struct CutoffMetrics {
    int k = 0;
    double hr = 0.0;
    double mrr = 0.0;
    double ndcg = 0.0;
};

struct MetricsReport {
    std::vector<CutoffMetrics> per_cutoff;
    long evaluation_events = 0;  // events actually scored
    long skipped_targets_unknown_to_model = 0;
    long sessions_evaluated = 0;
    bool zero_events = false;
};

}  // namespace locrec
