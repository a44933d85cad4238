#include "locrec/domain.hpp"

#include <algorithm>

namespace locrec {

const char* to_string(Locality l) {
    return l == Locality::Local ? "local" : "nonlocal";
}

const char* to_string(MainCategory c) {
    switch (c) {
        case MainCategory::News: return "news";
        case MainCategory::Sports: return "sports";
        case MainCategory::LifeCulture: return "lifeculture";
        case MainCategory::Other: return "other";
    }
    return "other";
}

std::optional<Locality> parse_locality(const std::string& s) {
    if (s == "local") return Locality::Local;
    if (s == "nonlocal" || s == "non-local") return Locality::NonLocal;
    return std::nullopt;
}

std::optional<MainCategory> parse_main_category(const std::string& s) {
    if (s == "news") return MainCategory::News;
    if (s == "sports") return MainCategory::Sports;
    if (s == "lifeculture" || s == "life&culture" || s == "life-culture")
        return MainCategory::LifeCulture;
    if (s == "other") return MainCategory::Other;
    return std::nullopt;
}

void Catalog::add(Article a) {
    auto [it, inserted] = by_id_.emplace(a.article_id, articles_.size());
    if (!inserted)
        throw DataError("duplicate article_id in catalog: " + a.article_id);
    articles_.push_back(std::move(a));
}

const Article* Catalog::find(const ItemId& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &articles_[it->second];
}

const Article& Catalog::at(const ItemId& id) const {
    const Article* a = find(id);
    if (!a) throw DataError("unknown article_id: " + id);
    return *a;
}

bool ItemFilter::accepts(const Article& a) const {
    switch (kind) {
        case Kind::All:
            return true;
        case Kind::Locality:
            return a.locality == locality;
        case Kind::MainCategory:
            return a.main_category == category;
        case Kind::LocalMainCategory:
            return a.locality == locrec::Locality::Local &&
                   a.main_category == category;
        case Kind::Subcategory:
            return a.main_category == category && a.subcategory == subcategory;
        case Kind::LocalSubcategory:
            return a.locality == locrec::Locality::Local &&
                   a.main_category == category && a.subcategory == subcategory;
    }
    return false;
}

ItemFilter ItemFilter::all() { return ItemFilter{}; }

ItemFilter ItemFilter::by_locality(locrec::Locality l) {
    ItemFilter f;
    f.kind = Kind::Locality;
    f.locality = l;
    return f;
}

ItemFilter ItemFilter::by_category(locrec::MainCategory c) {
    ItemFilter f;
    f.kind = Kind::MainCategory;
    f.category = c;
    return f;
}

ItemFilter ItemFilter::local_category(locrec::MainCategory c) {
    ItemFilter f;
    f.kind = Kind::LocalMainCategory;
    f.category = c;
    return f;
}

ItemFilter ItemFilter::by_subcategory(locrec::MainCategory c, std::string sub) {
    ItemFilter f;
    f.kind = Kind::Subcategory;
    f.category = c;
    f.subcategory = std::move(sub);
    return f;
}

ItemFilter ItemFilter::local_subcategory(locrec::MainCategory c, std::string sub) {
    ItemFilter f;
    f.kind = Kind::LocalSubcategory;
    f.category = c;
    f.subcategory = std::move(sub);
    return f;
}

std::string ItemFilter::name() const {
    switch (kind) {
        case Kind::All:
            return "all";
        case Kind::Locality:
            return to_string(locality);
        case Kind::MainCategory:
            return to_string(category);
        case Kind::LocalMainCategory:
            return std::string("local-") + to_string(category);
        case Kind::Subcategory:
            return std::string(to_string(category)) + "/" + subcategory;
        case Kind::LocalSubcategory:
            return std::string("local-") + to_string(category) + "/" + subcategory;
    }
    return "all";
}

ItemFilter ItemFilter::parse(const std::string& name) {
    if (name == "all") return all();
    if (auto l = parse_locality(name)) return by_locality(*l);

    bool local = name.rfind("local-", 0) == 0;
    std::string rest = local ? name.substr(6) : name;

    auto slash = rest.find('/');
    if (slash == std::string::npos) {
        auto c = parse_main_category(rest);
        if (!c) throw ConfigError("unknown filter: " + name);
        return local ? local_category(*c) : by_category(*c);
    }
    auto c = parse_main_category(rest.substr(0, slash));
    std::string sub = rest.substr(slash + 1);
    if (!c || sub.empty() || sub.find('/') != std::string::npos)
        throw ConfigError("unknown filter: " + name);
    return local ? local_subcategory(*c, sub) : by_subcategory(*c, sub);
}

const char* to_string(Method m) {
    switch (m) {
        case Method::AR: return "AR";
        case Method::MC: return "MC";
        case Method::SR: return "SR";
        case Method::SKNN: return "SKNN";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& s) {
    std::string u;
    for (char c : s) u += (char)std::toupper((unsigned char)c);
    if (u == "AR") return Method::AR;
    if (u == "MC" || u == "MARKOV") return Method::MC;
    if (u == "SR") return Method::SR;
    if (u == "SKNN") return Method::SKNN;
    return std::nullopt;
}

void ScenarioSpec::validate() const {
    if (cutoffs.empty()) throw ConfigError("scenario has no cutoffs");
    int prev = 0;
    for (int k : cutoffs) {
        if (k < 1 || k <= prev)
            throw ConfigError("cutoffs must be strictly increasing and >= 1");
        prev = k;
    }
}

}  // namespace locrec
