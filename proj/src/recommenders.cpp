#include "locrec/recommenders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace locrec {

static void sort_ranked(RankedList& list) {
    std::sort(list.begin(), list.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.item < b.item;
    });
}

RankedList Recommender::rank_row(const std::vector<ItemId>& prefix) const {
    if (prefix.empty()) return {};
    auto row = table_.find(prefix.back());
    if (row == table_.end()) return {};  // cold item
    std::unordered_set<ItemId> seen(prefix.begin(), prefix.end());
    RankedList out;
    out.reserve(row->second.size());
    for (const auto& [item, score] : row->second) {
        if (seen.count(item)) continue;
        out.push_back({item, score});
    }
    sort_ranked(out);
    return out;
}

std::string Recommender::dump() const {
    std::map<std::pair<ItemId, ItemId>, double> sorted;
    for (const auto& [a, row] : table_)
        for (const auto& [b, w] : row) sorted[{a, b}] = w;
    std::ostringstream out;
    for (const auto& [pair, w] : sorted)
        out << pair.first << '\t' << pair.second << '\t' << w << '\n';
    return out.str();
}

std::unique_ptr<Recommender> make_recommender(Method m, const ModelOptions& opts) {
    switch (m) {
        case Method::AR: return std::make_unique<ArModel>();
        case Method::MC: return std::make_unique<McModel>();
        case Method::SR: return std::make_unique<SrModel>(opts);
        case Method::SKNN: return std::make_unique<SknnModel>(opts);
    }
    throw ConfigError("unknown method");
}

void ArModel::train(const std::vector<Session>& sessions) {
    for (const auto& s : sessions) {
        const auto& ev = s.events;
        for (size_t i = 0; i < ev.size(); ++i) {
            known_.insert(ev[i].article_id);
            for (size_t j = i + 1; j < ev.size(); ++j)
                table_[ev[i].article_id][ev[j].article_id] += 1.0;
        }
    }
}

RankedList ArModel::score(const std::vector<ItemId>& prefix) const {
    return rank_row(prefix);
}

void McModel::train(const std::vector<Session>& sessions) {
    for (const auto& s : sessions) {
        const auto& ev = s.events;
        for (size_t i = 0; i < ev.size(); ++i) {
            known_.insert(ev[i].article_id);
            if (i + 1 < ev.size())
                table_[ev[i].article_id][ev[i + 1].article_id] += 1.0;
        }
    }
}

RankedList McModel::score(const std::vector<ItemId>& prefix) const {
    return rank_row(prefix);
}

double SrModel::decay_weight(SrDecay decay, int gap) {
    if (decay == SrDecay::InverseGap) return 1.0 / (double)gap;
    double w = 1.0 - 0.1 * (double)(gap - 1);
    return w > 0.0 ? w : 0.0;
}

void SrModel::train(const std::vector<Session>& sessions) {
    for (const auto& s : sessions) {
        const auto& ev = s.events;
        for (size_t i = 0; i < ev.size(); ++i) {
            known_.insert(ev[i].article_id);
            size_t jmax = std::min(ev.size(), i + 1 + (size_t)opts_.sr_max_back);
            for (size_t j = i + 1; j < jmax; ++j) {
                double w = decay_weight(opts_.sr_decay, (int)(j - i));
                if (w > 0.0) table_[ev[i].article_id][ev[j].article_id] += w;
            }
        }
    }
}

RankedList SrModel::score(const std::vector<ItemId>& prefix) const {
    return rank_row(prefix);
}

void SknnModel::train(const std::vector<Session>& sessions) {
    for (const auto& s : sessions) {
        std::vector<ItemId> items;
        items.reserve(s.events.size());
        for (const auto& ev : s.events) items.push_back(ev.article_id);
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        int idx = (int)session_sets_.size();
        for (const auto& item : items) inverted_[item].push_back(idx);
        session_sets_.push_back(std::move(items));
    }
}

RankedList SknnModel::score(const std::vector<ItemId>& prefix) const {
    if (prefix.empty()) return {};
    std::vector<ItemId> pset(prefix.begin(), prefix.end());
    std::sort(pset.begin(), pset.end());
    pset.erase(std::unique(pset.begin(), pset.end()), pset.end());

    // overlap counts over sessions sharing at least one prefix item
    std::unordered_map<int, int> overlap;
    for (const auto& item : pset) {
        auto it = inverted_.find(item);
        if (it == inverted_.end()) continue;
        for (int sid : it->second) overlap[sid] += 1;
    }
    if (overlap.empty()) return {};

    struct Neighbor {
        int sid;
        double sim;
    };
    std::vector<Neighbor> neighbors;
    neighbors.reserve(overlap.size());
    double pn = std::sqrt((double)pset.size());
    for (const auto& [sid, inter] : overlap) {
        double sim = (double)inter /
                     (pn * std::sqrt((double)session_sets_[(size_t)sid].size()));
        neighbors.push_back({sid, sim});
    }
    auto cmp = [](const Neighbor& a, const Neighbor& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        return a.sid < b.sid;
    };
    size_t take = std::min((size_t)k_, neighbors.size());
    std::partial_sort(neighbors.begin(), neighbors.begin() + (long)take,
                      neighbors.end(), cmp);
    neighbors.resize(take);

    std::unordered_set<ItemId> in_prefix(pset.begin(), pset.end());
    std::unordered_map<ItemId, double> scores;
    for (const auto& n : neighbors)
        for (const auto& item : session_sets_[(size_t)n.sid])
            if (!in_prefix.count(item)) scores[item] += n.sim;

    RankedList out;
    out.reserve(scores.size());
    for (auto& [item, score] : scores) out.push_back({item, score});
    sort_ranked(out);
    return out;
}

std::string SknnModel::dump() const {
    std::ostringstream out;
    std::map<ItemId, std::vector<int>> sorted(inverted_.begin(), inverted_.end());
    for (const auto& [item, sids] : sorted) {
        out << item << '\t';
        for (size_t i = 0; i < sids.size(); ++i) {
            if (i) out << ',';
            out << sids[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace locrec
