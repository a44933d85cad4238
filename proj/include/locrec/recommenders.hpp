#pragma once

#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "locrec/domain.hpp"

namespace locrec {

struct ScoredItem {
    ItemId item;
    double score = 0.0;
};

// Descending score, ties broken by ascending article_id; never contains an
// item from the scored prefix.
using RankedList = std::vector<ScoredItem>;

enum class SrDecay { InverseGap, Linear };

struct ModelOptions {
    SrDecay sr_decay = SrDecay::InverseGap;
    int sr_max_back = 10;
    int sknn_k = 20;
};

class Recommender {
public:
    virtual ~Recommender() = default;
    virtual void train(const std::vector<Session>& sessions) = 0;
    virtual RankedList score(const std::vector<ItemId>& prefix) const = 0;
    // item occurred in the training data
    virtual bool knows(const ItemId& item) const = 0;
    // debug dump: "antecedent\tconsequent\tscore" lines, sorted
    virtual std::string dump() const;

protected:
    // shared pair-table machinery for AR/MC/SR
    using Row = std::unordered_map<ItemId, double>;
    std::unordered_map<ItemId, Row> table_;
    std::unordered_set<ItemId> known_;

    RankedList rank_row(const std::vector<ItemId>& prefix) const;
};

std::unique_ptr<Recommender> make_recommender(Method m,
                                              const ModelOptions& opts = {});

// Co-occurrence rules of size two over all ordered in-session pairs,
// no support or confidence thresholds.
class ArModel : public Recommender {
public:
    void train(const std::vector<Session>& sessions) override;
    RankedList score(const std::vector<ItemId>& prefix) const override;
    bool knows(const ItemId& item) const override { return known_.count(item) > 0; }
};

// First-order transitions between adjacent clicks. Raw counts rank the same
// as row-normalized probabilities, so counts are used directly.
class McModel : public Recommender {
public:
    void train(const std::vector<Session>& sessions) override;
    RankedList score(const std::vector<ItemId>& prefix) const override;
    bool knows(const ItemId& item) const override { return known_.count(item) > 0; }
};

// Ordered pairs up to max_back steps apart, weighted by a gap decay.
class SrModel : public Recommender {
public:
    explicit SrModel(const ModelOptions& opts) : opts_(opts) {}
    void train(const std::vector<Session>& sessions) override;
    RankedList score(const std::vector<ItemId>& prefix) const override;
    bool knows(const ItemId& item) const override { return known_.count(item) > 0; }

    static double decay_weight(SrDecay decay, int gap);

private:
    ModelOptions opts_;
};

// Session KNN with binary session vectors and cosine similarity; neighbor
// votes from the k most similar training sessions.
class SknnModel : public Recommender {
public:
    explicit SknnModel(const ModelOptions& opts) : k_(opts.sknn_k) {}
    void train(const std::vector<Session>& sessions) override;
    RankedList score(const std::vector<ItemId>& prefix) const override;
    bool knows(const ItemId& item) const override {
        return inverted_.count(item) > 0;
    }
    std::string dump() const override;

private:
    int k_ = 20;
    std::vector<std::vector<ItemId>> session_sets_;  // distinct items, sorted
    std::unordered_map<ItemId, std::vector<int>> inverted_;
};

}  // namespace locrec
