#include "locrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace locrec {

std::pair<std::vector<Session>, std::vector<Session>> chronological_split(
    const std::vector<Session>& sessions, const SplitSpec& spec) {
    if (sessions.empty()) throw ConfigError("split on empty session list");
    if (spec.test_window_days < 1)
        throw ConfigError("test_window_days must be >= 1");
    int max_day = sessions[0].day;
    for (const auto& s : sessions) max_day = std::max(max_day, s.day);
    int boundary = max_day - spec.test_window_days + 1;

    std::vector<Session> train, test;
    for (const auto& s : sessions)
        (s.day < boundary ? train : test).push_back(s);
    if (train.empty())
        throw ConfigError("empty training partition (test window covers all days)");
    if (test.empty()) throw ConfigError("empty test partition");
    return {std::move(train), std::move(test)};
}

std::vector<Session> filter_train(const std::vector<Session>& sessions,
                                  const ItemFilter& f, const Catalog& catalog) {
    std::vector<Session> out;
    if (f.kind == ItemFilter::Kind::All) {
        out = sessions;
    } else {
        for (const auto& s : sessions) {
            Session kept;
            kept.session_id = s.session_id;
            kept.user_id = s.user_id;
            kept.day = s.day;
            for (const auto& ev : s.events)
                if (f.accepts(catalog.at(ev.article_id))) kept.events.push_back(ev);
            if (kept.events.size() >= 2) out.push_back(std::move(kept));
        }
    }
    if (out.empty())
        throw ScenarioError("no training sessions survive filter '" + f.name() + "'");
    return out;
}

std::vector<EvalEvent> next_click_events(const std::vector<Session>& test_sessions,
                                         const ItemFilter& f_test,
                                         const Catalog& catalog) {
    std::vector<EvalEvent> out;
    for (const auto& s : test_sessions) {
        for (size_t p = 1; p < s.events.size(); ++p) {
            const ItemId& target = s.events[p].article_id;
            if (!f_test.accepts(catalog.at(target))) continue;
            EvalEvent ev;
            ev.session_id = s.session_id;
            ev.prefix.reserve(p);
            for (size_t i = 0; i < p; ++i)
                ev.prefix.push_back(s.events[i].article_id);
            ev.target = target;
            out.push_back(std::move(ev));
        }
    }
    return out;
}

MetricsReport aggregate_ranks(const std::vector<int>& ranks,
                              const std::vector<int>& cutoffs) {
    MetricsReport report;
    long n = (long)ranks.size();
    report.evaluation_events = n;
    report.zero_events = (n == 0);
    for (int k : cutoffs) {
        CutoffMetrics m;
        m.k = k;
        if (n > 0) {
            long hits = 0;
            double mrr_sum = 0.0, ndcg_sum = 0.0;
            for (int r : ranks) {
                if (r >= 1 && r <= k) {
                    ++hits;
                    mrr_sum += 1.0 / (double)r;
                    ndcg_sum += 1.0 / std::log2((double)r + 1.0);
                }
            }
            m.hr = (double)hits / (double)n;
            m.mrr = mrr_sum / (double)n;
            m.ndcg = ndcg_sum / (double)n;
        }
        report.per_cutoff.push_back(m);
    }
    return report;
}

static int worker_count(size_t n_items) {
    long cap = 0;
    if (const char* env = std::getenv("LOCREC_THREADS")) cap = std::atol(env);
    if (cap <= 0) cap = (long)std::thread::hardware_concurrency();
    if (cap < 1) cap = 1;
    return (int)std::min<long>({cap, (long)n_items, 64});
}

MetricsReport evaluate(const Recommender& model,
                       const std::vector<EvalEvent>& events,
                       const std::vector<int>& cutoffs) {
    // Per-event ranks are integers, so the aggregation below is independent
    // of how the work is chunked.
    std::vector<int> ranks(events.size(), -1);  // -1 = skipped (unknown target)
    auto score_range = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            const EvalEvent& ev = events[i];
            if (!model.knows(ev.target)) continue;
            RankedList list = model.score(ev.prefix);
            int rank = 0;
            for (size_t r = 0; r < list.size(); ++r) {
                if (list[r].item == ev.target) {
                    rank = (int)r + 1;
                    break;
                }
            }
            ranks[i] = rank;
        }
    };

    int workers = events.empty() ? 1 : worker_count(events.size());
    if (workers <= 1) {
        score_range(0, events.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (events.size() + (size_t)workers - 1) / (size_t)workers;
        for (int w = 0; w < workers; ++w) {
            size_t lo = (size_t)w * chunk;
            size_t hi = std::min(events.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(score_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    std::vector<int> scored;
    scored.reserve(ranks.size());
    long skipped = 0;
    std::unordered_set<std::string> sessions_seen;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] < 0) {
            ++skipped;
            continue;
        }
        scored.push_back(ranks[i]);
        sessions_seen.insert(events[i].session_id);
    }
    MetricsReport report = aggregate_ranks(scored, cutoffs);
    report.skipped_targets_unknown_to_model = skipped;
    report.sessions_evaluated = (long)sessions_seen.size();
    return report;
}

ScenarioResult run_scenario(const Dataset& dataset, const ScenarioSpec& spec,
                            const SplitSpec& split, const ModelOptions& opts) {
    spec.validate();
    auto [train_sessions, test_sessions] =
        chronological_split(dataset.sessions, split);
    auto filtered = filter_train(train_sessions, spec.train_filter, dataset.catalog);
    auto model = make_recommender(spec.method, opts);
    model->train(filtered);
    auto events = next_click_events(test_sessions, spec.test_filter, dataset.catalog);
    ScenarioResult result;
    result.spec = spec;
    result.report = evaluate(*model, events, spec.cutoffs);
    return result;
}

static std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string report_csv(const std::vector<ScenarioResult>& results) {
    std::ostringstream out;
    std::vector<int> cutoffs =
        results.empty() ? std::vector<int>{10, 20} : results[0].spec.cutoffs;
    out << "method,train_filter,test_filter";
    for (const char* metric : {"HR", "MRR", "NDCG"})
        for (int k : cutoffs) out << ',' << metric << '@' << k;
    out << ",events,skipped,sessions\n";
    for (const auto& r : results) {
        out << to_string(r.spec.method) << ',' << r.spec.train_filter.name()
            << ',' << r.spec.test_filter.name();
        for (auto get : {&CutoffMetrics::hr, &CutoffMetrics::mrr,
                         &CutoffMetrics::ndcg})
            for (const auto& m : r.report.per_cutoff) out << ',' << fmt4(m.*get);
        out << ',' << r.report.evaluation_events << ','
            << r.report.skipped_targets_unknown_to_model << ','
            << r.report.sessions_evaluated << '\n';
    }
    return out.str();
}

std::string report_table(const std::vector<ScenarioResult>& results) {
    // build cells from the CSV then align columns
    std::istringstream csv(report_csv(results));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(csv, line)) {
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    std::vector<size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << row[i] << std::string(widths[i] - row[i].size(), ' ');
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace locrec
