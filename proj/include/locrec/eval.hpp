#pragma once

#include <string>
#include <utility>
#include <vector>

#include "locrec/domain.hpp"
#include "locrec/recommenders.hpp"

namespace locrec {

struct SplitSpec {
    int test_window_days = 10;
};

struct Dataset {
    Catalog catalog;
    std::vector<Session> sessions;
};

// Sessions strictly before the boundary day train; the rest test. The
// boundary is (max day - test_window_days + 1). Empty side is a
// configuration error.
std::pair<std::vector<Session>, std::vector<Session>> chronological_split(
    const std::vector<Session>& sessions, const SplitSpec& spec);

// Restricts each session to articles accepted by the filter; sessions left
// with fewer than two events are dropped. Zero survivors is a scenario
// error.
std::vector<Session> filter_train(const std::vector<Session>& sessions,
                                  const ItemFilter& f, const Catalog& catalog);

struct EvalEvent {
    std::string session_id;
    std::vector<ItemId> prefix;
    ItemId target;
};

// Next-click protocol: one candidate event per position >= 2 of every test
// session, kept iff the target passes the test filter. Prefixes are never
// filtered; only the predicted item is.
std::vector<EvalEvent> next_click_events(const std::vector<Session>& test_sessions,
                                         const ItemFilter& f_test,
                                         const Catalog& catalog);

// Ranks with 0 meaning miss; n must equal ranks.size(). Kept separate from
// the model loop so reference computations can share the aggregation.
MetricsReport aggregate_ranks(const std::vector<int>& ranks,
                              const std::vector<int>& cutoffs);

// Scores every event against the model. Targets the model never saw in
// training are excluded and tallied, not counted as misses. Honors
// LOCREC_THREADS (0 or unset = hardware concurrency).
MetricsReport evaluate(const Recommender& model,
                       const std::vector<EvalEvent>& events,
                       const std::vector<int>& cutoffs);

struct ScenarioResult {
    ScenarioSpec spec;
    MetricsReport report;
};

ScenarioResult run_scenario(const Dataset& dataset, const ScenarioSpec& spec,
                            const SplitSpec& split = {},
                            const ModelOptions& opts = {});

// Report rendering: CSV row set and an aligned human-readable table.
// Metrics printed with 4 decimals.
std::string report_csv(const std::vector<ScenarioResult>& results);
std::string report_table(const std::vector<ScenarioResult>& results);

}  // namespace locrec
