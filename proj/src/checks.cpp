#include "causalnli/checks.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "causalnli/dataset.hpp"
#include "causalnli/enumerate.hpp"
#include "causalnli/evaluation.hpp"
#include "causalnli/independence.hpp"
#include "causalnli/mec.hpp"
#include "causalnli/pc.hpp"
#include "causalnli/rng.hpp"

namespace causalnli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double value, int decimals = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(decimals);
    out << value;
    return out.str();
}

// Expected values per node count 2..6.
constexpr std::array<std::int64_t, 5> kDagCounts = {2, 6, 31, 302, 5984};
constexpr std::array<double, 5> kEdgesPerDag = {0.50, 1.67, 3.48, 5.89, 8.77};
constexpr std::array<std::int64_t, 5> kMecCounts = {2, 5, 20, 142, 2207};
constexpr std::array<double, 5> kDagsPerMec = {1.0, 1.2, 1.55, 2.13, 2.71};
constexpr std::array<std::int64_t, 5> kSampleCounts = {24, 180, 1440, 17040, 397260};
constexpr std::array<double, 5> kValidPct = {0.00, 3.33, 7.50, 13.01, 18.85};
constexpr double kValidPctOverall = 18.57;
constexpr std::array<std::int64_t, 5> kTestCounts = {12, 90, 144, 1000, 1000};
constexpr std::array<std::int64_t, 5> kTrainCounts = {0, 0, 1152, 15040, 395260};
constexpr std::array<double, 5> kPremiseTokens = {31.5, 52.0, 104.0, 212.61, 434.54};
constexpr double kHypothesisTokens = 10.83;

// Top-|Diff| n-grams reported for the corpus, used by the association check.
const std::vector<std::string> kExpectedTopNgrams = {
    "a cause",  "a cause for", "A causes", "A causes something", "a direct",
    "a direct one", "for D", "for D but", "for E", "for E but",
};

// All labeled DAGs on n nodes (every acyclic orientation, not just
// upper-triangular ones). Used by oracle-style exhaustive checks.
std::vector<Dag> all_labeled_dags(int n) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cells.emplace_back(i, j);
    std::vector<Dag> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
        std::uint64_t adjacency = 0;
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (mask & (std::uint64_t{1} << k))
                adjacency |= std::uint64_t{1} << (cells[k].first * 8 + cells[k].second);
        try {
            out.push_back(Dag::from_bits(n, adjacency));
        } catch (const std::invalid_argument&) {
            // cyclic orientation
        }
    }
    return out;
}

Dag random_dag(int n, SplitMix64& rng) {
    std::uint64_t adjacency = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bounded(2)) adjacency |= std::uint64_t{1} << (i * 8 + j);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    deterministic_shuffle(perm, rng);
    return Dag::from_bits(n, permute_adjacency(n, adjacency, perm));
}

// Set of v-structure triples (a, b, c), a < c, of a DAG.
std::set<std::array<int, 3>> v_structures(const Dag& g) {
    std::set<std::array<int, 3>> out;
    const int n = g.node_count();
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            if (a == b || !g.edge(a, b)) continue;
            for (int c = a + 1; c < n; ++c) {
                if (c == b || !g.edge(c, b)) continue;
                if (g.edge(a, c) || g.edge(c, a)) continue;
                out.insert({a, b, c});
            }
        }
    return out;
}

std::uint64_t skeleton_bits(std::uint64_t adjacency, int n) {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adjacency & (std::uint64_t{1} << (i * 8 + j)))
                out |= (std::uint64_t{1} << (i * 8 + j)) |
                       (std::uint64_t{1} << (j * 8 + i));
    return out;
}

struct TableRow {
    std::int64_t dag_count = 0;
    std::int64_t edge_total = 0;
    std::int64_t mec_count = 0;
};

}  // namespace

std::vector<CheckResult> run_acceptance_checks(const CheckOptions& options) {
    std::vector<CheckResult> results;
    const int n_max = std::clamp(options.n_max, 2, 6);
    const int rows = n_max - 1;  // entries for n = 2..n_max

    // Shared artifacts: enumerations, classes, and the generated corpus.
    std::vector<std::vector<Dag>> dags_by_n(rows);
    std::vector<std::vector<Mec>> mecs_by_n(rows);
    const auto enum_start = Clock::now();
    for (int n = 2; n <= n_max; ++n) dags_by_n[n - 2] = enumerate_dags(n);
    const double enum_seconds = seconds_since(enum_start);
    for (int n = 2; n <= n_max; ++n)
        mecs_by_n[n - 2] = group_mecs(dags_by_n[n - 2]);

    const auto build_start = Clock::now();
    std::vector<SampleRecord> corpus;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<SampleRecord> block =
            build_for_n(n, TemplateSet::default_set(), options.jobs);
        corpus.insert(corpus.end(), std::make_move_iterator(block.begin()),
                      std::make_move_iterator(block.end()));
    }
    assign_splits(corpus, options.seed);
    const double build_seconds = seconds_since(build_start);
    const CorpusStats corpus_stats = stats(corpus);

    // 1. Unique DAG counts and mean edges per DAG.
    {
        CheckResult r{"1. unique DAG counts and edges/DAG (n=2.." +
                          std::to_string(n_max) + ")",
                      true, true, ""};
        std::string detail;
        for (int k = 0; k < rows; ++k) {
            const auto& dags = dags_by_n[k];
            std::int64_t edges = 0;
            for (const Dag& g : dags) edges += g.edge_count();
            const double mean = dags.empty() ? 0.0 : double(edges) / dags.size();
            const bool count_ok = std::int64_t(dags.size()) == kDagCounts[k];
            const bool mean_ok = std::abs(mean - kEdgesPerDag[k]) <= 0.01 + 1e-9;
            if (!count_ok || !mean_ok) r.pass = false;
            detail += "n=" + std::to_string(k + 2) + ": " +
                      std::to_string(dags.size()) + " DAGs (want " +
                      std::to_string(kDagCounts[k]) + "), " + fmt(mean) +
                      " edges/DAG (want " + fmt(kEdgesPerDag[k]) + "); ";
        }
        detail += "enumeration took " + fmt(enum_seconds, 1) + "s";
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 2. MEC counts and mean DAGs per MEC, plus a cross-validation of the
    // CPDAG construction against the known labeled class counts.
    {
        CheckResult r{"2. MEC counts and DAGs/MEC (n=2.." + std::to_string(n_max) + ")",
                      true, true, ""};
        std::string detail;
        for (int k = 0; k < rows; ++k) {
            const std::int64_t mec_count = mecs_by_n[k].size();
            const double per_mec =
                mec_count == 0 ? 0.0 : double(dags_by_n[k].size()) / mec_count;
            const bool count_ok = mec_count == kMecCounts[k];
            const bool mean_ok = std::abs(per_mec - kDagsPerMec[k]) <= 0.01 + 1e-9;
            if (!count_ok || !mean_ok) r.pass = false;
            detail += "n=" + std::to_string(k + 2) + ": " + std::to_string(mec_count) +
                      " MECs (want " + std::to_string(kMecCounts[k]) + "), " +
                      fmt(per_mec) + " DAGs/MEC (want " + fmt(kDagsPerMec[k]) + "); ";
        }
        const std::array<std::int64_t, 4> known_labeled_cpdags = {2, 11, 185, 8782};
        detail += "labeled-class cross-check:";
        for (int n = 2; n <= std::min(n_max, 5); ++n) {
            std::set<std::pair<std::uint64_t, std::uint64_t>> cpdags;
            for (const Dag& g : all_labeled_dags(n)) {
                const Cpdag c = cpdag_of(g);
                cpdags.emplace(c.directed_bits(), c.undirected_bits());
            }
            const bool ok =
                std::int64_t(cpdags.size()) == known_labeled_cpdags[n - 2];
            if (!ok) r.pass = false;
            detail += " n=" + std::to_string(n) + ": " +
                      std::to_string(cpdags.size()) + (ok ? " ok" : " MISMATCH") +
                      ";";
        }
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 3. Corpus sizes.
    {
        CheckResult r{"3. corpus sizes (n=2.." + std::to_string(n_max) + ")",
                      true, true, ""};
        std::string detail;
        std::int64_t want_total = 0;
        for (int k = 0; k < rows; ++k) {
            const auto it = corpus_stats.by_n.find(k + 2);
            const std::int64_t got = it == corpus_stats.by_n.end() ? 0 : it->second.samples;
            want_total += kSampleCounts[k];
            if (got != kSampleCounts[k]) r.pass = false;
            detail += "n=" + std::to_string(k + 2) + ": " + std::to_string(got) +
                      " (want " + std::to_string(kSampleCounts[k]) + "); ";
        }
        if (corpus_stats.overall.samples != want_total) r.pass = false;
        detail += "total " + std::to_string(corpus_stats.overall.samples) + " (want " +
                  std::to_string(want_total) + "); build took " +
                  fmt(build_seconds, 1) + "s";
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 4. Valid-label rates.
    {
        CheckResult r{"4. valid-label rates (±0.02pp)", true, true, ""};
        std::string detail;
        for (int k = 0; k < rows; ++k) {
            const auto it = corpus_stats.by_n.find(k + 2);
            const double got =
                it == corpus_stats.by_n.end() ? 0.0 : it->second.valid_label_pct;
            if (std::abs(got - kValidPct[k]) > 0.02 + 1e-9) r.pass = false;
            detail += "n=" + std::to_string(k + 2) + ": " + fmt(got) + "% (want " +
                      fmt(kValidPct[k]) + "%); ";
        }
        if (n_max == 6) {
            const double got = corpus_stats.overall.valid_label_pct;
            if (std::abs(got - kValidPctOverall) > 0.02 + 1e-9) r.pass = false;
            detail += "overall " + fmt(got) + "% (want " + fmt(kValidPctOverall) + "%)";
        }
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 5. Split sizes.
    {
        CheckResult r{"5. split sizes", true, true, ""};
        std::string detail;
        for (int k = 0; k < rows; ++k) {
            const auto it = corpus_stats.by_n.find(k + 2);
            const SliceStats s = it == corpus_stats.by_n.end() ? SliceStats{} : it->second;
            const bool ok = s.test == kTestCounts[k] && s.dev == kTestCounts[k] &&
                            s.train == kTrainCounts[k];
            if (!ok) r.pass = false;
            detail += "n=" + std::to_string(k + 2) + ": " + std::to_string(s.test) +
                      "/" + std::to_string(s.dev) + "/" + std::to_string(s.train) +
                      " (want " + std::to_string(kTestCounts[k]) + "/" +
                      std::to_string(kTestCounts[k]) + "/" +
                      std::to_string(kTrainCounts[k]) + "); ";
        }
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 6. PC recovers the CPDAG of every generating DAG.
    {
        CheckResult r{"6. PC == CPDAG (exhaustive n<=5, sampled n=6)", true, true, ""};
        std::int64_t checked = 0, mismatches = 0;
        for (int n = 2; n <= std::min(n_max, 5); ++n) {
            for (const Dag& g : dags_by_n[n - 2]) {
                ++checked;
                if (!(pc(SignatureOracle(ci_signature(g))) == cpdag_of(g)))
                    ++mismatches;
            }
        }
        std::int64_t sampled = 0;
        if (n_max >= 6) {
            SplitMix64 rng = SplitMix64::substream(options.seed, 0x9c6);
            for (; sampled < 500; ++sampled) {
                const Dag g = random_dag(6, rng);
                ++checked;
                if (!(pc(SignatureOracle(ci_signature(g))) == cpdag_of(g)))
                    ++mismatches;
            }
        }
        r.pass = mismatches == 0;
        r.detail = std::to_string(checked) + " DAGs checked (" +
                   std::to_string(sampled) + " random 6-node), " +
                   std::to_string(mismatches) + " mismatches";
        results.push_back(std::move(r));
    }

    // 7. The two d-separation deciders agree.
    {
        CheckResult r{"7. d-separation dual-decider agreement", true, true, ""};
        std::int64_t queries = 0, disagreements = 0;
        for (int n = 2; n <= std::min(n_max, 4); ++n) {
            for (const Dag& g : all_labeled_dags(n)) {
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) {
                        const NodeMask allowed =
                            NodeMask((1u << n) - 1) & ~NodeMask((1u << i) | (1u << j));
                        for (NodeMask z = 0; z <= allowed; ++z) {
                            if (z & ~allowed) continue;
                            ++queries;
                            if (d_separated(g, i, j, z) != d_separated_by_paths(g, i, j, z))
                                ++disagreements;
                        }
                    }
                }
            }
        }
        std::int64_t random_queries = 0;
        for (int n = 5; n <= n_max; ++n) {
            SplitMix64 rng = SplitMix64::substream(options.seed, 0xd5e + n);
            for (int q = 0; q < 10000; ++q, ++random_queries, ++queries) {
                const Dag g = random_dag(n, rng);
                const int i = int(rng.bounded(n));
                int j = int(rng.bounded(n - 1));
                if (j >= i) ++j;
                const NodeMask allowed =
                    NodeMask((1u << n) - 1) & ~NodeMask((1u << i) | (1u << j));
                NodeMask z = NodeMask(rng.bounded(1u << n)) & allowed;
                if (d_separated(g, i, j, z) != d_separated_by_paths(g, i, j, z))
                    ++disagreements;
            }
        }
        r.pass = disagreements == 0;
        r.detail = std::to_string(queries) + " queries (" +
                   std::to_string(random_queries) + " random on n in {5,6}), " +
                   std::to_string(disagreements) + " disagreements";
        results.push_back(std::move(r));
    }

    // 8. Class members match brute-force filtering of all labeled DAGs.
    {
        CheckResult r{"8. MEC member enumeration vs brute force (n<=4)", true, true, ""};
        std::int64_t classes = 0, mismatches = 0;
        for (int n = 2; n <= std::min(n_max, 4); ++n) {
            const std::vector<Dag> labeled = all_labeled_dags(n);
            for (const Mec& mec : mecs_by_n[n - 2]) {
                ++classes;
                const auto rep_vs = v_structures(mec.representative);
                const std::uint64_t rep_skeleton =
                    skeleton_bits(mec.representative.bits(), n);
                std::set<std::uint64_t> brute;
                for (const Dag& g : labeled)
                    if (skeleton_bits(g.bits(), n) == rep_skeleton &&
                        v_structures(g) == rep_vs)
                        brute.insert(g.bits());
                std::set<std::uint64_t> enumerated;
                for (const Dag& g : mec.members) enumerated.insert(g.bits());
                if (brute != enumerated) ++mismatches;
            }
        }
        r.pass = mismatches == 0;
        r.detail = std::to_string(classes) + " classes compared, " +
                   std::to_string(mismatches) + " mismatches";
        results.push_back(std::move(r));
    }

    // 9. Soft text statistics under the declared tokenizer.
    {
        CheckResult r{"9. text statistics (soft)", true, false, ""};
        std::string detail;
        const double hyp = corpus_stats.overall.hypothesis_tokens_mean;
        if (std::abs(hyp - kHypothesisTokens) > 0.10 * kHypothesisTokens)
            r.pass = false;
        detail += "hypothesis tokens " + fmt(hyp) + " (want " + fmt(kHypothesisTokens) +
                  " ±10%); premise tokens";
        for (int k = 0; k < rows; ++k) {
            const auto it = corpus_stats.by_n.find(k + 2);
            const double got =
                it == corpus_stats.by_n.end() ? 0.0 : it->second.premise_tokens_mean;
            if (std::abs(got - kPremiseTokens[k]) > 0.20 * kPremiseTokens[k])
                r.pass = false;
            detail += " n=" + std::to_string(k + 2) + ": " + fmt(got) + " (want " +
                      fmt(kPremiseTokens[k]) + " ±20%);";
        }
        r.detail = detail;
        results.push_back(std::move(r));
    }

    // 10. Random baselines on the generated test split.
    {
        CheckResult r{"10. baseline metrics on the test split", true, true, ""};
        std::vector<SampleRecord> test_set;
        for (const SampleRecord& rec : corpus)
            if (rec.split == Split::kTest) test_set.push_back(rec);
        std::int64_t positives = 0;
        for (const SampleRecord& rec : test_set) positives += rec.label;
        const double positive_rate =
            test_set.empty() ? 0.0 : 100.0 * positives / test_set.size();

        const Metrics majority =
            score(baseline(BaselineKind::kMajority, test_set, options.seed), test_set);
        const bool identity_ok =
            std::abs(majority.accuracy - (100.0 - positive_rate)) < 1e-9;
        double recall_sum = 0.0;
        for (std::uint64_t s = 1; s <= 10; ++s)
            recall_sum +=
                score(baseline(BaselineKind::kUniform, test_set, s), test_set).recall;
        const double mean_recall = recall_sum / 10.0;

        // The numeric bands assume the full test split; at reduced depth the
        // split is too small for them to be meaningful.
        bool band_ok = true, recall_ok = true;
        std::string band_note;
        if (n_max == 6) {
            band_ok = std::abs(majority.accuracy - 84.77) <= 0.5;
            band_note = " (want 84.77 ±0.5)";
            recall_ok = std::abs(mean_recall - 50.0) <= 2.0;
        }

        r.pass = identity_ok && band_ok && recall_ok;
        r.detail = "majority accuracy " + fmt(majority.accuracy) + " vs 100-rate " +
                   fmt(100.0 - positive_rate) + band_note + "; uniform recall mean " +
                   fmt(mean_recall) + " over 10 seeds" +
                   (n_max == 6 ? " (want 50 ±2)" : " (informational)");
        results.push_back(std::move(r));
    }

    // 11. Association analysis: template fragments dominate the top |Diff|
    // n-grams and lean toward the invalid label. Only meaningful on the
    // full corpus; informational at reduced depth.
    {
        CheckResult r{"11. n-gram/label association (top-10 fragments)", true,
                      n_max == 6, ""};
        const std::vector<PmiRow> table = pmi_table(corpus, 4);
        int fragment_hits = 0;
        bool signs_ok = true;
        std::string top;
        for (std::size_t k = 0; k < table.size() && k < 10; ++k) {
            const PmiRow& row = table[k];
            if (!top.empty()) top += ", ";
            top += "\"" + row.ngram + "\"";
            if (std::find(kExpectedTopNgrams.begin(), kExpectedTopNgrams.end(),
                          row.ngram) != kExpectedTopNgrams.end()) {
                ++fragment_hits;
                if (!(row.pmi_neg > 0.0 && row.pmi_pos < 0.0)) signs_ok = false;
            }
        }
        // Where the reference fragments actually landed, for the report.
        std::string ranks;
        for (const std::string& fragment : kExpectedTopNgrams) {
            for (std::size_t k = 0; k < table.size(); ++k) {
                if (table[k].ngram != fragment) continue;
                if (!ranks.empty()) ranks += ", ";
                ranks += "\"" + fragment + "\"@" + std::to_string(k + 1) +
                         (table[k].pmi_neg > 0 && table[k].pmi_pos < 0 ? "+" : "-");
                break;
            }
        }
        r.pass = fragment_hits >= 3 && signs_ok;
        r.detail = std::to_string(fragment_hits) +
                   " reference fragments in the top 10 (want >=3, invalid-leaning); "
                   "top: " + top + "; reference fragment ranks (+ = invalid-leaning): " +
                   ranks;
        results.push_back(std::move(r));
    }

    return results;
}

int print_check_report(const std::vector<CheckResult>& results, std::ostream& out) {
    bool hard_failure = false;
    for (const CheckResult& r : results) {
        const char* tag = r.pass ? "[PASS]" : (r.hard ? "[FAIL]" : "[WARN]");
        if (!r.pass && r.hard) hard_failure = true;
        out << tag << " " << r.name << ": " << r.detail << "\n";
    }
    out << (hard_failure ? "RESULT: FAIL\n" : "RESULT: PASS\n");
    return hard_failure ? 1 : 0;
}

}  // namespace causalnli
