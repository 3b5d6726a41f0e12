#pragma once

// Benchmark harness: times FPGrowth against Apriori across a support
// threshold sweep and records the (algorithm-identical) itemset counts.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "abacmtd/dataset.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/io.hpp"
#include "abacmtd/miner.hpp"

namespace abacmtd {

struct BenchRow {
    double support_threshold = 0.0;
    double fpgrowth_seconds = 0.0;  // median over the repetitions
    double apriori_seconds = 0.0;
    std::size_t fpgrowth_itemsets = 0;
    std::size_t apriori_itemsets = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string dataset_id;
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;
};

// The ten thresholds of the reference sweep: 0.025 .. 0.250 step 0.025.
inline std::vector<double> default_threshold_sweep() {
    std::vector<double> out;
    for (int i = 1; i <= 10; ++i) out.push_back(0.025 * i);
    return out;
}

namespace detail {

// One untimed warmup run, then the median of `repetitions` timed runs. The
// report reflects algorithm cost, so first-touch cache and allocator
// effects stay outside the clock, like file I/O does.
template <class Fn>
double median_seconds(Fn&& fn, std::size_t repetitions) {
    fn();
    std::vector<double> samples;
    samples.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    if (samples.size() % 2 == 1) return samples[mid];
    return 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace detail

// Times both algorithms per threshold (dataset already in memory; file I/O
// is outside the clock). Thresholds must be strictly increasing.
inline BenchReport run_bench(const TransactionDataset& data, const std::vector<double>& thresholds,
                             std::size_t repetitions, std::string dataset_id, std::uint64_t seed = 0) {
    if (thresholds.empty()) throw ParameterError("benchmark sweep has no thresholds");
    if (repetitions < 1) throw ParameterError("benchmark repetitions must be >= 1");
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
        if (!(thresholds[i] < thresholds[i + 1])) {
            throw ParameterError("benchmark thresholds must be strictly increasing");
        }
    }

    BenchReport report;
    report.dataset_id = std::move(dataset_id);
    report.repetitions = repetitions;
    report.seed = seed;
    for (double threshold : thresholds) {
        BenchRow row;
        row.support_threshold = threshold;
        std::vector<FrequentItemset> fp_result;
        std::vector<FrequentItemset> ap_result;
        row.fpgrowth_seconds =
            detail::median_seconds([&] { fp_result = mine_fpgrowth(data, threshold); }, repetitions);
        row.apriori_seconds =
            detail::median_seconds([&] { ap_result = mine_apriori(data, threshold); }, repetitions);
        row.fpgrowth_itemsets = fp_result.size();
        row.apriori_itemsets = ap_result.size();
        if (fp_result != ap_result) {
            throw Error("benchmark consistency failure: algorithms disagree at threshold " + fixed6(threshold));
        }
        report.rows.push_back(row);
    }
    return report;
}

inline std::string bench_report_to_csv(const BenchReport& report) {
    std::string out = "# dataset=" + report.dataset_id + " repetitions=" + std::to_string(report.repetitions) +
                      " seed=" + std::to_string(report.seed) + "\n";
    out += "support_threshold,fpgrowth_seconds,apriori_seconds,fpgrowth_itemsets,apriori_itemsets\n";
    for (const BenchRow& row : report.rows) {
        out += fixed6(row.support_threshold) + "," + fixed6(row.fpgrowth_seconds) + "," +
               fixed6(row.apriori_seconds) + "," + std::to_string(row.fpgrowth_itemsets) + "," +
               std::to_string(row.apriori_itemsets) + "\n";
    }
    return out;
}

}  // namespace abacmtd
