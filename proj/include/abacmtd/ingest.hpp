#pragma once

// Dataset acquisition for mining: CSV loading, overlap joins, proportional
// sampling, and a deterministic synthetic generator with plantable
// correlations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abacmtd/core.hpp"
#include "abacmtd/dataset.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/io.hpp"
#include "abacmtd/rng.hpp"

namespace abacmtd {

// ---------------------------------------------------------------------------
// CSV loading

inline TransactionDataset dataset_from_csv(std::string_view text,
                                           const std::optional<std::vector<std::string>>& expected_columns = {}) {
    const auto cells = parse_csv(text);
    if (cells.empty()) throw SchemaError("dataset CSV has no header row");
    const std::vector<std::string>& header = cells.front();
    if (expected_columns && header != *expected_columns) {
        std::string want;
        for (const auto& c : *expected_columns) want += (want.empty() ? "" : ",") + c;
        std::string got;
        for (const auto& c : header) got += (got.empty() ? "" : ",") + c;
        throw SchemaError("header mismatch: expected [" + want + "], found [" + got + "]");
    }
    std::vector<AttributeSet> rows;
    rows.reserve(cells.size() - 1);
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].size() != header.size()) {
            throw SchemaError("malformed row at line " + std::to_string(i + 1) + ": expected " +
                              std::to_string(header.size()) + " fields, found " + std::to_string(cells[i].size()));
        }
        AttributeSet row;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (!cells[i][c].empty()) row.insert(AttributeKV(header[c], cells[i][c]));
        }
        rows.push_back(std::move(row));
    }
    return TransactionDataset(header, std::move(rows));
}

inline TransactionDataset load_csv(const std::string& path,
                                   const std::optional<std::vector<std::string>>& expected_columns = {}) {
    return dataset_from_csv(read_file(path), expected_columns);
}

// ---------------------------------------------------------------------------
// Join

// Inner equi-join on the key columns' values (a key missing on both sides
// counts as equal, so a self-join on every column is the identity). Output
// rows are the union of both item sets; right-side non-key columns whose
// names collide with the left are prefixed `r_`.
inline TransactionDataset join(const TransactionDataset& left, const TransactionDataset& right,
                               const std::vector<std::string>& keys) {
    if (keys.empty()) throw ParameterError("join requires at least one key column");
    for (const std::string& k : keys) {
        if (!left.has_column(k)) throw SchemaError("join key '" + k + "' missing from the left dataset");
        if (!right.has_column(k)) throw SchemaError("join key '" + k + "' missing from the right dataset");
    }
    const std::set<std::string> key_set(keys.begin(), keys.end());
    const std::set<std::string> left_cols(left.columns().begin(), left.columns().end());

    std::map<std::string, std::string> right_rename;  // original -> output name
    std::vector<std::string> columns = left.columns();
    for (const std::string& c : right.columns()) {
        if (key_set.count(c)) continue;
        std::string out_name = left_cols.count(c) ? "r_" + c : c;
        right_rename.emplace(c, out_name);
        columns.push_back(std::move(out_name));
    }

    // Bucket the right side by key tuple; missing cells keep a sentinel that
    // cannot collide with real values ('\x1f' is not valid in CSV names).
    const auto key_of = [&](const AttributeSet& row) {
        std::string key;
        for (const std::string& k : keys) {
            auto v = row.value_of(k);
            key += v ? *v : std::string("\x1f");
            key += '\x1e';
        }
        return key;
    };
    std::map<std::string, std::vector<const AttributeSet*>> right_index;
    for (const AttributeSet& row : right.rows()) right_index[key_of(row)].push_back(&row);

    std::vector<AttributeSet> rows;
    for (const AttributeSet& lrow : left.rows()) {
        auto it = right_index.find(key_of(lrow));
        if (it == right_index.end()) continue;
        for (const AttributeSet* rrow : it->second) {
            AttributeSet merged = lrow;
            for (const AttributeKV& kv : *rrow) {
                if (key_set.count(kv.name)) continue;  // key items come from the left copy
                merged.insert_or_assign(AttributeKV(right_rename.at(kv.name), kv.value));
            }
            rows.push_back(std::move(merged));
        }
    }
    return TransactionDataset(std::move(columns), std::move(rows));
}

// ---------------------------------------------------------------------------
// Proportional (stratified) sampling

// Samples exactly n rows, preserving stratum proportions via largest-
// remainder rounding and drawing without replacement inside each stratum.
// Output keeps the original row order. Deterministic per seed.
inline TransactionDataset proportional_sample(const TransactionDataset& data, std::size_t n,
                                              const std::string& stratum_column, std::uint64_t seed) {
    if (!data.has_column(stratum_column)) {
        throw SchemaError("stratum column '" + stratum_column + "' is not in the dataset");
    }
    if (n == 0 || n > data.size()) {
        throw ParameterError("sample size must satisfy 0 < n <= N (n=" + std::to_string(n) +
                             ", N=" + std::to_string(data.size()) + ")");
    }

    // Strata in deterministic order: values ascending, rows missing the
    // column last.
    std::map<std::optional<std::string>, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < data.size(); ++i) {
        strata[data.rows()[i].value_of(stratum_column)].push_back(i);
    }
    std::vector<std::pair<std::optional<std::string>, std::vector<std::size_t>>> ordered;
    for (auto& [value, idx] : strata) {
        if (value) ordered.emplace_back(value, std::move(idx));
    }
    auto missing = strata.find(std::nullopt);
    if (missing != strata.end()) ordered.emplace_back(std::nullopt, std::move(missing->second));

    // Largest-remainder quotas summing to exactly n.
    const double total = static_cast<double>(data.size());
    std::vector<std::size_t> quota(ordered.size());
    std::vector<std::pair<double, std::size_t>> remainders;  // (remainder, stratum index)
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < ordered.size(); ++s) {
        const double exact = static_cast<double>(n) * static_cast<double>(ordered[s].second.size()) / total;
        quota[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
        assigned += quota[s];
        remainders.emplace_back(exact - static_cast<double>(quota[s]), s);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; ++i) {
        ++quota[remainders[i % remainders.size()].second];
        ++assigned;
    }

    Rng rng(seed);
    std::vector<std::size_t> selected;
    selected.reserve(n);
    for (std::size_t s = 0; s < ordered.size(); ++s) {
        std::vector<std::size_t>& pool = ordered[s].second;
        const std::size_t take = std::min(quota[s], pool.size());
        // Partial Fisher-Yates over the stratum's row indices.
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + rng.index(pool.size() - i);
            std::swap(pool[i], pool[j]);
            selected.push_back(pool[i]);
        }
    }
    std::sort(selected.begin(), selected.end());

    std::vector<AttributeSet> rows;
    rows.reserve(selected.size());
    for (std::size_t idx : selected) rows.push_back(data.rows()[idx]);
    return TransactionDataset(data.columns(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Synthetic generation

struct ValueWeight {
    std::string value;
    double weight = 0.0;
};

struct ColumnSpec {
    std::string name;
    std::vector<ValueWeight> values;
};

// Plants a minable association: whenever col_a draws val_a, col_b is forced
// to val_b with the given probability.
struct CorrelationHint {
    std::string col_a;
    std::string val_a;
    std::string col_b;
    std::string val_b;
    double probability = 0.0;
};

struct DatasetSpec {
    std::vector<ColumnSpec> columns;
    std::size_t row_count = 0;
    std::vector<CorrelationHint> hints;
    std::uint64_t seed = 0;
};

inline void validate(const DatasetSpec& spec) {
    if (spec.columns.empty()) throw ParameterError("dataset spec has no columns");
    std::set<std::string> names;
    for (const ColumnSpec& col : spec.columns) {
        if (!valid_attribute_name(col.name)) throw ParameterError("invalid column name '" + col.name + "'");
        if (!names.insert(col.name).second) throw ParameterError("duplicate column '" + col.name + "' in spec");
        if (col.values.empty()) throw ParameterError("column '" + col.name + "' has no values");
        double sum = 0.0;
        for (const ValueWeight& vw : col.values) {
            if (vw.value.empty()) throw ParameterError("column '" + col.name + "' lists an empty value");
            if (vw.weight < 0.0) throw ParameterError("column '" + col.name + "' has a negative weight");
            sum += vw.weight;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ParameterError("column '" + col.name + "' weights sum to " + std::to_string(sum) + ", not 1");
        }
    }
    for (const CorrelationHint& h : spec.hints) {
        if (!names.count(h.col_a) || !names.count(h.col_b)) {
            throw ParameterError("correlation hint references an unknown column");
        }
        if (h.probability < 0.0 || h.probability > 1.0) {
            throw ParameterError("correlation hint probability must lie in [0, 1]");
        }
    }
}

// Seeded weighted draw per column, then hints applied in listed order
// against the row's current state. Deterministic per seed.
inline TransactionDataset synth_generate(const DatasetSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    std::vector<std::string> columns;
    columns.reserve(spec.columns.size());
    for (const ColumnSpec& col : spec.columns) columns.push_back(col.name);

    std::vector<AttributeSet> rows;
    rows.reserve(spec.row_count);
    for (std::size_t r = 0; r < spec.row_count; ++r) {
        AttributeSet row;
        for (const ColumnSpec& col : spec.columns) {
            const double roll = rng.real();
            double acc = 0.0;
            const std::string* picked = &col.values.back().value;
            for (const ValueWeight& vw : col.values) {
                acc += vw.weight;
                if (roll < acc) {
                    picked = &vw.value;
                    break;
                }
            }
            row.insert(AttributeKV(col.name, *picked));
        }
        for (const CorrelationHint& h : spec.hints) {
            if (row.value_of(h.col_a) == h.val_a && rng.chance(h.probability)) {
                row.insert_or_assign(AttributeKV(h.col_b, h.val_b));
            }
        }
        rows.push_back(std::move(row));
    }
    return TransactionDataset(std::move(columns), std::move(rows));
}

// Spec document: {"seed": .., "row_count": .., "columns": [{"name": ..,
// "values": [{"value": .., "weight": ..}, ..]}, ..], "correlation_hints":
// [{"col_a": .., "val_a": .., "col_b": .., "val_b": .., "probability": ..}]}
inline DatasetSpec dataset_spec_from_json(const nlohmann::json& j) {
    DatasetSpec spec;
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.row_count = j.at("row_count").get<std::size_t>();
    for (const auto& col : j.at("columns")) {
        ColumnSpec cs;
        cs.name = col.at("name").get<std::string>();
        for (const auto& vw : col.at("values")) {
            cs.values.push_back({vw.at("value").get<std::string>(), vw.at("weight").get<double>()});
        }
        spec.columns.push_back(std::move(cs));
    }
    if (j.contains("correlation_hints")) {
        for (const auto& h : j.at("correlation_hints")) {
            spec.hints.push_back({h.at("col_a").get<std::string>(), h.at("val_a").get<std::string>(),
                                  h.at("col_b").get<std::string>(), h.at("val_b").get<std::string>(),
                                  h.at("probability").get<double>()});
        }
    }
    validate(spec);
    return spec;
}

}  // namespace abacmtd
