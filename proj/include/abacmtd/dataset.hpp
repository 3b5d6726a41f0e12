#pragma once

// Transaction data for mining: each row is one record's attribute set.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abacmtd/core.hpp"
#include "abacmtd/errors.hpp"

namespace abacmtd {

// The record set D of N rows. Column order is the file/header order. The
// scan() pass counter exists so tests can assert how many full passes a
// mining algorithm makes (FPGrowth: exactly two).
class TransactionDataset {
public:
    TransactionDataset() = default;

    TransactionDataset(std::vector<std::string> columns, std::vector<AttributeSet> rows)
        : columns_(std::move(columns)), rows_(std::move(rows)) {
        validate();
    }

    TransactionDataset(const TransactionDataset& other) : columns_(other.columns_), rows_(other.rows_) {}
    TransactionDataset(TransactionDataset&& other) noexcept
        : columns_(std::move(other.columns_)), rows_(std::move(other.rows_)) {}
    TransactionDataset& operator=(const TransactionDataset& other) {
        columns_ = other.columns_;
        rows_ = other.rows_;
        scans_.store(0, std::memory_order_relaxed);
        return *this;
    }
    TransactionDataset& operator=(TransactionDataset&& other) noexcept {
        columns_ = std::move(other.columns_);
        rows_ = std::move(other.rows_);
        scans_.store(0, std::memory_order_relaxed);
        return *this;
    }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<AttributeSet>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    bool has_column(std::string_view name) const {
        return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
    }

    // One full pass over the row list.
    template <class Fn>
    void scan(Fn&& fn) const {
        scans_.fetch_add(1, std::memory_order_relaxed);
        for (const AttributeSet& row : rows_) fn(row);
    }

    std::size_t scan_count() const { return scans_.load(std::memory_order_relaxed); }
    void reset_scan_count() const { scans_.store(0, std::memory_order_relaxed); }

    bool operator==(const TransactionDataset& other) const {
        return columns_ == other.columns_ && rows_ == other.rows_;
    }

private:
    void validate() const {
        std::set<std::string_view> seen;
        for (const std::string& c : columns_) {
            if (!valid_attribute_name(c)) throw SchemaError("invalid column name '" + c + "'");
            if (!seen.insert(c).second) throw SchemaError("duplicate column name '" + c + "'");
        }
        for (const AttributeSet& row : rows_) {
            for (const AttributeKV& kv : row) {
                if (!seen.count(kv.name)) {
                    throw SchemaError("row item '" + kv.text() + "' names a column absent from the header");
                }
            }
        }
    }

    std::vector<std::string> columns_;
    std::vector<AttributeSet> rows_;
    mutable std::atomic<std::size_t> scans_{0};
};

}  // namespace abacmtd
