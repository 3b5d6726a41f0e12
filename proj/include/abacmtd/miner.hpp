#pragma once

// Frequent-itemset mining over attribute transactions: FPGrowth (primary),
// Apriori (baseline and in-repo oracle), support/confidence rule derivation,
// and dispersion-ratio column pruning. All supports are exact integer row
// counts, divided only at the API boundary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abacmtd/core.hpp"
#include "abacmtd/dataset.hpp"
#include "abacmtd/errors.hpp"

namespace abacmtd {

struct FrequentItemset {
    AttributeSet items;
    std::size_t count = 0;  // exact number of rows containing every item
    double support = 0.0;   // count / N

    bool operator==(const FrequentItemset&) const = default;
};

struct AssociationRule {
    AttributeSet antecedent;  // X
    AttributeSet consequent;  // Y, disjoint from X
    double support = 0.0;     // Freq(X, Y) / N
    double confidence = 0.0;  // Freq(X, Y) / Freq(X)

    bool operator==(const AssociationRule&) const = default;
};

// Smallest row count c with c / n >= min_support. The epsilon absorbs the
// representation error of products like 0.4 * 5; thresholds are supplied
// with at most a few decimals while n stays far below 2^40.
inline std::size_t min_support_count(double min_support, std::size_t n) {
    if (n == 0) return 1;
    const double raw = min_support * static_cast<double>(n);
    auto c = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return c < 1 ? 1 : c;
}

inline std::size_t count_rows_containing(const AttributeSet& items, const TransactionDataset& data) {
    std::size_t n = 0;
    data.scan([&](const AttributeSet& row) {
        if (items.subset_of(row)) ++n;
    });
    return n;
}

// Support(X -> Y) = Freq(X, Y) / N: the fraction of rows containing every
// item of X and every item of Y.
inline double support(const AttributeSet& x, const AttributeSet& y, const TransactionDataset& data) {
    if (x.empty() || y.empty()) throw ParameterError("support requires non-empty itemsets");
    if (data.size() == 0) throw EmptyDatasetError("support is undefined over an empty dataset");
    std::size_t n = 0;
    data.scan([&](const AttributeSet& row) {
        if (x.subset_of(row) && y.subset_of(row)) ++n;
    });
    return static_cast<double>(n) / static_cast<double>(data.size());
}

// Confidence(X -> Y) = Freq(X, Y) / Freq(X).
inline double confidence(const AttributeSet& x, const AttributeSet& y, const TransactionDataset& data) {
    if (x.empty() || y.empty()) throw ParameterError("confidence requires non-empty itemsets");
    if (data.size() == 0) throw EmptyDatasetError("confidence is undefined over an empty dataset");
    std::size_t n_x = 0;
    std::size_t n_xy = 0;
    data.scan([&](const AttributeSet& row) {
        if (x.subset_of(row)) {
            ++n_x;
            if (y.subset_of(row)) ++n_xy;
        }
    });
    if (n_x == 0) {
        throw UndefinedConfidenceError("confidence undefined: antecedent has zero support");
    }
    return static_cast<double>(n_xy) / static_cast<double>(n_x);
}

// ---------------------------------------------------------------------------
// FP-tree

// Prefix-tree compression of the (reordered) transactions. Node ids index a
// stable pool; item ids index the global frequency order (0 = most
// frequent). The header table chains every node carrying a given item.
class FpTree {
public:
    struct Node {
        std::int32_t item = -1;  // -1 for the root
        std::size_t count = 0;
        Node* parent = nullptr;
        std::vector<std::pair<std::int32_t, Node*>> children;  // sorted by item id
    };

    explicit FpTree(std::size_t item_arity) : header_(item_arity) {
        root_ = &pool_.emplace_back();
    }

    // Inserts one transaction. `txn` must be sorted ascending by item id
    // (i.e. globally most-frequent first).
    void insert(const std::vector<std::int32_t>& txn, std::size_t weight) {
        Node* cur = root_;
        for (std::int32_t item : txn) {
            auto it = std::lower_bound(cur->children.begin(), cur->children.end(), item,
                                       [](const auto& e, std::int32_t i) { return e.first < i; });
            if (it != cur->children.end() && it->first == item) {
                cur = it->second;
            } else {
                Node* child = &pool_.emplace_back();
                child->item = item;
                child->parent = cur;
                cur->children.insert(it, {item, child});
                header_[static_cast<std::size_t>(item)].push_back(child);
                cur = child;
            }
            cur->count += weight;
        }
    }

    const std::vector<Node*>& chain(std::int32_t item) const { return header_[static_cast<std::size_t>(item)]; }
    std::size_t item_arity() const { return header_.size(); }

    // Sum of counts along the item's header chain = the item's global count.
    std::size_t chain_count(std::int32_t item) const {
        std::size_t total = 0;
        for (const Node* n : chain(item)) total += n->count;
        return total;
    }

    const Node* root() const { return root_; }
    std::size_t node_count() const { return pool_.size() - 1; }  // excludes the root

private:
    std::deque<Node> pool_;  // stable addresses
    Node* root_;
    std::vector<std::vector<Node*>> header_;
};

namespace detail {

// Global item order: descending support count, ties broken lexicographically
// by the `name:value` text. Returns id_to_item plus the per-item counts, and
// fills `ids` with the surviving items' ids keyed by attribute.
struct ItemOrder {
    std::vector<AttributeKV> id_to_item;
    std::vector<std::size_t> counts;  // by id
    std::map<AttributeKV, std::int32_t> ids;
};

inline ItemOrder frequency_order(const std::map<AttributeKV, std::size_t>& raw, std::size_t min_count) {
    ItemOrder order;
    for (const auto& [item, count] : raw) {
        if (count >= min_count) order.id_to_item.push_back(item);
    }
    std::sort(order.id_to_item.begin(), order.id_to_item.end(), [&](const AttributeKV& a, const AttributeKV& b) {
        const std::size_t ca = raw.at(a);
        const std::size_t cb = raw.at(b);
        if (ca != cb) return ca > cb;
        return a.text() < b.text();
    });
    order.counts.reserve(order.id_to_item.size());
    for (std::size_t i = 0; i < order.id_to_item.size(); ++i) {
        order.counts.push_back(raw.at(order.id_to_item[i]));
        order.ids.emplace(order.id_to_item[i], static_cast<std::int32_t>(i));
    }
    return order;
}

// Depth-first growth over conditional trees. `suffix` holds item ids of the
// pattern being grown; every emission is suffix plus one more item.
inline void fp_grow(const FpTree& tree, std::vector<std::int32_t>& suffix, std::size_t min_count,
                    std::vector<std::pair<std::vector<std::int32_t>, std::size_t>>& out) {
    const auto arity = static_cast<std::int32_t>(tree.item_arity());
    // Least-frequent item first: ids ascend with decreasing global support.
    for (std::int32_t item = arity - 1; item >= 0; --item) {
        const auto& chain = tree.chain(item);
        if (chain.empty()) continue;
        std::size_t item_count = 0;
        for (const FpTree::Node* n : chain) item_count += n->count;
        if (item_count < min_count) continue;

        suffix.push_back(item);
        out.emplace_back(suffix, item_count);

        // Conditional pattern base: the prefix path above each chain node,
        // weighted by that node's count.
        std::vector<std::pair<std::vector<std::int32_t>, std::size_t>> base;
        std::vector<std::size_t> cond_counts(static_cast<std::size_t>(arity), 0);
        for (const FpTree::Node* n : chain) {
            std::vector<std::int32_t> path;
            for (const FpTree::Node* p = n->parent; p != nullptr && p->item >= 0; p = p->parent) {
                path.push_back(p->item);
            }
            if (path.empty()) continue;
            std::reverse(path.begin(), path.end());  // back to global order
            for (std::int32_t i : path) cond_counts[static_cast<std::size_t>(i)] += n->count;
            base.emplace_back(std::move(path), n->count);
        }

        bool any_frequent = false;
        for (std::size_t c : cond_counts) {
            if (c >= min_count) {
                any_frequent = true;
                break;
            }
        }
        if (any_frequent) {
            FpTree cond(static_cast<std::size_t>(arity));
            std::vector<std::int32_t> filtered;
            for (const auto& [path, weight] : base) {
                filtered.clear();
                for (std::int32_t i : path) {
                    if (cond_counts[static_cast<std::size_t>(i)] >= min_count) filtered.push_back(i);
                }
                if (!filtered.empty()) cond.insert(filtered, weight);
            }
            fp_grow(cond, suffix, min_count, out);
        }
        suffix.pop_back();
    }
}

inline std::vector<FrequentItemset> finalize_itemsets(
    std::vector<std::pair<std::vector<std::int32_t>, std::size_t>>& found, const std::vector<AttributeKV>& id_to_item,
    std::size_t n_rows) {
    std::vector<FrequentItemset> out;
    out.reserve(found.size());
    for (auto& [ids, count] : found) {
        FrequentItemset fi;
        for (std::int32_t id : ids) fi.items.insert(id_to_item[static_cast<std::size_t>(id)]);
        fi.count = count;
        fi.support = static_cast<double>(count) / static_cast<double>(n_rows);
        out.push_back(std::move(fi));
    }
    std::sort(out.begin(), out.end(),
              [](const FrequentItemset& a, const FrequentItemset& b) { return a.items < b.items; });
    return out;
}

}  // namespace detail

// FPGrowth. Two passes over the row list: the first collects 1-item counts
// and fixes the global order, the second builds the FP-tree; mining then
// walks conditional pattern bases depth-first, least-frequent suffix first.
inline std::vector<FrequentItemset> mine_fpgrowth(const TransactionDataset& data, double min_support) {
    if (!(min_support > 0.0 && min_support <= 1.0)) {
        throw ParameterError("min_support must lie in (0, 1]");
    }
    if (data.size() == 0) return {};
    const std::size_t min_count = min_support_count(min_support, data.size());

    std::map<AttributeKV, std::size_t> raw;
    data.scan([&](const AttributeSet& row) {
        for (const AttributeKV& kv : row) ++raw[kv];
    });
    detail::ItemOrder order = detail::frequency_order(raw, min_count);
    if (order.id_to_item.empty()) return {};

    FpTree tree(order.id_to_item.size());
    std::vector<std::int32_t> txn;
    data.scan([&](const AttributeSet& row) {
        txn.clear();
        for (const AttributeKV& kv : row) {
            auto it = order.ids.find(kv);
            if (it != order.ids.end()) txn.push_back(it->second);
        }
        std::sort(txn.begin(), txn.end());
        if (!txn.empty()) tree.insert(txn, 1);
    });

    std::vector<std::pair<std::vector<std::int32_t>, std::size_t>> found;
    std::vector<std::int32_t> suffix;
    detail::fp_grow(tree, suffix, min_count, found);
    return detail::finalize_itemsets(found, order.id_to_item, data.size());
}

// Level-wise Apriori with candidate generation and one full dataset scan per
// level. Identical output contract to mine_fpgrowth; kept as the in-repo
// oracle and benchmark baseline.
inline std::vector<FrequentItemset> mine_apriori(const TransactionDataset& data, double min_support) {
    if (!(min_support > 0.0 && min_support <= 1.0)) {
        throw ParameterError("min_support must lie in (0, 1]");
    }
    if (data.size() == 0) return {};
    const std::size_t min_count = min_support_count(min_support, data.size());

    std::map<AttributeKV, std::size_t> raw;
    data.scan([&](const AttributeSet& row) {
        for (const AttributeKV& kv : row) ++raw[kv];
    });

    // Lexicographic item ids; candidate join relies on a fixed total order.
    std::vector<AttributeKV> id_to_item;
    std::map<AttributeKV, std::int32_t> ids;
    std::vector<std::size_t> counts1;
    for (const auto& [item, count] : raw) {
        if (count >= min_count) {
            ids.emplace(item, static_cast<std::int32_t>(id_to_item.size()));
            id_to_item.push_back(item);
            counts1.push_back(count);
        }
    }
    if (id_to_item.empty()) return {};

    using Itemset = std::vector<std::int32_t>;
    std::vector<std::pair<Itemset, std::size_t>> found;
    std::vector<Itemset> level;  // L_k, each sorted ascending
    for (std::size_t i = 0; i < id_to_item.size(); ++i) {
        level.push_back({static_cast<std::int32_t>(i)});
        found.emplace_back(level.back(), counts1[i]);
    }

    while (!level.empty()) {
        // Join step: pairs sharing the first k-1 items.
        std::set<Itemset> level_lookup(level.begin(), level.end());
        std::vector<Itemset> candidates;
        for (std::size_t a = 0; a < level.size(); ++a) {
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                const Itemset& x = level[a];
                const Itemset& y = level[b];
                if (!std::equal(x.begin(), x.end() - 1, y.begin(), y.end() - 1)) continue;
                Itemset cand(x);
                cand.push_back(y.back());
                if (cand[cand.size() - 2] > cand.back()) std::swap(cand[cand.size() - 2], cand.back());
                // Prune: every (k)-subset must itself be frequent.
                bool ok = true;
                Itemset sub(cand.begin(), cand.end() - 1);
                for (std::size_t drop = 0; ok && drop < cand.size(); ++drop) {
                    sub.assign(cand.begin(), cand.end());
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                    ok = level_lookup.count(sub) != 0;
                }
                if (ok) candidates.push_back(std::move(cand));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        if (candidates.empty()) break;

        // Count step: one pass, testing each candidate against the row.
        std::vector<std::size_t> cand_counts(candidates.size(), 0);
        const std::size_t k = candidates.front().size();
        std::vector<std::int32_t> row_ids;
        data.scan([&](const AttributeSet& row) {
            if (row.size() < k) return;
            row_ids.clear();
            for (const AttributeKV& kv : row) {
                auto it = ids.find(kv);
                if (it != ids.end()) row_ids.push_back(it->second);
            }
            if (row_ids.size() < k) return;
            std::sort(row_ids.begin(), row_ids.end());
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (std::includes(row_ids.begin(), row_ids.end(), candidates[c].begin(), candidates[c].end())) {
                    ++cand_counts[c];
                }
            }
        });

        level.clear();
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (cand_counts[c] >= min_count) {
                level.push_back(candidates[c]);
                found.emplace_back(std::move(candidates[c]), cand_counts[c]);
            }
        }
    }

    return detail::finalize_itemsets(found, id_to_item, data.size());
}

// Emits X => Y for every frequent Z with |Z| >= 2 and every non-empty proper
// partition Z = X ⊎ Y whose confidence meets the threshold (inclusive).
inline std::vector<AssociationRule> derive_rules(const std::vector<FrequentItemset>& itemsets,
                                                 const TransactionDataset& data, double min_confidence) {
    if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
        throw ParameterError("min_confidence must lie in [0, 1]");
    }
    std::map<AttributeSet, std::size_t> count_of;
    for (const FrequentItemset& fi : itemsets) count_of[fi.items] = fi.count;

    const auto lookup_count = [&](const AttributeSet& items) -> std::size_t {
        auto it = count_of.find(items);
        if (it != count_of.end()) return it->second;
        return count_rows_containing(items, data);  // fallback for partial input sets
    };

    std::vector<AssociationRule> out;
    for (const FrequentItemset& fi : itemsets) {
        const auto& items = fi.items.items();
        const std::size_t m = items.size();
        if (m < 2) continue;
        for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
            AttributeSet x;
            AttributeSet y;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (1u << i)) {
                    x.insert(items[i]);
                } else {
                    y.insert(items[i]);
                }
            }
            const std::size_t x_count = lookup_count(x);
            if (x_count == 0) continue;  // cannot happen for sets mined from `data`
            const double conf = static_cast<double>(fi.count) / static_cast<double>(x_count);
            if (conf >= min_confidence) {
                out.push_back(AssociationRule{std::move(x), std::move(y), fi.support, conf});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        return a.consequent < b.consequent;
    });
    return out;
}

// Per-column dispersion ratio AM/GM over the column's value-occurrence
// counts; columns with a ratio strictly below the threshold are removed
// from the dataset. Counts are positive, so GM > 0.
inline double dispersion_ratio(const std::vector<std::size_t>& value_counts) {
    if (value_counts.empty()) return 1.0;  // degenerate: column never populated
    bool all_equal = true;
    double sum = 0.0;
    double log_sum = 0.0;
    for (std::size_t c : value_counts) {
        all_equal = all_equal && c == value_counts.front();
        sum += static_cast<double>(c);
        log_sum += std::log(static_cast<double>(c));
    }
    if (all_equal) return 1.0;  // AM = GM exactly; skip exp/log rounding
    const auto k = static_cast<double>(value_counts.size());
    const double am = sum / k;
    const double gm = std::exp(log_sum / k);
    double ratio = am / gm;
    if (ratio < 1.0) ratio = 1.0;  // AM >= GM
    return ratio;
}

inline TransactionDataset dispersion_filter(const TransactionDataset& data, double threshold) {
    if (threshold < 1.0) throw ParameterError("dispersion threshold must be >= 1");

    std::map<std::string, std::map<std::string, std::size_t>> per_column;
    data.scan([&](const AttributeSet& row) {
        for (const AttributeKV& kv : row) ++per_column[kv.name][kv.value];
    });

    std::set<std::string> dropped;
    for (const std::string& col : data.columns()) {
        std::vector<std::size_t> counts;
        auto it = per_column.find(col);
        if (it != per_column.end()) {
            for (const auto& [value, n] : it->second) counts.push_back(n);
        }
        if (dispersion_ratio(counts) < threshold) dropped.insert(col);
    }

    std::vector<std::string> columns;
    for (const std::string& col : data.columns()) {
        if (!dropped.count(col)) columns.push_back(col);
    }
    std::vector<AttributeSet> rows;
    rows.reserve(data.size());
    for (const AttributeSet& row : data.rows()) {
        AttributeSet kept;
        for (const AttributeKV& kv : row) {
            if (!dropped.count(kv.name)) kept.insert(kv);
        }
        rows.push_back(std::move(kept));
    }
    return TransactionDataset(std::move(columns), std::move(rows));
}

}  // namespace abacmtd
