#pragma once

// Shared domain model: attributes, requests, policy rules, decisions, and
// the rule-matching predicate everything else builds on. All types are
// immutable values once constructed and safe to share across threads.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abacmtd/errors.hpp"

namespace abacmtd {

// ---------------------------------------------------------------------------
// Attributes

inline bool valid_attribute_name(std::string_view name) {
    if (name.empty()) return false;
    for (unsigned char c : name) {
        if (c == ':' || std::isspace(c)) return false;
    }
    return true;
}

// A (name, value) pair — the atomic unit of subjects, objects, environment,
// itemsets, and rule conditions. Names are bare tokens: non-empty, no
// whitespace, no ':' (reserved as the serialization separator). Values may
// be empty and may contain ':'.
struct AttributeKV {
    std::string name;
    std::string value;

    AttributeKV() = default;
    AttributeKV(std::string n, std::string v) : name(std::move(n)), value(std::move(v)) {
        if (!valid_attribute_name(name)) {
            throw ParameterError("invalid attribute name: '" + name + "'");
        }
    }

    auto operator<=>(const AttributeKV&) const = default;

    std::string text() const { return name + ":" + value; }
};

// Parses the canonical `name:value` form; the first ':' separates.
inline AttributeKV parse_attribute(std::string_view text) {
    auto pos = text.find(':');
    if (pos == std::string_view::npos) {
        throw SchemaError("attribute '" + std::string(text) + "' lacks a ':' separator");
    }
    return AttributeKV(std::string(text.substr(0, pos)), std::string(text.substr(pos + 1)));
}

// Ordered attribute set with at most one value per name. Entity attribute
// sets and rule condition sets are both single-valued per name (the policy
// document schema stores conditions as name→value maps).
class AttributeSet {
public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<AttributeKV> items) {
        for (const auto& kv : items) insert(kv);
    }

    // Inserts; a second value under an existing name is rejected.
    void insert(AttributeKV kv) {
        auto it = lower_bound(kv.name);
        if (it != items_.end() && it->name == kv.name) {
            throw ParameterError("duplicate attribute name '" + kv.name + "' in set");
        }
        items_.insert(it, std::move(kv));
    }

    // Inserts, replacing any existing entry of the same name.
    void insert_or_assign(AttributeKV kv) {
        auto it = lower_bound(kv.name);
        if (it != items_.end() && it->name == kv.name) {
            *it = std::move(kv);
        } else {
            items_.insert(it, std::move(kv));
        }
    }

    bool erase_name(std::string_view name) {
        auto it = lower_bound(name);
        if (it != items_.end() && it->name == name) {
            items_.erase(it);
            return true;
        }
        return false;
    }

    // Exact (name, value) membership.
    bool contains(const AttributeKV& kv) const {
        auto it = lower_bound(kv.name);
        return it != items_.end() && *it == kv;
    }

    bool contains_name(std::string_view name) const { return value_of(name).has_value(); }

    std::optional<std::string> value_of(std::string_view name) const {
        auto it = lower_bound(name);
        if (it != items_.end() && it->name == name) return it->value;
        return std::nullopt;
    }

    // True iff every item of this set appears (exact pair) in `other`.
    bool subset_of(const AttributeSet& other) const {
        return std::all_of(items_.begin(), items_.end(),
                           [&](const AttributeKV& kv) { return other.contains(kv); });
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const std::vector<AttributeKV>& items() const { return items_; }

    auto operator<=>(const AttributeSet&) const = default;

private:
    std::vector<AttributeKV>::iterator lower_bound(std::string_view name) {
        return std::lower_bound(items_.begin(), items_.end(), name,
                                [](const AttributeKV& kv, std::string_view n) { return kv.name < n; });
    }
    std::vector<AttributeKV>::const_iterator lower_bound(std::string_view name) const {
        return std::lower_bound(items_.begin(), items_.end(), name,
                                [](const AttributeKV& kv, std::string_view n) { return kv.name < n; });
    }

    std::vector<AttributeKV> items_;  // sorted by name, names unique
};

// ---------------------------------------------------------------------------
// Actions

enum class Action : std::uint8_t { Open = 0, Edit = 1, Delete = 2 };

inline constexpr Action kAllActions[] = {Action::Open, Action::Edit, Action::Delete};

inline std::string_view to_string(Action a) {
    switch (a) {
        case Action::Open: return "open";
        case Action::Edit: return "edit";
        case Action::Delete: return "delete";
    }
    return "open";
}

inline Action parse_action(std::string_view text) {
    if (text == "open") return Action::Open;
    if (text == "edit") return Action::Edit;
    if (text == "delete") return Action::Delete;
    throw SchemaError("unknown action '" + std::string(text) + "' (expected open|edit|delete)");
}

// Subset of {open, edit, delete}.
class ActionSet {
public:
    ActionSet() = default;
    ActionSet(std::initializer_list<Action> acts) {
        for (Action a : acts) insert(a);
    }

    void insert(Action a) { bits_ |= bit(a); }
    bool contains(Action a) const { return (bits_ & bit(a)) != 0; }
    bool empty() const { return bits_ == 0; }

    std::size_t size() const {
        std::size_t n = 0;
        for (Action a : kAllActions) n += contains(a) ? 1 : 0;
        return n;
    }

    // Canonical order: open, edit, delete.
    std::vector<Action> list() const {
        std::vector<Action> out;
        for (Action a : kAllActions) {
            if (contains(a)) out.push_back(a);
        }
        return out;
    }

    auto operator<=>(const ActionSet&) const = default;

private:
    static std::uint8_t bit(Action a) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(a)); }
    std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Requests

struct AccessRequest {
    std::string subject_id;
    Action action = Action::Open;
    AttributeSet subject_attrs;
    AttributeSet object_attrs;
    AttributeSet env_attrs;
    std::int64_t timestamp = 0;  // monotonic event time, unix seconds
};

// ---------------------------------------------------------------------------
// Policy rules

enum class Effect : std::uint8_t { Grant, Deny };

inline std::string_view to_string(Effect e) { return e == Effect::Grant ? "grant" : "deny"; }

inline Effect parse_effect(std::string_view text) {
    if (text == "grant") return Effect::Grant;
    if (text == "deny") return Effect::Deny;
    throw SchemaError("unknown effect '" + std::string(text) + "' (expected grant|deny)");
}

// Original rules come from the administrator; mutated rules are produced by
// the policy mutation engine and keep a back-link to their source rule and
// the correlated attribute that was inserted.
struct Provenance {
    enum class Kind : std::uint8_t { Original, Mutated };

    Kind kind = Kind::Original;
    std::string source_rule_id;             // mutated only; empty when the rule was synthesized
    std::optional<AttributeKV> inserted;    // mutated only

    static Provenance original() { return {}; }
    static Provenance mutated(std::string source, AttributeKV ins) {
        Provenance p;
        p.kind = Kind::Mutated;
        p.source_rule_id = std::move(source);
        p.inserted = std::move(ins);
        return p;
    }

    bool is_mutated() const { return kind == Kind::Mutated; }

    bool operator==(const Provenance&) const = default;
};

// Conjunctive attribute conditions + actions + effect. Empty condition sets
// match anything.
struct PolicyRule {
    std::string id;
    AttributeSet subject_conds;
    AttributeSet object_conds;
    AttributeSet env_conds;
    ActionSet actions;
    Effect effect = Effect::Grant;
    Provenance provenance;

    bool operator==(const PolicyRule&) const = default;
};

inline void validate_rule(const PolicyRule& rule) {
    if (rule.id.empty()) throw ParameterError("policy rule has an empty id");
    if (rule.actions.empty()) throw ParameterError("rule '" + rule.id + "' has an empty action set");
    if (rule.provenance.is_mutated()) {
        if (!rule.provenance.inserted) {
            throw ParameterError("mutated rule '" + rule.id + "' lacks an inserted attribute");
        }
        const AttributeKV& ins = *rule.provenance.inserted;
        int hits = (rule.subject_conds.contains(ins) ? 1 : 0) + (rule.object_conds.contains(ins) ? 1 : 0) +
                   (rule.env_conds.contains(ins) ? 1 : 0);
        if (hits != 1) {
            throw ParameterError("mutated rule '" + rule.id +
                                 "': inserted attribute must appear in exactly one condition set");
        }
    }
}

// Ordered rule list under the fixed deny-overrides / default-deny combining
// algorithm. Versions strictly increase on every administrative change.
struct PolicySet {
    std::uint64_t version = 0;
    std::vector<PolicyRule> rules;

    bool operator==(const PolicySet&) const = default;
};

inline void validate_policy_set(const PolicySet& policy) {
    std::vector<std::string_view> ids;
    ids.reserve(policy.rules.size());
    for (const PolicyRule& r : policy.rules) {
        validate_rule(r);
        ids.push_back(r.id);
    }
    std::sort(ids.begin(), ids.end());
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
        throw ParameterError("duplicate rule id '" + std::string(*dup) + "' in policy set");
    }
}

// ---------------------------------------------------------------------------
// Decisions

struct Decision {
    Effect outcome = Effect::Deny;
    std::vector<std::string> matched_rule_ids;          // in policy order
    std::optional<AttributeSet> deception_payload;      // honey bait; never present on Grant

    bool operator==(const Decision&) const = default;
};

// ---------------------------------------------------------------------------
// Thresholds

struct SimilarityBand {
    double lo = 0.6;
    double hi = 0.95;

    bool operator==(const SimilarityBand&) const = default;
};

struct ThresholdConfig {
    double sensitivity_k = 0.0;     // K
    double support_theta = 0.0;     // S_theta
    double confidence_theta = 0.0;  // C_theta
    double dispersion_theta = 1.0;
    SimilarityBand similarity_band;

    bool operator==(const ThresholdConfig&) const = default;
};

inline void validate(const SimilarityBand& band) {
    if (!(band.lo >= 0.0 && band.lo < band.hi && band.hi <= 1.0)) {
        throw ParameterError("similarity band requires 0 <= lo < hi <= 1");
    }
}

inline void validate(const ThresholdConfig& cfg) {
    if (cfg.sensitivity_k < 0.0) throw ParameterError("sensitivity threshold K must be non-negative");
    if (cfg.support_theta < 0.0 || cfg.support_theta > 1.0) {
        throw ParameterError("support threshold must lie in [0,1]");
    }
    if (cfg.confidence_theta < 0.0 || cfg.confidence_theta > 1.0) {
        throw ParameterError("confidence threshold must lie in [0,1]");
    }
    if (cfg.dispersion_theta < 1.0) throw ParameterError("dispersion threshold must be >= 1");
    validate(cfg.similarity_band);
}

// ---------------------------------------------------------------------------
// Matching

// Conjunction of exact-equality conditions: the action must be in the
// rule's action set and every condition attribute must appear verbatim in
// the corresponding request set. Pure.
inline bool rule_matches(const PolicyRule& rule, const AccessRequest& request) {
    return rule.actions.contains(request.action) && rule.subject_conds.subset_of(request.subject_attrs) &&
           rule.object_conds.subset_of(request.object_attrs) && rule.env_conds.subset_of(request.env_attrs);
}

}  // namespace abacmtd
