#pragma once

// Moving-target-defense extensions: the correlation function, mutated-policy
// generation from correlated attributes, and rotation of the mutated set
// into the live policy store.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "abacmtd/core.hpp"
#include "abacmtd/engine.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/miner.hpp"

namespace abacmtd {

// Which request attribute sets feed correlation. Subject- and object-derived
// rule sets should be matched against their own entity's attributes when the
// two attribute namespaces overlap.
enum class CorrelationScope { Subject, Object, SubjectAndObject };

struct CorrelatedAttribute {
    AttributeKV attr;
    double support = 0.0;
    double confidence = 0.0;
    AttributeKV source_request_attr;  // the request attribute that implied it
    bool source_is_subject = true;    // condition-set placement for synthesized rules

    bool operator==(const CorrelatedAttribute&) const = default;
};

struct CorrelatedAttributeSet {
    std::vector<CorrelatedAttribute> members;  // canonical order by attribute
    double support_theta = 0.0;                // thresholds this set was built under
    double confidence_theta = 0.0;
};

// For each request attribute, collects every association rule with that
// attribute as its single-item antecedent and keeps the consequent's
// attributes when both support and confidence meet their thresholds
// (inclusive). Attributes already present in the request are never members.
// When one attribute is implied by several rules, the strongest
// (confidence, then support) provenance is kept.
inline CorrelatedAttributeSet correlation(const AccessRequest& request, const std::vector<AssociationRule>& rules,
                                          const ThresholdConfig& cfg,
                                          CorrelationScope scope = CorrelationScope::SubjectAndObject) {
    validate(cfg);
    CorrelatedAttributeSet out;
    out.support_theta = cfg.support_theta;
    out.confidence_theta = cfg.confidence_theta;

    const auto in_request = [&](const AttributeKV& kv) {
        return request.subject_attrs.contains(kv) || request.object_attrs.contains(kv) ||
               request.env_attrs.contains(kv);
    };

    std::map<AttributeKV, CorrelatedAttribute> best;
    const auto collect = [&](const AttributeSet& attrs, bool is_subject) {
        for (const AttributeKV& attr : attrs) {
            for (const AssociationRule& rule : rules) {
                if (rule.antecedent.size() != 1 || !rule.antecedent.contains(attr)) continue;
                if (rule.support < cfg.support_theta || rule.confidence < cfg.confidence_theta) continue;
                for (const AttributeKV& item : rule.consequent) {
                    if (in_request(item)) continue;
                    CorrelatedAttribute member{item, rule.support, rule.confidence, attr, is_subject};
                    auto it = best.find(item);
                    if (it == best.end()) {
                        best.emplace(item, std::move(member));
                    } else if (member.confidence > it->second.confidence ||
                               (member.confidence == it->second.confidence &&
                                member.support > it->second.support)) {
                        it->second = std::move(member);
                    }
                }
            }
        }
    };

    if (scope != CorrelationScope::Object) collect(request.subject_attrs, true);
    if (scope != CorrelationScope::Subject) collect(request.object_attrs, false);

    out.members.reserve(best.size());
    for (auto& [attr, member] : best) out.members.push_back(std::move(member));
    return out;
}

// MP: one mutated rule per correlated attribute, plus the basis it was
// built from and the policy version it applies to.
struct MutatedPolicySet {
    std::vector<PolicyRule> rules;
    CorrelatedAttributeSet basis;
    std::uint64_t built_from_version = 0;
};

namespace detail {

// Clone-and-substitute: replace the source attribute with the correlated
// one in the condition set where it was found; a name collision with an
// existing condition resolves by replacement (condition sets are
// name-unique maps).
inline PolicyRule make_mutated_rule(const PolicyRule& source, const CorrelatedAttribute& item, std::string id) {
    PolicyRule rule = source;
    rule.id = std::move(id);
    AttributeSet* target = nullptr;
    if (rule.subject_conds.contains(item.source_request_attr)) {
        target = &rule.subject_conds;
    } else if (rule.object_conds.contains(item.source_request_attr)) {
        target = &rule.object_conds;
    } else {
        target = &rule.env_conds;
    }
    target->erase_name(item.source_request_attr.name);
    // The inserted attribute must end up in exactly one condition set; drop
    // an identical pair the clone may already carry elsewhere.
    for (AttributeSet* conds : {&rule.subject_conds, &rule.object_conds, &rule.env_conds}) {
        if (conds != target && conds->contains(item.attr)) conds->erase_name(item.attr.name);
    }
    target->insert_or_assign(item.attr);
    rule.provenance = Provenance::mutated(source.id, item.attr);
    return rule;
}

}  // namespace detail

// Builds the mutated policy set: (a) correlate the request's attributes
// against the mined rules; (b) collate the attributes appearing in the
// original policy's conditions; (c) for each correlated attribute, clone
// the first original rule containing its source attribute and substitute,
// or — when no original rule carries the source attribute — synthesize a
// minimal grant rule for the request's action. Output is deterministic,
// including rule order and ids.
inline MutatedPolicySet get_mutated_policy(const AccessRequest& request, const PolicySet& original,
                                           const std::vector<AssociationRule>& rules, const ThresholdConfig& cfg,
                                           CorrelationScope scope = CorrelationScope::SubjectAndObject) {
    MutatedPolicySet out;
    out.basis = correlation(request, rules, cfg, scope);
    out.built_from_version = original.version;

    std::set<AttributeKV> policy_attributes;
    for (const PolicyRule& r : original.rules) {
        for (const AttributeKV& kv : r.subject_conds) policy_attributes.insert(kv);
        for (const AttributeKV& kv : r.object_conds) policy_attributes.insert(kv);
        for (const AttributeKV& kv : r.env_conds) policy_attributes.insert(kv);
    }

    const std::string version_tag = std::to_string(original.version);
    for (std::size_t k = 0; k < out.basis.members.size(); ++k) {
        const CorrelatedAttribute& item = out.basis.members[k];
        const std::string suffix = "m" + version_tag + "." + std::to_string(k);
        if (policy_attributes.count(item.source_request_attr)) {
            // Highest-priority matching rule = first in policy order.
            for (const PolicyRule& r : original.rules) {
                if (r.subject_conds.contains(item.source_request_attr) ||
                    r.object_conds.contains(item.source_request_attr) ||
                    r.env_conds.contains(item.source_request_attr)) {
                    out.rules.push_back(detail::make_mutated_rule(r, item, r.id + "~" + suffix));
                    break;
                }
            }
        } else {
            PolicyRule rule;
            rule.id = suffix;
            rule.effect = Effect::Grant;
            rule.actions = {request.action};
            if (item.source_is_subject) {
                rule.subject_conds.insert(item.attr);
            } else {
                rule.object_conds.insert(item.attr);
            }
            rule.provenance = Provenance::mutated("", item.attr);
            out.rules.push_back(std::move(rule));
        }
    }
    return out;
}

enum class RotationMode { Augment, Replace };

inline std::string_view to_string(RotationMode m) { return m == RotationMode::Augment ? "augment" : "replace"; }

inline RotationMode parse_rotation_mode(std::string_view text) {
    if (text == "augment") return RotationMode::Augment;
    if (text == "replace") return RotationMode::Replace;
    throw SchemaError("unknown rotation mode '" + std::string(text) + "' (expected augment|replace)");
}

// Rotates the mutated set into the store: augment unions it with the active
// rules, replace swaps it in alone. Either way the version increments by
// one and the superseded set is archived under the snapshot contract.
inline void rotate(PolicyStore& store, const MutatedPolicySet& mutated, RotationMode mode) {
    auto active = store.snapshot();
    if (mutated.built_from_version != active->version) {
        throw StaleVersionError("stale rotation: mutated set was built from version " +
                                std::to_string(mutated.built_from_version) + " but the active version is " +
                                std::to_string(active->version));
    }
    PolicySet next;
    next.version = active->version + 1;
    if (mode == RotationMode::Augment) {
        next.rules = active->rules;
        next.rules.insert(next.rules.end(), mutated.rules.begin(), mutated.rules.end());
    } else {
        next.rules = mutated.rules;
    }
    store.pap_swap(std::move(next));
}

}  // namespace abacmtd
