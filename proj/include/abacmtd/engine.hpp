#pragma once

// The four NIST ABAC functional points over immutable policy snapshots:
// decision (PDP), enforcement (PEP), attribute/policy lookup (PIP), and
// administration (PAP).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abacmtd/core.hpp"
#include "abacmtd/deception.hpp"
#include "abacmtd/errors.hpp"

namespace abacmtd {

// ---------------------------------------------------------------------------
// PIP

struct AttributeRepository {
    std::map<std::string, AttributeSet> subjects;
    std::map<std::string, AttributeSet> objects;
    AttributeSet env;
};

struct ResolvedAttributes {
    AttributeSet subject_attrs;
    AttributeSet object_attrs;
    AttributeSet env_attrs;
};

// Returns the stored attribute sets verbatim; no defaults are invented. An
// unknown id is a repository misconfiguration, not an access denial — the
// caller may map it to Deny explicitly.
inline ResolvedAttributes pip_resolve(const std::string& subject_id, const std::string& object_id,
                                      const AttributeRepository& repo) {
    auto s = repo.subjects.find(subject_id);
    if (s == repo.subjects.end()) throw LookupError("unknown subject id '" + subject_id + "'");
    auto o = repo.objects.find(object_id);
    if (o == repo.objects.end()) throw LookupError("unknown object id '" + object_id + "'");
    return ResolvedAttributes{s->second, o->second, repo.env};
}

// ---------------------------------------------------------------------------
// PDP

// Deny-overrides with default deny: Grant iff at least one grant rule
// matches and no deny rule matches. matched_rule_ids lists every matching
// rule in policy order. The deception payload is attached by the PEP, not
// here.
inline Decision evaluate(const AccessRequest& request, const PolicySet& policy) {
    Decision decision;
    bool any_grant = false;
    bool any_deny = false;
    for (const PolicyRule& rule : policy.rules) {
        if (!rule_matches(rule, request)) continue;
        decision.matched_rule_ids.push_back(rule.id);
        if (rule.effect == Effect::Grant) {
            any_grant = true;
        } else {
            any_deny = true;
        }
    }
    decision.outcome = (any_grant && !any_deny) ? Effect::Grant : Effect::Deny;
    return decision;
}

// ---------------------------------------------------------------------------
// PEP

struct Enforcement {
    Decision decision;
    std::optional<MonitorEvent> event;  // present for every deny served with bait
};

// Grant decisions pass through unchanged. A denied request is served the
// honey attributes whose source object-attribute names appear in the
// request's object attributes — bait tied to the target the requester
// probed. The emitted event records what the denied request presented, so
// a later replay of served honey values surfaces in the monitor.
inline Enforcement enforce(Decision decision, const AccessRequest& request, const HoneyAttributeSet& honey) {
    Enforcement out;
    if (decision.outcome == Effect::Deny && !honey.empty()) {
        AttributeSet payload;
        for (const HoneyAttribute& h : honey.for_object_names(request.object_attrs)) {
            payload.insert_or_assign(h.honey);
        }
        if (!payload.empty()) {
            decision.deception_payload = std::move(payload);
            out.event = MonitorEvent{request.subject_id, request.object_attrs, request.timestamp};
        }
    }
    out.decision = std::move(decision);
    return out;
}

// ---------------------------------------------------------------------------
// PAP

// Versioned snapshot store. Readers take an immutable shared snapshot and
// never block the single administrative writer; a swap strictly increments
// the version and archives the superseded set.
class PolicyStore {
public:
    explicit PolicyStore(PolicySet initial) {
        validate_policy_set(initial);
        active_ = std::make_shared<const PolicySet>(std::move(initial));
    }

    std::shared_ptr<const PolicySet> snapshot() const {
        std::lock_guard lock(mu_);
        return active_;
    }

    std::uint64_t active_version() const {
        std::lock_guard lock(mu_);
        return active_->version;
    }

    // next.version must be exactly active.version + 1.
    void pap_swap(PolicySet next) {
        validate_policy_set(next);
        std::lock_guard lock(mu_);
        if (next.version != active_->version + 1) {
            throw StaleVersionError("stale update: next version " + std::to_string(next.version) +
                                    " does not follow active version " + std::to_string(active_->version));
        }
        archive_.push_back(active_);
        active_ = std::make_shared<const PolicySet>(std::move(next));
    }

    std::vector<std::shared_ptr<const PolicySet>> archive() const {
        std::lock_guard lock(mu_);
        return archive_;
    }

private:
    mutable std::mutex mu_;
    std::shared_ptr<const PolicySet> active_;
    std::vector<std::shared_ptr<const PolicySet>> archive_;  // oldest first
};

}  // namespace abacmtd
