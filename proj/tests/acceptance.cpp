// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "abacmtd/bench.hpp"
#include "abacmtd/deception.hpp"
#include "abacmtd/engine.hpp"
#include "abacmtd/ingest.hpp"
#include "abacmtd/io.hpp"
#include "abacmtd/miner.hpp"
#include "abacmtd/mtd.hpp"
#include "abacmtd/rng.hpp"
#include "testutil.hpp"

using namespace abacmtd;

namespace {

int g_failures = 0;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int number, const std::string& name, bool ok, double seconds, const std::string& detail) {
    std::ostringstream line;
    line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name << " (" << std::fixed;
    line.precision(1);
    line << seconds << "s";
    if (!detail.empty()) line << "; " << detail;
    line << ")";
    std::cout << line.str() << std::endl;
    if (!ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// Criterion 1: FPGrowth == Apriori == brute force on >= 100 seeded datasets.

void criterion1() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    Rng rng(1001);
    const double supports[] = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    int checked = 0;
    for (int trial = 0; trial < 120 && ok; ++trial) {
        const TransactionDataset data = testutil::random_dataset(rng, 200, 4, 3);  // <= 12 distinct items
        const double min_support = supports[trial % 10];
        const auto fp = mine_fpgrowth(data, min_support);
        const auto ap = mine_apriori(data, min_support);
        const auto brute = testutil::brute_force_mine(data, min_support);
        if (fp != brute || ap != brute) {
            ok = false;
            detail = "disagreement at trial " + std::to_string(trial) + ", support " + fixed6(min_support);
        }
        ++checked;
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "exceeded the 60s budget";
    }
    if (ok) detail = std::to_string(checked) + " datasets, exact integer-count equality";
    report(1, "mining oracle equivalence", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criteria 2 and 3 share two 40,000-row synthetic datasets and their
// benchmark sweeps.

DatasetSpec subject_style_spec() {
    DatasetSpec spec;
    spec.seed = 11;
    spec.row_count = 40000;
    spec.columns = {
        {"dept",
         {{"d0", 0.30}, {"d1", 0.20}, {"d2", 0.15}, {"d3", 0.10}, {"d4", 0.10}, {"d5", 0.05}, {"d6", 0.05},
          {"d7", 0.05}}},
        {"role", {{"r0", 0.35}, {"r1", 0.25}, {"r2", 0.15}, {"r3", 0.10}, {"r4", 0.10}, {"r5", 0.05}}},
        {"grade", {{"g0", 0.40}, {"g1", 0.25}, {"g2", 0.15}, {"g3", 0.10}, {"g4", 0.10}}},
        {"status", {{"active", 0.60}, {"leave", 0.25}, {"retired", 0.15}}},
        {"shift", {{"day", 0.45}, {"evening", 0.35}, {"night", 0.20}}},
        {"site", {{"s0", 0.30}, {"s1", 0.30}, {"s2", 0.25}, {"s3", 0.15}}},
        {"contract", {{"u0", 0.50}, {"u1", 0.50}}},
        {"cert", {{"c0", 0.30}, {"c1", 0.30}, {"c2", 0.25}, {"c3", 0.15}}},
        {"tenure", {{"t0", 0.40}, {"t1", 0.35}, {"t2", 0.25}}},
        {"pay", {{"p0", 0.35}, {"p1", 0.30}, {"p2", 0.20}, {"p3", 0.15}}},
        {"office", {{"w0", 0.30}, {"w1", 0.25}, {"w2", 0.25}, {"w3", 0.20}}},
        {"committee", {{"k0", 0.45}, {"k1", 0.30}, {"k2", 0.25}}},
    };
    spec.hints = {
        {"dept", "d0", "site", "s0", 0.90},
        {"role", "r0", "cert", "c0", 0.85},
        {"status", "active", "contract", "u0", 0.80},
        {"grade", "g0", "shift", "day", 0.75},
        {"tenure", "t0", "pay", "p0", 0.80},
        {"dept", "d1", "office", "w1", 0.85},
    };
    return spec;
}

DatasetSpec object_style_spec() {
    DatasetSpec spec;
    spec.seed = 23;
    spec.row_count = 40000;
    spec.columns = {
        {"area",
         {{"a0", 0.25}, {"a1", 0.20}, {"a2", 0.15}, {"a3", 0.10}, {"a4", 0.10}, {"a5", 0.10}, {"a6", 0.05},
          {"a7", 0.05}}},
        {"level", {{"l0", 0.40}, {"l1", 0.30}, {"l2", 0.20}, {"l3", 0.10}}},
        {"term", {{"fall", 0.45}, {"spring", 0.40}, {"summer", 0.15}}},
        {"format", {{"campus", 0.55}, {"online", 0.30}, {"hybrid", 0.15}}},
        {"site", {{"main", 0.45}, {"north", 0.30}, {"south", 0.25}}},
        {"size", {{"small", 0.35}, {"medium", 0.35}, {"large", 0.30}}},
        {"owner", {{"o0", 0.30}, {"o1", 0.25}, {"o2", 0.20}, {"o3", 0.15}, {"o4", 0.10}}},
        {"access", {{"staff", 0.50}, {"faculty", 0.30}, {"admin", 0.20}}},
        {"language", {{"en", 0.55}, {"es", 0.25}, {"fr", 0.20}}},
        {"credits", {{"cr3", 0.45}, {"cr4", 0.35}, {"cr1", 0.20}}},
        {"lab", {{"none", 0.50}, {"weekly", 0.30}, {"block", 0.20}}},
        {"grading", {{"letter", 0.60}, {"passfail", 0.25}, {"audit", 0.15}}},
    };
    spec.hints = {
        {"area", "a0", "owner", "o0", 0.90},
        {"level", "l0", "size", "large", 0.80},
        {"format", "online", "site", "main", 0.85},
        {"access", "staff", "term", "fall", 0.70},
        {"area", "a1", "lab", "weekly", 0.80},
        {"grading", "letter", "credits", "cr3", 0.70},
    };
    return spec;
}

struct SweepData {
    BenchReport subject;
    BenchReport object;
    double prep_seconds = 0.0;
    std::string error;
};

SweepData run_shared_sweeps() {
    SweepData out;
    Stopwatch watch;
    try {
        const TransactionDataset subject = synth_generate(subject_style_spec());
        const TransactionDataset object = synth_generate(object_style_spec());
        const auto sweep = default_threshold_sweep();
        out.subject = run_bench(subject, sweep, 3, "subject-style-synthetic", 11);
        out.object = run_bench(object, sweep, 3, "object-style-synthetic", 23);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.prep_seconds = watch.seconds();
    return out;
}

void criterion2(const SweepData& sweeps) {
    bool ok = sweeps.error.empty();
    std::string detail = sweeps.error;
    if (ok) {
        for (const BenchReport* report_ptr : {&sweeps.subject, &sweeps.object}) {
            const auto& rows = report_ptr->rows;
            if (rows.size() != 10) {
                ok = false;
                detail = "expected 10 sweep rows";
                break;
            }
            for (std::size_t i = 0; i + 1 < rows.size() && ok; ++i) {
                if (rows[i + 1].fpgrowth_itemsets > rows[i].fpgrowth_itemsets) {
                    ok = false;
                    detail = report_ptr->dataset_id + ": count rose from threshold " +
                             fixed6(rows[i].support_threshold) + " to " + fixed6(rows[i + 1].support_threshold);
                }
            }
        }
    }
    if (ok && sweeps.prep_seconds >= 300.0) {
        ok = false;
        detail = "exceeded the 5-minute budget";
    }
    if (ok) {
        detail = "subject counts " + std::to_string(sweeps.subject.rows.front().fpgrowth_itemsets) + " -> " +
                 std::to_string(sweeps.subject.rows.back().fpgrowth_itemsets) + ", object counts " +
                 std::to_string(sweeps.object.rows.front().fpgrowth_itemsets) + " -> " +
                 std::to_string(sweeps.object.rows.back().fpgrowth_itemsets);
    }
    report(2, "itemset count monotonicity across the threshold sweep", ok, sweeps.prep_seconds, detail);
}

void criterion3(const SweepData& sweeps) {
    Stopwatch watch;
    bool ok = sweeps.error.empty();
    std::string detail = sweeps.error;
    if (ok) {
        for (const BenchReport* report_ptr : {&sweeps.subject, &sweeps.object}) {
            for (const BenchRow& row : report_ptr->rows) {
                if (row.fpgrowth_seconds > row.apriori_seconds) {
                    ok = false;
                    detail = report_ptr->dataset_id + ": fpgrowth slower at threshold " +
                             fixed6(row.support_threshold) + " (" + fixed6(row.fpgrowth_seconds) + "s vs " +
                             fixed6(row.apriori_seconds) + "s)";
                    break;
                }
            }
            const auto& rows = report_ptr->rows;
            for (std::size_t i = 0; i + 1 < rows.size() && ok; ++i) {
                if (rows[i + 1].fpgrowth_seconds > rows[i].fpgrowth_seconds * 1.10 ||
                    rows[i + 1].apriori_seconds > rows[i].apriori_seconds * 1.10) {
                    ok = false;
                    detail = report_ptr->dataset_id + ": timing rose beyond the 10% allowance at threshold " +
                             fixed6(rows[i + 1].support_threshold);
                }
            }
        }
    }
    if (ok) {
        detail = "subject fp " + fixed6(sweeps.subject.rows.front().fpgrowth_seconds) + "s vs apriori " +
                 fixed6(sweeps.subject.rows.front().apriori_seconds) + "s at 0.025";
    }
    report(3, "fpgrowth/apriori wall-time ordering", ok, watch.seconds(), detail);
}

// ---------------------------------------------------------------------------
// Criterion 4: Algorithm-1 contract over >= 500 random fixtures.

void criterion4() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    Rng rng(4004);
    for (int trial = 0; trial < 520 && ok; ++trial) {
        const PolicySet policy = testutil::random_policy(rng, 1 + rng.index(5), 4);
        const AccessRequest req = testutil::random_request(rng);
        std::vector<AssociationRule> rules;
        const std::size_t n_rules = rng.index(7);
        for (std::size_t i = 0; i < n_rules; ++i) {
            AssociationRule r;
            r.antecedent.insert(AttributeKV((rng.chance(0.5) ? std::string("sa") : std::string("oa")) +
                                                std::to_string(rng.index(4)),
                                            "v" + std::to_string(rng.index(3))));
            r.consequent.insert(AttributeKV("ca" + std::to_string(rng.index(5)), "v" + std::to_string(rng.index(3))));
            r.support = rng.real();
            r.confidence = rng.real();
            rules.push_back(std::move(r));
        }
        ThresholdConfig cfg;
        cfg.support_theta = 0.1 + 0.8 * rng.real();
        cfg.confidence_theta = 0.1 + 0.8 * rng.real();

        const MutatedPolicySet mp = get_mutated_policy(req, policy, rules, cfg);
        if (mp.rules.size() != mp.basis.members.size()) {
            ok = false;
            detail = "cardinality law violated at trial " + std::to_string(trial);
            break;
        }
        for (const CorrelatedAttribute& m : mp.basis.members) {
            if (m.support < cfg.support_theta || m.confidence < cfg.confidence_theta) {
                ok = false;
                detail = "threshold violated at trial " + std::to_string(trial);
            }
        }
        for (std::size_t i = 0; i < mp.rules.size() && ok; ++i) {
            validate_rule(mp.rules[i]);
            if (!mp.rules[i].provenance.inserted || *mp.rules[i].provenance.inserted != mp.basis.members[i].attr) {
                ok = false;
                detail = "provenance mismatch at trial " + std::to_string(trial);
            }
        }
        const MutatedPolicySet again = get_mutated_policy(req, policy, rules, cfg);
        if (!(again.rules == mp.rules) || !(again.basis.members == mp.basis.members)) {
            ok = false;
            detail = "non-deterministic output at trial " + std::to_string(trial);
        }
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 30.0) {
        ok = false;
        detail = "exceeded the 30s budget";
    }
    if (ok) detail = "520 fixtures, bit-identical reruns";
    report(4, "mutation algorithm contract", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 5: exhaustive decision semantics on the 4-attribute toy universe.

void criterion5() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    const std::vector<AttributeKV> attrs = {AttributeKV("f0", "1"), AttributeKV("f1", "1"), AttributeKV("f2", "1"),
                                            AttributeKV("f3", "1")};
    const std::vector<std::vector<std::vector<int>>> layouts = {
        {{0}, {1}, {2}, {3}},
        {{0}, {0, 1}, {2}, {}},
        {{}, {1, 2}, {1, 3}, {0, 1, 2, 3}},
    };
    int checked = 0;
    for (const auto& layout : layouts) {
        for (unsigned effects = 0; effects < 16 && ok; ++effects) {
            PolicySet policy;
            policy.version = 1;
            for (std::size_t r = 0; r < layout.size(); ++r) {
                PolicyRule rule;
                rule.id = "r" + std::to_string(r);
                rule.actions = {Action::Open};
                for (int a : layout[r]) rule.subject_conds.insert(attrs[static_cast<std::size_t>(a)]);
                rule.effect = (effects >> r) & 1 ? Effect::Deny : Effect::Grant;
                policy.rules.push_back(std::move(rule));
            }
            for (unsigned present = 0; present < 16 && ok; ++present) {
                AccessRequest req;
                req.subject_id = "s";
                req.action = Action::Open;
                for (std::size_t a = 0; a < attrs.size(); ++a) {
                    if ((present >> a) & 1) req.subject_attrs.insert(attrs[a]);
                }
                if (evaluate(req, policy).outcome != testutil::oracle_decide(policy, req)) {
                    ok = false;
                    detail = "mismatch: effects=" + std::to_string(effects) + " present=" + std::to_string(present);
                }
                ++checked;
            }
        }
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 10.0) {
        ok = false;
        detail = "exceeded the 10s budget";
    }
    if (ok) detail = std::to_string(checked) + " truth-table rows";
    report(5, "deny-overrides decision semantics", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 6: augment-mode rotation preserves every original grant on a
// 1,000-request replay driven by the full pipeline.

void criterion6() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    try {
        // Plantable association space shared by requests and the miner.
        DatasetSpec spec;
        spec.seed = 61;
        spec.row_count = 4000;
        spec.columns = {
            {"dept", {{"d0", 0.4}, {"d1", 0.3}, {"d2", 0.2}, {"d3", 0.1}}},
            {"role", {{"r0", 0.5}, {"r1", 0.3}, {"r2", 0.2}}},
            {"building", {{"b0", 0.4}, {"b1", 0.35}, {"b2", 0.25}}},
            {"clearance", {{"c0", 0.5}, {"c1", 0.3}, {"c2", 0.2}}},
        };
        spec.hints = {
            {"dept", "d0", "building", "b0", 0.9},
            {"role", "r0", "clearance", "c0", 0.85},
        };
        const TransactionDataset mined_data = synth_generate(spec);
        const auto itemsets = mine_fpgrowth(mined_data, 0.05);
        const auto rules = derive_rules(itemsets, mined_data, 0.5);

        PolicySet original;
        original.version = 1;
        const auto add_grant = [&](const std::string& id, AttributeSet conds, ActionSet actions) {
            PolicyRule r;
            r.id = id;
            r.subject_conds = std::move(conds);
            r.actions = actions;
            r.effect = Effect::Grant;
            original.rules.push_back(std::move(r));
        };
        add_grant("g0", {AttributeKV("dept", "d0")}, {Action::Open});
        add_grant("g1", {AttributeKV("dept", "d1")}, {Action::Open, Action::Edit});
        add_grant("g2", {AttributeKV("role", "r0")}, {Action::Edit});
        add_grant("g3", {AttributeKV("dept", "d0"), AttributeKV("role", "r1")}, {Action::Open, Action::Delete});
        // Deny rules live outside the mined attribute space, so mutation
        // clones grants only.
        PolicyRule deny;
        deny.id = "x0";
        deny.subject_conds.insert(AttributeKV("flag", "banned"));
        deny.actions = {Action::Open, Action::Edit, Action::Delete};
        deny.effect = Effect::Deny;
        original.rules.push_back(deny);

        AccessRequest probe;
        probe.subject_id = "probe";
        probe.action = Action::Open;
        probe.subject_attrs.insert(AttributeKV("dept", "d0"));
        probe.subject_attrs.insert(AttributeKV("role", "r0"));

        ThresholdConfig cfg;
        cfg.support_theta = 0.1;
        cfg.confidence_theta = 0.6;
        const MutatedPolicySet mp = get_mutated_policy(probe, original, rules, cfg);

        PolicyStore store(original);
        rotate(store, mp, RotationMode::Augment);
        const auto rotated = store.snapshot();

        Rng rng(6006);
        std::size_t grants = 0;
        std::size_t regressions = 0;
        const std::vector<std::string> dept_vals = {"d0", "d1", "d2", "d3"};
        const std::vector<std::string> role_vals = {"r0", "r1", "r2"};
        const std::vector<std::string> building_vals = {"b0", "b1", "b2"};
        for (int i = 0; i < 1000; ++i) {
            AccessRequest req;
            req.subject_id = "u" + std::to_string(rng.index(50));
            req.action = testutil::random_action(rng);
            if (rng.chance(0.8)) req.subject_attrs.insert(AttributeKV("dept", dept_vals[rng.index(4)]));
            if (rng.chance(0.8)) req.subject_attrs.insert(AttributeKV("role", role_vals[rng.index(3)]));
            if (rng.chance(0.5)) req.subject_attrs.insert(AttributeKV("building", building_vals[rng.index(3)]));
            if (rng.chance(0.3)) req.subject_attrs.insert(AttributeKV("clearance", "c" + std::to_string(rng.index(3))));
            if (evaluate(req, original).outcome == Effect::Grant) {
                ++grants;
                if (evaluate(req, *rotated).outcome != Effect::Grant) ++regressions;
            }
        }
        if (mp.rules.empty()) {
            ok = false;
            detail = "pipeline produced no mutated rules; fixture is vacuous";
        } else if (regressions != 0) {
            ok = false;
            detail = std::to_string(regressions) + " regressions";
        } else if (grants == 0) {
            ok = false;
            detail = "replay never granted; fixture is vacuous";
        } else {
            detail = std::to_string(grants) + " grants preserved, " + std::to_string(mp.rules.size()) +
                     " mutated rules";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 10.0) {
        ok = false;
        detail = "exceeded the 10s budget";
    }
    report(6, "usability preservation under augment rotation", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 7: 100 seeded honey generations, valid and byte-reproducible.

void criterion7() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    const TrigramCosineSimilarity sim;
    const std::vector<AttributeKV> sources = {AttributeKV("dept", "mathematics"),
                                              AttributeKV("role", "administrator"),
                                              AttributeKV("building", "northtower")};
    try {
        for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
            GaConfig cfg;
            cfg.seed = seed;
            const AttributeKV& source = sources[seed % sources.size()];
            const auto honey = generate_honey(source, cfg, sim);
            if (honey.empty()) {
                ok = false;
                detail = "seed " + std::to_string(seed) + " produced nothing";
                break;
            }
            for (const HoneyAttribute& h : honey) {
                if (h.honey.name != source.name || h.honey.value == source.value || h.fitness < cfg.band.lo ||
                    h.fitness > cfg.band.hi) {
                    ok = false;
                    detail = "invalid honey at seed " + std::to_string(seed);
                    break;
                }
            }
            if (ok && !(generate_honey(source, cfg, sim) == honey)) {
                ok = false;
                detail = "seed " + std::to_string(seed) + " not reproducible";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 30.0) {
        ok = false;
        detail = "exceeded the 30s budget";
    }
    if (ok) detail = "100 seeds x 2 runs";
    report(7, "honey generation determinism and validity", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 8: sensitivity ordering, exact arithmetic.

void criterion8() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    const std::size_t population = 10;
    const ActionWeights w{1.0, 2.0, 3.0};

    AccessMatrix matrix;
    for (std::size_t s = 0; s < population; ++s) {
        matrix.add("s" + std::to_string(s), AttributeKV("anchor", "x"), Action::Open);
    }
    // a<k> is editable by exactly k subjects; other actions are ungranted.
    std::vector<AttributeKV> chain;
    for (std::size_t k = 0; k <= 5; ++k) {
        AttributeKV attr("col", "a" + std::to_string(k));
        chain.push_back(attr);
        for (std::size_t s = 0; s < k; ++s) matrix.add("s" + std::to_string(s), attr, Action::Edit);
    }

    for (std::size_t k = 0; k + 1 < chain.size() && ok; ++k) {
        const double narrow = sensitivity(chain[k], matrix, w);
        const double broad = sensitivity(chain[k + 1], matrix, w);
        if (!(narrow > broad)) {
            ok = false;
            detail = "ordering failed between k=" + std::to_string(k) + " and k=" + std::to_string(k + 1);
        }
        // Exact check against the formula, computed independently.
        const double n = static_cast<double>(population) + 1.0;
        const double expected = 1.0 * -std::log2(1.0 / n) + 2.0 * -std::log2((static_cast<double>(k) + 1.0) / n) +
                                3.0 * -std::log2(1.0 / n);
        if (narrow != expected) {
            ok = false;
            detail = "exact-arithmetic mismatch at k=" + std::to_string(k);
        }
    }

    // Universally-open attribute: the open term contributes exactly zero.
    const double anchor_score = sensitivity(AttributeKV("anchor", "x"), matrix, w);
    const double n = static_cast<double>(population) + 1.0;
    const double rest = 2.0 * -std::log2(1.0 / n) + 3.0 * -std::log2(1.0 / n);
    if (anchor_score != rest) {
        ok = false;
        detail = "open term of a universally-open attribute is not exactly zero";
    }

    const double elapsed = watch.seconds();
    if (ok && elapsed >= 5.0) {
        ok = false;
        detail = "exceeded the 5s budget";
    }
    if (ok) detail = "strict ordering over the 6-step chain";
    report(8, "sensitivity ordering", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 9: dispersion filter fixtures.

void criterion9() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    std::vector<AttributeSet> rows;
    for (int i = 0; i < 5; ++i) {
        AttributeSet row;
        row.insert(AttributeKV("flat", "x"));
        row.insert(AttributeKV("split", i == 0 ? "rare" : "common"));  // counts [1, 4]
        rows.push_back(std::move(row));
    }
    const TransactionDataset data({"flat", "split"}, std::move(rows));

    const TransactionDataset pruned = dispersion_filter(data, 1.05);
    if (pruned.columns() != std::vector<std::string>{"split"}) {
        ok = false;
        detail = "threshold 1.05 did not drop exactly the constant column";
    }
    if (ok && dispersion_filter(data, 1.0) != data) {
        ok = false;
        detail = "threshold 1.0 dropped a column despite AM-GM";
    }
    if (ok && dispersion_ratio({1, 4}) != 1.25) {
        ok = false;
        detail = "counts [1,4] ratio is not 1.25";
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 1.0) {
        ok = false;
        detail = "exceeded the 1s budget";
    }
    if (ok) detail = "constant dropped, ratio-1.25 column retained";
    report(9, "dispersion filter", ok, elapsed, detail);
}

// ---------------------------------------------------------------------------
// Criterion 10: monitoring fixtures.

void criterion10() {
    Stopwatch watch;
    bool ok = true;
    std::string detail;
    HoneyAttributeSet honey;
    honey.members.push_back(HoneyAttribute{AttributeKV("type", "ex@m"), AttributeKV("type", "exam"), 0.8});

    std::vector<MonitorEvent> touches = {
        {"mallory", AttributeSet{AttributeKV("type", "ex@m")}, 100},
        {"mallory", AttributeSet{AttributeKV("type", "ex@m")}, 150},
        {"mallory", AttributeSet{AttributeKV("type", "ex@m")}, 200},
    };
    const auto alerts = monitor(touches, honey);
    if (alerts.size() != 1 || alerts[0].event_count != 3 || alerts[0].first_seen != 100 ||
        alerts[0].subject_id != "mallory") {
        ok = false;
        detail = "three-touch fixture did not fold into one alert";
    }

    std::vector<MonitorEvent> clean = {
        {"alice", AttributeSet{AttributeKV("type", "exam")}, 10},
        {"bob", AttributeSet{AttributeKV("grade", "final")}, 20},
    };
    if (ok && !monitor(clean, honey).empty()) {
        ok = false;
        detail = "honey-free stream raised an alert";
    }
    const double elapsed = watch.seconds();
    if (ok && elapsed >= 1.0) {
        ok = false;
        detail = "exceeded the 1s budget";
    }
    if (ok) detail = "one alert, event_count 3, first_seen 100";
    report(10, "monitoring unit", ok, elapsed, detail);
}

}  // namespace

int main() {
    criterion1();
    const SweepData sweeps = run_shared_sweeps();
    criterion2(sweeps);
    criterion3(sweeps);
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();

    if (g_failures == 0) {
        std::cout << "acceptance: all 10 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed" << std::endl;
    return 1;
}
