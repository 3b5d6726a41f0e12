#pragma once

// File formats and log lines: the CSV dialect, dataset/itemset/rule/honey
// CSV codecs, the policy JSON document, request lines, and the structured
// decision/event/alert log records.

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abacmtd/core.hpp"
#include "abacmtd/dataset.hpp"
#include "abacmtd/deception.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/miner.hpp"
#include "abacmtd/mtd.hpp"

namespace abacmtd {

// ---------------------------------------------------------------------------
// Small text helpers

inline std::string fixed6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

inline std::string iso8601(std::int64_t unix_seconds) {
    std::time_t t = static_cast<std::time_t>(unix_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            return out;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file '" + path + "'");
    out << content;
}

inline void append_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot append to file '" + path + "'");
    out << content;
}

// ---------------------------------------------------------------------------
// CSV dialect: comma-separated, double-quote escaping, UTF-8, header row.

inline std::string csv_escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

// Parses a whole CSV document; quoted fields may contain commas, escaped
// quotes, and newlines.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else if (c == '\r') {
            // swallowed; \r\n and \n are both row terminators
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw SchemaError("unterminated quoted CSV field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

// ---------------------------------------------------------------------------
// Transaction dataset CSV: header = columns, one record per row, empty cell
// = item absent.

inline std::string dataset_to_csv(const TransactionDataset& data) {
    std::string out = csv_row(data.columns());
    std::vector<std::string> cells(data.columns().size());
    for (const AttributeSet& row : data.rows()) {
        for (std::size_t i = 0; i < data.columns().size(); ++i) {
            cells[i] = row.value_of(data.columns()[i]).value_or("");
        }
        out += csv_row(cells);
    }
    return out;
}

inline void write_dataset_csv(const TransactionDataset& data, const std::string& path) {
    write_file(path, dataset_to_csv(data));
}

// ---------------------------------------------------------------------------
// Itemset / rule / honey / sensitivity CSVs (semicolon-separated; itemsets
// join their `name:value` members with '|', sorted canonically).

inline std::string itemset_text(const AttributeSet& items) {
    std::string out;
    for (const AttributeKV& kv : items) {
        if (!out.empty()) out += '|';
        out += kv.text();
    }
    return out;
}

inline AttributeSet parse_itemset_text(std::string_view text) {
    AttributeSet out;
    for (const std::string& part : split(text, '|')) {
        if (!part.empty()) out.insert(parse_attribute(part));
    }
    return out;
}

inline std::string itemsets_to_csv(const std::vector<FrequentItemset>& itemsets) {
    std::string out = "items;support\n";
    for (const FrequentItemset& fi : itemsets) {
        out += itemset_text(fi.items) + ";" + fixed6(fi.support) + "\n";
    }
    return out;
}

inline std::string rules_to_csv(const std::vector<AssociationRule>& rules) {
    std::string out = "antecedent;consequent;support;confidence\n";
    for (const AssociationRule& r : rules) {
        out += itemset_text(r.antecedent) + ";" + itemset_text(r.consequent) + ";" + fixed6(r.support) + ";" +
               fixed6(r.confidence) + "\n";
    }
    return out;
}

inline std::vector<AssociationRule> rules_from_csv(std::string_view text) {
    std::vector<AssociationRule> out;
    std::size_t line_no = 0;
    for (const std::string& line : split(text, '\n')) {
        ++line_no;
        if (line.empty() || line_no == 1) continue;  // header
        const auto fields = split(line, ';');
        if (fields.size() != 4) {
            throw SchemaError("rule CSV line " + std::to_string(line_no) + ": expected 4 ';'-separated fields");
        }
        AssociationRule rule;
        rule.antecedent = parse_itemset_text(fields[0]);
        rule.consequent = parse_itemset_text(fields[1]);
        rule.support = std::stod(fields[2]);
        rule.confidence = std::stod(fields[3]);
        if (rule.antecedent.empty() || rule.consequent.empty()) {
            throw SchemaError("rule CSV line " + std::to_string(line_no) + ": empty itemset");
        }
        out.push_back(std::move(rule));
    }
    return out;
}

inline std::string honey_to_csv(const HoneyAttributeSet& honey) {
    std::string out = "source_name;source_value;honey_value;fitness\n";
    for (const HoneyAttribute& h : honey.members) {
        out += h.source.name + ";" + h.source.value + ";" + h.honey.value + ";" + fixed6(h.fitness) + "\n";
    }
    return out;
}

inline HoneyAttributeSet honey_from_csv(std::string_view text) {
    HoneyAttributeSet out;
    std::size_t line_no = 0;
    for (const std::string& line : split(text, '\n')) {
        ++line_no;
        if (line.empty() || line_no == 1) continue;
        const auto fields = split(line, ';');
        if (fields.size() != 4) {
            throw SchemaError("honey CSV line " + std::to_string(line_no) + ": expected 4 ';'-separated fields");
        }
        HoneyAttribute h;
        h.source = AttributeKV(fields[0], fields[1]);
        h.honey = AttributeKV(fields[0], fields[2]);
        h.fitness = std::stod(fields[3]);
        out.members.push_back(std::move(h));
    }
    return out;
}

inline std::string sensitive_to_csv(const SensitiveAttributeSet& set) {
    std::string out = "name;value;score\n";
    for (const ScoredAttribute& sa : set.members) {
        out += sa.attr.name + ";" + sa.attr.value + ";" + fixed6(sa.score) + "\n";
    }
    return out;
}

inline std::vector<AttributeKV> sensitive_attrs_from_csv(std::string_view text) {
    std::vector<AttributeKV> out;
    std::size_t line_no = 0;
    for (const std::string& line : split(text, '\n')) {
        ++line_no;
        if (line.empty() || line_no == 1) continue;
        const auto fields = split(line, ';');
        if (fields.size() < 2) {
            throw SchemaError("sensitive-attribute CSV line " + std::to_string(line_no) +
                              ": expected name;value[;score]");
        }
        out.emplace_back(fields[0], fields[1]);
    }
    return out;
}

// Access matrix CSV: comma dialect with header subject,name,value,action.
inline AccessMatrix access_matrix_from_csv(std::string_view text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw SchemaError("access matrix CSV is empty");
    const std::vector<std::string> expected = {"subject", "name", "value", "action"};
    if (rows.front() != expected) {
        throw SchemaError("access matrix CSV header must be subject,name,value,action");
    }
    AccessMatrix matrix;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 4) {
            throw SchemaError("access matrix CSV row " + std::to_string(i + 1) + ": expected 4 fields");
        }
        matrix.add(rows[i][0], AttributeKV(rows[i][1], rows[i][2]), parse_action(rows[i][3]));
    }
    return matrix;
}

// ---------------------------------------------------------------------------
// Policy document (JSON): top-level version + rules, each rule carrying id,
// effect, actions, the three condition maps, and optional provenance.

inline nlohmann::json to_json(const AttributeSet& set) {
    nlohmann::json out = nlohmann::json::object();
    for (const AttributeKV& kv : set) out[kv.name] = kv.value;
    return out;
}

inline AttributeSet attribute_set_from_json(const nlohmann::json& j) {
    AttributeSet out;
    for (const auto& [name, value] : j.items()) {
        if (!value.is_string()) throw SchemaError("condition value for '" + name + "' must be a string");
        out.insert(AttributeKV(name, value.get<std::string>()));
    }
    return out;
}

inline nlohmann::json to_json(const PolicyRule& rule) {
    nlohmann::json j;
    j["id"] = rule.id;
    j["effect"] = std::string(to_string(rule.effect));
    nlohmann::json actions = nlohmann::json::array();
    for (Action a : rule.actions.list()) actions.push_back(std::string(to_string(a)));
    j["actions"] = std::move(actions);
    j["subject"] = to_json(rule.subject_conds);
    j["object"] = to_json(rule.object_conds);
    j["environment"] = to_json(rule.env_conds);
    if (rule.provenance.is_mutated()) {
        nlohmann::json p;
        p["kind"] = "mutated";
        p["source_rule_id"] = rule.provenance.source_rule_id;
        p["inserted"] = rule.provenance.inserted ? rule.provenance.inserted->text() : "";
        j["provenance"] = std::move(p);
    }
    return j;
}

inline PolicyRule rule_from_json(const nlohmann::json& j) {
    PolicyRule rule;
    rule.id = j.at("id").get<std::string>();
    rule.effect = parse_effect(j.at("effect").get<std::string>());
    for (const auto& a : j.at("actions")) rule.actions.insert(parse_action(a.get<std::string>()));
    if (j.contains("subject")) rule.subject_conds = attribute_set_from_json(j.at("subject"));
    if (j.contains("object")) rule.object_conds = attribute_set_from_json(j.at("object"));
    if (j.contains("environment")) rule.env_conds = attribute_set_from_json(j.at("environment"));
    if (j.contains("provenance")) {
        const auto& p = j.at("provenance");
        if (p.at("kind").get<std::string>() == "mutated") {
            rule.provenance = Provenance::mutated(p.value("source_rule_id", std::string{}),
                                                  parse_attribute(p.at("inserted").get<std::string>()));
        }
    }
    validate_rule(rule);
    return rule;
}

inline nlohmann::json to_json(const PolicySet& policy) {
    nlohmann::json j;
    j["version"] = policy.version;
    nlohmann::json rules = nlohmann::json::array();
    for (const PolicyRule& r : policy.rules) rules.push_back(to_json(r));
    j["rules"] = std::move(rules);
    return j;
}

inline PolicySet policy_from_json(const nlohmann::json& j) {
    PolicySet policy;
    policy.version = j.at("version").get<std::uint64_t>();
    for (const auto& r : j.at("rules")) policy.rules.push_back(rule_from_json(r));
    validate_policy_set(policy);
    return policy;
}

inline nlohmann::json to_json(const MutatedPolicySet& mp) {
    nlohmann::json j;
    j["version"] = mp.built_from_version;
    nlohmann::json rules = nlohmann::json::array();
    for (const PolicyRule& r : mp.rules) rules.push_back(to_json(r));
    j["rules"] = std::move(rules);
    nlohmann::json basis = nlohmann::json::array();
    for (const CorrelatedAttribute& m : mp.basis.members) {
        nlohmann::json b;
        b["attr"] = m.attr.text();
        b["support"] = m.support;
        b["confidence"] = m.confidence;
        b["source"] = m.source_request_attr.text();
        b["scope"] = m.source_is_subject ? "subject" : "object";
        basis.push_back(std::move(b));
    }
    j["basis"] = std::move(basis);
    j["thresholds"] = {{"support", mp.basis.support_theta}, {"confidence", mp.basis.confidence_theta}};
    return j;
}

inline MutatedPolicySet mutated_policy_from_json(const nlohmann::json& j) {
    MutatedPolicySet mp;
    mp.built_from_version = j.at("version").get<std::uint64_t>();
    for (const auto& r : j.at("rules")) mp.rules.push_back(rule_from_json(r));
    if (j.contains("basis")) {
        for (const auto& b : j.at("basis")) {
            CorrelatedAttribute m;
            m.attr = parse_attribute(b.at("attr").get<std::string>());
            m.support = b.at("support").get<double>();
            m.confidence = b.at("confidence").get<double>();
            m.source_request_attr = parse_attribute(b.at("source").get<std::string>());
            m.source_is_subject = b.value("scope", std::string("subject")) == "subject";
            mp.basis.members.push_back(std::move(m));
        }
    }
    if (j.contains("thresholds")) {
        mp.basis.support_theta = j.at("thresholds").value("support", 0.0);
        mp.basis.confidence_theta = j.at("thresholds").value("confidence", 0.0);
    }
    return mp;
}

// ---------------------------------------------------------------------------
// Request lines: `subject_id|action|subject attrs|object attrs|env attrs`,
// attribute lists comma-joined `name:value`, empty list = empty field.

inline AttributeSet parse_attr_list(std::string_view text) {
    AttributeSet out;
    if (text.empty()) return out;
    for (const std::string& part : split(text, ',')) {
        if (part.empty()) throw SchemaError("empty attribute in list '" + std::string(text) + "'");
        out.insert(parse_attribute(part));
    }
    return out;
}

inline std::string attr_list_text(const AttributeSet& set) {
    std::string out;
    for (const AttributeKV& kv : set) {
        if (!out.empty()) out += ',';
        out += kv.text();
    }
    return out;
}

inline AccessRequest parse_request_line(std::string_view line) {
    const auto fields = split(line, '|');
    if (fields.size() != 5) {
        throw SchemaError("request line must have 5 '|'-separated fields: "
                          "subject_id|action|subject attrs|object attrs|env attrs");
    }
    AccessRequest req;
    req.subject_id = fields[0];
    if (req.subject_id.empty()) throw SchemaError("request line has an empty subject id");
    req.action = parse_action(fields[1]);
    req.subject_attrs = parse_attr_list(fields[2]);
    req.object_attrs = parse_attr_list(fields[3]);
    req.env_attrs = parse_attr_list(fields[4]);
    return req;
}

inline std::string request_line_text(const AccessRequest& req) {
    return req.subject_id + "|" + std::string(to_string(req.action)) + "|" + attr_list_text(req.subject_attrs) +
           "|" + attr_list_text(req.object_attrs) + "|" + attr_list_text(req.env_attrs);
}

// ---------------------------------------------------------------------------
// Structured log records

// One line per enforced request.
inline std::string decision_log_line(std::uint64_t version, const AccessRequest& req, const Decision& decision) {
    std::string rules;
    for (std::size_t i = 0; i < decision.matched_rule_ids.size(); ++i) {
        if (i) rules += ',';
        rules += decision.matched_rule_ids[i];
    }
    const bool bait = decision.deception_payload.has_value() && !decision.deception_payload->empty();
    return "version=" + std::to_string(version) + " subject=" + req.subject_id +
           " action=" + std::string(to_string(req.action)) +
           " outcome=" + (decision.outcome == Effect::Grant ? "Grant" : "Deny") + " rules=" + rules +
           " bait=" + (bait ? "1" : "0") + " ts=" + iso8601(req.timestamp);
}

inline std::string rotation_audit_line(RotationMode mode, std::uint64_t from_version, std::size_t rule_count,
                                       std::int64_t ts) {
    return "rotate mode=" + std::string(to_string(mode)) + " from=" + std::to_string(from_version) +
           " to=" + std::to_string(from_version + 1) + " rules=" + std::to_string(rule_count) +
           " ts=" + iso8601(ts);
}

// Monitor events: `ts=<iso8601> subject=<id> touched=<name:value,...>`.
// The epoch-second form rides along so the stream can be re-parsed exactly.
inline std::string event_log_line(const MonitorEvent& ev) {
    return "ts=" + iso8601(ev.timestamp) + " epoch=" + std::to_string(ev.timestamp) + " subject=" + ev.subject_id +
           " touched=" + attr_list_text(ev.touched);
}

inline MonitorEvent parse_event_log_line(std::string_view line) {
    MonitorEvent ev;
    bool have_subject = false;
    for (const std::string& token : split(line, ' ')) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "epoch") {
            ev.timestamp = std::stoll(value);
        } else if (key == "subject") {
            ev.subject_id = value;
            have_subject = true;
        } else if (key == "touched") {
            ev.touched = parse_attr_list(value);
        }
    }
    if (!have_subject) throw SchemaError("event line lacks a subject field: '" + std::string(line) + "'");
    return ev;
}

// Alert records mirror the decision log shape with alert=1.
inline std::string alert_log_line(const Alert& alert) {
    return "subject=" + alert.subject_id + " honey=" + alert.honey_attr.text() +
           " events=" + std::to_string(alert.event_count) + " first_seen=" + iso8601(alert.first_seen) + " alert=1";
}

}  // namespace abacmtd
