// abacmtd command-line tool: dataset ingestion, mining, benchmarking,
// attribute sensitivity, honey generation, policy mutation/rotation,
// request evaluation, and honey-touch monitoring.
//
// Exit codes: 0 success, 2 usage/parameter/input error, 3 stale-version
// conflict, 1 internal error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "abacmtd/bench.hpp"
#include "abacmtd/core.hpp"
#include "abacmtd/deception.hpp"
#include "abacmtd/engine.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/ingest.hpp"
#include "abacmtd/io.hpp"
#include "abacmtd/miner.hpp"
#include "abacmtd/mtd.hpp"

namespace fs = std::filesystem;
using namespace abacmtd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStale = 3;

std::vector<std::string> comma_list(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    for (const std::string& part : split(text, ',')) {
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::vector<double> comma_doubles(const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : comma_list(text)) out.push_back(std::stod(part));
    return out;
}

// ---------------------------------------------------------------------------
// Policy store directory: active.json + archive/v<N>.json + decisions.log.

struct StoreDir {
    fs::path root;

    fs::path active() const { return root / "active.json"; }
    fs::path archive_dir() const { return root / "archive"; }
    fs::path log() const { return root / "decisions.log"; }

    PolicySet load_active() const {
        return policy_from_json(nlohmann::json::parse(read_file(active().string())));
    }

    void write_active(const PolicySet& policy) const {
        fs::create_directories(root);
        write_file(active().string(), to_json(policy).dump(2) + "\n");
    }

    void archive(const PolicySet& superseded) const {
        fs::create_directories(archive_dir());
        const fs::path dest = archive_dir() / ("v" + std::to_string(superseded.version) + ".json");
        write_file(dest.string(), to_json(superseded).dump(2) + "\n");
    }
};

std::optional<StoreDir> resolve_store(const std::string& flag_value) {
    if (!flag_value.empty()) return StoreDir{fs::path(flag_value)};
    if (const char* env = std::getenv("ABACMTD_STORE"); env != nullptr && *env != '\0') {
        return StoreDir{fs::path(env)};
    }
    return std::nullopt;
}

PolicySet load_policy_document(const std::string& path) {
    return policy_from_json(nlohmann::json::parse(read_file(path)));
}

// ---------------------------------------------------------------------------
// Subcommand bodies

struct IngestArgs {
    std::string spec_path;
    std::string in_path;
    std::string left_path;
    std::string right_path;
    std::string keys;
    std::string expect;
    std::string stratum;
    std::string out_path;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

int run_ingest_synth(const IngestArgs& a) {
    const DatasetSpec spec = dataset_spec_from_json(nlohmann::json::parse(read_file(a.spec_path)));
    const TransactionDataset data = synth_generate(spec);
    write_dataset_csv(data, a.out_path);
    std::cout << "wrote " << data.size() << " rows x " << data.columns().size() << " columns to " << a.out_path
              << "\n";
    return kExitOk;
}

int run_ingest_load(const IngestArgs& a) {
    std::optional<std::vector<std::string>> expected;
    if (!a.expect.empty()) expected = comma_list(a.expect);
    const TransactionDataset data = load_csv(a.in_path, expected);
    std::cout << "rows=" << data.size() << " columns=" << data.columns().size() << "\n";
    if (!a.out_path.empty()) write_dataset_csv(data, a.out_path);
    return kExitOk;
}

int run_ingest_join(const IngestArgs& a) {
    const TransactionDataset left = load_csv(a.left_path);
    const TransactionDataset right = load_csv(a.right_path);
    const TransactionDataset joined = join(left, right, comma_list(a.keys));
    write_dataset_csv(joined, a.out_path);
    std::cout << "wrote " << joined.size() << " rows to " << a.out_path << "\n";
    return kExitOk;
}

int run_ingest_sample(const IngestArgs& a) {
    const TransactionDataset data = load_csv(a.in_path);
    const TransactionDataset sampled = proportional_sample(data, a.n, a.stratum, a.seed);
    write_dataset_csv(sampled, a.out_path);
    std::cout << "wrote " << sampled.size() << " rows to " << a.out_path << "\n";
    return kExitOk;
}

struct MineArgs {
    std::string in_path;
    std::string algo = "fpgrowth";
    double min_support = 0.1;
    double min_confidence = 0.5;
    double dispersion_theta = 0.0;  // 0 = no dispersion pruning
    std::string out_itemsets;
    std::string out_rules;
};

int run_mine(const MineArgs& a) {
    TransactionDataset data = load_csv(a.in_path);
    if (a.dispersion_theta != 0.0) data = dispersion_filter(data, a.dispersion_theta);

    std::vector<FrequentItemset> itemsets;
    if (a.algo == "fpgrowth") {
        itemsets = mine_fpgrowth(data, a.min_support);
    } else if (a.algo == "apriori") {
        itemsets = mine_apriori(data, a.min_support);
    } else {
        throw ParameterError("unknown algorithm '" + a.algo + "' (expected fpgrowth|apriori)");
    }
    if (!a.out_itemsets.empty()) write_file(a.out_itemsets, itemsets_to_csv(itemsets));
    std::cout << "itemsets=" << itemsets.size() << "\n";

    if (!a.out_rules.empty()) {
        const std::vector<AssociationRule> rules = derive_rules(itemsets, data, a.min_confidence);
        write_file(a.out_rules, rules_to_csv(rules));
        std::cout << "rules=" << rules.size() << "\n";
    }
    return kExitOk;
}

struct BenchArgs {
    std::string in_path;
    std::string thresholds;
    std::string out_path;
    std::size_t reps = 3;
    std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
    const TransactionDataset data = load_csv(a.in_path);
    const std::vector<double> sweep =
        a.thresholds.empty() ? default_threshold_sweep() : comma_doubles(a.thresholds);
    const BenchReport report = abacmtd::run_bench(data, sweep, a.reps, a.in_path, a.seed);
    write_file(a.out_path, bench_report_to_csv(report));
    for (const BenchRow& row : report.rows) {
        std::cout << fixed6(row.support_threshold) << " fpgrowth=" << fixed6(row.fpgrowth_seconds)
                  << "s apriori=" << fixed6(row.apriori_seconds) << "s itemsets=" << row.fpgrowth_itemsets << "\n";
    }
    return kExitOk;
}

struct SensitivityArgs {
    std::string matrix_path;
    std::string weights = "1,2,3";
    std::size_t subjects = 0;
    double k = 0.0;
    std::string out_path;
};

int run_sensitivity(const SensitivityArgs& a) {
    AccessMatrix matrix = access_matrix_from_csv(read_file(a.matrix_path));
    if (a.subjects > 0) matrix.set_subject_count(a.subjects);
    const std::vector<double> w = comma_doubles(a.weights);
    if (w.size() != 3) throw ParameterError("--weights expects three values: open,edit,delete");
    const ActionWeights weights{w[0], w[1], w[2]};
    const SensitiveAttributeSet selected = select_sensitive(matrix.attributes(), matrix, weights, a.k);
    write_file(a.out_path, sensitive_to_csv(selected));
    std::cout << "sensitive=" << selected.members.size() << " of " << matrix.attributes().size() << "\n";
    return kExitOk;
}

struct HoneygenArgs {
    std::string in_path;
    std::string out_path;
    std::string band = "0.6,0.95";
    std::string provider = "trigram";
    std::string embeddings_path;
    GaConfig cfg;
};

int run_honeygen(const HoneygenArgs& a) {
    GaConfig cfg = a.cfg;
    const std::vector<double> band = comma_doubles(a.band);
    if (band.size() != 2) throw ParameterError("--band expects two values: lo,hi");
    cfg.band = SimilarityBand{band[0], band[1]};

    std::unique_ptr<SimilarityProvider> provider;
    if (a.provider == "trigram") {
        provider = std::make_unique<TrigramCosineSimilarity>();
    } else if (a.provider == "embedding") {
        if (a.embeddings_path.empty()) throw ParameterError("--provider embedding requires --embeddings");
        provider = std::make_unique<EmbeddingSimilarity>(
            EmbeddingSimilarity::from_lines(split(read_file(a.embeddings_path), '\n')));
    } else {
        throw ParameterError("unknown provider '" + a.provider + "' (expected trigram|embedding)");
    }

    HoneyAttributeSet honey;
    for (const AttributeKV& source : sensitive_attrs_from_csv(read_file(a.in_path))) {
        for (HoneyAttribute& h : generate_honey(source, cfg, *provider)) {
            honey.members.push_back(std::move(h));
        }
    }
    write_file(a.out_path, honey_to_csv(honey));
    std::cout << "honey=" << honey.members.size() << "\n";
    return kExitOk;
}

struct MutateArgs {
    std::string policy_path;
    std::string store_flag;
    std::string rules_path;
    std::string request_path;
    std::string out_path;
    std::string scope = "both";
    std::string rotate_mode;
    double support_theta = 0.0;
    double confidence_theta = 0.0;
    std::int64_t ts = 0;
};

CorrelationScope parse_scope(const std::string& text) {
    if (text == "subject") return CorrelationScope::Subject;
    if (text == "object") return CorrelationScope::Object;
    if (text == "both") return CorrelationScope::SubjectAndObject;
    throw ParameterError("unknown scope '" + text + "' (expected subject|object|both)");
}

int run_mutate(const MutateArgs& a) {
    const auto store = resolve_store(a.store_flag);
    PolicySet original;
    if (!a.policy_path.empty()) {
        original = load_policy_document(a.policy_path);
    } else if (store) {
        original = store->load_active();
    } else {
        throw ParameterError("mutate needs --policy or a policy store (--store / ABACMTD_STORE)");
    }

    const std::vector<AssociationRule> rules = rules_from_csv(read_file(a.rules_path));

    std::string request_line;
    for (const std::string& line : split(read_file(a.request_path), '\n')) {
        if (!line.empty()) {
            request_line = line;
            break;
        }
    }
    if (request_line.empty()) throw SchemaError("request file '" + a.request_path + "' has no request line");
    const AccessRequest request = parse_request_line(request_line);

    ThresholdConfig cfg;
    cfg.support_theta = a.support_theta;
    cfg.confidence_theta = a.confidence_theta;

    const MutatedPolicySet mutated = get_mutated_policy(request, original, rules, cfg, parse_scope(a.scope));
    if (!a.out_path.empty()) write_file(a.out_path, to_json(mutated).dump(2) + "\n");
    std::cout << "correlated=" << mutated.basis.members.size() << " mutated_rules=" << mutated.rules.size()
              << "\n";

    if (!a.rotate_mode.empty()) {
        if (!store) throw ParameterError("--rotate needs a policy store (--store / ABACMTD_STORE)");
        const RotationMode mode = parse_rotation_mode(a.rotate_mode);
        // A fresh store is seeded from the provided policy; an existing one
        // must still be at the version the mutation was built from.
        const PolicySet active = fs::exists(store->active()) ? store->load_active() : original;
        PolicyStore live(active);
        rotate(live, mutated, mode);
        store->archive(active);
        store->write_active(*live.snapshot());
        append_file(store->log().string(),
                    rotation_audit_line(mode, active.version, mutated.rules.size(), a.ts) + "\n");
        std::cout << "rotated to version " << live.snapshot()->version << "\n";
    }
    return kExitOk;
}

struct EvalArgs {
    std::string policy_path;
    std::string store_flag;
    std::string requests_path;
    std::string honey_path;
    std::string log_path;
    std::string events_path;
    std::int64_t ts_base = 0;
};

int run_eval(const EvalArgs& a) {
    const auto store = resolve_store(a.store_flag);
    PolicySet policy;
    if (!a.policy_path.empty()) {
        policy = load_policy_document(a.policy_path);
    } else if (store) {
        policy = store->load_active();
    } else {
        throw ParameterError("eval needs --policy or a policy store (--store / ABACMTD_STORE)");
    }

    HoneyAttributeSet honey;
    if (!a.honey_path.empty()) honey = honey_from_csv(read_file(a.honey_path));

    std::string log_path = a.log_path;
    if (log_path.empty() && store) log_path = store->log().string();

    const std::string requests_text = read_file(a.requests_path);
    std::string log_lines;
    std::string event_lines;
    std::size_t malformed = 0;
    std::int64_t ts = a.ts_base;
    std::size_t line_no = 0;
    for (const std::string& line : split(requests_text, '\n')) {
        ++line_no;
        if (line.empty()) continue;
        AccessRequest request;
        try {
            request = parse_request_line(line);
        } catch (const Error& e) {
            std::cerr << "line " << line_no << ": " << e.what() << "\n";
            ++malformed;
            continue;
        }
        request.timestamp = ts++;
        const Enforcement enforced = enforce(evaluate(request, policy), request, honey);
        log_lines += decision_log_line(policy.version, request, enforced.decision) + "\n";
        if (enforced.event) event_lines += event_log_line(*enforced.event) + "\n";
    }

    if (log_path.empty()) {
        std::cout << log_lines;
    } else {
        append_file(log_path, log_lines);
    }
    if (!a.events_path.empty()) append_file(a.events_path, event_lines);

    if (malformed > 0) {
        std::cerr << malformed << " malformed request line(s) skipped\n";
        return kExitUsage;
    }
    return kExitOk;
}

struct MonitorArgs {
    std::string events_path;
    std::string honey_path;
    std::string out_path;
};

int run_monitor(const MonitorArgs& a) {
    const HoneyAttributeSet honey = honey_from_csv(read_file(a.honey_path));
    std::vector<MonitorEvent> events;
    for (const std::string& line : split(read_file(a.events_path), '\n')) {
        if (!line.empty()) events.push_back(parse_event_log_line(line));
    }
    std::string out;
    const std::vector<Alert> alerts = monitor(events, honey);
    for (const Alert& alert : alerts) out += alert_log_line(alert) + "\n";
    if (a.out_path.empty()) {
        std::cout << out;
    } else {
        write_file(a.out_path, out);
    }
    std::cerr << "alerts=" << alerts.size() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ABAC engine with deception and moving-target defense"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    CLI::App* ingest = app.add_subcommand("ingest", "Dataset acquisition: synth, load, join, sample");
    ingest->require_subcommand(1);
    CLI::App* synth = ingest->add_subcommand("synth", "Generate a synthetic dataset from a spec document");
    synth->add_option("--spec", ingest_args.spec_path, "Dataset spec JSON")->required();
    synth->add_option("--out", ingest_args.out_path, "Output CSV")->required();
    CLI::App* load = ingest->add_subcommand("load", "Validate (and canonicalize) a dataset CSV");
    load->add_option("--in", ingest_args.in_path, "Input CSV")->required();
    load->add_option("--expect", ingest_args.expect, "Expected header columns, comma-separated");
    load->add_option("--out", ingest_args.out_path, "Rewrite canonical CSV here");
    CLI::App* join_cmd = ingest->add_subcommand("join", "Inner equi-join two datasets on key columns");
    join_cmd->add_option("--left", ingest_args.left_path, "Left CSV")->required();
    join_cmd->add_option("--right", ingest_args.right_path, "Right CSV")->required();
    join_cmd->add_option("--keys", ingest_args.keys, "Key columns, comma-separated")->required();
    join_cmd->add_option("--out", ingest_args.out_path, "Output CSV")->required();
    CLI::App* sample = ingest->add_subcommand("sample", "Proportional stratified sample of n rows");
    sample->add_option("--in", ingest_args.in_path, "Input CSV")->required();
    sample->add_option("--n", ingest_args.n, "Sample size")->required();
    sample->add_option("--stratum", ingest_args.stratum, "Stratification column")->required();
    sample->add_option("--seed", ingest_args.seed, "RNG seed")->default_val(0);
    sample->add_option("--out", ingest_args.out_path, "Output CSV")->required();

    MineArgs mine_args;
    CLI::App* mine = app.add_subcommand("mine", "Frequent-itemset mining and rule derivation");
    mine->add_option("--in", mine_args.in_path, "Transaction CSV")->required();
    mine->add_option("--algo", mine_args.algo, "fpgrowth|apriori")->default_val("fpgrowth");
    mine->add_option("--min-support", mine_args.min_support, "Support threshold in (0,1]")->required();
    mine->add_option("--min-confidence", mine_args.min_confidence, "Confidence threshold for rules")
        ->default_val(0.5);
    mine->add_option("--dispersion-theta", mine_args.dispersion_theta,
                     "Prune columns with dispersion ratio below this (>= 1); omit to skip");
    mine->add_option("--out-itemsets", mine_args.out_itemsets, "Frequent itemset CSV");
    mine->add_option("--out-rules", mine_args.out_rules, "Association rule CSV");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Time FPGrowth vs Apriori across a threshold sweep");
    bench->add_option("--in", bench_args.in_path, "Transaction CSV")->required();
    bench->add_option("--thresholds", bench_args.thresholds,
                      "Comma-separated sweep (default 0.025..0.250 step 0.025)");
    bench->add_option("--reps", bench_args.reps, "Repetitions per timing (median taken)")->default_val(3);
    bench->add_option("--seed", bench_args.seed, "Dataset seed recorded in the report metadata")->default_val(0);
    bench->add_option("--out", bench_args.out_path, "Report CSV")->required();

    SensitivityArgs sens_args;
    CLI::App* sens = app.add_subcommand("sensitivity", "Score object attributes from an access matrix");
    sens->add_option("--matrix", sens_args.matrix_path, "Access matrix CSV (subject,name,value,action)")
        ->required();
    sens->add_option("--subjects", sens_args.subjects,
                     "Subject population size (default: distinct subjects in the matrix)");
    sens->add_option("--weights", sens_args.weights, "Action weights open,edit,delete")->default_val("1,2,3");
    sens->add_option("--K", sens_args.k, "Sensitivity threshold")->required();
    sens->add_option("--out", sens_args.out_path, "Sensitive attribute CSV")->required();

    HoneygenArgs honey_args;
    CLI::App* honeygen = app.add_subcommand("honeygen", "Generate honey attributes for sensitive attributes");
    honeygen->add_option("--in", honey_args.in_path, "Sensitive attribute CSV (name;value[;score])")->required();
    honeygen->add_option("--seed", honey_args.cfg.seed, "RNG seed")->default_val(0);
    honeygen->add_option("--population", honey_args.cfg.population_size, "GA population size")->default_val(32);
    honeygen->add_option("--generations", honey_args.cfg.generations, "GA generations")->default_val(20);
    honeygen->add_option("--crossover", honey_args.cfg.crossover_rate, "Crossover rate")->default_val(0.8);
    honeygen->add_option("--mutation", honey_args.cfg.mutation_rate, "Mutation rate")->default_val(0.2);
    honeygen->add_option("--band", honey_args.band, "Accepted similarity band lo,hi")->default_val("0.6,0.95");
    honeygen->add_option("--provider", honey_args.provider, "trigram|embedding")->default_val("trigram");
    honeygen->add_option("--embeddings", honey_args.embeddings_path, "Word-vector file for --provider embedding");
    honeygen->add_option("--out", honey_args.out_path, "Honey attribute CSV")->required();

    MutateArgs mutate_args;
    CLI::App* mutate = app.add_subcommand("mutate", "Build a mutated policy set from correlated attributes");
    mutate->add_option("--policy", mutate_args.policy_path, "Policy JSON (default: store's active policy)");
    mutate->add_option("--store", mutate_args.store_flag, "Policy store directory (or ABACMTD_STORE)");
    mutate->add_option("--rules", mutate_args.rules_path, "Association rule CSV")->required();
    mutate->add_option("--request", mutate_args.request_path, "Request file (first line is used)")->required();
    mutate->add_option("--support-theta", mutate_args.support_theta, "S_theta")->required();
    mutate->add_option("--confidence-theta", mutate_args.confidence_theta, "C_theta")->required();
    mutate->add_option("--scope", mutate_args.scope, "Request attributes to correlate: subject|object|both")
        ->default_val("both");
    mutate->add_option("--out", mutate_args.out_path, "Mutated policy document");
    mutate->add_option("--rotate", mutate_args.rotate_mode, "Rotate into the store: augment|replace");
    mutate->add_option("--ts", mutate_args.ts, "Audit timestamp (unix seconds)")->default_val(0);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a request file against a policy");
    eval_cmd->add_option("--policy", eval_args.policy_path, "Policy JSON (default: store's active policy)");
    eval_cmd->add_option("--store", eval_args.store_flag, "Policy store directory (or ABACMTD_STORE)");
    eval_cmd->add_option("--requests", eval_args.requests_path, "Request file, one request per line")->required();
    eval_cmd->add_option("--honey", eval_args.honey_path, "Honey attribute CSV for bait on deny");
    eval_cmd->add_option("--log", eval_args.log_path, "Decision log (default: store log, else stdout)");
    eval_cmd->add_option("--events", eval_args.events_path, "Append monitor events here");
    eval_cmd->add_option("--ts-base", eval_args.ts_base, "Timestamp base; request i gets ts-base + i")
        ->default_val(0);

    MonitorArgs monitor_args;
    CLI::App* monitor_cmd = app.add_subcommand("monitor", "Fold a monitor event log into honey-touch alerts");
    monitor_cmd->add_option("--events", monitor_args.events_path, "Event log")->required();
    monitor_cmd->add_option("--honey", monitor_args.honey_path, "Honey attribute CSV")->required();
    monitor_cmd->add_option("--out", monitor_args.out_path, "Alert log (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*synth) return run_ingest_synth(ingest_args);
        if (*load) return run_ingest_load(ingest_args);
        if (*join_cmd) return run_ingest_join(ingest_args);
        if (*sample) return run_ingest_sample(ingest_args);
        if (*mine) return run_mine(mine_args);
        if (*bench) return run_bench(bench_args);
        if (*sens) return run_sensitivity(sens_args);
        if (*honeygen) return run_honeygen(honey_args);
        if (*mutate) return run_mutate(mutate_args);
        if (*eval_cmd) return run_eval(eval_args);
        if (*monitor_cmd) return run_monitor(monitor_args);
    } catch (const StaleVersionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStale;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UndefinedConfidenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BandUnreachableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
