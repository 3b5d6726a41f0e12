#pragma once

// Deception extensions: sensitivity assessment of object attributes,
// GA-based honey-attribute generation, and the monitoring unit that detects
// honey-attribute touches.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "abacmtd/core.hpp"
#include "abacmtd/errors.hpp"
#include "abacmtd/rng.hpp"

namespace abacmtd {

// ---------------------------------------------------------------------------
// Sensitivity assessment

// Per-action sensitivity weights. Writable actions carry more weight than
// read-only ones: 0 < open <= edit <= del.
struct ActionWeights {
    double open = 1.0;
    double edit = 2.0;
    double del = 3.0;

    double of(Action a) const {
        switch (a) {
            case Action::Open: return open;
            case Action::Edit: return edit;
            case Action::Delete: return del;
        }
        return open;
    }
};

inline void validate(const ActionWeights& w) {
    if (!(w.open > 0.0 && w.edit > 0.0 && w.del > 0.0)) {
        throw ParameterError("action weights must be positive");
    }
    if (!(w.open <= w.edit && w.edit <= w.del)) {
        throw ParameterError("action weights must satisfy open <= edit <= delete");
    }
}

// Authorized capability: which subjects may perform which action on which
// object attribute. subject_count is the population size in scope; it may
// exceed the number of distinct subjects appearing in entries.
class AccessMatrix {
public:
    void add(const std::string& subject_id, const AttributeKV& attr, Action action) {
        grants_[attr][static_cast<std::size_t>(action)].insert(subject_id);
        subjects_.insert(subject_id);
    }

    // Number of distinct subjects authorized for `action` on `attr`.
    std::size_t authorized_count(const AttributeKV& attr, Action action) const {
        auto it = grants_.find(attr);
        if (it == grants_.end()) return 0;
        return it->second[static_cast<std::size_t>(action)].size();
    }

    std::size_t subject_count() const {
        return explicit_count_ > subjects_.size() ? explicit_count_ : subjects_.size();
    }

    void set_subject_count(std::size_t n) {
        if (n < subjects_.size()) {
            throw ParameterError("subject_count below the number of distinct subjects in entries");
        }
        explicit_count_ = n;
    }

    // Distinct object attributes appearing in entries, in canonical order.
    std::vector<AttributeKV> attributes() const {
        std::vector<AttributeKV> out;
        out.reserve(grants_.size());
        for (const auto& [attr, per_action] : grants_) out.push_back(attr);
        return out;
    }

private:
    std::map<AttributeKV, std::array<std::set<std::string>, 3>> grants_;
    std::set<std::string> subjects_;
    std::size_t explicit_count_ = 0;
};

// Weighted Shannon information content of the attribute's authorization
// breadth: score = sum_a w_a * -log2((n_a + 1) / (N + 1)), Laplace-smoothed.
// Fewer authorized subjects means higher surprise and a higher score; an
// attribute every subject may open contributes zero from the open term.
inline double sensitivity(const AttributeKV& attr, const AccessMatrix& matrix, const ActionWeights& weights) {
    validate(weights);
    const double population = static_cast<double>(matrix.subject_count()) + 1.0;
    double score = 0.0;
    for (Action a : kAllActions) {
        const double authorized = static_cast<double>(matrix.authorized_count(attr, a)) + 1.0;
        score += weights.of(a) * -std::log2(authorized / population);
    }
    return score;
}

struct ScoredAttribute {
    AttributeKV attr;
    double score = 0.0;

    bool operator==(const ScoredAttribute&) const = default;
};

// SA = { sa in universe : sensitivity(sa) >= K }.
struct SensitiveAttributeSet {
    std::vector<ScoredAttribute> members;  // score descending, then attribute ascending
    double threshold_k = 0.0;
};

inline SensitiveAttributeSet select_sensitive(const std::vector<AttributeKV>& universe, const AccessMatrix& matrix,
                                              const ActionWeights& weights, double k) {
    if (k < 0.0) throw ParameterError("sensitivity threshold K must be non-negative");
    SensitiveAttributeSet out;
    out.threshold_k = k;
    for (const AttributeKV& attr : universe) {
        const double score = sensitivity(attr, matrix, weights);
        if (score >= k) out.members.push_back({attr, score});
    }
    std::sort(out.members.begin(), out.members.end(), [](const ScoredAttribute& a, const ScoredAttribute& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.attr < b.attr;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Similarity providers

class SimilarityProvider {
public:
    virtual ~SimilarityProvider() = default;
    // Semantic similarity in [0, 1]; 1.0 for identical inputs.
    virtual double similarity(std::string_view a, std::string_view b) const = 0;
};

// Character-trigram cosine similarity. Deterministic and dependency-free;
// the default fitness provider for honey generation.
class TrigramCosineSimilarity final : public SimilarityProvider {
public:
    double similarity(std::string_view a, std::string_view b) const override {
        if (a == b) return 1.0;
        const auto ga = grams(a);
        const auto gb = grams(b);
        if (ga.empty() || gb.empty()) return 0.0;
        double dot = 0.0;
        for (const auto& [gram, n] : ga) {
            auto it = gb.find(gram);
            if (it != gb.end()) dot += static_cast<double>(n) * static_cast<double>(it->second);
        }
        if (dot == 0.0) return 0.0;
        return dot / (norm(ga) * norm(gb));
    }

private:
    static std::map<std::string, std::size_t> grams(std::string_view s) {
        std::map<std::string, std::size_t> out;
        if (s.empty()) return out;
        if (s.size() < 3) {
            ++out[std::string(s)];
            return out;
        }
        for (std::size_t i = 0; i + 3 <= s.size(); ++i) ++out[std::string(s.substr(i, 3))];
        return out;
    }
    static double norm(const std::map<std::string, std::size_t>& g) {
        double sq = 0.0;
        for (const auto& [gram, n] : g) sq += static_cast<double>(n) * static_cast<double>(n);
        return std::sqrt(sq);
    }
};

// Word-vector lookup + cosine, loaded from a text file of `word v1 v2 ...`
// lines. Stands in for pretrained embeddings; words missing from the table
// score 0 against anything but themselves.
class EmbeddingSimilarity final : public SimilarityProvider {
public:
    static EmbeddingSimilarity from_lines(const std::vector<std::string>& lines) {
        EmbeddingSimilarity sim;
        for (const std::string& line : lines) {
            if (line.empty()) continue;
            std::size_t pos = line.find(' ');
            if (pos == std::string::npos) throw SchemaError("embedding line lacks vector components");
            std::string word = line.substr(0, pos);
            std::vector<double> vec;
            while (pos != std::string::npos) {
                std::size_t next = line.find(' ', pos + 1);
                std::string tok = line.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
                if (!tok.empty()) vec.push_back(std::stod(tok));
                pos = next;
            }
            if (vec.empty()) throw SchemaError("embedding line lacks vector components");
            sim.vectors_.emplace(std::move(word), std::move(vec));
        }
        return sim;
    }

    double similarity(std::string_view a, std::string_view b) const override {
        if (a == b) return 1.0;
        auto ia = vectors_.find(std::string(a));
        auto ib = vectors_.find(std::string(b));
        if (ia == vectors_.end() || ib == vectors_.end()) return 0.0;
        const auto& va = ia->second;
        const auto& vb = ib->second;
        if (va.size() != vb.size()) return 0.0;
        double dot = 0.0;
        double na = 0.0;
        double nb = 0.0;
        for (std::size_t i = 0; i < va.size(); ++i) {
            dot += va[i] * vb[i];
            na += va[i] * va[i];
            nb += vb[i] * vb[i];
        }
        if (na == 0.0 || nb == 0.0) return 0.0;
        double cos = dot / (std::sqrt(na) * std::sqrt(nb));
        // Clamp into [0, 1]: anti-correlated vectors are simply dissimilar.
        if (cos < 0.0) cos = 0.0;
        if (cos > 1.0) cos = 1.0;
        return cos;
    }

private:
    std::map<std::string, std::vector<double>> vectors_;
};

// ---------------------------------------------------------------------------
// Honey attribute generation

// A honey attribute shares its source's name, differs in value, and lands
// inside the configured similarity band.
struct HoneyAttribute {
    AttributeKV honey;
    AttributeKV source;
    double fitness = 0.0;

    bool operator==(const HoneyAttribute&) const = default;
};

struct HoneyAttributeSet {
    std::vector<HoneyAttribute> members;

    bool empty() const { return members.empty(); }

    // Honey attributes generated from object attributes whose name appears
    // in `names` — the bait selected for a probed object.
    std::vector<HoneyAttribute> for_object_names(const AttributeSet& object_attrs) const {
        std::vector<HoneyAttribute> out;
        for (const HoneyAttribute& h : members) {
            if (object_attrs.contains_name(h.source.name)) out.push_back(h);
        }
        return out;
    }
};

inline void validate(const HoneyAttributeSet& set, const SimilarityBand& band) {
    for (const HoneyAttribute& h : set.members) {
        if (h.honey.name != h.source.name) {
            throw ParameterError("honey attribute '" + h.honey.text() + "' does not share its source name");
        }
        if (h.honey.value == h.source.value) {
            throw ParameterError("honey attribute '" + h.honey.text() + "' equals its source value");
        }
        if (h.fitness < band.lo || h.fitness > band.hi) {
            throw ParameterError("honey attribute '" + h.honey.text() + "' fitness outside the similarity band");
        }
    }
}

struct GaConfig {
    std::size_t population_size = 32;  // >= 2
    std::size_t generations = 20;      // >= 1
    double crossover_rate = 0.8;
    double mutation_rate = 0.2;
    SimilarityBand band;
    std::uint64_t seed = 0;
};

inline void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw ParameterError("GA population size must be >= 2");
    if (cfg.generations < 1) throw ParameterError("GA generation count must be >= 1");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0) {
        throw ParameterError("GA crossover rate must lie in [0, 1]");
    }
    if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
        throw ParameterError("GA mutation rate must lie in [0, 1]");
    }
    validate(cfg.band);
}

namespace detail {

// Distance from the band; 0 inside it. Used for parent selection only —
// selecting on raw similarity would converge the population onto the
// real value, which band acceptance then rejects.
inline double band_distance(double fitness, const SimilarityBand& band) {
    if (fitness < band.lo) return band.lo - fitness;
    if (fitness > band.hi) return fitness - band.hi;
    return 0.0;
}

}  // namespace detail

// Generates honey candidates for one sensitive attribute. Population is
// seeded with substitution perturbations of the source value; crossover is
// a single-point string exchange; mutation substitutes one character drawn
// from the source value's alphabet. Fitness is provider similarity to the
// source value. Deterministic for a fixed config (seed included).
inline std::vector<HoneyAttribute> generate_honey(const AttributeKV& source, const GaConfig& cfg,
                                                  const SimilarityProvider& sim) {
    validate(cfg);
    std::vector<char> alphabet;
    {
        std::set<char> distinct(source.value.begin(), source.value.end());
        alphabet.assign(distinct.begin(), distinct.end());
    }
    if (alphabet.empty()) {
        throw BandUnreachableError("cannot generate honey for '" + source.text() + "': empty source value");
    }

    Rng rng(cfg.seed);
    const std::size_t len = source.value.size();

    const auto mutate_char = [&](std::string& s) {
        const std::size_t pos = rng.index(s.size());
        s[pos] = alphabet[rng.index(alphabet.size())];
    };

    std::vector<std::string> population;
    population.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        std::string candidate = source.value;
        const std::size_t edits = 1 + rng.index(std::max<std::size_t>(1, len / 3));
        for (std::size_t e = 0; e < edits; ++e) mutate_char(candidate);
        population.push_back(std::move(candidate));
    }

    std::vector<double> fitness(population.size());
    const auto score_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitness[i] = sim.similarity(source.value, population[i]);
        }
    };
    score_all();

    // Tournament of two, preferring the candidate nearer the band.
    const auto pick_parent = [&]() -> std::size_t {
        const std::size_t a = rng.index(population.size());
        const std::size_t b = rng.index(population.size());
        const double da = detail::band_distance(fitness[a], cfg.band);
        const double db = detail::band_distance(fitness[b], cfg.band);
        if (da != db) return da < db ? a : b;
        return a;
    };

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<std::string> next;
        next.reserve(cfg.population_size);
        for (std::size_t i = 0; i < cfg.population_size; ++i) {
            const std::size_t pa = pick_parent();
            const std::size_t pb = pick_parent();
            std::string child = population[pa];
            if (len >= 2 && rng.chance(cfg.crossover_rate)) {
                const std::size_t point = 1 + rng.index(len - 1);
                child = population[pa].substr(0, point) + population[pb].substr(point);
            }
            if (rng.chance(cfg.mutation_rate)) mutate_char(child);
            next.push_back(std::move(child));
        }
        population = std::move(next);
        fitness.resize(population.size());
        score_all();
    }

    std::map<std::string, double> accepted;  // value -> fitness, deduplicated
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i] == source.value) continue;
        if (fitness[i] < cfg.band.lo || fitness[i] > cfg.band.hi) continue;
        accepted.emplace(population[i], fitness[i]);
    }
    if (accepted.empty()) {
        throw BandUnreachableError("no honey candidate for '" + source.text() + "' landed in band [" +
                                   std::to_string(cfg.band.lo) + ", " + std::to_string(cfg.band.hi) +
                                   "]; widen the band or adjust GA parameters");
    }

    std::vector<HoneyAttribute> out;
    out.reserve(accepted.size());
    for (const auto& [value, fit] : accepted) {
        out.push_back(HoneyAttribute{AttributeKV(source.name, value), source, fit});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monitoring unit

struct MonitorEvent {
    std::string subject_id;
    AttributeSet touched;
    std::int64_t timestamp = 0;
};

struct Alert {
    std::string subject_id;
    AttributeKV honey_attr;
    std::int64_t first_seen = 0;
    std::size_t event_count = 0;

    bool operator==(const Alert&) const = default;
};

// Folds an ordered event stream into alerts: one alert per
// (subject, honey attribute) pair, created on first touch and counting
// every contributing event. Attributes outside the honey set are ignored.
inline std::vector<Alert> monitor(const std::vector<MonitorEvent>& events, const HoneyAttributeSet& honey) {
    std::set<AttributeKV> honey_values;
    for (const HoneyAttribute& h : honey.members) honey_values.insert(h.honey);

    std::vector<Alert> alerts;  // in first-touch order
    std::map<std::pair<std::string, AttributeKV>, std::size_t> index;
    for (const MonitorEvent& ev : events) {
        for (const AttributeKV& kv : ev.touched) {
            if (!honey_values.count(kv)) continue;
            auto key = std::make_pair(ev.subject_id, kv);
            auto it = index.find(key);
            if (it == index.end()) {
                index.emplace(std::move(key), alerts.size());
                alerts.push_back(Alert{ev.subject_id, kv, ev.timestamp, 1});
            } else {
                ++alerts[it->second].event_count;
            }
        }
    }
    return alerts;
}

}  // namespace abacmtd
