#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace keqa::kb {

using EntityIdx = std::int32_t;
using RelationIdx = std::int32_t;

struct Entity {
    EntityIdx id = -1;
    std::string canonical_name;             // nonempty
    std::vector<std::string> aliases;       // unique, normalized forms
};

struct Triplet {
    EntityIdx entity1 = -1;
    RelationIdx relation = -1;
    EntityIdx entity2 = -1;
    double weight = 1.0;
    bool derived = false;
    std::vector<std::int32_t> provenance;   // base triplet indices, only for derived
};

struct ImportSummary {
    int lines_read = 0;
    int kept = 0;
    int dropped_vocabulary = 0;
    int dropped_excluded = 0;
    std::vector<std::string> rejected;      // unknown relation label, with line numbers
    std::vector<std::string> warnings;
};

class UnresolvedPhraseError : public std::runtime_error {
public:
    explicit UnresolvedPhraseError(const std::string& phrase)
        : std::runtime_error("unresolved phrase: '" + phrase + "'") {}
};

class AmbiguousPhraseError : public std::runtime_error {
public:
    AmbiguousPhraseError(const std::string& phrase, const std::vector<std::string>& candidates)
        : std::runtime_error("ambiguous phrase: '" + phrase + "' matches " + join(candidates)) {}
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s;
    }
};

// Lowercase, trim, strip leading articles, singularize (small irregular lexicon + s-rules).
std::string normalize_phrase(const std::string& phrase);

// Immutable after build; safe for unrestricted concurrent reads.
class KnowledgeBase {
public:
    static constexpr const char* kIsA = "IsA";

    const std::vector<Entity>& entities() const { return entities_; }
    const std::vector<Triplet>& triplets() const { return triplets_; }
    const std::vector<std::string>& relation_labels() const { return relation_labels_; }
    int closure_hops() const { return closure_hops_; }

    std::optional<RelationIdx> relation_index(const std::string& label) const;
    const std::string& relation_label(RelationIdx r) const { return relation_labels_.at(r); }
    const std::string& entity_name(EntityIdx e) const { return entities_.at(e).canonical_name; }

    // Unique entity owning the normalized phrase as canonical name or alias.
    EntityIdx resolve_phrase(const std::string& phrase) const;
    std::optional<EntityIdx> try_resolve_phrase(const std::string& phrase) const;

    // All entity1 with (entity1, relation, entity2) in base plus derived triplets.
    std::set<EntityIdx> query_entities(RelationIdx relation, EntityIdx entity2) const;
    std::set<EntityIdx> query_entities(const std::string& relation, EntityIdx entity2) const;

    // Triplets whose entity1 equals e (base plus derived), for question sampling.
    std::vector<const Triplet*> triplets_from(EntityIdx e) const;

    std::size_t base_count() const;

private:
    friend class KbBuilder;
    friend KnowledgeBase infer_closure(const KnowledgeBase& base, int max_hops,
                                       std::vector<std::string>* warnings);

    std::vector<Entity> entities_;
    std::vector<Triplet> triplets_;
    std::vector<std::string> relation_labels_;
    std::unordered_map<std::string, RelationIdx> relation_by_label_;
    std::unordered_map<std::string, std::vector<EntityIdx>> phrase_index_;  // normalized form -> owners
    int closure_hops_ = 0;

    void rebuild_indexes();
};

// Incremental construction, single-owner; freeze() hands out the immutable KB.
class KbBuilder {
public:
    explicit KbBuilder(std::vector<std::string> relation_vocabulary);

    EntityIdx intern_entity(const std::string& canonical_name);
    void add_alias(const std::string& canonical_name, const std::string& alias);
    void add_triplet(const std::string& e1, const std::string& relation, const std::string& e2,
                     double weight = 1.0);
    KnowledgeBase freeze();

private:
    KnowledgeBase kb_;
    std::unordered_map<std::string, EntityIdx> by_normalized_;
};

struct ImportOptions {
    // Entities (normalized) that seed the keep-filter: object categories + anchor phrases.
    std::vector<std::string> vocabulary;
    std::vector<std::string> relation_vocabulary = {
        "IsA", "UsedFor", "ReceivesAction", "CapableOf", "AtLocation", "MadeOf", "HasProperty"};
    int closure_hops = 3;
    std::string alias_file;       // optional: entity<TAB>alias lines
    std::string exclusion_file;   // optional: entity or e1<TAB>rel<TAB>e2 patterns
};

// Reads the tab-separated triplet file, applies the vocabulary filter and the
// exclusion list, and runs the IsA closure. Throws on malformed lines.
KnowledgeBase import_kb(const std::string& triplet_file, const ImportOptions& opts,
                        ImportSummary* summary = nullptr);

// IsA-chain lifting up to max_hops; base triplets preserved, derived flagged with provenance.
KnowledgeBase infer_closure(const KnowledgeBase& base, int max_hops,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace keqa::kb
