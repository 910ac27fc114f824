#include "keqa/kb.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "keqa/common.hpp"

namespace keqa::kb {

namespace {

const std::unordered_map<std::string, std::string>& irregular_plurals() {
    static const std::unordered_map<std::string, std::string> table = {
        {"knives", "knife"},   {"loaves", "loaf"},     {"shelves", "shelf"},
        {"leaves", "leaf"},    {"children", "child"},  {"feet", "foot"},
        {"teeth", "tooth"},    {"mice", "mouse"},      {"people", "person"},
        {"men", "man"},        {"women", "woman"},     {"boxes", "box"},
        {"dishes", "dish"},    {"glasses", "glass"},   {"brushes", "brush"},
        {"benches", "bench"},  {"couches", "couch"},   {"watches", "watch"},
        {"potatoes", "potato"},{"tomatoes", "tomato"},
    };
    return table;
}

std::string singularize_word(const std::string& w) {
    auto it = irregular_plurals().find(w);
    if (it != irregular_plurals().end()) return it->second;
    if (w.size() > 3 && w.compare(w.size() - 3, 3, "ies") == 0)
        return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 2 && w.compare(w.size() - 2, 2, "ss") == 0) return w;
    if (w.size() > 1 && w.back() == 's' && w[w.size() - 2] != 's' && w[w.size() - 2] != 'u')
        return w.substr(0, w.size() - 1);
    return w;
}

}  // namespace

std::string normalize_phrase(const std::string& phrase) {
    auto words = tokenize_words(phrase);
    std::size_t start = 0;
    if (!words.empty() &&
        (words[0] == "a" || words[0] == "an" || words[0] == "the")) {
        start = 1;
    }
    std::vector<std::string> kept(words.begin() + start, words.end());
    if (kept.empty()) return "";
    // Singularize only the head noun (last word); earlier words stay verbatim
    // so verb phrases like "cut food" survive unchanged.
    kept.back() = singularize_word(kept.back());
    return join(kept, " ");
}

void KnowledgeBase::rebuild_indexes() {
    relation_by_label_.clear();
    for (RelationIdx i = 0; i < static_cast<RelationIdx>(relation_labels_.size()); ++i)
        relation_by_label_[relation_labels_[i]] = i;
    phrase_index_.clear();
    for (const auto& e : entities_) {
        auto add = [&](const std::string& form) {
            auto& owners = phrase_index_[form];
            if (std::find(owners.begin(), owners.end(), e.id) == owners.end())
                owners.push_back(e.id);
        };
        add(normalize_phrase(e.canonical_name));
        for (const auto& a : e.aliases) add(normalize_phrase(a));
    }
}

std::optional<RelationIdx> KnowledgeBase::relation_index(const std::string& label) const {
    auto it = relation_by_label_.find(label);
    if (it == relation_by_label_.end()) return std::nullopt;
    return it->second;
}

std::optional<EntityIdx> KnowledgeBase::try_resolve_phrase(const std::string& phrase) const {
    auto it = phrase_index_.find(normalize_phrase(phrase));
    if (it == phrase_index_.end() || it->second.empty()) return std::nullopt;
    if (it->second.size() > 1) {
        std::vector<std::string> names;
        for (auto e : it->second) names.push_back(entities_[e].canonical_name);
        throw AmbiguousPhraseError(phrase, names);
    }
    return it->second.front();
}

EntityIdx KnowledgeBase::resolve_phrase(const std::string& phrase) const {
    if (trim(phrase).empty()) throw UnresolvedPhraseError(phrase);
    auto r = try_resolve_phrase(phrase);
    if (!r) throw UnresolvedPhraseError(phrase);
    return *r;
}

std::set<EntityIdx> KnowledgeBase::query_entities(RelationIdx relation, EntityIdx entity2) const {
    std::set<EntityIdx> out;
    for (const auto& t : triplets_) {
        if (t.relation == relation && t.entity2 == entity2) out.insert(t.entity1);
    }
    return out;
}

std::set<EntityIdx> KnowledgeBase::query_entities(const std::string& relation,
                                                  EntityIdx entity2) const {
    auto r = relation_index(relation);
    if (!r) throw std::runtime_error("unknown relation label: " + relation);
    return query_entities(*r, entity2);
}

std::vector<const Triplet*> KnowledgeBase::triplets_from(EntityIdx e) const {
    std::vector<const Triplet*> out;
    for (const auto& t : triplets_)
        if (t.entity1 == e) out.push_back(&t);
    return out;
}

std::size_t KnowledgeBase::base_count() const {
    std::size_t n = 0;
    for (const auto& t : triplets_)
        if (!t.derived) ++n;
    return n;
}

KbBuilder::KbBuilder(std::vector<std::string> relation_vocabulary) {
    kb_.relation_labels_ = std::move(relation_vocabulary);
    kb_.rebuild_indexes();
}

EntityIdx KbBuilder::intern_entity(const std::string& canonical_name) {
    std::string norm = normalize_phrase(canonical_name);
    if (norm.empty()) throw std::runtime_error("entity name normalizes to empty: '" + canonical_name + "'");
    auto it = by_normalized_.find(norm);
    if (it != by_normalized_.end()) return it->second;
    Entity e;
    e.id = static_cast<EntityIdx>(kb_.entities_.size());
    e.canonical_name = trim(canonical_name);
    kb_.entities_.push_back(std::move(e));
    by_normalized_[norm] = kb_.entities_.back().id;
    return kb_.entities_.back().id;
}

void KbBuilder::add_alias(const std::string& canonical_name, const std::string& alias) {
    EntityIdx owner = intern_entity(canonical_name);
    std::string norm = normalize_phrase(alias);
    auto it = by_normalized_.find(norm);
    if (it != by_normalized_.end() && it->second != owner)
        throw std::runtime_error("alias '" + alias + "' already owned by another entity");
    auto& aliases = kb_.entities_[owner].aliases;
    if (std::find(aliases.begin(), aliases.end(), alias) == aliases.end())
        aliases.push_back(alias);
    by_normalized_[norm] = owner;
}

void KbBuilder::add_triplet(const std::string& e1, const std::string& relation,
                            const std::string& e2, double weight) {
    auto r = kb_.relation_index(relation);
    if (!r) throw std::runtime_error("unknown relation label: " + relation);
    Triplet t;
    t.entity1 = intern_entity(e1);
    t.relation = *r;
    t.entity2 = intern_entity(e2);
    t.weight = weight;
    // Skip exact duplicates.
    for (const auto& ex : kb_.triplets_)
        if (!ex.derived && ex.entity1 == t.entity1 && ex.relation == t.relation &&
            ex.entity2 == t.entity2)
            return;
    kb_.triplets_.push_back(std::move(t));
}

KnowledgeBase KbBuilder::freeze() {
    kb_.rebuild_indexes();
    return std::move(kb_);
}

KnowledgeBase infer_closure(const KnowledgeBase& base, int max_hops,
                            std::vector<std::string>* warnings) {
    if (max_hops < 0) throw std::runtime_error("infer_closure: max_hops must be >= 0");
    KnowledgeBase out = base;
    out.closure_hops_ = max_hops;
    out.triplets_.erase(std::remove_if(out.triplets_.begin(), out.triplets_.end(),
                                       [](const Triplet& t) { return t.derived; }),
                        out.triplets_.end());

    auto isa = out.relation_index(KnowledgeBase::kIsA);
    if (!isa) return out;

    const std::int32_t n_base = static_cast<std::int32_t>(out.triplets_.size());
    // entity -> outgoing base IsA triplet indices
    std::unordered_map<EntityIdx, std::vector<std::int32_t>> isa_out;
    // entity -> non-IsA base triplet indices rooted at it
    std::unordered_map<EntityIdx, std::vector<std::int32_t>> rel_out;
    for (std::int32_t i = 0; i < n_base; ++i) {
        const auto& t = out.triplets_[i];
        (t.relation == *isa ? isa_out : rel_out)[t.entity1].push_back(i);
    }

    std::set<std::tuple<EntityIdx, RelationIdx, EntityIdx>> existing;
    for (const auto& t : out.triplets_)
        existing.emplace(t.entity1, t.relation, t.entity2);

    bool cycle_seen = false;
    for (const auto& ent : out.entities_) {
        // BFS up the IsA chain from e0; shortest chains found first.
        struct Hop {
            EntityIdx at;
            std::vector<std::int32_t> chain;  // IsA triplet indices walked
            double min_weight;
        };
        std::deque<Hop> frontier;
        frontier.push_back({ent.id, {}, std::numeric_limits<double>::infinity()});
        std::set<EntityIdx> visited{ent.id};
        while (!frontier.empty()) {
            Hop hop = std::move(frontier.front());
            frontier.pop_front();
            if (static_cast<int>(hop.chain.size()) >= 1) {
                // Lift every non-IsA base triplet rooted at the chain end.
                auto it = rel_out.find(hop.at);
                if (it != rel_out.end()) {
                    for (std::int32_t ti : it->second) {
                        const Triplet& b = out.triplets_[ti];
                        auto key = std::make_tuple(ent.id, b.relation, b.entity2);
                        if (existing.count(key)) continue;
                        existing.insert(key);
                        Triplet d;
                        d.entity1 = ent.id;
                        d.relation = b.relation;
                        d.entity2 = b.entity2;
                        d.derived = true;
                        d.weight = std::min(hop.min_weight, b.weight);
                        d.provenance = hop.chain;
                        d.provenance.push_back(ti);
                        out.triplets_.push_back(std::move(d));
                    }
                }
            }
            if (static_cast<int>(hop.chain.size()) >= max_hops) continue;
            auto io = isa_out.find(hop.at);
            if (io == isa_out.end()) continue;
            for (std::int32_t ti : io->second) {
                const Triplet& step = out.triplets_[ti];
                if (visited.count(step.entity2)) {
                    cycle_seen = true;
                    continue;
                }
                visited.insert(step.entity2);
                Hop next = hop;
                next.at = step.entity2;
                next.chain.push_back(ti);
                next.min_weight = std::min(next.min_weight, step.weight);
                frontier.push_back(std::move(next));
            }
        }
    }
    if (cycle_seen && warnings)
        warnings->push_back("IsA cycle detected; closure truncated at visited entities");
    return out;
}

KnowledgeBase import_kb(const std::string& triplet_file, const ImportOptions& opts,
                        ImportSummary* summary) {
    if (opts.vocabulary.empty()) throw std::runtime_error("import_kb: vocabulary must be nonempty");
    ImportSummary local;
    ImportSummary& sum = summary ? *summary : local;

    struct RawTriplet {
        std::string e1, rel, e2;
        double weight;
    };
    std::vector<RawTriplet> raw;

    std::ifstream in(triplet_file);
    if (!in) throw std::runtime_error("cannot open triplet file: " + triplet_file);
    std::string line;
    int line_no = 0;

    std::set<std::string> relation_vocab(opts.relation_vocabulary.begin(),
                                         opts.relation_vocabulary.end());
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        ++sum.lines_read;
        auto fields = split(line, '\t');
        if (fields.size() < 3 || fields.size() > 4 || trim(fields[0]).empty() ||
            trim(fields[1]).empty() || trim(fields[2]).empty()) {
            throw std::runtime_error("malformed triplet line " + std::to_string(line_no) + ": '" +
                                     line + "'");
        }
        RawTriplet rt{trim(fields[0]), trim(fields[1]), trim(fields[2]), 1.0};
        if (fields.size() == 4) {
            try {
                rt.weight = std::stod(trim(fields[3]));
            } catch (const std::exception&) {
                throw std::runtime_error("malformed weight at line " + std::to_string(line_no));
            }
            if (rt.weight < 0)
                throw std::runtime_error("negative weight at line " + std::to_string(line_no));
        }
        if (!relation_vocab.count(rt.rel)) {
            sum.rejected.push_back("line " + std::to_string(line_no) + ": unknown relation '" +
                                   rt.rel + "'");
            continue;
        }
        raw.push_back(std::move(rt));
    }

    // Exclusion list: a bare entity name drops every triplet touching it;
    // e1<TAB>rel<TAB>e2 drops that exact triplet.
    std::set<std::string> excluded_entities;
    std::set<std::tuple<std::string, std::string, std::string>> excluded_triplets;
    if (!opts.exclusion_file.empty()) {
        std::ifstream ex(opts.exclusion_file);
        if (!ex) throw std::runtime_error("cannot open exclusion file: " + opts.exclusion_file);
        std::string el;
        while (std::getline(ex, el)) {
            std::string t = trim(el);
            if (t.empty() || t[0] == '#') continue;
            auto fields = split(t, '\t');
            if (fields.size() >= 3) {
                excluded_triplets.emplace(normalize_phrase(fields[0]), trim(fields[1]),
                                          normalize_phrase(fields[2]));
            } else {
                excluded_entities.insert(normalize_phrase(t));
            }
        }
    }

    auto excluded = [&](const RawTriplet& rt) {
        if (excluded_entities.count(normalize_phrase(rt.e1)) ||
            excluded_entities.count(normalize_phrase(rt.e2)))
            return true;
        return excluded_triplets.count(std::make_tuple(normalize_phrase(rt.e1), rt.rel,
                                                       normalize_phrase(rt.e2))) > 0;
    };

    // Vocabulary filter: keep a triplet when entity1 or entity2 is a vocabulary
    // entity, or is reachable from one by walking up base IsA edges within
    // closure_hops (the "indirectly related" rule).
    std::set<std::string> vocab_norm;
    for (const auto& v : opts.vocabulary) vocab_norm.insert(normalize_phrase(v));

    std::unordered_map<std::string, std::vector<std::string>> isa_up;
    for (const auto& rt : raw) {
        if (rt.rel == KnowledgeBase::kIsA && !excluded(rt))
            isa_up[normalize_phrase(rt.e1)].push_back(normalize_phrase(rt.e2));
    }
    std::set<std::string> reachable = vocab_norm;
    std::deque<std::pair<std::string, int>> q;
    for (const auto& v : vocab_norm) q.emplace_back(v, 0);
    while (!q.empty()) {
        auto [at, hops] = q.front();
        q.pop_front();
        if (hops >= opts.closure_hops) continue;
        auto it = isa_up.find(at);
        if (it == isa_up.end()) continue;
        for (const auto& up : it->second) {
            if (reachable.insert(up).second) q.emplace_back(up, hops + 1);
        }
    }

    KbBuilder builder(opts.relation_vocabulary);
    for (const auto& rt : raw) {
        if (excluded(rt)) {
            ++sum.dropped_excluded;
            continue;
        }
        if (!reachable.count(normalize_phrase(rt.e1)) &&
            !reachable.count(normalize_phrase(rt.e2))) {
            ++sum.dropped_vocabulary;
            continue;
        }
        builder.add_triplet(rt.e1, rt.rel, rt.e2, rt.weight);
        ++sum.kept;
    }

    if (!opts.alias_file.empty()) {
        std::ifstream af(opts.alias_file);
        if (!af) throw std::runtime_error("cannot open alias file: " + opts.alias_file);
        std::string al;
        int al_no = 0;
        while (std::getline(af, al)) {
            ++al_no;
            std::string t = trim(al);
            if (t.empty() || t[0] == '#') continue;
            auto fields = split(t, '\t');
            if (fields.size() != 2)
                throw std::runtime_error("malformed alias line " + std::to_string(al_no));
            try {
                builder.add_alias(trim(fields[0]), trim(fields[1]));
            } catch (const std::exception& e) {
                sum.warnings.push_back(e.what());
            }
        }
    }

    KnowledgeBase kb = builder.freeze();
    std::vector<std::string> closure_warnings;
    kb = infer_closure(kb, opts.closure_hops, &closure_warnings);
    for (auto& w : closure_warnings) sum.warnings.push_back(std::move(w));
    return kb;
}

}  // namespace keqa::kb
