#include "dnml/relations.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace dnml {

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::Specialization: return "specialization";
        case RelationKind::Spatial: return "spatial";
        case RelationKind::Temporal: return "temporal";
        case RelationKind::Similarity: return "similarity";
    }
    return "?";
}

namespace {

std::size_t index_of(RelationKind kind) {
    return static_cast<std::size_t>(kind);
}

PairSet transitive_closure(const PairSet& base) {
    PairSet closure = base;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<CharPair> added;
        for (const auto& [a, b] : closure) {
            auto it = closure.lower_bound({b, std::string()});
            for (; it != closure.end() && it->first == b; ++it) {
                if (!closure.count({a, it->second})) added.push_back({a, it->second});
            }
        }
        for (auto& p : added) grew |= closure.insert(std::move(p)).second;
    }
    return closure;
}

// Finds a base-pair walk from start back to itself and spells it out.
std::string describe_cycle(const std::string& start, const PairSet& base) {
    std::vector<std::string> path = {start};
    std::set<std::string> visited;
    std::string result;
    // Depth-first; the closure already proved a cycle through start exists.
    struct Walker {
        const PairSet& base;
        const std::string& start;
        std::string found;

        bool walk(std::vector<std::string>& path, std::set<std::string>& seen) {
            const std::string& here = path.back();
            auto it = base.lower_bound({here, std::string()});
            for (; it != base.end() && it->first == here; ++it) {
                if (it->second == start) {
                    std::string text;
                    for (std::size_t i = 0; i + 1 < path.size(); ++i)
                        text += "(" + path[i] + " < " + path[i + 1] + "), ";
                    text += "(" + here + " < " + start + ")";
                    found = text;
                    return true;
                }
                if (!seen.insert(it->second).second) continue;
                path.push_back(it->second);
                if (walk(path, seen)) return true;
                path.pop_back();
            }
            return false;
        }
    } walker{base, start, {}};
    walker.walk(path, visited);
    return walker.found.empty() ? "(" + start + " < " + start + ")"
                                : walker.found;
}

}  // namespace

RelationStore RelationStore::build(const std::map<RelationKind, PairSet>& base) {
    RelationStore store;
    for (const auto& [kind, pairs] : base) {
        PairSet canonical;
        for (const auto& [from, to] : pairs) {
            auto a = canonical_label(from);
            auto b = canonical_label(to);
            if (a.empty() || b.empty())
                throw Error("relation pair ('" + from + "', '" + to + "') in " +
                            std::string(to_string(kind)) +
                            " has an empty label after canonicalization");
            canonical.insert({std::move(a), std::move(b)});
        }
        store.base_[index_of(kind)] = std::move(canonical);
    }

    const auto& spec_base = store.base_[index_of(RelationKind::Specialization)];
    PairSet spec_closure = transitive_closure(spec_base);
    for (const auto& [a, b] : spec_closure) {
        if (a == b) {
            throw Error("specialization cycle: " + describe_cycle(a, spec_base));
        }
    }
    store.derived_[index_of(RelationKind::Specialization)] =
        std::move(spec_closure);

    PairSet sym = store.base_[index_of(RelationKind::Similarity)];
    for (const auto& [a, b] : store.base_[index_of(RelationKind::Similarity)])
        sym.insert({b, a});
    store.derived_[index_of(RelationKind::Similarity)] = std::move(sym);

    store.derived_[index_of(RelationKind::Spatial)] =
        store.base_[index_of(RelationKind::Spatial)];
    store.derived_[index_of(RelationKind::Temporal)] =
        store.base_[index_of(RelationKind::Temporal)];
    return store;
}

const PairSet& RelationStore::base_pairs(RelationKind kind) const {
    return base_[index_of(kind)];
}

const PairSet& RelationStore::derived_pairs(RelationKind kind) const {
    return derived_[index_of(kind)];
}

bool RelationStore::related(const std::string& from, const std::string& to,
                            RelationKind kind) const {
    return derived_[index_of(kind)].count(
               {canonical_label(from), canonical_label(to)}) != 0;
}

bool char_related(const std::string& c, const std::string& c_prime,
                  RelationKind kind, const RelationStore& store) {
    return store.related(c, c_prime, kind);
}

bool msg_related(const Message& m, const Message& m_prime, RelationKind kind,
                 const RelationStore& store) {
    for (const auto& c : m.characters()) {
        for (const auto& c_prime : m_prime.characters()) {
            if (store.related(c, c_prime, kind)) return true;
        }
    }
    return false;
}

}  // namespace dnml
