#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "dnml/model.hpp"

namespace dnml {

// The four binary relations over characters.
enum class RelationKind { Specialization, Spatial, Temporal, Similarity };

inline constexpr std::array<RelationKind, 4> kAllRelationKinds = {
    RelationKind::Specialization, RelationKind::Spatial,
    RelationKind::Temporal, RelationKind::Similarity};

std::string_view to_string(RelationKind kind);

using CharPair = std::pair<std::string, std::string>;
using PairSet = std::set<CharPair>;

// Base pairs per relation kind plus the derived view each kind is queried
// through:
//   - Specialization: transitive closure of the base pairs; must be acyclic,
//     so the closure is irreflexive. build() rejects cycles.
//   - Similarity: symmetric closure; reflexivity is not assumed.
//   - Spatial, Temporal: the base pairs as given.
class RelationStore {
public:
    RelationStore() = default;

    // Canonicalizes all labels. Throws Error on an empty label or on a
    // specialization cycle (the message names the pairs forming the cycle).
    static RelationStore build(const std::map<RelationKind, PairSet>& base);

    const PairSet& base_pairs(RelationKind kind) const;
    const PairSet& derived_pairs(RelationKind kind) const;

    // True iff (from, to) is in the derived view. Unknown characters yield
    // false. Inputs are canonicalized before lookup.
    bool related(const std::string& from, const std::string& to,
                 RelationKind kind) const;

private:
    std::array<PairSet, 4> base_{};
    std::array<PairSet, 4> derived_{};
};

// c r c' in the derived view of the store.
bool char_related(const std::string& c, const std::string& c_prime,
                  RelationKind kind, const RelationStore& store);

// Existential lifting to messages: some character of m stands in the derived
// relation to some character of m_prime.
bool msg_related(const Message& m, const Message& m_prime, RelationKind kind,
                 const RelationStore& store);

}  // namespace dnml
