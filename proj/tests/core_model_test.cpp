#include <doctest.h>

#include <algorithm>
#include <set>

#include "dnml/model.hpp"
#include "dnml/relations.hpp"
#include "support/fixture.hpp"
#include "support/generators.hpp"

using namespace dnml;
using dnmltest::Rng;

TEST_CASE("canonical_label trims and collapses whitespace") {
    CHECK(canonical_label("  women ") == "women");
    CHECK(canonical_label("black   women") == "black women");
    CHECK(canonical_label("\tblack \n women\t") == "black women");
    CHECK(canonical_label("") == "");
    CHECK(canonical_label("   ") == "");
    CHECK(canonical_label("already canonical") == "already canonical");
}

TEST_CASE("message construction") {
    Message m({"black women", "stroke"}, {"stroke prevalence"}, "higher-risk");
    CHECK(m.characters() == std::set<std::string>{"black women", "stroke"});
    CHECK(m.measures() == std::set<std::string>{"stroke prevalence"});
    CHECK(m.predicate() == "higher-risk");
    CHECK_FALSE(m.is_empty());

    SUBCASE("the empty message") {
        Message empty;
        CHECK(empty.is_empty());
        CHECK(empty == Message({}, {}, ""));
    }
    SUBCASE("labels are canonicalized") {
        Message spaced({"  women "}, {" stroke  deaths "}, "  top-cause ");
        CHECK(spaced.has_character("women"));
        CHECK(spaced.has_measure("stroke deaths"));
        CHECK(spaced.predicate() == "top-cause");
    }
    SUBCASE("duplicate labels collapse") {
        Message dup({"women", " women", "women "}, {}, "p");
        CHECK(dup.characters().size() == 1);
    }
    SUBCASE("empty labels are rejected") {
        CHECK_THROWS_AS(Message({"  "}, {}, "p"), Error);
        CHECK_THROWS_AS(Message({}, {""}, "p"), Error);
    }
    SUBCASE("an empty predicate is allowed") {
        CHECK(Message({"women"}, {}, "").predicate() == "");
    }
}

TEST_CASE("message equality is structural and an equivalence relation") {
    CHECK(Message({"a", "b"}, {"v"}, "p") == Message({"b", "a"}, {"v"}, "p"));
    CHECK(Message({"a"}, {}, "p") != Message({"a"}, {}, "q"));

    Rng rng(101);
    for (int i = 0; i < 300; ++i) {
        Message a = dnmltest::random_message(rng);
        Message b = dnmltest::random_message(rng);
        Message c = dnmltest::random_message(rng);
        CHECK(a == a);
        CHECK((a == b) == (b == a));
        if (a == b && b == c) CHECK(a == c);
    }
}

TEST_CASE("narrative positions") {
    Message m({"a"}, {}, "p");
    Message m_prime({"b"}, {}, "p");
    Narrative n("n", {m, m, m_prime});

    CHECK(n.positions_of(m) == std::set<std::size_t>{1, 2});
    CHECK(n.positions_of(m_prime) == std::set<std::size_t>{3});
    CHECK(n.positions_of(Message({"c"}, {}, "p")).empty());
    CHECK(Narrative("e", {}).positions_of(m).empty());
}

TEST_CASE("position sets partition 1..k") {
    Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        Narrative n = dnmltest::random_narrative(rng);
        std::set<std::size_t> covered;
        std::set<Message> distinct(n.messages().begin(), n.messages().end());
        std::size_t total = 0;
        for (const Message& m : distinct) {
            auto positions = n.positions_of(m);
            total += positions.size();
            covered.insert(positions.begin(), positions.end());
        }
        CHECK(total == n.length());  // pairwise disjoint
        std::set<std::size_t> expected;
        for (std::size_t p = 1; p <= n.length(); ++p) expected.insert(p);
        CHECK(covered == expected);
    }
}

TEST_CASE("instance has set semantics over message tuples") {
    Instance instance;
    CHECK(instance.add(Narrative("a", {dnmltest::m1()})));
    CHECK_FALSE(instance.add(Narrative("b", {dnmltest::m1()})));
    CHECK(instance.size() == 1);
    CHECK(instance.narratives()[0].name() == "a");  // first name wins

    SUBCASE("the empty instance differs from the empty-narrative instance") {
        Instance empty;
        Instance holds_empty;
        holds_empty.add(Narrative("e", {}));
        CHECK(empty.empty());
        CHECK(holds_empty.size() == 1);
        CHECK_FALSE(empty.same_tuples(holds_empty));
    }
}

TEST_CASE("validate_instance") {
    SUBCASE("the fixture instance is valid") {
        CHECK(validate_instance(dnmltest::fixture_db().instance).ok());
    }
    SUBCASE("schema length mismatch is reported with the narrative name") {
        Instance instance;
        instance.add(Narrative("broken", 2, {dnmltest::m1(), dnmltest::m2(),
                                             dnmltest::m3()}));
        auto report = validate_instance(instance);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].narrative == "broken");
        CHECK(report.violations[0].detail.find("length 2") != std::string::npos);
        CHECK(report.violations[0].detail.find("3 messages") != std::string::npos);
    }
}

TEST_CASE("specialization derived view is the transitive closure") {
    SUBCASE("chains close transitively") {
        auto store = RelationStore::build(
            {{RelationKind::Specialization, {{"a", "b"}, {"b", "c"}}}});
        CHECK(char_related("a", "c", RelationKind::Specialization, store));
        CHECK_FALSE(char_related("c", "a", RelationKind::Specialization, store));
    }
    SUBCASE("matches an iterated-join oracle on random acyclic bases") {
        Rng rng(103);
        for (int i = 0; i < 200; ++i) {
            RelationStore store = dnmltest::random_store(rng);
            const PairSet& base =
                store.base_pairs(RelationKind::Specialization);
            // Independent closure: join the base with itself to fixpoint.
            PairSet oracle = base;
            while (true) {
                PairSet next = oracle;
                for (const auto& [a, b] : oracle)
                    for (const auto& [c, d] : base)
                        if (b == c) next.insert({a, d});
                if (next == oracle) break;
                oracle = std::move(next);
            }
            CHECK(store.derived_pairs(RelationKind::Specialization) == oracle);
        }
    }
    SUBCASE("the derived view is irreflexive on random acyclic bases") {
        Rng rng(104);
        for (int i = 0; i < 200; ++i) {
            RelationStore store = dnmltest::random_store(rng);
            for (const auto& [a, b] :
                 store.derived_pairs(RelationKind::Specialization))
                CHECK(a != b);
        }
    }
    SUBCASE("cycles are rejected naming the pairs") {
        CHECK_THROWS_WITH_AS(
            RelationStore::build(
                {{RelationKind::Specialization, {{"a", "b"}, {"b", "a"}}}}),
            "specialization cycle: (a < b), (b < a)", Error);
        CHECK_THROWS_AS(RelationStore::build({{RelationKind::Specialization,
                                               {{"a", "a"}}}}),
                        Error);
    }
}

TEST_CASE("similarity derived view is the symmetric closure, not reflexive") {
    auto store = RelationStore::build(
        {{RelationKind::Similarity, {{"birth control pills", "abortion pills"}}}});
    CHECK(char_related("birth control pills", "abortion pills",
                       RelationKind::Similarity, store));
    CHECK(char_related("abortion pills", "birth control pills",
                       RelationKind::Similarity, store));
    CHECK_FALSE(char_related("birth control pills", "birth control pills",
                             RelationKind::Similarity, store));

    Rng rng(105);
    for (int i = 0; i < 200; ++i) {
        RelationStore random = dnmltest::random_store(rng);
        const PairSet& derived = random.derived_pairs(RelationKind::Similarity);
        for (const auto& [a, b] : derived)
            CHECK(derived.count({b, a}) == 1);
    }
}

TEST_CASE("spatial and temporal take no closure") {
    auto store = RelationStore::build(
        {{RelationKind::Spatial, {{"a", "b"}, {"b", "c"}}},
         {RelationKind::Temporal, {{"x", "y"}, {"y", "z"}}}});
    CHECK(char_related("a", "b", RelationKind::Spatial, store));
    CHECK_FALSE(char_related("a", "c", RelationKind::Spatial, store));
    CHECK_FALSE(char_related("b", "a", RelationKind::Spatial, store));
    CHECK(char_related("x", "y", RelationKind::Temporal, store));
    CHECK_FALSE(char_related("x", "z", RelationKind::Temporal, store));
}

TEST_CASE("char_related on the fixture store") {
    const RelationStore& store = dnmltest::fixture_db().store;
    CHECK(char_related("black women", "women", RelationKind::Specialization,
                       store));
    CHECK(char_related("Greece", "France", RelationKind::Spatial, store));
    CHECK(char_related("Spring", "2nd quarter", RelationKind::Temporal, store));
    CHECK_FALSE(char_related("women", "black women",
                             RelationKind::Specialization, store));
    CHECK_FALSE(char_related("never seen", "women",
                             RelationKind::Specialization, store));
}

TEST_CASE("msg_related") {
    const RelationStore& store = dnmltest::fixture_db().store;
    SUBCASE("fixture examples") {
        CHECK(msg_related(dnmltest::m3(), dnmltest::m1(),
                          RelationKind::Specialization, store));
        CHECK_FALSE(msg_related(dnmltest::m9(), dnmltest::m1(),
                                RelationKind::Similarity, store));
        CHECK_FALSE(msg_related(Message(), dnmltest::m1(),
                                RelationKind::Specialization, store));
    }
    SUBCASE("agrees with a brute-force double loop") {
        Rng rng(106);
        for (int i = 0; i < 500; ++i) {
            RelationStore random = dnmltest::random_store(rng);
            Message a = dnmltest::random_message(rng);
            Message b = dnmltest::random_message(rng);
            RelationKind kind = dnmltest::random_relation(rng);
            bool expected = false;
            for (const auto& pair : random.derived_pairs(kind)) {
                if (a.characters().count(pair.first) != 0 &&
                    b.characters().count(pair.second) != 0)
                    expected = true;
            }
            CHECK(msg_related(a, b, kind, random) == expected);
        }
    }
}
