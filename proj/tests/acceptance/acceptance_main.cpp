// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Expected values are frozen from the worked examples and from hand-applied
// operator definitions (the golden files under tests/golden).

#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnml/macros.hpp"
#include "dnml/query.hpp"
#include "dnml/rewrite.hpp"
#include "dnml/storage.hpp"
#include "../support/fixture.hpp"
#include "../support/generators.hpp"

using namespace dnml;
using dnmltest::Rng;
using nlohmann::json;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& label,
                   const std::function<void()>& body) {
        try {
            body();
            std::cout << "criterion " << number << " (" << label << "): PASS\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion " << number << " (" << label
                      << "): FAIL: " << e.what() << "\n";
        }
    }
};

[[noreturn]] void reject(const std::string& detail) {
    throw std::runtime_error(detail);
}

void require(bool condition, const std::string& detail) {
    if (!condition) reject(detail);
}

Instance of_tuples(std::vector<MessageSeq> tuples) {
    Instance instance;
    int i = 0;
    for (auto& tuple : tuples)
        instance.add(Narrative("t" + std::to_string(i++), std::move(tuple)));
    return instance;
}

Environment fixture_env() {
    Environment env;
    env.sources["db"] = dnmltest::fixture_db().instance;
    env.store = dnmltest::fixture_db().store;
    return env;
}

Instance run_on_fixture(const std::string& query) {
    return run_query(dnmltest::fixture_db(), query).result;
}

void require_same_tuples(const Instance& actual, const Instance& expected,
                         const std::string& what) {
    if (actual.same_tuples(expected)) return;
    reject(what + ": got " + instance_to_json(actual).dump() + ", expected " +
           instance_to_json(expected).dump());
}

Message merged_m6_m7() {
    return Message({"black women", "white women", "stroke"},
                   {"stroke deaths", "first-time stroke rate"}, "compares");
}

void require_matches_golden(const AlgebraExpr& step, const std::string& file,
                            const std::string& what) {
    json expected;
    {
        std::ifstream in(std::string(DNML_GOLDEN_DIR) + "/" + file);
        require(static_cast<bool>(in), "cannot open golden file " + file);
        in >> expected;
    }
    json actual = instance_to_json(evaluate(step, fixture_env(), 1));
    if (actual != expected)
        reject(what + " diverges from " + file + ": got " + actual.dump());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// --- criteria ---

void selection_example() {
    Instance result = run_on_fixture(
        R"(select(exists(hasMeasure("stroke deaths")), db))");
    require_same_tuples(
        result, of_tuples({dnmltest::n1_messages(), dnmltest::n2_messages()}),
        "selection output");
}

void projection_example() {
    Instance result =
        run_on_fixture(R"(project(hasChar("black women"), db))");
    require_same_tuples(
        result,
        of_tuples({{dnmltest::m3()}, {dnmltest::m6(), dnmltest::m7()}, {}}),
        "projection output");
}

void group_aggregate_example() {
    Instance result = run_on_fixture(
        R"(groupagg([hasChar("black women"): unionMerge,
                     hasChar("white women"): unionMerge], db))");
    require_same_tuples(result,
                        of_tuples({{dnmltest::m3(), Message()},
                                   {merged_m6_m7(), merged_m6_m7()},
                                   {Message(), Message()}}),
                        "group-aggregate output");
}

void across_example() {
    Instance result = run_on_fixture(
        R"(groupaggacross([hasChar("black women"): unionMerge,
                           hasChar("white women"): unionMerge], db))");
    Message merged_m3_m6_m7(
        {"black women", "stroke", "white women"},
        {"stroke prevalence", "stroke deaths", "first-time stroke rate"},
        "merged(compares,higher-risk)");
    require_same_tuples(result,
                        of_tuples({{merged_m3_m6_m7, merged_m6_m7()}}),
                        "across output");
}

void pipelines_match_goldens() {
    AlgebraExpr db = AlgebraExpr::make_source("db");

    AlgebraExpr rollup = expand_rollup("black women", db);
    const AlgebraExpr& rollup_group = rollup.children[0];
    const AlgebraExpr& rollup_cross = rollup_group.children[0];
    require_matches_golden(rollup_cross.children[0], "rollup_i1.json",
                           "roll-up step 1");
    require_matches_golden(rollup_cross.children[1], "rollup_i2.json",
                           "roll-up step 2");
    require_matches_golden(rollup_cross, "rollup_i3.json", "roll-up step 3");
    require_matches_golden(rollup_group, "rollup_i4.json", "roll-up step 4");
    require_matches_golden(rollup, "rollup_i5.json", "roll-up step 5");

    AlgebraExpr compare = expand_compare({"women", "stroke"}, db);
    const AlgebraExpr& compare_group = compare.children[0];
    require_matches_golden(compare_group.children[0], "compare_i1.json",
                           "compare step 1");
    require_matches_golden(compare_group, "compare_i2.json", "compare step 2");
    require_matches_golden(compare, "compare_i3.json", "compare step 3");
}

void law_suite() {
    const int cases = 1000;

    {  // closure of every operator, checked through expression evaluation
        Rng rng(601);
        for (int i = 0; i < cases; ++i) {
            Environment env;
            env.sources["db"] = dnmltest::random_instance(rng);
            env.sources["aux"] = dnmltest::random_instance(rng);
            env.store = dnmltest::random_store(rng);
            Instance output =
                evaluate(dnmltest::random_expr(rng, 3, {"db", "aux"}), env);
            require(validate_instance(output).ok(), "closure violated");
        }
    }
    {  // cross-product units
        Rng rng(602);
        Instance unit = of_tuples({{}});
        for (int i = 0; i < cases; ++i) {
            Instance input = dnmltest::random_instance(rng);
            require(op_cross(input, unit).same_tuples(input) &&
                        op_cross(unit, input).same_tuples(input),
                    "the empty narrative is not neutral");
            require(op_cross(input, Instance()).empty() &&
                        op_cross(Instance(), input).empty(),
                    "the empty instance does not absorb");
        }
    }
    {  // cross-product associativity
        Rng rng(603);
        for (int i = 0; i < cases; ++i) {
            Instance a = dnmltest::random_instance(rng, 3, 3);
            Instance b = dnmltest::random_instance(rng, 3, 3);
            Instance c = dnmltest::random_instance(rng, 3, 3);
            require(op_cross(op_cross(a, b), c)
                        .same_tuples(op_cross(a, op_cross(b, c))),
                    "cross product is not associative");
        }
    }
    {  // stored non-commutativity witness
        Instance lhs = of_tuples({{dnmltest::m1()}});
        Instance rhs = of_tuples({{dnmltest::m2()}});
        require(!op_cross(lhs, rhs).same_tuples(op_cross(rhs, lhs)),
                "the commutativity witness collapsed");
    }
    {  // duplicate elimination is idempotent
        Rng rng(604);
        for (int i = 0; i < cases; ++i) {
            Instance once = op_dedup(dnmltest::random_instance(rng));
            require(op_dedup(once).same_tuples(once), "dedup not idempotent");
        }
    }
    {  // selection cascade and commutation
        Rng rng(605);
        for (int i = 0; i < cases; ++i) {
            RelationStore store = dnmltest::random_store(rng);
            Instance input = dnmltest::random_instance(rng);
            DnCondition phi = dnmltest::random_dn_condition(rng);
            DnCondition psi = dnmltest::random_dn_condition(rng);
            Instance conjunction =
                op_select(DnCondition::and_(phi, psi), input, store);
            require(conjunction.same_tuples(op_select(
                        phi, op_select(psi, input, store), store)),
                    "selection cascade broke");
            require(conjunction.same_tuples(op_select(
                        psi, op_select(phi, input, store), store)),
                    "selection commutation broke");
            require(op_select(DnCondition::constant(true), input, store)
                        .same_tuples(input),
                    "select(true) is not the identity");
            require(op_select(DnCondition::constant(false), input, store)
                        .empty(),
                    "select(false) is not empty");
        }
    }
    {  // across-aggregation equals aggregate(dedup(concat(...)))
        Rng rng(606);
        for (int i = 0; i < cases; ++i) {
            RelationStore store = dnmltest::random_store(rng);
            Instance input = dnmltest::random_instance(rng);
            auto specs = dnmltest::random_agg_specs(rng);
            require(op_group_aggregate_across(specs, input, store)
                        .same_tuples(op_group_aggregate(
                            specs, op_dedup(op_concat(input)), store)),
                    "across aggregation diverged from dedup-concat route");
        }
    }
}

void completeness_reconstruction() {
    Rng rng(607);
    Environment env;
    for (int i = 0; i < 100; ++i) {
        Narrative n = dnmltest::random_narrative(rng, 6);
        AlgebraExpr expr =
            n.empty()
                ? AlgebraExpr::project(MsgCondition::constant(false),
                                       AlgebraExpr::make_constant(Message()))
                : AlgebraExpr::make_constant(n.messages().front());
        for (std::size_t p = 1; p < n.length(); ++p)
            expr = AlgebraExpr::cross(
                expr, AlgebraExpr::make_constant(n.messages()[p]));
        Instance rebuilt = evaluate(expr, env);
        require(rebuilt.size() == 1 &&
                    rebuilt.narratives()[0].messages() == n.messages(),
                "reconstruction failed for a narrative of length " +
                    std::to_string(n.length()));
    }
}

void parser_and_rewriter() {
    Rng rng(608);
    for (int i = 0; i < 500; ++i) {
        AlgebraExpr expr = dnmltest::random_expr(rng, 4, {"db", "aux"});
        require(parse_query(render(expr)) == expr, "round-trip failed for: " +
                                                       render(expr));
    }
    Rng rng2(609);
    for (int i = 0; i < 500; ++i) {
        Environment env;
        env.sources["db"] = dnmltest::random_instance(rng2);
        env.sources["aux"] = dnmltest::random_instance(rng2);
        env.store = dnmltest::random_store(rng2);
        AlgebraExpr expr = dnmltest::random_expr(rng2, 4, {"db", "aux"});
        require(evaluate(rewrite(expr), env).same_tuples(evaluate(expr, env)),
                "rewrite changed the meaning of: " + render(expr));
    }
}

void cli_determinism() {
    const std::string out_a = std::string(DNML_CLI_PATH) + ".out_a.json";
    const std::string out_b = std::string(DNML_CLI_PATH) + ".out_b.json";
    const std::string command_tail =
        " query -d " DNML_FIXTURE_JSON
        " -q 'select(exists(hasMeasure(\"stroke deaths\")), db)' -o ";
    require(std::system((std::string(DNML_CLI_PATH) + command_tail + out_a)
                            .c_str()) == 0,
            "first CLI run failed");
    require(std::system((std::string(DNML_CLI_PATH) + command_tail + out_b)
                            .c_str()) == 0,
            "second CLI run failed");
    std::string a = slurp(out_a);
    require(!a.empty(), "first run produced no output");
    require(a == slurp(out_b), "output documents differ between runs");
}

}  // namespace

int main() {
    Harness harness;
    harness.criterion(1, "selection example", selection_example);
    harness.criterion(2, "projection example", projection_example);
    harness.criterion(3, "group-aggregate example", group_aggregate_example);
    harness.criterion(4, "across example", across_example);
    harness.criterion(5, "pipelines match the golden files",
                      pipelines_match_goldens);
    harness.criterion(6, "algebraic law suite", law_suite);
    harness.criterion(7, "completeness reconstruction",
                      completeness_reconstruction);
    harness.criterion(8, "parser round-trip and rewrite soundness",
                      parser_and_rewriter);
    harness.criterion(9, "CLI determinism", cli_determinism);

    if (harness.failures != 0) {
        std::cout << harness.failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
