#include "dnml/rewrite.hpp"

#include <utility>

#include "dnml/query.hpp"

namespace dnml {

AlgebraExpr empty_instance_expr() {
    return AlgebraExpr::select(DnCondition::constant(false),
                               AlgebraExpr::make_constant(Message()));
}

AlgebraExpr empty_narrative_expr() {
    return AlgebraExpr::project(MsgCondition::constant(false),
                                AlgebraExpr::make_constant(Message()));
}

namespace {

using Kind = AlgebraExpr::Kind;

// select(false, _) evaluates to the empty instance for any input.
bool is_empty_instance_literal(const AlgebraExpr& e) {
    return e.kind == Kind::Select &&
           e.dn_condition.kind == DnCondition::Kind::False;
}

// project(false, message(...)) evaluates to {<>}: the constant is never
// empty, and the false projection collapses its narrative.
bool is_empty_narrative_literal(const AlgebraExpr& e) {
    return e.kind == Kind::Project &&
           e.msg_condition.kind == MsgCondition::Kind::False &&
           e.children[0].kind == Kind::Constant;
}

// One rule application at the root, children assumed already rewritten.
bool apply_rules(AlgebraExpr& e) {
    if (e.kind == Kind::Select) {
        if (e.dn_condition.kind == DnCondition::Kind::True) {
            e = std::move(e.children[0]);
            return true;
        }
        if (e.children[0].kind == Kind::Select) {
            AlgebraExpr inner = std::move(e.children[0]);
            e = AlgebraExpr::select(
                DnCondition::and_(std::move(e.dn_condition),
                                  std::move(inner.dn_condition)),
                std::move(inner.children[0]));
            return true;
        }
    }
    if (e.kind == Kind::Dedup && e.children[0].kind == Kind::Dedup) {
        e = std::move(e.children[0]);
        return true;
    }
    if (e.kind == Kind::Union && e.children[0] == e.children[1]) {
        e = std::move(e.children[0]);
        return true;
    }
    if (e.kind == Kind::Cross) {
        if (is_empty_narrative_literal(e.children[1])) {
            e = std::move(e.children[0]);
            return true;
        }
        if (is_empty_narrative_literal(e.children[0])) {
            e = std::move(e.children[1]);
            return true;
        }
        if (is_empty_instance_literal(e.children[0])) {
            e = std::move(e.children[0]);
            return true;
        }
        if (is_empty_instance_literal(e.children[1])) {
            e = std::move(e.children[1]);
            return true;
        }
    }
    return false;
}

AlgebraExpr rewrite_pass(AlgebraExpr e, bool& changed) {
    for (AlgebraExpr& child : e.children) {
        child = rewrite_pass(std::move(child), changed);
    }
    while (apply_rules(e)) changed = true;
    return e;
}

}  // namespace

AlgebraExpr rewrite(const AlgebraExpr& expr) {
    AlgebraExpr current = expr;
    std::size_t budget = node_count(expr);
    for (std::size_t pass = 0; pass < budget; ++pass) {
        bool changed = false;
        current = rewrite_pass(std::move(current), changed);
        if (!changed) break;
    }
    return current;
}

namespace {

void plan_lines(const AlgebraExpr& e, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    switch (e.kind) {
        case Kind::Constant:
        case Kind::Source: out += render(e); break;
        case Kind::Select: out += "select " + render(e.dn_condition); break;
        case Kind::Project: out += "project " + render(e.msg_condition); break;
        case Kind::Dedup: out += "dedup"; break;
        case Kind::GroupAgg:
        case Kind::GroupAggAcross: {
            out += e.kind == Kind::GroupAgg ? "groupagg [" : "groupaggacross [";
            bool first = true;
            for (const auto& spec : e.agg_specs) {
                if (!first) out += ", ";
                out += render(spec.condition) + ": " +
                       std::string(to_string(spec.aggregator));
                first = false;
            }
            out += "]";
            break;
        }
        case Kind::OrderBy: {
            out += "orderby [";
            bool first = true;
            for (const auto& spec : e.sort_specs) {
                if (!first) out += ", ";
                out += render(spec.condition) + ": " + render(spec.sorter);
                first = false;
            }
            out += "]";
            break;
        }
        case Kind::Concat: out += "concat"; break;
        case Kind::Cross: out += "cross"; break;
        case Kind::Union: out += "union"; break;
        case Kind::Intersect: out += "intersect"; break;
        case Kind::Difference: out += "diff"; break;
    }
    out += "\n";
    if (e.kind == Kind::Constant || e.kind == Kind::Source) return;
    for (const AlgebraExpr& child : e.children) {
        plan_lines(child, depth + 1, out);
    }
}

}  // namespace

std::string render_plan(const AlgebraExpr& expr) {
    std::string out;
    plan_lines(expr, 0, out);
    return out;
}

namespace {

// Indents every line of a rendered plan under its section heading.
void append_indented(const std::string& block, std::string& out) {
    std::size_t start = 0;
    while (start < block.size()) {
        std::size_t end = block.find('\n', start);
        if (end == std::string::npos) end = block.size() - 1;
        out += "  ";
        out.append(block, start, end - start + 1);
        start = end + 1;
    }
}

}  // namespace

std::string explain_plan(const AlgebraExpr& expr) {
    std::string out = "plan:\n";
    append_indented(render_plan(expr), out);
    out += "rewritten:\n";
    append_indented(render_plan(rewrite(expr)), out);
    return out;
}

}  // namespace dnml
