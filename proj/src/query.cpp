#include "dnml/query.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "dnml/macros.hpp"

namespace dnml {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line(line),
      column(column) {}

namespace {

enum class Tok {
    Ident,
    String,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Colon,
    End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;   // identifier spelling or unescaped string contents
    std::size_t line = 1;
    std::size_t column = 1;
};

const char* tok_name(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::String: return "string";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Colon: return "':'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_whitespace();
        Token token;
        token.line = line_;
        token.column = column_;
        if (at_end()) {
            token.kind = Tok::End;
            return token;
        }
        char c = peek();
        switch (c) {
            case '(': advance(); token.kind = Tok::LParen; return token;
            case ')': advance(); token.kind = Tok::RParen; return token;
            case '[': advance(); token.kind = Tok::LBracket; return token;
            case ']': advance(); token.kind = Tok::RBracket; return token;
            case ',': advance(); token.kind = Tok::Comma; return token;
            case ';': advance(); token.kind = Tok::Semicolon; return token;
            case ':': advance(); token.kind = Tok::Colon; return token;
            case '"': return lex_string(token);
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            token.kind = Tok::Ident;
            while (!at_end() &&
                   (std::isalnum(static_cast<unsigned char>(peek())) ||
                    peek() == '_')) {
                token.text.push_back(peek());
                advance();
            }
            return token;
        }
        throw ParseError(line_, column_,
                         std::string("lexical error: unexpected character '") +
                             c + "'");
    }

private:
    bool at_end() const { return offset_ >= text_.size(); }
    char peek() const { return text_[offset_]; }

    void advance() {
        if (text_[offset_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++offset_;
    }

    void skip_whitespace() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            advance();
    }

    Token lex_string(Token token) {
        token.kind = Tok::String;
        advance();  // opening quote
        while (true) {
            if (at_end())
                throw ParseError(token.line, token.column,
                                 "lexical error: unterminated string");
            char c = peek();
            advance();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end())
                    throw ParseError(token.line, token.column,
                                     "lexical error: unterminated string");
                char escaped = peek();
                advance();
                if (escaped != '"' && escaped != '\\')
                    throw ParseError(
                        line_, column_,
                        std::string("lexical error: invalid escape '\\") +
                            escaped + "' (only \\\" and \\\\ are recognized)");
                token.text.push_back(escaped);
            } else {
                token.text.push_back(c);
            }
        }
        return token;
    }

    std::string_view text_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {
        current_ = lexer_.next();
    }

    AlgebraExpr parse_query() {
        AlgebraExpr expr = parse_expr();
        if (current_.kind == Tok::Semicolon) consume();
        if (current_.kind != Tok::End)
            fail("expected end of input after the query");
        return expr;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(current_.line, current_.column,
                         "syntax error: " + message + ", found " +
                             describe(current_));
    }

    static std::string describe(const Token& token) {
        switch (token.kind) {
            case Tok::Ident: return "'" + token.text + "'";
            case Tok::String: return "string \"" + token.text + "\"";
            default: return tok_name(token.kind);
        }
    }

    Token consume() {
        Token taken = std::move(current_);
        current_ = lexer_.next();
        return taken;
    }

    void expect(Tok kind) {
        if (current_.kind != kind)
            fail(std::string("expected ") + tok_name(kind));
        consume();
    }

    bool at_keyword(const char* keyword) const {
        return current_.kind == Tok::Ident && lowercase(current_.text) == keyword;
    }

    std::string expect_string(const char* what) {
        if (current_.kind != Tok::String)
            fail(std::string("expected ") + what + " (a quoted string)");
        return consume().text;
    }

    std::vector<std::string> parse_strlist() {
        std::vector<std::string> items;
        if (current_.kind != Tok::String) return items;  // empty list
        items.push_back(consume().text);
        while (current_.kind == Tok::Comma) {
            consume();
            items.push_back(expect_string("string"));
        }
        return items;
    }

    // A comma-separated string list that is itself followed by a comma and
    // an expression, as in join/compare: strings are taken while the element
    // after a comma is another string.
    std::vector<std::string> parse_leading_strlist() {
        std::vector<std::string> items;
        items.push_back(expect_string("character"));
        while (current_.kind == Tok::Comma) {
            Token comma = consume();
            if (current_.kind == Tok::String) {
                items.push_back(consume().text);
            } else {
                pending_comma_ = comma;  // the comma before the expression
                break;
            }
        }
        if (!pending_comma_)
            fail("expected ',' and an expression after the character list");
        return items;
    }

    void expect_pending_comma_consumed() { pending_comma_.reset(); }

    RelationKind parse_rel() {
        if (current_.kind != Tok::Ident)
            fail("expected a relation (one of spec, spatial, temporal, sim)");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "spec") return RelationKind::Specialization;
        if (word == "spatial") return RelationKind::Spatial;
        if (word == "temporal") return RelationKind::Temporal;
        if (word == "sim") return RelationKind::Similarity;
        throw ParseError(token.line, token.column,
                         "unknown relation '" + token.text +
                             "' (expected one of spec, spatial, temporal, sim)");
    }

    AggregatorKind parse_aggregator() {
        if (current_.kind != Tok::Ident)
            fail("expected an aggregator (one of unionMerge, check, drop, first)");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "unionmerge") return AggregatorKind::UnionMerge;
        if (word == "check") return AggregatorKind::Check;
        if (word == "drop") return AggregatorKind::Drop;
        if (word == "first") return AggregatorKind::First;
        throw ParseError(token.line, token.column,
                         "unknown aggregator '" + token.text +
                             "' (expected one of unionMerge, check, drop, first)");
    }

    Sorter parse_sorter() {
        if (current_.kind != Tok::Ident)
            fail("expected a sorter (one of byCharLex, byMeasureLex, "
                 "byPosition, reversed)");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "bycharlex") return Sorter::by_char_lex();
        if (word == "bymeasurelex") return Sorter::by_measure_lex();
        if (word == "byposition") return Sorter::by_position();
        if (word == "reversed") {
            expect(Tok::LParen);
            Sorter inner = parse_sorter();
            expect(Tok::RParen);
            return Sorter::reversed(std::move(inner));
        }
        throw ParseError(token.line, token.column,
                         "unknown sorter '" + token.text +
                             "' (expected one of byCharLex, byMeasureLex, "
                             "byPosition, reversed)");
    }

    MsgCondition parse_msgcond() {
        if (current_.kind != Tok::Ident)
            fail("expected a message condition (one of hasChar, hasMeasure, "
                 "hasPredicate, hasCharRel, hasCharRelInv, isEmpty, and, or, "
                 "not, true, false)");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "true") return MsgCondition::constant(true);
        if (word == "false") return MsgCondition::constant(false);
        if (word == "isempty") return MsgCondition::is_empty();
        if (word == "haschar") {
            expect(Tok::LParen);
            auto label = expect_string("character");
            expect(Tok::RParen);
            return MsgCondition::has_char(std::move(label));
        }
        if (word == "hasmeasure") {
            expect(Tok::LParen);
            auto label = expect_string("measure");
            expect(Tok::RParen);
            return MsgCondition::has_measure(std::move(label));
        }
        if (word == "haspredicate") {
            expect(Tok::LParen);
            auto label = expect_string("predicate");
            expect(Tok::RParen);
            return MsgCondition::has_predicate(std::move(label));
        }
        if (word == "hascharrel" || word == "hascharrelinv") {
            expect(Tok::LParen);
            RelationKind rel = parse_rel();
            expect(Tok::Comma);
            auto label = expect_string("character");
            expect(Tok::RParen);
            return MsgCondition::has_char_rel(rel, std::move(label),
                                              word == "hascharrelinv");
        }
        if (word == "and" || word == "or") {
            expect(Tok::LParen);
            MsgCondition lhs = parse_msgcond();
            expect(Tok::Comma);
            MsgCondition rhs = parse_msgcond();
            expect(Tok::RParen);
            return word == "and"
                       ? MsgCondition::and_(std::move(lhs), std::move(rhs))
                       : MsgCondition::or_(std::move(lhs), std::move(rhs));
        }
        if (word == "not") {
            expect(Tok::LParen);
            MsgCondition inner = parse_msgcond();
            expect(Tok::RParen);
            return MsgCondition::not_(std::move(inner));
        }
        throw ParseError(token.line, token.column,
                         "unknown message condition '" + token.text + "'");
    }

    DnCondition parse_dncond() {
        if (current_.kind != Tok::Ident)
            fail("expected a narrative condition (one of exists, forall, "
                 "msgrel, and, or, not, true, false)");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "true") return DnCondition::constant(true);
        if (word == "false") return DnCondition::constant(false);
        if (word == "exists" || word == "forall") {
            expect(Tok::LParen);
            MsgCondition inner = parse_msgcond();
            expect(Tok::RParen);
            return word == "exists" ? DnCondition::exists(std::move(inner))
                                    : DnCondition::for_all(std::move(inner));
        }
        if (word == "msgrel") {
            expect(Tok::LParen);
            RelationKind rel = parse_rel();
            expect(Tok::RParen);
            return DnCondition::msg_pair_rel(rel);
        }
        if (word == "and" || word == "or") {
            expect(Tok::LParen);
            DnCondition lhs = parse_dncond();
            expect(Tok::Comma);
            DnCondition rhs = parse_dncond();
            expect(Tok::RParen);
            return word == "and"
                       ? DnCondition::and_(std::move(lhs), std::move(rhs))
                       : DnCondition::or_(std::move(lhs), std::move(rhs));
        }
        if (word == "not") {
            expect(Tok::LParen);
            DnCondition inner = parse_dncond();
            expect(Tok::RParen);
            return DnCondition::not_(std::move(inner));
        }
        throw ParseError(token.line, token.column,
                         "unknown narrative condition '" + token.text + "'");
    }

    std::vector<AggSpec> parse_specs() {
        expect(Tok::LBracket);
        std::vector<AggSpec> specs;
        while (true) {
            MsgCondition condition = parse_msgcond();
            expect(Tok::Colon);
            AggregatorKind aggregator = parse_aggregator();
            specs.push_back({std::move(condition), aggregator});
            if (current_.kind != Tok::Comma) break;
            consume();
        }
        expect(Tok::RBracket);
        return specs;
    }

    std::vector<SortSpec> parse_sortspecs() {
        expect(Tok::LBracket);
        std::vector<SortSpec> specs;
        while (true) {
            MsgCondition condition = parse_msgcond();
            expect(Tok::Colon);
            Sorter sorter = parse_sorter();
            specs.push_back({std::move(condition), std::move(sorter)});
            if (current_.kind != Tok::Comma) break;
            consume();
        }
        expect(Tok::RBracket);
        return specs;
    }

    AlgebraExpr parse_unary(AlgebraExpr (*make)(AlgebraExpr)) {
        expect(Tok::LParen);
        AlgebraExpr input = parse_expr();
        expect(Tok::RParen);
        return make(std::move(input));
    }

    AlgebraExpr parse_binary(AlgebraExpr (*make)(AlgebraExpr, AlgebraExpr)) {
        expect(Tok::LParen);
        AlgebraExpr lhs = parse_expr();
        expect(Tok::Comma);
        AlgebraExpr rhs = parse_expr();
        expect(Tok::RParen);
        return make(std::move(lhs), std::move(rhs));
    }

    AlgebraExpr parse_expr() {
        if (current_.kind != Tok::Ident) fail("expected an expression");
        Token token = consume();
        std::string word = lowercase(token.text);
        if (word == "select") {
            expect(Tok::LParen);
            DnCondition condition = parse_dncond();
            expect(Tok::Comma);
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            return AlgebraExpr::select(std::move(condition), std::move(input));
        }
        if (word == "project") {
            expect(Tok::LParen);
            MsgCondition condition = parse_msgcond();
            expect(Tok::Comma);
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            return AlgebraExpr::project(std::move(condition), std::move(input));
        }
        if (word == "dedup") return parse_unary(&AlgebraExpr::dedup);
        if (word == "concat") return parse_unary(&AlgebraExpr::concat);
        if (word == "groupagg" || word == "groupaggacross") {
            expect(Tok::LParen);
            std::vector<AggSpec> specs = parse_specs();
            expect(Tok::Comma);
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            return word == "groupagg"
                       ? AlgebraExpr::group_agg(std::move(specs), std::move(input))
                       : AlgebraExpr::group_agg_across(std::move(specs),
                                                       std::move(input));
        }
        if (word == "orderby") {
            expect(Tok::LParen);
            std::vector<SortSpec> specs = parse_sortspecs();
            expect(Tok::Comma);
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            return AlgebraExpr::order_by(std::move(specs), std::move(input));
        }
        if (word == "cross") return parse_binary(&AlgebraExpr::cross);
        if (word == "union") return parse_binary(&AlgebraExpr::union_);
        if (word == "intersect") return parse_binary(&AlgebraExpr::intersect);
        if (word == "diff") return parse_binary(&AlgebraExpr::difference);
        if (word == "message") {
            expect(Tok::LParen);
            auto characters = parse_strlist();
            expect(Tok::Semicolon);
            auto measures = parse_strlist();
            expect(Tok::Semicolon);
            auto predicate = expect_string("predicate");
            expect(Tok::RParen);
            try {
                return AlgebraExpr::make_constant(Message(
                    std::move(characters), std::move(measures),
                    std::move(predicate)));
            } catch (const Error& e) {
                throw ParseError(token.line, token.column, e.what());
            }
        }
        if (word == "join") {
            expect(Tok::LParen);
            auto shared = parse_leading_strlist();
            expect_pending_comma_consumed();
            AlgebraExpr lhs = parse_expr();
            expect(Tok::Comma);
            AlgebraExpr rhs = parse_expr();
            expect(Tok::RParen);
            return expand_join(std::move(shared), std::move(lhs),
                               std::move(rhs));
        }
        if (word == "compare") {
            expect(Tok::LParen);
            auto characters = parse_leading_strlist();
            expect_pending_comma_consumed();
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            return expand_compare(std::move(characters), std::move(input));
        }
        if (word == "rollup" || word == "drilldown") {
            expect(Tok::LParen);
            auto character = expect_string("character");
            expect(Tok::Comma);
            AlgebraExpr input = parse_expr();
            expect(Tok::RParen);
            try {
                return word == "rollup"
                           ? expand_rollup(std::move(character), std::move(input))
                           : expand_drilldown(std::move(character),
                                              std::move(input));
            } catch (const Error& e) {
                throw ParseError(token.line, token.column, e.what());
            }
        }
        // Any other identifier is a source reference; its case matters.
        return AlgebraExpr::make_source(token.text);
    }

    Lexer lexer_;
    Token current_;
    std::optional<Token> pending_comma_;
};

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string render_strlist(const std::set<std::string>& items) {
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out += ", ";
        out += quoted(item);
        first = false;
    }
    return out;
}

std::string_view rel_keyword(RelationKind rel) {
    switch (rel) {
        case RelationKind::Specialization: return "spec";
        case RelationKind::Spatial: return "spatial";
        case RelationKind::Temporal: return "temporal";
        case RelationKind::Similarity: return "sim";
    }
    return "?";
}

}  // namespace

std::string render(const MsgCondition& condition) {
    using Kind = MsgCondition::Kind;
    switch (condition.kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::IsEmpty: return "isEmpty";
        case Kind::HasChar: return "hasChar(" + quoted(condition.label) + ")";
        case Kind::HasMeasure:
            return "hasMeasure(" + quoted(condition.label) + ")";
        case Kind::HasPredicate:
            return "hasPredicate(" + quoted(condition.label) + ")";
        case Kind::HasCharRel:
            return std::string(condition.rel_inverted ? "hasCharRelInv("
                                                      : "hasCharRel(") +
                   std::string(rel_keyword(condition.rel)) + ", " +
                   quoted(condition.label) + ")";
        case Kind::And:
            return "and(" + render(condition.children[0]) + ", " +
                   render(condition.children[1]) + ")";
        case Kind::Or:
            return "or(" + render(condition.children[0]) + ", " +
                   render(condition.children[1]) + ")";
        case Kind::Not: return "not(" + render(condition.children[0]) + ")";
    }
    return "?";
}

std::string render(const DnCondition& condition) {
    using Kind = DnCondition::Kind;
    switch (condition.kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Exists: return "exists(" + render(condition.msg[0]) + ")";
        case Kind::ForAll: return "forall(" + render(condition.msg[0]) + ")";
        case Kind::MsgPairRel:
            return "msgrel(" + std::string(rel_keyword(condition.rel)) + ")";
        case Kind::And:
            return "and(" + render(condition.children[0]) + ", " +
                   render(condition.children[1]) + ")";
        case Kind::Or:
            return "or(" + render(condition.children[0]) + ", " +
                   render(condition.children[1]) + ")";
        case Kind::Not: return "not(" + render(condition.children[0]) + ")";
    }
    return "?";
}

std::string render(const Sorter& sorter) {
    using Kind = Sorter::Kind;
    switch (sorter.kind) {
        case Kind::ByCharLex: return "byCharLex";
        case Kind::ByMeasureLex: return "byMeasureLex";
        case Kind::ByPosition: return "byPosition";
        case Kind::Reversed: return "reversed(" + render(sorter.inner[0]) + ")";
    }
    return "?";
}

namespace {

std::string render_agg_specs(const std::vector<AggSpec>& specs) {
    std::string out = "[";
    bool first = true;
    for (const auto& spec : specs) {
        if (!first) out += ", ";
        out += render(spec.condition) + ": " +
               std::string(to_string(spec.aggregator));
        first = false;
    }
    return out + "]";
}

std::string render_sort_specs(const std::vector<SortSpec>& specs) {
    std::string out = "[";
    bool first = true;
    for (const auto& spec : specs) {
        if (!first) out += ", ";
        out += render(spec.condition) + ": " + render(spec.sorter);
        first = false;
    }
    return out + "]";
}

}  // namespace

std::string render(const AlgebraExpr& expr) {
    using Kind = AlgebraExpr::Kind;
    switch (expr.kind) {
        case Kind::Constant:
            return "message(" + render_strlist(expr.constant.characters()) +
                   "; " + render_strlist(expr.constant.measures()) + "; " +
                   quoted(expr.constant.predicate()) + ")";
        case Kind::Source: return expr.source;
        case Kind::Select:
            return "select(" + render(expr.dn_condition) + ", " +
                   render(expr.children[0]) + ")";
        case Kind::Project:
            return "project(" + render(expr.msg_condition) + ", " +
                   render(expr.children[0]) + ")";
        case Kind::Dedup: return "dedup(" + render(expr.children[0]) + ")";
        case Kind::GroupAgg:
            return "groupagg(" + render_agg_specs(expr.agg_specs) + ", " +
                   render(expr.children[0]) + ")";
        case Kind::GroupAggAcross:
            return "groupaggacross(" + render_agg_specs(expr.agg_specs) + ", " +
                   render(expr.children[0]) + ")";
        case Kind::OrderBy:
            return "orderby(" + render_sort_specs(expr.sort_specs) + ", " +
                   render(expr.children[0]) + ")";
        case Kind::Concat: return "concat(" + render(expr.children[0]) + ")";
        case Kind::Cross:
            return "cross(" + render(expr.children[0]) + ", " +
                   render(expr.children[1]) + ")";
        case Kind::Union:
            return "union(" + render(expr.children[0]) + ", " +
                   render(expr.children[1]) + ")";
        case Kind::Intersect:
            return "intersect(" + render(expr.children[0]) + ", " +
                   render(expr.children[1]) + ")";
        case Kind::Difference:
            return "diff(" + render(expr.children[0]) + ", " +
                   render(expr.children[1]) + ")";
    }
    return "?";
}

AlgebraExpr parse_query(std::string_view text) {
    Parser parser(text);
    return parser.parse_query();
}

}  // namespace dnml
