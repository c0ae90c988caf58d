#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ultras/errors.hpp"
#include "ultras/model.hpp"

namespace ultras {

namespace {

enum class Tok {
    ident,    // lowercase-led name: action or keyword
    uident,   // capitalized name: constant
    number,   // integer or decimal literal
    dot,
    plus,
    equals,
    comma,
    lparen,
    rparen,
    lsync,    // |[
    rsync,    // ]|
    slash,
    newline,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

const char* describe(Tok k) {
    switch (k) {
        case Tok::ident: return "name";
        case Tok::uident: return "constant";
        case Tok::number: return "number";
        case Tok::dot: return "'.'";
        case Tok::plus: return "'+'";
        case Tok::equals: return "'='";
        case Tok::comma: return "','";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::lsync: return "'|['";
        case Tok::rsync: return "']|'";
        case Tok::slash: return "'/'";
        case Tok::newline: return "end of line";
        case Tok::end: return "end of input";
    }
    return "token";
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Tok k, std::string text, std::size_t l, std::size_t c) {
        out.push_back(Token{k, std::move(text), l, c});
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            push(Tok::newline, "\n", line, col);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                ++i;
                ++col;
            }
            continue;
        }
        std::size_t l = line, sc = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && is_name_char(src[j])) ++j;
            std::string text(src.substr(i, j - i));
            col += j - i;
            i = j;
            push(std::isupper(static_cast<unsigned char>(c)) ? Tok::uident : Tok::ident,
                 std::move(text), l, sc);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j + 1 < src.size() && src[j] == '.' &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            std::string text(src.substr(i, j - i));
            col += j - i;
            i = j;
            push(Tok::number, std::move(text), l, sc);
            continue;
        }
        switch (c) {
            case '.': push(Tok::dot, ".", l, sc); break;
            case '+': push(Tok::plus, "+", l, sc); break;
            case '=': push(Tok::equals, "=", l, sc); break;
            case ',': push(Tok::comma, ",", l, sc); break;
            case '(': push(Tok::lparen, "(", l, sc); break;
            case ')': push(Tok::rparen, ")", l, sc); break;
            case '/': push(Tok::slash, "/", l, sc); break;
            case '|':
                if (i + 1 < src.size() && src[i + 1] == '[') {
                    push(Tok::lsync, "|[", l, sc);
                    ++i;
                    ++col;
                } else {
                    throw ParseError("stray '|' (synchronization is written |[a,b]|)", l, sc);
                }
                break;
            case ']':
                if (i + 1 < src.size() && src[i + 1] == '|') {
                    push(Tok::rsync, "]|", l, sc);
                    ++i;
                    ++col;
                } else {
                    throw ParseError("stray ']' (synchronization is written |[a,b]|)", l, sc);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", l, sc);
        }
        ++i;
        ++col;
    }
    push(Tok::end, "", line, col);
    return out;
}

bool is_reserved(std::string_view word) {
    return word == "stop" || word == "calculus" || word == "const" || word == "init";
}

}  // namespace

/// Recursive-descent parser for model files and standalone terms. Constant
/// references are collected during the walk and validated once everything is
/// defined, so definitions may refer to each other in any order.
class Parser {
public:
    static DefinitionEnv model(std::string_view text, ModelRole role) {
        Parser p(text);
        p.skip_newlines();
        const Token& kw = p.peek();
        if (!(kw.kind == Tok::ident && kw.text == "calculus"))
            p.fail(kw, "expected a 'calculus csp|pcsp|pepa' header");
        p.advance();
        const Token& which = p.peek();
        Calculus calc;
        if (which.kind == Tok::ident && which.text == "csp") calc = Calculus::csp;
        else if (which.kind == Tok::ident && which.text == "pcsp") calc = Calculus::pcsp;
        else if (which.kind == Tok::ident && which.text == "pepa") calc = Calculus::pepa;
        else p.fail(which, "unknown calculus '" + which.text + "' (expected csp, pcsp or pepa)");
        p.advance();
        p.end_of_line();

        DefinitionEnv env(calc, role);
        p.env_ = &env;
        bool have_init = false;
        while (true) {
            p.skip_newlines();
            if (p.at(Tok::end)) break;
            const Token& head = p.peek();
            if (head.kind == Tok::ident && head.text == "const") {
                p.advance();
                const Token name = p.expect(Tok::uident, "a capitalized constant name");
                if (name.text == omega_name)
                    p.fail(name, "OMEGA names the observer success state and cannot be defined");
                if (env.definition_index_.count(name.text))
                    p.fail(name, "duplicate definition of '" + name.text + "'");
                p.expect(Tok::equals, "'='");
                p.in_definition_ = true;
                TermPtr body = p.parse_choice();
                p.in_definition_ = false;
                p.end_of_line();
                env.definition_index_.emplace(name.text, env.definitions_.size());
                env.definitions_.push_back({name.text, body});
            } else if (head.kind == Tok::ident && head.text == "init") {
                if (have_init) p.fail(head, "duplicate init line");
                p.advance();
                env.init_ = p.parse_choice();
                p.end_of_line();
                have_init = true;
            } else {
                p.fail(head, "expected 'const' or 'init'");
            }
        }
        if (!have_init) p.fail(p.peek(), "missing init line");
        p.validate_refs();
        return env;
    }

    static TermPtr standalone(DefinitionEnv& env, std::string_view text) {
        Parser p(text);
        p.env_ = &env;
        p.skip_newlines();
        TermPtr t = p.parse_choice();
        p.skip_newlines();
        if (!p.at(Tok::end)) p.fail(p.peek(), "unexpected trailing input after term");
        p.validate_refs();
        return t;
    }

private:
    struct ConstRef {
        std::string name;
        std::size_t line;
        std::size_t col;
        bool guarded;
        bool in_definition;
    };

    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    Calculus calc() const { return env_->calculus(); }
    TermPool& pool() const { return env_->pool(); }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;
        return tokens_[i];
    }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (t.kind != Tok::end) ++pos_;
        return t;
    }

    bool at(Tok k) const { return peek().kind == k; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(msg, t.line, t.col);
    }

    Token expect(Tok k, const std::string& what) {
        if (!at(k))
            fail(peek(), "expected " + what + " but found " + describe(peek().kind));
        return advance();
    }

    void skip_newlines() {
        while (at(Tok::newline)) advance();
    }

    void end_of_line() {
        if (at(Tok::end)) return;
        expect(Tok::newline, "end of line");
    }

    Rational number(const char* what) {
        const Token first = expect(Tok::number, what);
        std::string text = first.text;
        if (at(Tok::slash)) {
            advance();
            const Token den = expect(Tok::number, "a denominator");
            text += "/" + den.text;
        }
        auto r = parse_rational(text);
        if (!r) fail(first, "invalid number '" + text + "'");
        return *r;
    }

    std::string sync_action() {
        const Token t = expect(Tok::ident, "an action name");
        if (is_reserved(t.text)) fail(t, "'" + t.text + "' is a reserved word");
        env_->note_action(t.text);
        return t.text;
    }

    TermPtr parse_choice() {
        TermPtr acc = parse_par();
        while (at(Tok::plus)) {
            const Token op = advance();
            if (calc() == Calculus::pcsp) {
                if (!at(Tok::lparen))
                    fail(op, "pcsp choice carries a probability: P +(p) Q");
                advance();
                const Token num_tok = peek();
                Rational p = number("a probability");
                if (p > 1) fail(num_tok, "probability out of [0,1]: " + to_string(p));
                expect(Tok::rparen, "')'");
                acc = pool().pchoice(p, acc, parse_par());
            } else {
                if (at(Tok::lparen) && peek(1).kind == Tok::number)
                    fail(op, "probabilistic choice +(p) is only available in pcsp");
                acc = pool().choice(acc, parse_par());
            }
        }
        return acc;
    }

    TermPtr parse_par() {
        TermPtr acc = parse_prefix();
        while (at(Tok::lsync)) {
            const Token op = advance();
            std::vector<std::string> sync;
            if (at(Tok::ident)) {
                sync.push_back(sync_action());
                while (at(Tok::comma)) {
                    advance();
                    sync.push_back(sync_action());
                }
            }
            expect(Tok::rsync, "']|'");
            if (calc() == Calculus::pcsp) {
                if (!at(Tok::lparen))
                    fail(op, "pcsp parallel carries a probability: P |[L]|(p) Q");
                advance();
                const Token num_tok = peek();
                Rational p = number("a probability");
                if (p > 1) fail(num_tok, "probability out of [0,1]: " + to_string(p));
                expect(Tok::rparen, "')'");
                acc = pool().ppar(std::move(sync), p, acc, parse_prefix());
            } else {
                if (at(Tok::lparen) && peek(1).kind == Tok::number)
                    fail(op, "probabilistic parallel |[L]|(p) is only available in pcsp");
                acc = pool().par(std::move(sync), acc, parse_prefix());
            }
        }
        return acc;
    }

    TermPtr parse_prefix() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::ident: {
                if (t.text == "stop") {
                    advance();
                    return pool().stop();
                }
                if (is_reserved(t.text)) fail(t, "'" + t.text + "' is a reserved word");
                if (calc() == Calculus::pepa)
                    fail(t, "pepa actions carry a rate: (" + t.text + ",r).P");
                const Token action = advance();
                env_->note_action(action.text);
                expect(Tok::dot, "'.'");
                ++guard_depth_;
                TermPtr cont = parse_prefix();
                --guard_depth_;
                return pool().prefix(action.text, cont);
            }
            case Tok::uident: {
                const Token name = advance();
                refs_.push_back({name.text, name.line, name.col, guard_depth_ > 0, in_definition_});
                return pool().constant(name.text);
            }
            case Tok::lparen: {
                if (peek(1).kind == Tok::ident && peek(2).kind == Tok::comma) {
                    if (calc() != Calculus::pepa)
                        fail(t, "rated prefix (a,r).P is only available in pepa");
                    advance();
                    const Token action = advance();
                    if (is_reserved(action.text)) fail(action, "'" + action.text + "' is a reserved word");
                    advance();
                    const Token num_tok = peek();
                    Rational r = number("a rate");
                    if (r <= 0) fail(num_tok, "rate must be positive");
                    expect(Tok::rparen, "')'");
                    expect(Tok::dot, "'.'");
                    env_->note_action(action.text);
                    ++guard_depth_;
                    TermPtr cont = parse_prefix();
                    --guard_depth_;
                    return pool().rated_prefix(action.text, std::move(r), cont);
                }
                advance();
                TermPtr inner = parse_choice();
                expect(Tok::rparen, "')'");
                return inner;
            }
            default:
                fail(t, "expected a process term but found " + std::string(describe(t.kind)));
        }
    }

    void validate_refs() const {
        for (const ConstRef& ref : refs_) {
            if (ref.name == omega_name) {
                if (env_->role() != ModelRole::observer)
                    throw ParseError("the success constant OMEGA may only appear in observer files",
                                     ref.line, ref.col);
            } else if (env_->lookup(ref.name) == nullptr) {
                throw ParseError("undefined constant '" + ref.name + "'", ref.line, ref.col);
            }
            if (ref.in_definition && !ref.guarded)
                throw ParseError("unguarded reference to constant '" + ref.name +
                                     "' (every constant in a definition body must appear under a prefix)",
                                 ref.line, ref.col);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    DefinitionEnv* env_ = nullptr;
    int guard_depth_ = 0;
    bool in_definition_ = false;
    std::vector<ConstRef> refs_;
};

DefinitionEnv parse_model(std::string_view text, ModelRole role) {
    return Parser::model(text, role);
}

TermPtr parse_term(DefinitionEnv& env, std::string_view text) {
    return Parser::standalone(env, text);
}

}  // namespace ultras
