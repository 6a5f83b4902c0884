#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "gaifman/formula.hpp"

namespace gaifman {

namespace {

struct Token {
    enum Kind { Ident, Int, Punct, End } kind;
    std::string text;
    int value = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("formula syntax error at position " + std::to_string(tok_.pos) +
                                 ": " + msg + " (got '" + tok_.text + "')");
    }

    std::set<std::string> all_identifiers() const {
        Lexer copy(text_);
        std::set<std::string> out;
        while (copy.peek().kind != Token::End) {
            if (copy.peek().kind == Token::Ident) out.insert(copy.peek().text);
            copy.advance();
        }
        return out;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_ = {Token::End, "<end>", 0, i_};
            return;
        }
        char c = text_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            std::string word = text_.substr(i_, j - i_);
            // 'dist<=' and 'dist>' lex as single tokens.
            if (word == "dist" && j < text_.size()) {
                if (text_.compare(j, 2, "<=") == 0) {
                    tok_ = {Token::Ident, "dist<=", 0, i_};
                    i_ = j + 2;
                    return;
                }
                if (text_[j] == '>') {
                    tok_ = {Token::Ident, "dist>", 0, i_};
                    i_ = j + 1;
                    return;
                }
            }
            tok_ = {Token::Ident, word, 0, i_};
            i_ = j;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            std::string num = text_.substr(i_, j - i_);
            tok_ = {Token::Int, num, std::stoi(num), i_};
            i_ = j;
            return;
        }
        for (const char* p : {"<->", "->", "!=", "<="}) {
            std::size_t len = std::char_traits<char>::length(p);
            if (text_.compare(i_, len, p) == 0) {
                tok_ = {Token::Punct, p, 0, i_};
                i_ += len;
                return;
            }
        }
        tok_ = {Token::Punct, std::string(1, c), 0, i_};
        ++i_;
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {
        used_names_ = lex_.all_identifiers();
    }

    Formula parse() {
        Formula f = parse_implies();
        if (lex_.peek().kind != Token::End) lex_.fail("trailing input");
        return f;
    }

private:
    bool at_punct(const std::string& p) const {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }
    bool at_ident(const std::string& w) const {
        return lex_.peek().kind == Token::Ident && lex_.peek().text == w;
    }
    void expect_punct(const std::string& p) {
        if (!at_punct(p)) lex_.fail("expected '" + p + "'");
        lex_.next();
    }
    int expect_int() {
        if (lex_.peek().kind != Token::Int) lex_.fail("expected integer");
        return lex_.next().value;
    }
    std::string expect_ident() {
        if (lex_.peek().kind != Token::Ident) lex_.fail("expected identifier");
        return lex_.next().text;
    }

    std::string resolve(const std::string& name) const {
        auto it = scope_.find(name);
        return (it != scope_.end() && !it->second.empty()) ? it->second.back() : name;
    }

    std::string bind(const std::string& name) {
        std::string actual = name;
        if (active_.count(name)) {  // shadowing: rename apart
            int i = 0;
            do {
                actual = name + "_" + std::to_string(i++);
            } while (used_names_.count(actual) || active_.count(actual));
        }
        used_names_.insert(actual);
        active_.insert(actual);
        scope_[name].push_back(actual);
        return actual;
    }

    void unbind(const std::string& name, const std::string& actual) {
        scope_[name].pop_back();
        active_.erase(actual);
    }

    Formula parse_implies() {
        Formula left = parse_or();
        if (at_punct("->")) {
            lex_.next();
            return f_implies(left, parse_implies());
        }
        if (at_punct("<->")) {
            lex_.next();
            Formula right = parse_implies();
            return f_and({f_implies(left, right), f_implies(right, left)});
        }
        return left;
    }

    Formula parse_or() {
        std::vector<Formula> parts{parse_and()};
        while (at_punct("|")) {
            lex_.next();
            parts.push_back(parse_and());
        }
        return parts.size() == 1 ? parts[0] : f_or(std::move(parts));
    }

    Formula parse_and() {
        std::vector<Formula> parts{parse_unary()};
        while (at_punct("&")) {
            lex_.next();
            parts.push_back(parse_unary());
        }
        return parts.size() == 1 ? parts[0] : f_and(std::move(parts));
    }

    Formula parse_unary() {
        if (at_punct("!")) {
            lex_.next();
            return f_not(parse_unary());
        }
        if (at_ident("exists") || at_ident("forall")) {
            bool ex = lex_.next().text == "exists";
            std::string name = expect_ident();
            std::vector<std::string> anchors;
            int radius = 0;
            bool guarded_q = false;
            if (at_ident("in")) {
                lex_.next();
                if (!at_ident("N")) lex_.fail("expected N[r](...) guard after 'in'");
                lex_.next();
                expect_punct("[");
                radius = expect_int();
                expect_punct("]");
                expect_punct("(");
                anchors.push_back(resolve(expect_ident()));
                while (at_punct(",")) {
                    lex_.next();
                    anchors.push_back(resolve(expect_ident()));
                }
                expect_punct(")");
                guarded_q = true;
            }
            std::string actual = bind(name);
            expect_punct(".");
            Formula body = parse_implies();
            unbind(name, actual);
            if (guarded_q)
                return ex ? f_guarded_exists(actual, std::move(anchors), radius, body)
                          : f_guarded_forall(actual, std::move(anchors), radius, body);
            return ex ? f_exists(actual, body) : f_forall(actual, body);
        }
        if (at_ident("setexists") || at_ident("setforall")) {
            bool ex = lex_.next().text == "setexists";
            std::string name = expect_ident();
            std::string actual = bind(name);
            expect_punct(".");
            Formula body = parse_implies();
            unbind(name, actual);
            return ex ? f_set_exists(actual, body) : f_set_forall(actual, body);
        }
        return parse_atom();
    }

    Formula parse_atom() {
        if (at_punct("(")) {
            lex_.next();
            Formula f = parse_implies();
            expect_punct(")");
            return f;
        }
        if (at_ident("true")) {
            lex_.next();
            return f_true();
        }
        if (at_ident("false")) {
            lex_.next();
            return f_false();
        }
        if (at_ident("dist<=") || at_ident("dist>")) {
            bool le = lex_.next().text == "dist<=";
            expect_punct("(");
            std::string x = resolve(expect_ident());
            expect_punct(",");
            std::string y = resolve(expect_ident());
            expect_punct(",");
            int r = expect_int();
            expect_punct(")");
            return le ? f_dist_le(x, y, r) : f_dist_gt(x, y, r);
        }
        if (lex_.peek().kind != Token::Ident) lex_.fail("expected atom");
        std::string name = lex_.next().text;
        if (at_punct("(")) {
            // Relation atom.
            lex_.next();
            std::vector<std::string> args;
            if (!at_punct(")")) {
                args.push_back(resolve(expect_ident()));
                while (at_punct(",")) {
                    lex_.next();
                    args.push_back(resolve(expect_ident()));
                }
            }
            expect_punct(")");
            int rel = sig_.index_of(name);
            if (rel < 0) lex_.fail("unknown relation '" + name + "'");
            if (static_cast<int>(args.size()) != sig_.arity(rel))
                lex_.fail("relation " + name + " expects " + std::to_string(sig_.arity(rel)) +
                          " arguments, got " + std::to_string(args.size()));
            return f_atom(rel, name, std::move(args));
        }
        std::string var = resolve(name);
        if (at_punct("=")) {
            lex_.next();
            return f_equal(var, resolve(expect_ident()));
        }
        if (at_punct("!=")) {
            lex_.next();
            return f_not(f_equal(var, resolve(expect_ident())));
        }
        if (at_ident("in")) {
            lex_.next();
            return f_in_set(var, resolve(expect_ident()));
        }
        lex_.fail("expected '=', '!=', 'in' or a relation atom");
    }

    Lexer lex_;
    const Signature& sig_;
    std::map<std::string, std::vector<std::string>> scope_;
    std::set<std::string> active_;
    std::set<std::string> used_names_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
    return Parser(text, sig).parse();
}

}  // namespace gaifman
