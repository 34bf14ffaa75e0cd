#include "dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <vector>

namespace stratprof {

namespace {

struct Token {
    enum class Kind { Ident, Int, Symbol, Newline, End };
    Kind kind = Kind::End;
    std::string text;
    long long value = 0;  // for Int
    int line = 1, col = 1;
};

struct Lexer {
    const std::string &src;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string &text) : src(text) {}

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, line, col); }

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        bool line_has_tokens = false;
        while (pos < src.size()) {
            char c = peek();
            if (c == '#') {
                while (pos < src.size() && peek() != '\n') advance();
                continue;
            }
            if (c == '\n') {
                if (line_has_tokens) out.push_back(Token{Token::Kind::Newline, "\n", 0, line, col});
                line_has_tokens = false;
                advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            line_has_tokens = true;
            Token tok;
            tok.line = line;
            tok.col = col;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                tok.kind = Token::Kind::Ident;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                    tok.text.push_back(peek());
                    advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = Token::Kind::Int;
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    tok.text.push_back(peek());
                    advance();
                }
                try {
                    tok.value = std::stoll(tok.text);
                } catch (const std::out_of_range &) {
                    throw ParseError("integer literal out of range", tok.line, tok.col);
                }
            } else if (std::string("(){}:,+-*=").find(c) != std::string::npos) {
                tok.kind = Token::Kind::Symbol;
                tok.text.push_back(c);
                advance();
            } else if (c == '>') {
                tok.kind = Token::Kind::Symbol;
                tok.text.push_back(c);
                advance();
                if (peek() == '=') {
                    tok.text.push_back('=');
                    advance();
                }
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            out.push_back(std::move(tok));
        }
        if (line_has_tokens) out.push_back(Token{Token::Kind::Newline, "\n", 0, line, col});
        out.push_back(Token{Token::Kind::End, "", 0, line, col});
        return out;
    }
};

const std::set<std::string> kReserved{"agents", "param", "def", "root", "node", "leaf", "l", "r", "n"};

struct Parser {
    std::vector<Token> tokens;
    std::size_t at = 0;
    ProfileSystem sys{};
    std::set<std::string> known_defs{};  // user names plus generated ones
    bool saw_agents = false, saw_root = false;

    [[noreturn]] void fail(const std::string &msg) const {
        const Token &t = tokens[at < tokens.size() ? at : tokens.size() - 1];
        throw ParseError(msg, t.line, t.col);
    }

    const Token &cur() const { return tokens[at]; }
    void next() { ++at; }

    bool is_symbol(const std::string &s) const {
        return cur().kind == Token::Kind::Symbol && cur().text == s;
    }
    bool is_ident(const std::string &s) const {
        return cur().kind == Token::Kind::Ident && cur().text == s;
    }

    void expect_symbol(const std::string &s) {
        if (!is_symbol(s)) fail("expected '" + s + "'");
        next();
    }

    std::string expect_ident(const std::string &what) {
        if (cur().kind != Token::Kind::Ident) fail("expected " + what);
        std::string name = cur().text;
        next();
        return name;
    }

    std::string expect_name(const std::string &what) {
        std::string name = expect_ident(what);
        if (kReserved.count(name)) fail("'" + name + "' is reserved");
        return name;
    }

    long long expect_int(bool allow_negative) {
        long long sign = 1;
        if (allow_negative && is_symbol("-")) {
            sign = -1;
            next();
        }
        if (cur().kind != Token::Kind::Int) fail("expected an integer");
        long long v = cur().value;
        next();
        return sign * v;
    }

    void expect_newline() {
        if (cur().kind == Token::Kind::End) return;
        if (cur().kind != Token::Kind::Newline) fail("expected end of line");
        next();
    }

    void skip_newlines() {
        while (cur().kind == Token::Kind::Newline) next();
    }

    // Pre-scan definition names so inline bodies can pick fresh ones.
    void collect_names() {
        bool at_line_start = true;
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            if (at_line_start && tokens[i].kind == Token::Kind::Ident && tokens[i].text == "def" &&
                tokens[i + 1].kind == Token::Kind::Ident)
                known_defs.insert(tokens[i + 1].text);
            at_line_start = tokens[i].kind == Token::Kind::Newline;
        }
    }

    std::string fresh_name(const std::string &base) {
        std::string name = base;
        while (!known_defs.insert(name).second) name += "_";
        return name;
    }

    AffineExpr parse_atom() {
        if (cur().kind == Token::Kind::Int) {
            AffineExpr e = AffineExpr::number(cur().value);
            next();
            return e;
        }
        if (cur().kind == Token::Kind::Ident) {
            std::string name = cur().text;
            next();
            if (name == "n") return AffineExpr::step();
            return AffineExpr::param(name);
        }
        fail("expected a number, a parameter or n");
    }

    AffineExpr parse_factor() {
        bool first_is_int = cur().kind == Token::Kind::Int;
        AffineExpr first = parse_atom();
        if (!is_symbol("*")) return first;
        next();
        bool second_is_int = cur().kind == Token::Kind::Int;
        AffineExpr second = parse_atom();
        if (!first_is_int && !second_is_int) fail("one side of '*' must be an integer literal");
        if (first_is_int) return second.scaled(first.constant);
        return first.scaled(second.constant);
    }

    AffineExpr parse_expr() {
        AffineExpr acc;
        bool negate = false;
        if (is_symbol("-")) {
            negate = true;
            next();
        }
        AffineExpr term = parse_factor();
        acc = negate ? -term : term;
        while (is_symbol("+") || is_symbol("-")) {
            bool minus = cur().text == "-";
            next();
            AffineExpr t = parse_factor();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    UtilityFn parse_leaf_payoff() {
        // caller consumed the 'leaf' keyword
        expect_symbol("{");
        UtilityFn payoff;
        for (;;) {
            std::string agent = expect_ident("an agent name");
            expect_symbol(":");
            if (payoff.count(agent)) fail("agent '" + agent + "' listed twice");
            payoff[agent] = parse_expr();
            if (is_symbol(",")) {
                next();
                continue;
            }
            break;
        }
        expect_symbol("}");
        return payoff;
    }

    Ref parse_child(const std::string &parent, char side) {
        if (is_symbol("(")) {
            next();
            std::string name = fresh_name(parent + "_" + side);
            parse_body(name);
            expect_symbol(")");
            return Ref{name, 0};
        }
        std::string target = expect_ident("a definition name or '('");
        expect_symbol("(");
        if (!is_ident("n")) fail("child step must be written n or n+K");
        next();
        long long shift = 0;
        if (is_symbol("+")) {
            next();
            shift = expect_int(false);
        } else if (is_symbol("-")) {
            fail("negative shift");
        }
        expect_symbol(")");
        return Ref{target, shift};
    }

    // Parses a BODY and records it under `name`, appending to sys.defs in
    // a stable order: the definition itself first, inline children after.
    void parse_body(const std::string &name) {
        if (is_ident("leaf")) {
            next();
            sys.defs.push_back({name, LeafDef{parse_leaf_payoff()}});
            return;
        }
        if (is_ident("node")) {
            next();
            std::string agent = expect_ident("an agent name");
            Choice choice;
            if (is_ident("l"))
                choice = Choice::Left;
            else if (is_ident("r"))
                choice = Choice::Right;
            else
                fail("expected choice 'l' or 'r'");
            next();
            std::size_t slot = sys.defs.size();
            sys.defs.push_back({name, ProfileDef{}});
            Ref left = parse_child(name, 'l');
            Ref right = parse_child(name, 'r');
            sys.defs[slot].second = NodeDef{agent, choice, left, right};
            return;
        }
        fail("expected 'leaf' or 'node'");
    }

    void parse_statement() {
        if (is_ident("agents")) {
            next();
            if (saw_agents) fail("agents are already declared");
            saw_agents = true;
            do {
                sys.agents.push_back(expect_name("an agent name"));
            } while (cur().kind == Token::Kind::Ident);
            expect_newline();
            return;
        }
        if (is_ident("param")) {
            next();
            std::string name = expect_name("a parameter name");
            if (!is_symbol(">=")) fail("expected '>='");
            next();
            long long bound = expect_int(true);
            sys.params.push_back({name, bound});
            expect_newline();
            return;
        }
        if (is_ident("def")) {
            next();
            std::string name = expect_name("a definition name");
            expect_symbol("(");
            if (!is_ident("n")) fail("definition step must be named n");
            next();
            expect_symbol(")");
            expect_symbol("=");
            parse_body(name);
            expect_newline();
            return;
        }
        if (is_ident("root")) {
            next();
            if (saw_root) fail("root is already declared");
            saw_root = true;
            sys.root_def = expect_ident("a definition name");
            expect_symbol("(");
            long long n0 = expect_int(true);
            if (n0 < 0) fail("root step must be nonnegative");
            sys.root_n = n0;
            expect_symbol(")");
            expect_newline();
            return;
        }
        fail("expected 'agents', 'param', 'def' or 'root'");
    }

    ProfileSystem run() {
        collect_names();
        skip_newlines();
        while (cur().kind != Token::Kind::End) {
            parse_statement();
            skip_newlines();
        }
        if (!saw_agents) fail("missing agents declaration");
        if (sys.defs.empty()) fail("no definitions");
        if (!saw_root) fail("missing root declaration");
        return std::move(sys);
    }
};

}  // namespace

ProfileSystem parse(const std::string &text) {
    Lexer lexer(text);
    Parser parser{lexer.run()};
    return parser.run();
}

ProfileSystem parse_validated(const std::string &text) {
    ProfileSystem sys = parse(text);
    auto diagnostics = validate(sys);
    if (!diagnostics.empty()) {
        const Diagnostic &d = diagnostics.front();
        throw ParseError(d.where + ": " + d.message + " [" + d.code + "]", 0, 0);
    }
    return sys;
}

namespace {

std::string child_text(const Ref &ref) {
    if (ref.shift == 0) return ref.target + "(n)";
    return ref.target + "(n+" + std::to_string(ref.shift) + ")";
}

}  // namespace

std::string print(const ProfileSystem &sys) {
    std::ostringstream out;
    out << "agents";
    for (const auto &a : sys.agents) out << " " << a;
    out << "\n";
    for (const auto &[p, bound] : sys.params) out << "param " << p << " >= " << bound << "\n";
    for (const auto &[name, def] : sys.defs) {
        out << "def " << name << "(n) = ";
        if (const auto *leaf = std::get_if<LeafDef>(&def)) {
            out << "leaf { ";
            bool first = true;
            for (const auto &agent : sys.agents) {
                auto it = leaf->payoff.find(agent);
                if (it == leaf->payoff.end()) continue;
                if (!first) out << ", ";
                first = false;
                out << agent << ": " << it->second.to_string();
            }
            out << " }";
        } else {
            const auto &node = std::get<NodeDef>(def);
            out << "node " << node.agent << " " << choice_letter(node.choice) << " "
                << child_text(node.left) << " " << child_text(node.right);
        }
        out << "\n";
    }
    out << "root " << sys.root_def << "(" << sys.root_n << ")\n";
    return out.str();
}

Payoff parse_padding(const std::string &text, const ParamValues &params) {
    Lexer lexer(text);
    Parser parser{lexer.run()};
    parser.skip_newlines();
    if (!parser.is_ident("leaf")) parser.fail("expected a leaf body");
    parser.next();
    UtilityFn payoff = parser.parse_leaf_payoff();
    parser.skip_newlines();
    if (parser.cur().kind != Token::Kind::End) parser.fail("expected end of file");
    Payoff out;
    for (const auto &[agent, expr] : payoff) out[agent] = expr.eval(0, params);
    return out;
}

}  // namespace stratprof
