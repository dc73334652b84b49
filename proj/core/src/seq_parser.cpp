#include "nmrqc/seq_parser.hpp"

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

namespace nmrqc {

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                         message),
      line_(line),
      col_(col) {}

namespace {

enum class Tok {
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    std::size_t line = 1;
    std::size_t col = 1;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t n = text.size();

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < n) {
        const char c = text[i];
        if (c == '#') {
            while (i < n && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            t.kind = Tok::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) {
                ++j;
            }
            if (j < n && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (text[k] == '+' || text[k] == '-')) {
                    ++k;
                }
                if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    j = k;
                    while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
                        ++j;
                    }
                }
            }
            t.kind = Tok::Number;
            t.text = text.substr(i, j - i);
            char* end = nullptr;
            t.number = std::strtod(t.text.c_str(), &end);
            if (end != t.text.c_str() + t.text.size()) {
                throw ParseError(t.line, t.col, "malformed number '" + t.text + "'");
            }
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < n && text[j] != '"' && text[j] != '\n') {
                ++j;
            }
            if (j >= n || text[j] != '"') {
                throw ParseError(line, col, "unterminated string");
            }
            t.kind = Tok::String;
            t.text = text.substr(i + 1, j - i - 1);
            advance(j - i + 1);
        } else {
            switch (c) {
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case ',': t.kind = Tok::Comma; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
            }
            t.text = c;
            advance(1);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    out.push_back(std::move(end));
    return out;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ParseResult run() {
        const Token& t = expect(Tok::Ident, "expected 'system'");
        if (t.text != "system") {
            fail(t, "expected 'system', got '" + t.text + "'");
        }
        parse_system_body();
        while (peek().kind != Tok::End) {
            const Token& kw = expect(Tok::Ident, "expected 'sequence'");
            if (kw.text != "sequence") {
                fail(kw, "expected 'sequence', got '" + kw.text + "'");
            }
            result_.sequences.push_back(parse_sequence_body());
        }
        return std::move(result_);
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseResult result_;

    const Token& peek() const { return toks_[pos_]; }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    const Token& expect(Tok kind, const std::string& what) {
        const Token& t = take();
        if (t.kind != kind) {
            fail(t, what + (t.kind == Tok::End ? " (got end of input)" : ", got '" + t.text + "'"));
        }
        return t;
    }

    bool accept_word(const char* word) {
        if (peek().kind == Tok::Ident && peek().text == word) {
            take();
            return true;
        }
        return false;
    }

    void expect_unit_hz() {
        const Token& t = expect(Tok::Ident, "expected unit 'Hz'");
        if (t.text != "Hz") {
            fail(t, "expected unit 'Hz', got '" + t.text + "'");
        }
    }

    double signed_number() {
        double sign = 1.0;
        while (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
            if (take().kind == Tok::Minus) {
                sign = -sign;
            }
        }
        const Token& t = expect(Tok::Number, "expected a number");
        return sign * t.number;
    }

    const Token& spin_token() {
        const Token& t = expect(Tok::Ident, "expected a spin label");
        if (!result_.system.has_spin(t.text)) {
            fail(t, "unknown spin '" + t.text + "'");
        }
        return t;
    }

    void parse_system_body() {
        expect(Tok::LBrace, "expected '{'");
        while (peek().kind != Tok::RBrace) {
            const Token& kw = expect(Tok::Ident, "expected 'spin', 'offset', 'J', or '}'");
            if (kw.text == "spin") {
                const Token& label = expect(Tok::Ident, "expected a spin label");
                if (result_.system.has_spin(label.text)) {
                    fail(label, "duplicate spin '" + label.text + "'");
                }
                const Token& isotope = expect(Tok::String, "expected an isotope string");
                if (!SpinSystem::isotope_gamma(isotope.text)) {
                    fail(isotope, "unknown isotope \"" + isotope.text + "\"");
                }
                result_.system.add_spin(label.text, isotope.text);
            } else if (kw.text == "offset") {
                const Token& label = spin_token();
                const double hz = signed_number();
                expect_unit_hz();
                result_.system.set_offset_hz(label.text, hz);
            } else if (kw.text == "J") {
                const Token& a = spin_token();
                const Token& b = spin_token();
                if (a.text == b.text) {
                    fail(b, "coupling must name two distinct spins");
                }
                const double j = signed_number();
                expect_unit_hz();
                result_.system.set_coupling_hz(a.text, b.text, j);
            } else {
                fail(kw, "expected 'spin', 'offset', or 'J', got '" + kw.text + "'");
            }
        }
        const Token& rb = take(); // '}'
        if (result_.system.nspins() == 0) {
            fail(rb, "system block declares no spins");
        }
    }

    SequenceAST parse_sequence_body() {
        SequenceAST seq;
        seq.name = expect(Tok::Ident, "expected a sequence name").text;
        expect(Tok::LBrace, "expected '{'");
        while (peek().kind != Tok::RBrace) {
            const Token& kw = peek();
            SourcePos pos{kw.line, kw.col};
            seq.events.push_back(parse_event());
            seq.positions.push_back(pos);
        }
        take(); // '}'
        return seq;
    }

    Event parse_event() {
        const Token& kw = expect(Tok::Ident, "expected an event");
        if (kw.text == "pulse") {
            const Token& target = spin_token();
            const Token& axis = expect(Tok::Ident, "expected pulse axis x, y, or z");
            if (axis.text.size() != 1 ||
                (axis.text[0] != 'x' && axis.text[0] != 'y' && axis.text[0] != 'z')) {
                fail(axis, "expected pulse axis x, y, or z, got '" + axis.text + "'");
            }
            return PulseEvent{target.text, axis_from_char(axis.text[0]), signed_number()};
        }
        if (kw.text == "zpulse") {
            const Token& target = spin_token();
            return ZCompositeEvent{target.text, signed_number()};
        }
        if (kw.text == "couple") {
            const Token& a = spin_token();
            const Token& b = spin_token();
            const std::size_t ia = result_.system.index_of(a.text);
            const std::size_t ib = result_.system.index_of(b.text);
            if (!result_.system.has_coupling(ia, ib)) {
                fail(b, "no coupling declared between '" + a.text + "' and '" + b.text + "'");
            }
            return CoupleEvent{a.text, b.text, signed_number()};
        }
        if (kw.text == "delay") {
            const double duration = parse_expr();
            const bool refocus = accept_word("refocus");
            return DelayEvent{duration, refocus};
        }
        fail(kw, "expected 'pulse', 'zpulse', 'delay', or 'couple', got '" + kw.text + "'");
    }

    // delay arithmetic: expr := term (('+'|'-') term)*
    double parse_expr() {
        double v = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            if (take().kind == Tok::Plus) {
                v += parse_term();
            } else {
                v -= parse_term();
            }
        }
        return v;
    }

    double parse_term() {
        double v = parse_factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            if (take().kind == Tok::Star) {
                v *= parse_factor();
            } else {
                const Token& at = peek();
                const double d = parse_factor();
                if (d == 0.0) {
                    fail(at, "division by zero in delay expression");
                }
                v /= d;
            }
        }
        return v;
    }

    double parse_factor() {
        const Token& t = peek();
        if (t.kind == Tok::Minus) {
            take();
            return -parse_factor();
        }
        if (t.kind == Tok::Number) {
            take();
            return t.number;
        }
        if (t.kind == Tok::LParen) {
            take();
            const double v = parse_expr();
            expect(Tok::RParen, "expected ')'");
            return v;
        }
        if (t.kind == Tok::Ident && t.text == "J") {
            take();
            return coupling_value(t);
        }
        fail(t, "expected a number, '(', or J in delay expression");
    }

    double coupling_value(const Token& jtok) {
        if (peek().kind == Tok::LParen) {
            take();
            const Token& a = spin_token();
            expect(Tok::Comma, "expected ','");
            const Token& b = spin_token();
            expect(Tok::RParen, "expected ')'");
            const std::size_t ia = result_.system.index_of(a.text);
            const std::size_t ib = result_.system.index_of(b.text);
            if (!result_.system.has_coupling(ia, ib)) {
                fail(b, "no coupling declared between '" + a.text + "' and '" + b.text + "'");
            }
            return result_.system.coupling_hz(ia, ib);
        }
        const auto pairs = result_.system.coupled_pairs();
        if (pairs.empty()) {
            fail(jtok, "delay expression references J but no coupling is declared");
        }
        if (pairs.size() > 1) {
            fail(jtok, "ambiguous J: several couplings declared, use J(label,label)");
        }
        return result_.system.coupling_hz(pairs[0].first, pairs[0].second);
    }
};

} // namespace

ParseResult parse(const std::string& text) {
    return Parser(lex(text)).run();
}

} // namespace nmrqc
