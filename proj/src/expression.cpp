#include "bohr/expression.hpp"

#include "bohr/errors.hpp"

#include <cctype>
#include <numeric>

namespace bohr {

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    switch (a.kind) {
        case Expr::Kind::Number:
            if (a.number != b.number) return false;
            break;
        case Expr::Kind::Chi:
            if (!(a.freq == b.freq)) return false;
            break;
        case Expr::Kind::Hat:
            if (a.hat != b.hat) return false;
            break;
        default:
            break;
    }
    for (std::size_t k = 0; k < a.children.size(); ++k) {
        if (!(a.children[k] == b.children[k])) return false;
    }
    return true;
}

namespace {

struct Token {
    enum class Type { Number, Ident, Symbol, End };
    Type type = Type::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.type = Token::Type::Number;
                t.text = number();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.type = Token::Type::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::string_view("()+-*,").find(c) != std::string_view::npos) {
                t.type = Token::Type::Symbol;
                t.text = std::string(1, advance());
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool digit_at(std::size_t p) const {
        return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
    }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    // digits ['.' digits] [exponent], optionally followed by '/' and another such decimal.
    std::string decimal() {
        const std::size_t line = line_;
        const std::size_t column = column_;
        std::string s;
        while (digit_at(pos_)) s += advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            s += advance();
            while (digit_at(pos_)) s += advance();
        }
        if (s.empty() || s == ".") throw ParseError("malformed number", line, column);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const bool sign = pos_ + 1 < src_.size() && (src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-');
            if (digit_at(pos_ + (sign ? 2 : 1))) {
                s += advance();
                if (sign) s += advance();
                while (digit_at(pos_)) s += advance();
            }
        }
        return s;
    }

    std::string number() {
        std::string s = decimal();
        if (pos_ < src_.size() && src_[pos_] == '/' && (digit_at(pos_ + 1) || (pos_ + 1 < src_.size() && src_[pos_ + 1] == '.'))) {
            s += advance();
            s += decimal();
        }
        return s;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// has_c0: some C0 part; constant: no C0 part and only the zero frequency.
struct Shape {
    bool has_c0 = false;
    bool constant = true;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const SymbolTable& symbols) : tokens_(std::move(tokens)), symbols_(symbols) {}

    Expr run() {
        Shape shape;
        Expr e = expr(shape);
        if (peek().type != Token::Type::End) fail("unexpected '" + peek().text + "'", peek());
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_symbol(char c) const { return peek().type == Token::Type::Symbol && peek().text[0] == c; }

    [[noreturn]] static void fail(const std::string& message, const Token& t) {
        throw ParseError(t.type == Token::Type::End ? message + " (end of input)" : message, t.line, t.column);
    }

    void expect(char c) {
        if (!at_symbol(c)) fail(std::string("syntax error: expected '") + c + "'", peek());
        take();
    }

    static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, const Token& op) {
        Expr e;
        e.kind = kind;
        e.line = op.line;
        e.column = op.column;
        e.children.push_back(std::move(lhs));
        e.children.push_back(std::move(rhs));
        return e;
    }

    Expr expr(Shape& shape) {
        Expr lhs = term(shape);
        while (at_symbol('+') || at_symbol('-')) {
            const Token op = take();
            Shape rhs_shape;
            Expr rhs = term(rhs_shape);
            shape.has_c0 = shape.has_c0 || rhs_shape.has_c0;
            shape.constant = shape.constant && rhs_shape.constant;
            lhs = binary(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs), op);
        }
        return lhs;
    }

    Expr term(Shape& shape) {
        Expr lhs = unary(shape);
        while (at_symbol('*')) {
            const Token op = take();
            Shape rhs_shape;
            Expr rhs = unary(rhs_shape);
            if ((shape.has_c0 && !rhs_shape.constant) || (rhs_shape.has_c0 && !shape.constant)) {
                fail("unsupported product: a hat term may only be multiplied by a constant", op);
            }
            shape.has_c0 = shape.has_c0 || rhs_shape.has_c0;
            shape.constant = shape.constant && rhs_shape.constant;
            lhs = binary(Expr::Kind::Mul, std::move(lhs), std::move(rhs), op);
        }
        return lhs;
    }

    Expr unary(Shape& shape) {
        if (at_symbol('-')) {
            const Token op = take();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.line = op.line;
            e.column = op.column;
            e.children.push_back(unary(shape));
            return e;
        }
        return factor(shape);
    }

    Rational number_token() {
        const Token& t = peek();
        if (t.type != Token::Type::Number) fail("syntax error: expected a number", t);
        try {
            Rational q = parse_rational(t.text);
            take();
            return q;
        } catch (const InputError& e) {
            fail(std::string("syntax error: ") + e.what(), t);
        }
    }

    Rational signed_number() {
        bool negative = false;
        if (at_symbol('-') || at_symbol('+')) negative = take().text == "-";
        Rational q = number_token();
        return negative ? Rational(-q) : q;
    }

    std::string symbol_token() {
        const Token& t = peek();
        if (t.type != Token::Type::Ident) fail("syntax error: expected a number or symbol", t);
        if (!symbols_.knows(t.text)) fail("unknown symbol '" + t.text + "'", t);
        return take().text;
    }

    FreqLiteral freq() {
        FreqLiteral f;
        bool negative = false;
        if (at_symbol('-') || at_symbol('+')) negative = take().text == "-";
        if (peek().type == Token::Type::Number) {
            f.coefficient = number_token();
            if (at_symbol('*')) {
                take();
                f.symbol = symbol_token();
            }
        } else {
            f.coefficient = 1;
            f.symbol = symbol_token();
        }
        if (negative) f.coefficient = -f.coefficient;
        return f;
    }

    Expr factor(Shape& shape) {
        const Token& t = peek();
        Expr e;
        e.line = t.line;
        e.column = t.column;
        shape = Shape{};
        if (t.type == Token::Type::Number) {
            e.kind = Expr::Kind::Number;
            e.number = number_token();
            return e;
        }
        if (at_symbol('(')) {
            take();
            Expr inner = expr(shape);
            expect(')');
            return inner;
        }
        if (t.type != Token::Type::Ident) fail("syntax error: expected a term", t);
        if (t.text == "i") {
            take();
            e.kind = Expr::Kind::Imag;
            return e;
        }
        if (t.text == "chi") {
            take();
            expect('(');
            e.kind = Expr::Kind::Chi;
            e.freq = freq();
            expect(')');
            shape.constant = sgn(e.freq.coefficient) == 0;
            return e;
        }
        if (t.text == "hat") {
            take();
            expect('(');
            e.kind = Expr::Kind::Hat;
            for (int k = 0; k < 3; ++k) {
                if (k > 0) expect(',');
                e.hat[static_cast<std::size_t>(k)] = signed_number();
            }
            expect(')');
            if (!(e.hat[0] < e.hat[1] && e.hat[1] < e.hat[2])) {
                throw ParseError("hat(a,b,c) needs a < b < c", e.line, e.column);
            }
            shape.has_c0 = true;
            shape.constant = false;
            return e;
        }
        fail("unknown symbol '" + t.text + "'", t);
    }

    std::vector<Token> tokens_;
    const SymbolTable& symbols_;
    std::size_t pos_ = 0;
};

std::string print_freq(const FreqLiteral& f) {
    if (!f.symbol) return format_rational(f.coefficient);
    if (f.coefficient == 1) return *f.symbol;
    if (f.coefficient == -1) return "-" + *f.symbol;
    return format_rational(f.coefficient) + "*" + *f.symbol;
}

bool is_sum(const Expr& e) { return e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub; }

std::string wrap(const Expr& e, bool parens) {
    const std::string s = print_expression(e);
    return parens ? "(" + s + ")" : s;
}

struct Group {
    std::optional<std::string> symbol;
    mpz_class lcm{1};
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t index = 0;
};

void collect(const Expr& e, std::vector<Group>& groups) {
    if (e.kind == Expr::Kind::Chi && sgn(e.freq.coefficient) != 0) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.symbol == e.freq.symbol; });
        if (it == groups.end()) {
            groups.push_back(Group{e.freq.symbol, 1, e.line, e.column, groups.size()});
            it = groups.end() - 1;
        }
        mpz_lcm(it->lcm.get_mpz_t(), it->lcm.get_mpz_t(), e.freq.coefficient.get_den_mpz_t());
    }
    for (const auto& c : e.children) collect(c, groups);
}

struct Lowering {
    Module module;
    std::vector<Group> groups;

    ExtendedFunction operator()(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Number:
                return {C0Function(), APFunction::constant(module, Scalar(e.number))};
            case Expr::Kind::Imag:
                return {C0Function(), APFunction::constant(module, Scalar::imaginary_unit())};
            case Expr::Kind::Chi: {
                Coords c(module.rank(), 0);
                if (sgn(e.freq.coefficient) != 0) {
                    const Group& g = *std::find_if(groups.begin(), groups.end(),
                                                   [&](const Group& x) { return x.symbol == e.freq.symbol; });
                    const Rational k = e.freq.coefficient * Rational(g.lcm);
                    if (!k.get_num().fits_slong_p()) {
                        throw ParseError("frequency coordinate out of range", e.line, e.column);
                    }
                    c[g.index] = k.get_num().get_si();
                }
                return {C0Function(), APFunction::character(Frequency(module, c))};
            }
            case Expr::Kind::Hat:
                return {C0Function::hat(to_double(e.hat[0]), to_double(e.hat[1]), to_double(e.hat[2])),
                        APFunction(module)};
            case Expr::Kind::Neg: {
                ExtendedFunction f = (*this)(e.children[0]);
                return {f.c0.scaled(-1.0), Scalar(-1) * f.ap};
            }
            case Expr::Kind::Add:
            case Expr::Kind::Sub: {
                ExtendedFunction f = (*this)(e.children[0]);
                ExtendedFunction g = (*this)(e.children[1]);
                if (e.kind == Expr::Kind::Sub) g = {g.c0.scaled(-1.0), Scalar(-1) * g.ap};
                return {f.c0 + g.c0, f.ap + g.ap};
            }
            case Expr::Kind::Mul: {
                ExtendedFunction f = (*this)(e.children[0]);
                ExtendedFunction g = (*this)(e.children[1]);
                if (f.c0.is_zero() && g.c0.is_zero()) return {C0Function(), f.ap * g.ap};
                // The parser only lets a constant multiply a C0 part.
                if (!f.c0.is_zero()) std::swap(f, g);
                const Scalar s = bohr_mean(f.ap);
                return {g.c0.scaled(s.value()), s * g.ap};
            }
        }
        throw InputError("unreachable expression kind");
    }
};

}  // namespace

Expr parse_expression(std::string_view source, const SymbolTable& symbols) {
    Parser parser(Lexer(source).run(), symbols);
    return parser.run();
}

std::string print_expression(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return format_rational(e.number);
        case Expr::Kind::Imag:
            return "i";
        case Expr::Kind::Chi:
            return "chi(" + print_freq(e.freq) + ")";
        case Expr::Kind::Hat:
            return "hat(" + format_rational(e.hat[0]) + "," + format_rational(e.hat[1]) + "," +
                   format_rational(e.hat[2]) + ")";
        case Expr::Kind::Neg:
            return "-" + wrap(e.children[0], is_sum(e.children[0]) || e.children[0].kind == Expr::Kind::Mul);
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return print_expression(e.children[0]) + (e.kind == Expr::Kind::Add ? " + " : " - ") +
                   wrap(e.children[1], is_sum(e.children[1]));
        case Expr::Kind::Mul:
            return wrap(e.children[0], is_sum(e.children[0])) + "*" +
                   wrap(e.children[1], is_sum(e.children[1]) || e.children[1].kind == Expr::Kind::Mul);
    }
    return {};
}

std::vector<ExtendedFunction> lower_all(const std::vector<Expr>& exprs, const SymbolTable& symbols) {
    std::vector<Group> groups;
    for (const auto& e : exprs) collect(e, groups);

    std::vector<Generator> gens;
    Module module;
    for (const auto& g : groups) {
        const Rational scale(mpz_class(1), g.lcm);
        try {
            if (!g.symbol) {
                gens.push_back(Generator::rational(scale));
            } else {
                auto it = symbols.defined.find(*g.symbol);
                gens.push_back(Generator::named(*g.symbol, scale, it == symbols.defined.end() ? "" : it->second));
            }
            module = Module::create(gens);
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(e.what(), g.line, g.column);
        }
    }

    const Lowering lowering{module, groups};
    std::vector<ExtendedFunction> out;
    for (const auto& e : exprs) out.push_back(lowering(e));
    return out;
}

ExtendedFunction lower(const Expr& e, const SymbolTable& symbols) { return lower_all({e}, symbols).front(); }

Real parse_real(std::string_view text, const SymbolTable& symbols) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw InputError("empty real number");
    std::string body = s;
    bool negative = false;
    if (body[0] == '-' || body[0] == '+') {
        negative = body[0] == '-';
        body.erase(0, 1);
    }
    // [q '*'] name ['/' r]
    Rational coefficient(1);
    std::string name = body;
    if (auto star = body.find('*'); star != std::string::npos) {
        coefficient = parse_rational(body.substr(0, star));
        name = body.substr(star + 1);
    }
    Rational divisor(1);
    if (auto slash = name.find('/'); slash != std::string::npos && !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]))) {
        divisor = parse_rational(name.substr(slash + 1));
        name = name.substr(0, slash);
        if (sgn(divisor) == 0) throw InputError("zero denominator in '" + s + "'");
    }
    if (!name.empty() && std::isalpha(static_cast<unsigned char>(name[0]))) {
        Rational q = coefficient / divisor;
        if (negative) q = -q;
        if (name == "pi") return Real::pi_multiple(q);
        if (!symbols.knows(name)) throw InputError("unknown symbol '" + name + "' in '" + s + "'");
        auto it = symbols.defined.find(name);
        const Generator g = Generator::named(name, q, it == symbols.defined.end() ? "" : it->second);
        return Real(g.value().to_double());
    }
    if (body.find('*') != std::string::npos) throw InputError("not a real number: '" + s + "'");
    return Real::rational(parse_rational(s));
}

std::vector<Real> parse_real_list(std::string_view text, const SymbolTable& symbols) {
    std::vector<Real> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), symbols));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace bohr
