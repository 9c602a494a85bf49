#include "bohr/errors.hpp"
#include "bohr/expression.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bohr;

namespace {

Expr leaf(Expr::Kind k) {
    Expr e;
    e.kind = k;
    return e;
}

Expr number(const Rational& q) {
    Expr e = leaf(Expr::Kind::Number);
    e.number = q;
    return e;
}

Expr chi(const Rational& q, std::optional<std::string> symbol = std::nullopt) {
    Expr e = leaf(Expr::Kind::Chi);
    e.freq = {q, std::move(symbol)};
    return e;
}

Expr node(Expr::Kind k, std::vector<Expr> children) {
    Expr e = leaf(k);
    e.children = std::move(children);
    return e;
}

Rational random_rational() {
    const int den = std::vector<int>{1, 1, 2, 3, 4, 10}[static_cast<std::size_t>(oracle::integer(0, 5))];
    Rational q(oracle::integer(0, 40), den);
    q.canonicalize();
    return q;
}

Expr random_constant(int depth);

// AP-valued expression; hats only ever meet constants.
Expr random_expr(int depth) {
    const int pick = static_cast<int>(oracle::integer(0, depth > 0 ? 8 : 3));
    switch (pick) {
        case 0: return number(random_rational());
        case 1: return leaf(Expr::Kind::Imag);
        case 2: {
            static const std::vector<std::optional<std::string>> symbols = {std::nullopt, std::nullopt, "pi", "sqrt2", "e"};
            Rational q = random_rational();
            if (oracle::integer(0, 3) == 0) q = -q;
            return chi(q, symbols[static_cast<std::size_t>(oracle::integer(0, 4))]);
        }
        case 3: {
            Expr h = leaf(Expr::Kind::Hat);
            const Rational a(oracle::integer(-9, 0), 2);
            h.hat = {a, a + Rational(oracle::integer(1, 4), 3), a + Rational(oracle::integer(5, 9), 3)};
            for (auto& q : h.hat) q.canonicalize();
            return h;
        }
        case 4: return node(Expr::Kind::Neg, {random_expr(depth - 1)});
        case 5: return node(Expr::Kind::Add, {random_expr(depth - 1), random_expr(depth - 1)});
        case 6: return node(Expr::Kind::Sub, {random_expr(depth - 1), random_expr(depth - 1)});
        case 7: {
            // Keep hats out of products with non-constants.
            Expr a = random_expr(depth - 1);
            Expr b = random_expr(depth - 1);
            auto has_hat = [](const Expr& e, auto&& self) -> bool {
                if (e.kind == Expr::Kind::Hat) return true;
                for (const auto& c : e.children) if (self(c, self)) return true;
                return false;
            };
            if (has_hat(a, has_hat)) b = random_constant(depth - 1);
            if (has_hat(b, has_hat)) a = random_constant(depth - 1);
            return node(Expr::Kind::Mul, {a, b});
        }
        default: return random_constant(depth - 1);
    }
}

Expr random_constant(int depth) {
    switch (oracle::integer(0, depth > 0 ? 3 : 1)) {
        case 0: return number(random_rational());
        case 1: return leaf(Expr::Kind::Imag);
        case 2: return node(Expr::Kind::Neg, {random_constant(depth - 1)});
        default: return node(Expr::Kind::Add, {random_constant(depth - 1), random_constant(depth - 1)});
    }
}

// Evaluates the tree straight from its definition at real x.
std::complex<double> eval_oracle(const Expr& e, double x) {
    switch (e.kind) {
        case Expr::Kind::Number: return to_double(e.number);
        case Expr::Kind::Imag: return {0, 1};
        case Expr::Kind::Chi: {
            double s = 1;
            if (e.freq.symbol == "pi") s = std::numbers::pi;
            if (e.freq.symbol == "sqrt2") s = std::sqrt(2.0);
            if (e.freq.symbol == "e") s = std::numbers::e;
            return std::polar(1.0, to_double(e.freq.coefficient) * s * x);
        }
        case Expr::Kind::Hat: {
            const double a = to_double(e.hat[0]), b = to_double(e.hat[1]), c = to_double(e.hat[2]);
            if (x <= a || x >= c) return 0;
            return x <= b ? (x - a) / (b - a) : (c - x) / (c - b);
        }
        case Expr::Kind::Neg: return -eval_oracle(e.children[0], x);
        case Expr::Kind::Add: return eval_oracle(e.children[0], x) + eval_oracle(e.children[1], x);
        case Expr::Kind::Sub: return eval_oracle(e.children[0], x) - eval_oracle(e.children[1], x);
        case Expr::Kind::Mul: return eval_oracle(e.children[0], x) * eval_oracle(e.children[1], x);
    }
    return 0;
}

void check_error(const std::string& src, std::size_t line, std::size_t column, const std::string& fragment,
                 const SymbolTable& symbols = {}) {
    CAPTURE(src);
    try {
        lower(parse_expression(src, symbols), symbols);
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(e.detail().find(fragment) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("parsing examples") {
    const Expr two = parse_expression("chi(2)");
    CHECK(two == chi(2));
    const ExtendedFunction f = lower(two);
    CHECK(f.ap.module().rank() == 1);
    CHECK(f.ap.module().generator(0).label() == "1");
    CHECK(f.ap.terms().begin()->first == Coords{2});

    const ExtendedFunction cosine = lower(parse_expression("0.5*chi(1) + 0.5*chi(-1)"));
    CHECK(evaluate(cosine.ap, Real::pi_multiple(Rational(1, 3))).value().real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(evaluate(cosine.ap, Real::pi_multiple(Rational(1, 3))).value().imag()) < 1e-15);

    const ExtendedFunction hat = lower(parse_expression("hat(-1,0,1)"));
    CHECK(hat.ap.is_zero());
    CHECK(hat.c0(Real::rational(0)) == std::complex<double>(1.0));
    CHECK(hat.c0.breakpoints() == std::vector<double>{-1, 0, 1});

    CHECK(parse_expression("  2 * ( chi(1/2) - i )") == node(Expr::Kind::Mul, {number(2), node(Expr::Kind::Sub, {chi(Rational(1, 2)), leaf(Expr::Kind::Imag)})}));
    CHECK(parse_expression("-2*chi(1)") == node(Expr::Kind::Mul, {node(Expr::Kind::Neg, {number(2)}), chi(1)}));
    CHECK(parse_expression("1-2-3") == node(Expr::Kind::Sub, {node(Expr::Kind::Sub, {number(1), number(2)}), number(3)}));
    CHECK(parse_expression("chi(-pi)") == chi(-1, "pi"));
    CHECK(parse_expression("chi(1.5*sqrt2)") == chi(Rational(3, 2), "sqrt2"));
    CHECK(parse_expression("1.5e2") == number(150));
    CHECK(parse_expression("chi(a)", SymbolTable{{{"a", "0.7"}}}) == chi(1, "a"));
}

TEST_CASE("lowering shares one generator per symbol") {
    const auto fs = lower_all({parse_expression("chi(1/2) + chi(pi)"), parse_expression("chi(1/3)")});
    const Module& m = fs[0].ap.module();
    REQUIRE(m.rank() == 2);
    CHECK(fs[1].ap.module() == m);
    CHECK(m.generator(0).label() == "1/6");
    CHECK(m.generator(1).label() == "pi");
    CHECK(fs[0].ap.terms().count({3, 0}) == 1);
    CHECK(fs[0].ap.terms().count({0, 1}) == 1);
    CHECK(fs[1].ap.terms().count({2, 0}) == 1);
    CHECK(lower(parse_expression("chi(0) + 1")).ap.module().rank() == 0);
}

TEST_CASE("error positions") {
    check_error("chi(2) +", 1, 9, "expected a term");
    check_error("chi(foo)", 1, 5, "unknown symbol 'foo'");
    check_error("chi(2pi)", 1, 6, "expected ')'");
    check_error("", 1, 1, "expected a term");
    check_error("chi(1)\n + @", 2, 4, "unexpected character '@'");
    check_error("hat(-1,0,1)*chi(1)", 1, 12, "unsupported product");
    check_error("chi(1)*hat(-1,0,1)", 1, 7, "unsupported product");
    check_error("hat(1,0,2)", 1, 1, "a < b < c");
    check_error("chi(sqrt2)+chi(sqrt8)", 1, 12, "dependent generators");
    check_error("chi(1) + chi(a)", 1, 10, "dependent generators", SymbolTable{{{"a", "2"}}});
    check_error("chi(99999999999999999999)", 1, 1, "out of range");
    check_error("(chi(1)", 1, 8, "expected ')'");
    check_error("2 3", 1, 3, "");
    // 2 sqrt2 - sqrt8 = 0, reported in primitive form.
    CHECK_THROWS_WITH_AS(lower(parse_expression("chi(sqrt2)+chi(sqrt8)")), doctest::Contains("(2,-1)"), ParseError);
}

TEST_CASE("round trip over a random corpus") {
    for (int k = 0; k < 200; ++k) {
        const Expr e = random_expr(1 + k % 5);
        const std::string text = print_expression(e);
        CAPTURE(text);
        const Expr back = parse_expression(text);
        CHECK(back == e);
        CHECK(print_expression(back) == text);

        // Lowering agrees with direct evaluation.
        const ExtendedFunction f = lower(back);
        for (double x : {-2.3, 0.0, 0.7, 4.1}) {
            const std::complex<double> got = f.c0(Real(x)) + evaluate_fast(f.ap, x);
            CHECK(std::abs(got - eval_oracle(e, x)) < 1e-9 * (1 + std::abs(eval_oracle(e, x))));
        }
    }
}

TEST_CASE("parse_real") {
    CHECK(parse_real("2") == Real::rational(2));
    CHECK(parse_real("-1/3") == Real::rational(Rational(-1, 3)));
    CHECK(parse_real("2.5") == Real::rational(Rational(5, 2)));
    CHECK(parse_real("pi") == Real::pi_multiple(1));
    CHECK(parse_real("-pi/2") == Real::pi_multiple(Rational(-1, 2)));
    CHECK(parse_real("3*pi") == Real::pi_multiple(3));
    CHECK(parse_real("1/2*pi/3") == Real::pi_multiple(Rational(1, 6)));
    CHECK_FALSE(parse_real("sqrt2").is_exact());
    CHECK(parse_real("sqrt2").value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(parse_real("2*e").value() == doctest::Approx(2 * std::numbers::e).epsilon(1e-15));
    CHECK(parse_real("b", SymbolTable{{{"b", "0.25"}}}).value() == 0.25);
    CHECK_THROWS_AS(parse_real("zz"), InputError);
    CHECK_THROWS_AS(parse_real(""), InputError);
    CHECK_THROWS_AS(parse_real("1/0"), InputError);
    const auto list = parse_real_list("1, pi ,-2.5");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == Real::pi_multiple(1));
    CHECK_THROWS_AS(parse_real_list("1,,2"), InputError);
}
