#pragma once

#include "bohr/fleischhack_space.hpp"
#include "bohr/rational.hpp"
#include "bohr/real.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bohr {

/// Named generators introduced on the command line: name -> decimal value.
struct SymbolTable {
    std::map<std::string, std::string> defined;

    bool knows(const std::string& name) const { return is_known_symbol(name) || defined.count(name) > 0; }
};

/// q or q*symbol.
struct FreqLiteral {
    Rational coefficient{0};
    std::optional<std::string> symbol;

    friend bool operator==(const FreqLiteral& a, const FreqLiteral& b) {
        return a.coefficient == b.coefficient && a.symbol == b.symbol;
    }
};

struct Expr {
    enum class Kind { Number, Imag, Chi, Hat, Add, Sub, Mul, Neg };

    Kind kind = Kind::Number;
    Rational number{0};          // Number; always >= 0, signs are Neg nodes
    FreqLiteral freq;            // Chi
    std::array<Rational, 3> hat; // Hat: support [a, c], peak 1 at b
    std::vector<Expr> children;
    // Start of an atom, or the operator of a binary node.
    std::size_t line = 1;
    std::size_t column = 1;

    /// Structural equality; positions are ignored.
    friend bool operator==(const Expr& a, const Expr& b);
};

/// expr := term (('+'|'-') term)* ; term := unary ('*' unary)* ;
/// unary := '-' unary | factor ;
/// factor := number | 'i' | 'chi' '(' freq ')' | 'hat' '(' num ',' num ',' num ')' | '(' expr ')' ;
/// freq := ['-'] (number ['*' symbol] | symbol).
/// Numbers are exact: "3", "2.5", "1e-3", "1/3". Products of a C0 part with
/// anything but a constant are rejected, as they leave C0(R) (+) CAP's
/// piecewise-linear model.
Expr parse_expression(std::string_view source, const SymbolTable& symbols = {});

/// Canonical text; parse_expression(print_expression(e)) == e.
std::string print_expression(const Expr& e);

/// Lowers several expressions over one module. Rational literals share a
/// generator 1/L with L the lcm of their denominators, and likewise each
/// symbol gets (1/L)*symbol. Dependent generators raise a ParseError at the
/// first literal of the offending symbol.
std::vector<ExtendedFunction> lower_all(const std::vector<Expr>& exprs, const SymbolTable& symbols = {});
ExtendedFunction lower(const Expr& e, const SymbolTable& symbols = {});

/// "2", "-1/3", "2.5", "pi", "-pi/2", "3*pi", "1/2*pi/3" stay exact; "sqrt2",
/// "2*e" or a defined name become doubles.
Real parse_real(std::string_view text, const SymbolTable& symbols = {});
/// Comma-separated parse_real.
std::vector<Real> parse_real_list(std::string_view text, const SymbolTable& symbols = {});

}  // namespace bohr
