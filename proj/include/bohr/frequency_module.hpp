#pragma once

#include "bohr/high_precision.hpp"
#include "bohr/rational.hpp"
#include "bohr/real.hpp"
#include "bohr/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bohr {

using Coords = std::vector<std::int64_t>;

/// One generator g = rational_scale * decimal. A null symbol means the
/// decimal is an exact rational; known symbols are pi, e, phi and sqrtN.
struct Generator {
    std::optional<std::string> symbol;
    std::string decimal = "1";
    Rational rational_scale{1};

    static Generator rational(const Rational& q);
    /// Known symbols get their decimal expansion at working precision. Any
    /// other name needs an explicit decimal.
    static Generator named(const std::string& symbol, const Rational& scale = Rational(1),
                           const std::string& decimal = "");

    HighFloat value() const;
    /// "1/2", "pi", "3*sqrt2", ...
    std::string label() const;

    friend bool operator==(const Generator& a, const Generator& b);
};

/// pi, e, phi and sqrtN (N a positive integer).
bool is_known_symbol(const std::string& symbol);

namespace detail {
struct ModuleData;
}

/// A finitely generated subgroup of R, presented as Z^d over declared
/// generators. Cheap to copy; equality compares generator lists.
class Module {
public:
    /// The trivial module {0}.
    Module();

    /// Rejects zero or non-finite generators and any small integer relation
    /// (see find_integer_relation).
    static Module create(const std::vector<Generator>& generators);

    std::size_t rank() const;
    const std::vector<Generator>& generators() const;
    const Generator& generator(std::size_t i) const;
    double generator_value(std::size_t i) const;
    const HighFloat& generator_high(std::size_t i) const;
    std::string describe() const;

    friend bool operator==(const Module& a, const Module& b);

private:
    explicit Module(std::shared_ptr<const detail::ModuleData> data) : data_(std::move(data)) {}
    std::shared_ptr<const detail::ModuleData> data_;
    friend struct ModuleAccess;
};

/// Result of canonicalize(): the module plus, for each input generator,
/// its integer coordinates over the canonical generators.
struct CanonicalModule {
    Module module;
    std::vector<Coords> embedding;
};

/// Generators sharing a symbol (including the rational ones, symbol null)
/// are merged into a single generator: gcd of numerators over lcm of
/// denominators. The merged list must then pass Module::create.
CanonicalModule canonicalize(const std::vector<Generator>& generators);

/// Searches for a nonzero n with |n_i| <= bound and
/// |sum n_i g_i| < tol * max_i |n_i g_i| (meet-in-the-middle over halves).
std::optional<Coords> find_integer_relation(const std::vector<double>& values, int bound = 20,
                                            double tol = 1e-9);

class Frequency {
public:
    Frequency(Module module, Coords coords);

    static Frequency zero(const Module& module);
    static Frequency unit(const Module& module, std::size_t i);

    const Module& module() const { return module_; }
    const Coords& coords() const { return coords_; }
    bool is_zero() const;

    Frequency operator-() const;
    friend Frequency operator+(const Frequency& a, const Frequency& b);
    friend Frequency operator-(const Frequency& a, const Frequency& b) { return a + (-b); }
    friend bool operator==(const Frequency& a, const Frequency& b);
    friend bool operator<(const Frequency& a, const Frequency& b) { return a.coords_ < b.coords_; }

    std::string to_string() const;

private:
    Module module_;
    Coords coords_;
};

Frequency freq_add(const Frequency& a, const Frequency& b);
/// Sum of coords times generator values, evaluated at working precision.
double freq_value(const Frequency& a);
HighFloat freq_value_high(const Frequency& a);

/// Double-precision value for hot loops.
double freq_value_fast(const Frequency& a);

/// What is known exactly about the real number a frequency denotes.
struct FrequencyClass {
    enum class Kind { Zero, Rational, PiMultiple, IrrationalAlgebraic, Unknown };
    Kind kind = Kind::Unknown;
    /// The q in q or q*pi for Rational / PiMultiple.
    Rational coefficient{0};
};

FrequencyClass classify(const Frequency& a);

/// If lambda*t is exactly r*pi with r rational, returns r.
std::optional<Rational> exact_pi_ratio(const Frequency& lambda, const Real& t);

/// e^{i lambda t}; exact when lambda*t is a quarter-turn multiple of pi.
Scalar phase(const Frequency& lambda, const Real& t);

/// Decides lambda*t in 2 pi Z from exact forms (transcendence of pi,
/// independence of square roots). nullopt when undecidable that way.
std::optional<bool> exactly_in_two_pi_z(const Frequency& lambda, const Real& t);

/// Exact decision when possible, otherwise distance of lambda*t/(2 pi) to
/// the nearest integer below tol.
bool in_two_pi_z(const Frequency& lambda, const Real& t, double tol = 1e-12);

void require_same_module(const Module& a, const Module& b, const char* operation);

}  // namespace bohr
