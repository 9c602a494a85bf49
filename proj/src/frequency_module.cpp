#include "bohr/frequency_module.hpp"

#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bohr {

namespace detail {

struct ModuleData {
    std::vector<Generator> generators;
    std::vector<HighFloat> high;
    std::vector<double> values;
    // Each generator as a rational combination of basis reals
    // ("1", "pi", "sqrtM" with M square-free, "other:<name>").
    std::vector<std::map<std::string, Rational>> decomposition;
};

}  // namespace detail

struct ModuleAccess {
    static const detail::ModuleData& data(const Module& m) { return *m.data_; }
};

namespace {

struct KnownSymbol {
    HighFloat value;
    std::map<std::string, Rational> decomposition;  // for scale 1
};

bool is_sqrt_symbol(const std::string& symbol, unsigned long& radicand) {
    if (symbol.size() <= 4 || symbol.compare(0, 4, "sqrt") != 0) return false;
    if (!std::all_of(symbol.begin() + 4, symbol.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return false;
    }
    if (symbol.size() > 13) return false;
    radicand = std::stoul(symbol.substr(4));
    return radicand > 0;
}

// n = k^2 * m with m square-free.
void split_square(unsigned long n, unsigned long& k, unsigned long& m) {
    k = 1;
    m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            k *= p;
        }
    }
}

}  // namespace

bool is_known_symbol(const std::string& symbol) {
    unsigned long n = 0;
    return symbol == "pi" || symbol == "e" || symbol == "phi" || is_sqrt_symbol(symbol, n);
}

namespace {

std::optional<KnownSymbol> known_symbol(const std::string& symbol) {
    const unsigned digits = working_digits();
    if (symbol == "pi") {
        return KnownSymbol{HighFloat::pi(digits), {{"pi", Rational(1)}}};
    }
    if (symbol == "e") {
        return KnownSymbol{HighFloat::euler(digits), {{"other:e", Rational(1)}}};
    }
    if (symbol == "phi") {
        HighFloat five = HighFloat::from_integer(5, digits);
        HighFloat v = (HighFloat::from_integer(1, digits) + five.sqrt()) / HighFloat::from_integer(2, digits);
        return KnownSymbol{v, {{"1", Rational(1, 2)}, {"sqrt5", Rational(1, 2)}}};
    }
    unsigned long n = 0;
    if (is_sqrt_symbol(symbol, n)) {
        unsigned long k = 0, m = 0;
        split_square(n, k, m);
        HighFloat v = HighFloat::from_integer(static_cast<long>(n), digits).sqrt();
        if (m == 1) {
            return KnownSymbol{v, {{"1", Rational(static_cast<long>(k))}}};
        }
        return KnownSymbol{v, {{"sqrt" + std::to_string(m), Rational(static_cast<long>(k))}}};
    }
    return std::nullopt;
}

std::map<std::string, Rational> decompose(const Generator& g) {
    std::map<std::string, Rational> out;
    if (!g.symbol) {
        out["1"] = g.rational_scale * parse_rational(g.decimal);
        return out;
    }
    if (auto known = known_symbol(*g.symbol)) {
        for (const auto& [basis, c] : known->decomposition) {
            out[basis] = c * g.rational_scale;
        }
        return out;
    }
    out["other:" + *g.symbol] = g.rational_scale;
    return out;
}

const std::shared_ptr<const detail::ModuleData>& trivial_module_data() {
    static const auto data = std::make_shared<const detail::ModuleData>();
    return data;
}

}  // namespace

Generator Generator::rational(const Rational& q) {
    Generator g;
    g.symbol.reset();
    g.decimal = "1";
    g.rational_scale = q;
    g.rational_scale.canonicalize();
    return g;
}

Generator Generator::named(const std::string& symbol, const Rational& scale, const std::string& decimal) {
    if (symbol.empty()) {
        throw InputError("empty generator symbol");
    }
    Generator g;
    g.symbol = symbol;
    g.rational_scale = scale;
    g.rational_scale.canonicalize();
    if (auto known = known_symbol(symbol)) {
        std::string computed = known->value.to_plain_string(working_digits());
        if (!decimal.empty()) {
            HighFloat given = HighFloat::from_string(decimal);
            HighFloat rel = ((given - known->value) / known->value).abs();
            if (rel.to_double() > 1e-9) {
                throw InputError("decimal for '" + symbol + "' does not match its value");
            }
        }
        g.decimal = computed;
        return g;
    }
    if (decimal.empty()) {
        throw InputError("unknown symbol '" + symbol + "' (named generators need a decimal value)");
    }
    (void)parse_rational(decimal);
    g.decimal = decimal;
    return g;
}

HighFloat Generator::value() const {
    HighFloat scale = HighFloat::from_rational(rational_scale);
    if (symbol) {
        if (auto known = known_symbol(*symbol)) {
            return scale * known->value;
        }
    }
    return scale * HighFloat::from_string(decimal);
}

std::string Generator::label() const {
    if (!symbol) {
        return format_rational(rational_scale * parse_rational(decimal));
    }
    if (rational_scale == 1) return *symbol;
    if (rational_scale == -1) return "-" + *symbol;
    return format_rational(rational_scale) + "*" + *symbol;
}

bool operator==(const Generator& a, const Generator& b) {
    if (a.symbol != b.symbol || a.rational_scale != b.rational_scale) return false;
    if (a.symbol && is_known_symbol(*a.symbol)) return true;
    return parse_rational(a.decimal) == parse_rational(b.decimal);
}

Module::Module() : data_(trivial_module_data()) {}

Module Module::create(const std::vector<Generator>& generators) {
    if (generators.size() > 8) {
        throw InputError("at most 8 generators are supported");
    }
    auto data = std::make_shared<detail::ModuleData>();
    data->generators = generators;
    for (const auto& g : generators) {
        HighFloat v = g.value();
        double d = v.to_double();
        if (v.is_zero() || !std::isfinite(d) || d == 0.0) {
            throw InputError("generator " + g.label() + " must be finite and nonzero");
        }
        data->high.push_back(std::move(v));
        data->values.push_back(d);
        data->decomposition.push_back(decompose(g));
    }
    if (auto relation = find_integer_relation(data->values)) {
        std::ostringstream msg;
        msg << "dependent generators: integer relation (";
        for (std::size_t i = 0; i < relation->size(); ++i) {
            msg << (i ? "," : "") << (*relation)[i];
        }
        msg << ") over ";
        for (std::size_t i = 0; i < generators.size(); ++i) {
            msg << (i ? ", " : "") << generators[i].label();
        }
        throw InputError(msg.str());
    }
    return Module(std::move(data));
}

std::size_t Module::rank() const {
    return data_->generators.size();
}

const std::vector<Generator>& Module::generators() const {
    return data_->generators;
}

const Generator& Module::generator(std::size_t i) const {
    return data_->generators.at(i);
}

double Module::generator_value(std::size_t i) const {
    return data_->values.at(i);
}

const HighFloat& Module::generator_high(std::size_t i) const {
    return data_->high.at(i);
}

std::string Module::describe() const {
    std::string s = "<";
    for (std::size_t i = 0; i < rank(); ++i) {
        s += (i ? ", " : "") + generator(i).label();
    }
    return s + ">";
}

bool operator==(const Module& a, const Module& b) {
    return a.data_ == b.data_ || a.data_->generators == b.data_->generators;
}

CanonicalModule canonicalize(const std::vector<Generator>& generators) {
    // Group key: symbol, or "" for exact rationals.
    std::vector<std::string> keys;
    std::vector<std::vector<std::size_t>> members;
    std::vector<Rational> values(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& g = generators[i];
        std::string key = g.symbol ? *g.symbol : "";
        values[i] = g.symbol ? g.rational_scale : g.rational_scale * parse_rational(g.decimal);
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            members.push_back({i});
        } else {
            members[static_cast<std::size_t>(it - keys.begin())].push_back(i);
        }
    }

    std::vector<Generator> merged;
    std::vector<std::pair<std::size_t, mpz_class>> placement(generators.size());
    for (std::size_t group = 0; group < keys.size(); ++group) {
        mpz_class lcm = 1;
        for (std::size_t i : members[group]) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), values[i].get_den_mpz_t());
        }
        mpz_class gcd = 0;
        for (std::size_t i : members[group]) {
            mpz_class a = values[i].get_num() * (lcm / values[i].get_den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), a.get_mpz_t());
        }
        if (gcd == 0) {
            throw InputError("generator must be nonzero");
        }
        Rational scale(gcd, lcm);
        scale.canonicalize();
        const Generator& first = generators[members[group].front()];
        Generator g = first.symbol ? first : Generator::rational(scale);
        if (first.symbol) {
            g.rational_scale = scale;
        }
        merged.push_back(g);
        for (std::size_t i : members[group]) {
            Rational k = values[i] / scale;
            placement[i] = {group, k.get_num()};
        }
    }

    CanonicalModule out{Module::create(merged), {}};
    for (const auto& [group, k] : placement) {
        Coords c(merged.size(), 0);
        if (!k.fits_slong_p()) {
            throw InputError("generator coordinate out of range");
        }
        c[group] = k.get_si();
        out.embedding.push_back(std::move(c));
    }
    return out;
}

std::optional<Coords> find_integer_relation(const std::vector<double>& values, int bound, double tol) {
    const std::size_t d = values.size();
    if (d < 2) return std::nullopt;
    const std::size_t left = d / 2;
    const std::size_t right = d - left;
    const long span = 2L * bound + 1;

    auto count = [&](std::size_t n) {
        long c = 1;
        for (std::size_t i = 0; i < n; ++i) c *= span;
        return c;
    };
    auto decode = [&](long index, std::size_t offset, std::size_t n, Coords& out) {
        for (std::size_t i = 0; i < n; ++i) {
            out[offset + i] = index % span - bound;
            index /= span;
        }
    };

    struct Partial {
        long double sum;
        long double max_term;
        long index;
    };
    auto enumerate = [&](std::size_t offset, std::size_t n) {
        std::vector<Partial> out;
        out.reserve(static_cast<std::size_t>(count(n)));
        Coords c(d, 0);
        for (long idx = 0; idx < count(n); ++idx) {
            decode(idx, offset, n, c);
            long double s = 0, m = 0;
            for (std::size_t i = 0; i < n; ++i) {
                long double term = static_cast<long double>(c[offset + i]) * values[offset + i];
                s += term;
                m = std::max(m, std::fabs(term));
            }
            out.push_back({s, m, idx});
        }
        return out;
    };

    std::vector<Partial> lefts = enumerate(0, left);
    std::sort(lefts.begin(), lefts.end(), [](const Partial& a, const Partial& b) { return a.sum < b.sum; });
    std::vector<Partial> rights = enumerate(left, right);

    long double max_g = 0;
    for (double v : values) max_g = std::max(max_g, static_cast<long double>(std::fabs(v)));
    const long double window = tol * bound * max_g;
    const long zero_left = (count(left) - 1) / 2;  // all-zero digits
    const long zero_right = (count(right) - 1) / 2;

    for (const auto& r : rights) {
        long double target = -r.sum;
        auto lo = std::lower_bound(lefts.begin(), lefts.end(), target - window,
                                   [](const Partial& p, long double v) { return p.sum < v; });
        for (auto it = lo; it != lefts.end() && it->sum <= target + window; ++it) {
            if (it->index == zero_left && r.index == zero_right) continue;
            long double m = std::max(it->max_term, r.max_term);
            if (std::fabs(it->sum + r.sum) < tol * m) {
                Coords c(d, 0);
                decode(it->index, 0, left, c);
                decode(r.index, left, right, c);
                // Report the primitive relation with a positive leading entry.
                std::int64_t g = 0;
                for (auto x : c) g = std::gcd(g, x);
                const auto lead = *std::find_if(c.begin(), c.end(), [](std::int64_t x) { return x != 0; });
                if (lead < 0) g = -g;
                for (auto& x : c) x /= g;
                return c;
            }
        }
    }
    return std::nullopt;
}

Frequency::Frequency(Module module, Coords coords) : module_(std::move(module)), coords_(std::move(coords)) {
    if (coords_.size() != module_.rank()) {
        throw InputError("frequency has " + std::to_string(coords_.size()) + " coordinates, module " +
                         module_.describe() + " has rank " + std::to_string(module_.rank()));
    }
}

Frequency Frequency::zero(const Module& module) {
    return Frequency(module, Coords(module.rank(), 0));
}

Frequency Frequency::unit(const Module& module, std::size_t i) {
    Coords c(module.rank(), 0);
    c.at(i) = 1;
    return Frequency(module, std::move(c));
}

bool Frequency::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t v) { return v == 0; });
}

Frequency Frequency::operator-() const {
    Coords c = coords_;
    for (auto& v : c) v = -v;
    return Frequency(module_, std::move(c));
}

Frequency operator+(const Frequency& a, const Frequency& b) {
    require_same_module(a.module_, b.module_, "frequency addition");
    Coords c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return Frequency(a.module_, std::move(c));
}

bool operator==(const Frequency& a, const Frequency& b) {
    return a.coords_ == b.coords_ && a.module_ == b.module_;
}

std::string Frequency::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        s += (i ? "," : "") + std::to_string(coords_[i]);
    }
    return s + ")";
}

Frequency freq_add(const Frequency& a, const Frequency& b) {
    return a + b;
}

HighFloat freq_value_high(const Frequency& a) {
    HighFloat sum;
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (a.coords()[i] != 0) {
            sum = sum + HighFloat::from_integer(static_cast<long>(a.coords()[i])) * a.module().generator_high(i);
        }
    }
    return sum;
}

double freq_value(const Frequency& a) {
    return freq_value_high(a).to_double();
}

double freq_value_fast(const Frequency& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        sum += static_cast<double>(a.coords()[i]) * a.module().generator_value(i);
    }
    return sum;
}

FrequencyClass classify(const Frequency& a) {
    const auto& data = ModuleAccess::data(a.module());
    std::map<std::string, Rational> total;
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        if (a.coords()[i] == 0) continue;
        for (const auto& [basis, c] : data.decomposition[i]) {
            total[basis] += c * Rational(static_cast<long>(a.coords()[i]));
        }
    }
    bool has_pi = false, has_sqrt = false, has_other = false;
    Rational rational_part = 0, pi_part = 0;
    for (const auto& [basis, c] : total) {
        if (sgn(c) == 0) continue;
        if (basis == "1") {
            rational_part = c;
        } else if (basis == "pi") {
            has_pi = true;
            pi_part = c;
        } else if (basis.compare(0, 4, "sqrt") == 0) {
            has_sqrt = true;
        } else {
            has_other = true;
        }
    }
    using Kind = FrequencyClass::Kind;
    if (has_other) return {Kind::Unknown, 0};
    if (has_pi) {
        if (has_sqrt || sgn(rational_part) != 0) return {Kind::Unknown, 0};
        return {Kind::PiMultiple, pi_part};
    }
    if (has_sqrt) return {Kind::IrrationalAlgebraic, 0};
    if (sgn(rational_part) == 0) return {Kind::Zero, 0};
    return {Kind::Rational, rational_part};
}

std::optional<Rational> exact_pi_ratio(const Frequency& lambda, const Real& t) {
    if (!t.is_exact()) return std::nullopt;
    FrequencyClass c = classify(lambda);
    using Kind = FrequencyClass::Kind;
    if (c.kind == Kind::Zero || t.is_zero()) return Rational(0);
    if (c.kind == Kind::Rational && t.pi_power() == 1) return c.coefficient * t.coefficient();
    if (c.kind == Kind::PiMultiple && t.pi_power() == 0) return c.coefficient * t.coefficient();
    return std::nullopt;
}

Scalar phase(const Frequency& lambda, const Real& t) {
    if (lambda.is_zero() || t.is_zero()) return Scalar(1);
    if (auto r = exact_pi_ratio(lambda, t)) {
        return unit_from_turns(Rational(*r / 2));
    }
    return unit_from_turns(turns_of_radians(freq_value_high(lambda) * t.high()));
}

std::optional<bool> exactly_in_two_pi_z(const Frequency& lambda, const Real& t) {
    if (lambda.is_zero() || t.is_zero()) return true;
    if (!t.is_exact()) return std::nullopt;
    if (auto r = exact_pi_ratio(lambda, t)) {
        return is_integer(Rational(*r / 2));
    }
    using Kind = FrequencyClass::Kind;
    FrequencyClass c = classify(lambda);
    switch (c.kind) {
        case Kind::Zero:
            return true;
        case Kind::Rational:
        case Kind::IrrationalAlgebraic:
            // Nonzero algebraic (times pi or not) is never 2 pi m, m != 0.
            return false;
        case Kind::PiMultiple:
            // q t pi^2 with t != 0 cannot equal 2 pi m.
            return false;
        case Kind::Unknown:
            return std::nullopt;
    }
    return std::nullopt;
}

bool in_two_pi_z(const Frequency& lambda, const Real& t, double tol) {
    if (auto exact = exactly_in_two_pi_z(lambda, t)) return *exact;
    HighFloat turns = freq_value_high(lambda) * t.high() / (HighFloat::pi() * HighFloat::from_integer(2));
    double f = turns.fractional().to_double();
    return std::min(f, 1.0 - f) < tol;
}

void require_same_module(const Module& a, const Module& b, const char* operation) {
    if (!(a == b)) {
        throw InputError(std::string(operation) + ": module mismatch " + a.describe() + " vs " + b.describe());
    }
}

}  // namespace bohr
