#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "blochdiff/errors.hpp"

namespace blochdiff {

/// Expression tree for a holomorphic map on the unit disk. Immutable and
/// cheap to copy (nodes are shared). Used for both self-maps and multipliers.
class SymbolExpr {
public:
    enum class Kind { Identity, Constant, Scale, Monomial, MobiusTo, Sum, Product, Compose };

    static SymbolExpr identity() { return SymbolExpr(std::make_shared<Node>(Kind::Identity)); }

    static SymbolExpr constant(Cplx c) {
        auto n = std::make_shared<Node>(Kind::Constant);
        n->c = c;
        return SymbolExpr(std::move(n));
    }

    static SymbolExpr scale(Cplx c, SymbolExpr child) {
        auto n = std::make_shared<Node>(Kind::Scale);
        n->c = c;
        n->children.push_back(std::move(child));
        return SymbolExpr(std::move(n));
    }

    static SymbolExpr monomial(int k) {
        if (k < 1) throw ConfigError("monomial: exponent must be a positive integer");
        auto n = std::make_shared<Node>(Kind::Monomial);
        n->k = k;
        return SymbolExpr(std::move(n));
    }

    /// (a - z) / (1 - conj(a) z), the disk automorphism exchanging 0 and a.
    static SymbolExpr mobius(Cplx a) {
        if (std::abs(a) >= 1.0) throw ConfigError("mobius: parameter must satisfy |a| < 1");
        auto n = std::make_shared<Node>(Kind::MobiusTo);
        n->c = a;
        return SymbolExpr(std::move(n));
    }

    static SymbolExpr sum(std::vector<SymbolExpr> children) {
        if (children.empty()) throw ConfigError("sum: needs at least one term");
        auto n = std::make_shared<Node>(Kind::Sum);
        n->children = std::move(children);
        return SymbolExpr(std::move(n));
    }

    static SymbolExpr product(std::vector<SymbolExpr> children) {
        if (children.empty()) throw ConfigError("product: needs at least one factor");
        auto n = std::make_shared<Node>(Kind::Product);
        n->children = std::move(children);
        return SymbolExpr(std::move(n));
    }

    static SymbolExpr compose(SymbolExpr outer, SymbolExpr inner) {
        auto n = std::make_shared<Node>(Kind::Compose);
        n->children.push_back(std::move(outer));
        n->children.push_back(std::move(inner));
        return SymbolExpr(std::move(n));
    }

    Kind kind() const { return node_->kind; }

    /// Evaluate at a point of the open disk. The |z| < 1 check applies to the
    /// top-level argument only; intermediate values of a composition are taken
    /// as produced.
    Cplx eval(Cplx z) const {
        if (std::abs(z) >= 1.0) throw DomainError("eval_symbol: |z| >= 1");
        return eval_unchecked(z);
    }

    Cplx eval_unchecked(Cplx z) const { return node_->eval(z); }

    std::string str() const {
        std::ostringstream os;
        node_->print(os);
        return os.str();
    }

private:
    struct Node {
        explicit Node(Kind kk) : kind(kk) {}
        Kind kind;
        Cplx c{0.0, 0.0};
        int k = 0;
        std::vector<SymbolExpr> children;

        Cplx eval(Cplx z) const {
            switch (kind) {
            case Kind::Identity: return z;
            case Kind::Constant: return c;
            case Kind::Scale: return c * children[0].eval_unchecked(z);
            case Kind::Monomial: {
                Cplx p{1.0, 0.0};
                for (int i = 0; i < k; ++i) p *= z;
                return p;
            }
            case Kind::MobiusTo: {
                Cplx den = 1.0 - std::conj(c) * z;
                if (std::abs(den) < 1e-15) throw DomainError("mobius: pole reached");
                return (c - z) / den;
            }
            case Kind::Sum: {
                Cplx s{0.0, 0.0};
                for (const auto& ch : children) s += ch.eval_unchecked(z);
                return s;
            }
            case Kind::Product: {
                Cplx p{1.0, 0.0};
                for (const auto& ch : children) p *= ch.eval_unchecked(z);
                return p;
            }
            case Kind::Compose:
                return children[0].eval_unchecked(children[1].eval_unchecked(z));
            }
            return {0.0, 0.0};
        }

        static void print_cplx(std::ostream& os, Cplx v) {
            os << v.real();
            if (v.imag() != 0.0) {
                os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            }
        }

        void print(std::ostream& os) const {
            switch (kind) {
            case Kind::Identity: os << "identity"; break;
            case Kind::Constant: os << "constant("; print_cplx(os, c); os << ")"; break;
            case Kind::Scale:
                os << "scale(";
                print_cplx(os, c);
                os << ", ";
                children[0].node_->print(os);
                os << ")";
                break;
            case Kind::Monomial: os << "monomial(" << k << ")"; break;
            case Kind::MobiusTo: os << "mobius("; print_cplx(os, c); os << ")"; break;
            case Kind::Sum:
            case Kind::Product: {
                os << (kind == Kind::Sum ? "sum(" : "product(");
                for (size_t i = 0; i < children.size(); ++i) {
                    if (i) os << ", ";
                    children[i].node_->print(os);
                }
                os << ")";
                break;
            }
            case Kind::Compose:
                os << "compose(";
                children[0].node_->print(os);
                os << ", ";
                children[1].node_->print(os);
                os << ")";
                break;
            }
        }
    };

    explicit SymbolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// --- parser for the nested textual form used in configs ----------------------
//   expr  := name '(' expr {',' expr} ')' | 'identity' | complex-literal
//   names := constant, monomial, mobius, scale, sum, product, compose
//   complex-literal := 1.5 | -0.3 | 0.25i | 0.3+0.4i | 0.3-0.4i
// A bare complex literal is shorthand for constant(...).

namespace detail {

class SymbolParser {
public:
    explicit SymbolParser(std::string text) : s_(std::move(text)) {}

    SymbolExpr parse() {
        SymbolExpr e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("symbol parse error at position " + std::to_string(pos_) + ": " + msg +
                          " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string parse_name() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    double parse_real() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        bool digits = false;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            digits = digits || std::isdigit(static_cast<unsigned char>(s_[pos_]));
            ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (!digits) fail("expected number");
        return std::stod(s_.substr(start, pos_ - start));
    }

    Cplx parse_complex() {
        double first = parse_real();
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return {0.0, first};
        }
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            size_t save = pos_;
            double second = parse_real();
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                return {first, second};
            }
            pos_ = save; // not an imaginary part; leave for caller
        }
        return {first, 0.0};
    }

    SymbolExpr parse_expr() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')
            return SymbolExpr::constant(parse_complex());
        if (c == 'i' && !word_follows("identity")) {
            // lone 'i'
            ++pos_;
            return SymbolExpr::constant(Cplx{0.0, 1.0});
        }

        std::string name = parse_name();
        if (name == "identity") return SymbolExpr::identity();
        if (!consume('(')) fail("expected '(' after '" + name + "'");

        if (name == "constant") {
            Cplx v = parse_complex();
            expect_close();
            return SymbolExpr::constant(v);
        }
        if (name == "monomial") {
            double v = parse_real();
            expect_close();
            int k = static_cast<int>(v);
            if (static_cast<double>(k) != v) fail("monomial exponent must be an integer");
            return SymbolExpr::monomial(k);
        }
        if (name == "mobius") {
            Cplx v = parse_complex();
            expect_close();
            return SymbolExpr::mobius(v);
        }
        if (name == "scale") {
            Cplx v = parse_complex();
            if (!consume(',')) fail("scale: expected ','");
            SymbolExpr ch = parse_expr();
            expect_close();
            return SymbolExpr::scale(v, std::move(ch));
        }
        if (name == "sum" || name == "product") {
            std::vector<SymbolExpr> ch;
            ch.push_back(parse_expr());
            while (consume(',')) ch.push_back(parse_expr());
            expect_close();
            return name == "sum" ? SymbolExpr::sum(std::move(ch))
                                 : SymbolExpr::product(std::move(ch));
        }
        if (name == "compose") {
            SymbolExpr outer = parse_expr();
            if (!consume(',')) fail("compose: expected ','");
            SymbolExpr inner = parse_expr();
            expect_close();
            return SymbolExpr::compose(std::move(outer), std::move(inner));
        }
        fail("unknown constructor '" + name + "'");
    }

    bool word_follows(const std::string& w) const {
        return s_.compare(pos_, w.size(), w) == 0;
    }

    void expect_close() {
        if (!consume(')')) fail("expected ')'");
    }

    std::string s_;
    size_t pos_ = 0;
};

} // namespace detail

inline SymbolExpr parse_symbol(const std::string& text) {
    return detail::SymbolParser(text).parse();
}

/// Radial weight on the disk: strictly positive, continuous, bounded.
struct WeightSpec {
    enum class Kind { StandardPower, ConstantOne, CustomRadial };

    Kind kind = Kind::ConstantOne;
    double beta = 1.0;                  // StandardPower: v(z) = (1-|z|^2)^beta, beta > 0
    std::vector<double> coeffs;         // CustomRadial: polynomial in s = 1-|z|^2

    static WeightSpec standard_power(double beta) {
        if (!(beta > 0.0)) throw ConfigError("weight: StandardPower requires beta > 0");
        WeightSpec w;
        w.kind = Kind::StandardPower;
        w.beta = beta;
        return w;
    }

    static WeightSpec one() { return WeightSpec{}; }

    static WeightSpec custom_radial(std::vector<double> c) {
        if (c.empty()) throw ConfigError("weight: CustomRadial needs coefficients");
        WeightSpec w;
        w.kind = Kind::CustomRadial;
        w.coeffs = std::move(c);
        return w;
    }

    std::string str() const {
        switch (kind) {
        case Kind::StandardPower: {
            std::ostringstream os;
            os << "power(" << beta << ")";
            return os.str();
        }
        case Kind::ConstantOne: return "one";
        case Kind::CustomRadial: {
            std::ostringstream os;
            os << "radial(";
            for (size_t i = 0; i < coeffs.size(); ++i) {
                if (i) os << ", ";
                os << coeffs[i];
            }
            os << ")";
            return os.str();
        }
        }
        return "?";
    }
};

inline double eval_weight(const WeightSpec& w, Cplx z) {
    double r2 = std::norm(z);
    if (r2 >= 1.0) throw DomainError("eval_weight: |z| >= 1");
    double s = 1.0 - r2;
    switch (w.kind) {
    case WeightSpec::Kind::StandardPower: return std::pow(s, w.beta);
    case WeightSpec::Kind::ConstantOne: return 1.0;
    case WeightSpec::Kind::CustomRadial: {
        double acc = 0.0;
        for (size_t i = w.coeffs.size(); i-- > 0;) acc = acc * s + w.coeffs[i];
        if (!(acc > 0.0)) throw WeightError("custom weight evaluated <= 0");
        return acc;
    }
    }
    return 1.0;
}

/// Source/target space data: B^alpha -> H_v^infty with m-fold differentiation.
struct SpaceParams {
    double alpha = 1.0;
    int m = 0;
    WeightSpec weight;

    SpaceParams(double alpha_, int m_, WeightSpec w)
        : alpha(alpha_), m(m_), weight(std::move(w)) {
        if (!(alpha > 0.0)) throw ConfigError("SpaceParams: alpha must be > 0");
        if (m < 0) throw ConfigError("SpaceParams: m must be >= 0");
        if (!(series_base() > 0.0))
            throw ConfigError("SpaceParams: 2*alpha + m - 1 must be > 0");
    }

    /// Exponent 2*alpha + m - 1 of the test-function kernel.
    double series_base() const { return 2.0 * alpha + m - 1.0; }

    /// Exponent alpha + m - 1 of the boundary quotient.
    double t_exponent() const { return alpha + m - 1.0; }
};

struct SymbolPair {
    SymbolExpr phi1;
    SymbolExpr u1;
    SymbolExpr phi2;
    SymbolExpr u2;
};

} // namespace blochdiff
