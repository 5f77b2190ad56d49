#pragma once

// Parser for the one-variable expressions accepted on the command line for
// the Cauchy data h and hw. Variables: x (arclength) and kappa (the curve's
// own curvature). Evaluation is in jet arithmetic so derivatives of the data
// come out automatically.

#include <cctype>
#include <functional>
#include <memory>
#include <string>

#include "memshape/cauchy.hpp"
#include "memshape/errors.hpp"
#include "memshape/taylor.hpp"

namespace memshape {

namespace detail {

using DatumNode = std::function<Jet(const Jet& x, const Jet& kappa)>;

class DatumParser {
public:
    explicit DatumParser(const std::string& src) : src_(src) {}

    DatumNode parse() {
        DatumNode e = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw invariant_error("datum: trailing input at '" + src_.substr(pos_) + "'");
        return e;
    }

private:
    DatumNode expr() {
        DatumNode lhs = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                DatumNode rhs = term();
                lhs = [lhs, rhs](const Jet& x, const Jet& k) { return lhs(x, k) + rhs(x, k); };
            } else if (accept('-')) {
                DatumNode rhs = term();
                lhs = [lhs, rhs](const Jet& x, const Jet& k) { return lhs(x, k) - rhs(x, k); };
            } else {
                return lhs;
            }
        }
    }

    DatumNode term() {
        DatumNode lhs = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                DatumNode rhs = unary();
                lhs = [lhs, rhs](const Jet& x, const Jet& k) { return lhs(x, k) * rhs(x, k); };
            } else if (accept('/')) {
                DatumNode rhs = unary();
                lhs = [lhs, rhs](const Jet& x, const Jet& k) { return lhs(x, k) / rhs(x, k); };
            } else {
                return lhs;
            }
        }
    }

    DatumNode unary() {
        skip_ws();
        if (accept('-')) {
            DatumNode e = unary();
            return [e](const Jet& x, const Jet& k) { return -1.0 * e(x, k); };
        }
        return power();
    }

    DatumNode power() {
        DatumNode base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw invariant_error("datum: exponent must be an integer literal");
            int e = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                e = 10 * e + (src_[pos_++] - '0');
            if (neg) e = -e;
            return [base, e](const Jet& x, const Jet& k) { return jet_pow(base(x, k), e); };
        }
        return base;
    }

    DatumNode atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw invariant_error("datum: unexpected end of expression");
        const char c = src_[pos_];
        if (accept('(')) {
            DatumNode e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v;
            try {
                v = std::stod(src_.substr(pos_), &used);
            } catch (const std::exception&) {
                throw invariant_error("datum: bad number at '" + src_.substr(pos_) + "'");
            }
            pos_ += used;
            return [v](const Jet&, const Jet&) { return Jet::constant(v); };
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                name += src_[pos_++];
            if (name == "x") return [](const Jet& x, const Jet&) { return x; };
            if (name == "kappa") return [](const Jet&, const Jet& k) { return k; };
            if (name == "pi")
                return [](const Jet&, const Jet&) { return Jet::constant(kPi); };
            // function call
            skip_ws();
            if (!accept('(')) throw invariant_error("datum: unknown symbol '" + name + "'");
            DatumNode arg = expr();
            expect(')');
            if (name == "sin")
                return [arg](const Jet& x, const Jet& k) { return jet_sin(arg(x, k)); };
            if (name == "cos")
                return [arg](const Jet& x, const Jet& k) { return jet_cos(arg(x, k)); };
            if (name == "exp")
                return [arg](const Jet& x, const Jet& k) { return jet_exp(arg(x, k)); };
            if (name == "sqrt")
                return [arg](const Jet& x, const Jet& k) { return jet_sqrt(arg(x, k)); };
            throw invariant_error("datum: unknown function '" + name + "'");
        }
        throw invariant_error(std::string("datum: unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw invariant_error(std::string("datum: expected '") + c + "'");
    }

    std::string src_;
    size_t pos_ = 0;
};

} // namespace detail

// Compile an expression in x and kappa into a CauchyFn. The x jet carries
// unit first derivative; kappa comes from the curve sample.
inline CauchyFn parse_datum(const std::string& src) {
    detail::DatumNode node = detail::DatumParser(src).parse();
    return [node](double x, const CurveSample& cs) {
        Jet xj = Jet::variable(x);
        Jet kj;
        kj.c[0] = cs.kappa;
        kj.c[1] = cs.dkappa;
        kj.c[2] = cs.d2kappa / 2.0;
        return node(xj, kj);
    };
}

} // namespace memshape
