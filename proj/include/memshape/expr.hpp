#pragma once

// Symbolic scalar expressions over the ten fiber coordinates and the five
// material constants. The canonical form is an expanded sum of monomials;
// material constants may carry negative exponents (so 1/(2k) is a monomial),
// fiber variables may not. Quotients are therefore supported exactly when the
// divisor normalizes to a single monomial whose fiber part divides every term.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "memshape/errors.hpp"
#include "memshape/types.hpp"

namespace memshape {

enum Sym : int {
    SymP = 0, SymQ, SymA, SymC, SymP1, SymQ2, SymR, SymA1, SymC2, SymL,
    SymK, SymKbar, SymC0, SymPressure, SymLambda,
    kNumVars = 10,
    kNumSyms = 15,
};

inline const char* sym_name(int s) {
    static const char* names[kNumSyms] = {"p",  "q",    "a",  "c", "p1",     "q2", "r", "a1",
                                          "c2", "l",    "k",  "kbar", "c0", "P",  "lambda"};
    return names[s];
}

class ScalarExpr {
public:
    struct Term {
        double coef = 0;
        std::array<int8_t, kNumSyms> pw{};

        bool same_powers(const Term& o) const { return pw == o.pw; }
        bool operator<(const Term& o) const { return pw < o.pw; }
    };

    ScalarExpr() = default;

    static ScalarExpr constant(double v) {
        ScalarExpr e;
        if (v != 0) {
            Term t;
            t.coef = v;
            e.terms_.push_back(t);
        }
        return e;
    }
    static ScalarExpr sym(int s) {
        if (s < 0 || s >= kNumSyms) throw invariant_error("ScalarExpr: unknown symbol");
        ScalarExpr e;
        Term t;
        t.coef = 1;
        t.pw[s] = 1;
        e.terms_.push_back(t);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    ScalarExpr operator+(const ScalarExpr& o) const {
        ScalarExpr r;
        r.terms_ = terms_;
        r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
        r.canonicalize();
        return r;
    }
    ScalarExpr operator-(const ScalarExpr& o) const { return *this + (-1.0) * o; }
    ScalarExpr operator-() const { return (-1.0) * *this; }
    friend ScalarExpr operator*(double s, const ScalarExpr& e) {
        ScalarExpr r = e;
        for (auto& t : r.terms_) t.coef *= s;
        r.canonicalize();
        return r;
    }
    ScalarExpr operator*(const ScalarExpr& o) const {
        ScalarExpr r;
        r.terms_.reserve(terms_.size() * o.terms_.size());
        for (const auto& t : terms_)
            for (const auto& u : o.terms_) {
                Term m;
                m.coef = t.coef * u.coef;
                for (int i = 0; i < kNumSyms; ++i) {
                    int p = t.pw[i] + u.pw[i];
                    if (p > 127) throw invariant_error("ScalarExpr: exponent overflow");
                    m.pw[i] = static_cast<int8_t>(p);
                }
                r.terms_.push_back(m);
            }
        r.canonicalize();
        return r;
    }

    ScalarExpr pow(int n) const {
        if (n < 0) return ScalarExpr::constant(1.0) / this->pow(-n);
        ScalarExpr r = constant(1.0);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    // Division; divisor must normalize to a single monomial and its fiber part
    // must divide every term of the dividend.
    ScalarExpr operator/(const ScalarExpr& d) const {
        if (d.terms_.empty()) throw invariant_error("ScalarExpr: division by zero");
        if (d.terms_.size() != 1)
            throw invariant_error(
                "ScalarExpr: unsupported expression (division by a non-monomial)");
        const Term& dt = d.terms_[0];
        ScalarExpr r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Term m;
            m.coef = t.coef / dt.coef;
            for (int i = 0; i < kNumSyms; ++i) {
                int p = t.pw[i] - dt.pw[i];
                if (i < kNumVars && p < 0)
                    throw invariant_error(
                        "ScalarExpr: unsupported expression (fiber variable in denominator)");
                m.pw[i] = static_cast<int8_t>(p);
            }
            r.terms_.push_back(m);
        }
        r.canonicalize();
        return r;
    }

    // Partial derivative with respect to a fiber variable or material constant.
    ScalarExpr diff(int s) const {
        if (s < 0 || s >= kNumSyms) throw invariant_error("ScalarExpr: unknown symbol");
        ScalarExpr r;
        for (const auto& t : terms_) {
            if (t.pw[s] == 0) continue;
            Term m = t;
            m.coef = t.coef * t.pw[s];
            m.pw[s] = static_cast<int8_t>(t.pw[s] - 1);
            r.terms_.push_back(m);
        }
        r.canonicalize();
        return r;
    }

    // Already canonical by construction; exposed so callers can assert it.
    ScalarExpr normalize() const {
        ScalarExpr r = *this;
        r.canonicalize();
        return r;
    }

    double eval(const FiberPoint& f, const MaterialParams& mp = MaterialParams{}) const {
        std::array<double, kNumSyms> v = {f.p,  f.q,  f.a,       f.c,           f.p1,
                                          f.q2, f.r,  f.a1,      f.c2,          f.l,
                                          mp.k, mp.kbar, mp.c0,  mp.pressure,   mp.lambda};
        double sum = 0;
        for (const auto& t : terms_) {
            double prod = t.coef;
            for (int i = 0; i < kNumSyms; ++i) {
                int p = t.pw[i];
                if (p == 0) continue;
                if (p > 0 && p <= 4) {
                    for (int j = 0; j < p; ++j) prod *= v[i];
                } else {
                    if (v[i] == 0 && p < 0)
                        throw numeric_error("ScalarExpr::eval: division by zero constant");
                    prod *= std::pow(v[i], p);
                }
            }
            sum += prod;
        }
        return sum;
    }

    // True if the expression involves the given symbol.
    bool depends_on(int s) const {
        for (const auto& t : terms_)
            if (t.pw[s] != 0) return true;
        return false;
    }

    bool operator==(const ScalarExpr& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].coef == o.terms_[i].coef && terms_[i].pw == o.terms_[i].pw))
                return false;
        return true;
    }

    std::string text() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            double c = t.coef;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            double ac = std::abs(c);
            bool has_factor = false;
            for (int i = 0; i < kNumSyms; ++i)
                if (t.pw[i] != 0) has_factor = true;
            if (ac != 1.0 || !has_factor) {
                os << format_number(ac);
                if (has_factor) os << "*";
            }
            bool firstf = true;
            for (int i = 0; i < kNumSyms; ++i) {
                if (t.pw[i] == 0) continue;
                if (!firstf) os << "*";
                firstf = false;
                os << sym_name(i);
                if (t.pw[i] != 1) os << "^" << static_cast<int>(t.pw[i]);
            }
        }
        return os.str();
    }

private:
    static std::string format_number(double v) {
        std::ostringstream os;
        os.precision(15);
        os << v;
        return os.str();
    }

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end());
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!out.empty() && out.back().same_powers(t))
                out.back().coef += t.coef;
            else
                out.push_back(t);
        }
        std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
        terms_ = std::move(out);
    }

    std::vector<Term> terms_;
};

inline ScalarExpr operator*(const ScalarExpr& e, double s) { return s * e; }
inline ScalarExpr eval_sym(int s) { return ScalarExpr::sym(s); }

// eval_scalar: named free-function form of evaluation.
inline double eval_scalar(const ScalarExpr& e, const FiberPoint& f,
                          const MaterialParams& mp = MaterialParams{}) {
    return e.eval(f, mp);
}

} // namespace memshape
