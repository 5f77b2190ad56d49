#pragma once

// Exterior calculus on the adapted coframe. Degree-1 forms live on the fixed
// 16-element basis {th1, th2, th3, th21, th31, th32, dp, dq, da, dc, da1, dc2,
// dp1, dq2, dr, dl} with ScalarExpr coefficients depending on the fiber
// coordinates only. The exterior derivative combines the flat-space structure
// equations for the frame forms with coefficient differentials; reduction
// substitutes the contact relations of the prolonged system.

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "memshape/errors.hpp"
#include "memshape/expr.hpp"

namespace memshape {

enum Basis1 : int {
    Th1 = 0, Th2, Th3, Th21, Th31, Th32,
    BDp, BDq, BDa, BDc, BDa1, BDc2, BDp1, BDq2, BDr, BDl,
    kNumBasis1 = 16,
};

inline const char* basis1_name(int b) {
    static const char* names[kNumBasis1] = {"th1", "th2",  "th3",  "th21", "th31", "th32",
                                            "dp",  "dq",   "da",   "dc",   "da1",  "dc2",
                                            "dp1", "dq2",  "dr",   "dl"};
    return names[b];
}

// Basis index of the differential of fiber variable v (Sym order).
inline int basis_of_var(int v) {
    static const int map[kNumVars] = {BDp, BDq, BDa, BDc, BDp1, BDq2, BDr, BDa1, BDc2, BDl};
    return map[v];
}

struct Form1 {
    std::array<ScalarExpr, kNumBasis1> c{};

    Form1& add(int b, const ScalarExpr& e) {
        c[b] = c[b] + e;
        return *this;
    }
    bool is_zero() const {
        for (const auto& e : c)
            if (!e.is_zero()) return false;
        return true;
    }
};

struct Form2 {
    // canonical key (i, j) with i < j
    std::map<std::pair<int, int>, ScalarExpr> m;

    void add(int i, int j, const ScalarExpr& e) {
        if (e.is_zero()) return;
        if (i == j) return;
        double sign = 1;
        if (i > j) {
            std::swap(i, j);
            sign = -1;
        }
        auto key = std::make_pair(i, j);
        auto it = m.find(key);
        ScalarExpr v = sign * e;
        if (it == m.end())
            m.emplace(key, v);
        else {
            it->second = it->second + v;
            if (it->second.is_zero()) m.erase(it);
        }
    }
    // Signed coefficient of e_i ^ e_j.
    ScalarExpr get(int i, int j) const {
        double sign = 1;
        if (i > j) {
            std::swap(i, j);
            sign = -1;
        }
        auto it = m.find(std::make_pair(i, j));
        if (it == m.end()) return ScalarExpr{};
        return sign * it->second;
    }
    bool is_zero() const { return m.empty(); }
};

struct Form3 {
    std::map<std::array<int, 3>, ScalarExpr> m;

    void add(std::array<int, 3> idx, const ScalarExpr& e) {
        if (e.is_zero()) return;
        // sort with permutation sign
        double sign = 1;
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < 2; ++i)
                if (idx[i] > idx[i + 1]) {
                    std::swap(idx[i], idx[i + 1]);
                    sign = -sign;
                }
        if (idx[0] == idx[1] || idx[1] == idx[2]) return;
        auto it = m.find(idx);
        ScalarExpr v = sign * e;
        if (it == m.end())
            m.emplace(idx, v);
        else {
            it->second = it->second + v;
            if (it->second.is_zero()) m.erase(it);
        }
    }
    bool is_zero() const { return m.empty(); }
};

inline Form2 wedge(const Form1& a, const Form1& b) {
    Form2 out;
    for (int i = 0; i < kNumBasis1; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < kNumBasis1; ++j) {
            if (i == j || b.c[j].is_zero()) continue;
            out.add(i, j, a.c[i] * b.c[j]);
        }
    }
    return out;
}

inline Form3 wedge(const Form1& a, const Form2& b) {
    Form3 out;
    for (int i = 0; i < kNumBasis1; ++i) {
        if (a.c[i].is_zero()) continue;
        for (const auto& [key, g] : b.m) out.add({i, key.first, key.second}, a.c[i] * g);
    }
    return out;
}

// Structure equations of the frame bundle: d of each basis 1-form as a Form2
// with constant coefficients; fiber differentials are closed.
inline const Form2& d_basis(int b) {
    static const std::array<Form2, kNumBasis1> table = [] {
        std::array<Form2, kNumBasis1> t;
        auto one = ScalarExpr::constant(1.0);
        t[Th1].add(Th21, Th2, one);
        t[Th1].add(Th31, Th3, one);
        t[Th2].add(Th21, Th1, -1.0 * one);
        t[Th2].add(Th32, Th3, one);
        t[Th3].add(Th31, Th1, -1.0 * one);
        t[Th3].add(Th32, Th2, -1.0 * one);
        t[Th21].add(Th32, Th31, one);
        t[Th31].add(Th32, Th21, -1.0 * one);
        t[Th32].add(Th31, Th21, one);
        return t;
    }();
    return table[b];
}

inline Form2 exterior_d(const Form1& w) {
    Form2 out;
    for (int b = 0; b < kNumBasis1; ++b) {
        const ScalarExpr& g = w.c[b];
        if (g.is_zero()) continue;
        for (int v = 0; v < kNumVars; ++v) {
            ScalarExpr dg = g.diff(v);
            if (!dg.is_zero()) out.add(basis_of_var(v), b, dg);
        }
        for (const auto& [key, coef] : d_basis(b).m) out.add(key.first, key.second, g * coef);
    }
    return out;
}

inline Form3 exterior_d(const Form2& w) {
    Form3 out;
    for (const auto& [key, g] : w.m) {
        const int i = key.first, j = key.second;
        for (int v = 0; v < kNumVars; ++v) {
            ScalarExpr dg = g.diff(v);
            if (!dg.is_zero()) out.add({basis_of_var(v), i, j}, dg);
        }
        for (const auto& [dk, coef] : d_basis(i).m) out.add({dk.first, dk.second, j}, g * coef);
        for (const auto& [dk, coef] : d_basis(j).m) out.add({i, dk.first, dk.second}, -1.0 * (g * coef));
    }
    return out;
}

// Psi(p, q, a, c, a1, c2) = Phi(a, c) + p c2 - q a1.
inline ScalarExpr psi_from_phi(const ScalarExpr& phi) {
    return phi + ScalarExpr::sym(SymP) * ScalarExpr::sym(SymC2) -
           ScalarExpr::sym(SymQ) * ScalarExpr::sym(SymA1);
}

// The ten generator 1-forms and the reduction substitutions of the prolonged
// contact system, for a given curvature potential Phi(a, c).
class StructureTable {
public:
    explicit StructureTable(const ScalarExpr& phi) : phi_(phi) {
        const ScalarExpr p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ);
        const ScalarExpr a = ScalarExpr::sym(SymA), c = ScalarExpr::sym(SymC);
        const ScalarExpr p1 = ScalarExpr::sym(SymP1), q2 = ScalarExpr::sym(SymQ2);
        const ScalarExpr r = ScalarExpr::sym(SymR), a1 = ScalarExpr::sym(SymA1);
        const ScalarExpr c2 = ScalarExpr::sym(SymC2), l = ScalarExpr::sym(SymL);
        const ScalarExpr half = ScalarExpr::constant(0.5);
        const ScalarExpr k2 = a * c + p * p + q * q;
        const ScalarExpr ca = c - a;
        psi_ = psi_from_phi(phi);

        // generators
        gen_[0].add(Th3, ScalarExpr::constant(1.0));                       // alpha1
        gen_[1].add(Th21, ScalarExpr::constant(1.0)).add(Th1, -p).add(Th2, -q);  // alpha2
        gen_[2].add(Th31, ScalarExpr::constant(1.0)).add(Th1, -a);        // alpha3
        gen_[3].add(Th32, ScalarExpr::constant(1.0)).add(Th2, -c);        // alpha4
        gen_[4].add(BDp, ScalarExpr::constant(1.0)).add(Th1, -p1).add(Th2, -(r + half * k2));  // beta1
        gen_[5].add(BDq, ScalarExpr::constant(1.0)).add(Th1, -(r - half * k2)).add(Th2, -q2);  // beta2
        gen_[6].add(BDa, ScalarExpr::constant(1.0)).add(Th1, -a1).add(Th2, p * ca);            // gamma1
        gen_[7].add(BDc, ScalarExpr::constant(1.0)).add(Th1, q * ca).add(Th2, -c2);            // gamma2
        gen_[8].add(BDa1, ScalarExpr::constant(1.0))
            .add(Th1, -(l + r * ca + psi_))
            .add(Th2, p1 * ca - 2.0 * (a1 * p));                                               // delta1
        gen_[9].add(BDc2, ScalarExpr::constant(1.0))
            .add(Th1, q2 * ca + 2.0 * (c2 * q))
            .add(Th2, l - r * ca - psi_);                                                      // delta2

        // substitutions: each basis form modulo the ideal
        for (int b = 0; b < kNumBasis1; ++b) subst_[b].add(b, ScalarExpr::constant(1.0));
        subst_[Th3] = Form1{};
        subst_[Th21] = Form1{}.add(Th1, p).add(Th2, q);
        subst_[Th31] = Form1{}.add(Th1, a);
        subst_[Th32] = Form1{}.add(Th2, c);
        subst_[BDp] = Form1{}.add(Th1, p1).add(Th2, r + half * k2);
        subst_[BDq] = Form1{}.add(Th1, r - half * k2).add(Th2, q2);
        subst_[BDa] = Form1{}.add(Th1, a1).add(Th2, -(p * ca));
        subst_[BDc] = Form1{}.add(Th1, -(q * ca)).add(Th2, c2);
        subst_[BDa1] = Form1{}.add(Th1, l + r * ca + psi_).add(Th2, 2.0 * (a1 * p) - p1 * ca);
        subst_[BDc2] = Form1{}.add(Th1, -(q2 * ca + 2.0 * (c2 * q))).add(Th2, r * ca + psi_ - l);
    }

    const ScalarExpr& phi() const { return phi_; }
    const ScalarExpr& psi() const { return psi_; }
    const std::array<Form1, 10>& generators() const { return gen_; }
    const Form1& substitution(int b) const { return subst_[b]; }

    Form1 reduce_mod_ideal(const Form1& w) const {
        Form1 out;
        for (int b = 0; b < kNumBasis1; ++b) {
            if (w.c[b].is_zero()) continue;
            const Form1& s = subst_[b];
            for (int t = 0; t < kNumBasis1; ++t)
                if (!s.c[t].is_zero()) out.add(t, w.c[b] * s.c[t]);
        }
        return out;
    }

    Form2 reduce_mod_ideal(const Form2& w) const {
        Form2 out;
        for (const auto& [key, g] : w.m) {
            Form2 piece = wedge(subst_[key.first], subst_[key.second]);
            for (const auto& [pk, pc] : piece.m) out.add(pk.first, pk.second, g * pc);
        }
        return out;
    }

    Form3 reduce_mod_ideal(const Form3& w) const {
        Form3 out;
        for (const auto& [key, g] : w.m) {
            Form3 piece = wedge(subst_[key[0]], wedge(subst_[key[1]], subst_[key[2]]));
            for (const auto& [pk, pc] : piece.m) out.add(pk, g * pc);
        }
        return out;
    }

private:
    ScalarExpr phi_;
    ScalarExpr psi_;
    std::array<Form1, 10> gen_;
    std::array<Form1, kNumBasis1> subst_;
};

struct CurvatureCoefficients {
    ScalarExpr B1, B2, D1, D2;
};

namespace detail {

inline void expect_coeff(const Form2& f, int i, int j, const ScalarExpr& want,
                         const char* what) {
    if (!(f.get(i, j) == want))
        throw invariant_error(std::string("curvature_coefficients: unexpected structure in ") +
                              what);
}

inline void expect_support(const Form2& f, std::vector<std::pair<int, int>> allowed,
                           const char* what) {
    for (auto& key : allowed)
        if (key.first > key.second) std::swap(key.first, key.second);
    for (const auto& [key, g] : f.m) {
        bool ok = false;
        for (const auto& k : allowed)
            if (k == key) ok = true;
        if (!ok)
            throw invariant_error(std::string("curvature_coefficients: spurious term in ") + what +
                                  ": " + basis1_name(key.first) + "^" + basis1_name(key.second));
    }
}

} // namespace detail

// Derives the torsion coefficients B1, B2, D1, D2 of the reduced exterior
// derivatives of the beta and delta generators. The expected structural
// entries (unit and (c - a) blocks) are asserted along the way.
inline CurvatureCoefficients curvature_coefficients(const ScalarExpr& phi) {
    StructureTable table(phi);
    const auto& gen = table.generators();
    const ScalarExpr one = ScalarExpr::constant(1.0);
    const ScalarExpr ca = ScalarExpr::sym(SymC) - ScalarExpr::sym(SymA);

    CurvatureCoefficients out;

    // d(beta1) == -dp1^th1 - dr^th2 - B1 th1^th2 (mod ideal)
    {
        Form2 d = table.reduce_mod_ideal(exterior_d(gen[4]));
        detail::expect_coeff(d, Th1, BDp1, one, "d(beta1): dp1^th1 block");
        detail::expect_coeff(d, Th2, BDr, one, "d(beta1): dr^th2 block");
        out.B1 = -1.0 * d.get(Th1, Th2);
        detail::expect_support(d, {{Th1, BDp1}, {Th2, BDr}, {Th1, Th2}}, "d(beta1)");
    }
    // d(beta2) == -dr^th1 - dq2^th2 - B2 th1^th2 (mod ideal)
    {
        Form2 d = table.reduce_mod_ideal(exterior_d(gen[5]));
        detail::expect_coeff(d, Th1, BDr, one, "d(beta2): dr^th1 block");
        detail::expect_coeff(d, Th2, BDq2, one, "d(beta2): dq2^th2 block");
        out.B2 = -1.0 * d.get(Th1, Th2);
        detail::expect_support(d, {{Th1, BDr}, {Th2, BDq2}, {Th1, Th2}}, "d(beta2)");
    }
    // d(delta1) == -dl^th1 - (c-a) dr^th1 + (c-a) dp1^th2 - D1 th1^th2 (mod ideal)
    {
        Form2 d = table.reduce_mod_ideal(exterior_d(gen[8]));
        detail::expect_coeff(d, Th1, BDl, one, "d(delta1): dl^th1 block");
        detail::expect_coeff(d, Th1, BDr, ca, "d(delta1): dr^th1 block");
        detail::expect_coeff(d, Th2, BDp1, -1.0 * ca, "d(delta1): dp1^th2 block");
        out.D1 = -1.0 * d.get(Th1, Th2);
        detail::expect_support(d, {{Th1, BDl}, {Th1, BDr}, {Th2, BDp1}, {Th1, Th2}}, "d(delta1)");
    }
    // d(delta2) == (c-a) dq2^th1 + dl^th2 - (c-a) dr^th2 + D2 th1^th2 (mod ideal)
    {
        Form2 d = table.reduce_mod_ideal(exterior_d(gen[9]));
        detail::expect_coeff(d, BDq2, Th1, ca, "d(delta2): dq2^th1 block");
        detail::expect_coeff(d, Th2, BDl, -1.0 * one, "d(delta2): dl^th2 block");
        detail::expect_coeff(d, Th2, BDr, ca, "d(delta2): dr^th2 block");
        out.D2 = d.get(Th1, Th2);
        detail::expect_support(d, {{Th1, BDq2}, {Th2, BDl}, {Th2, BDr}, {Th1, Th2}}, "d(delta2)");
    }
    return out;
}

// Numeric evaluation of forms against tangent covector values (w[b] is the
// value of basis form b on the tangent vector).
inline double eval_form(const Form1& f, const FiberPoint& pt, const MaterialParams& mp,
                        const std::array<double, kNumBasis1>& w) {
    double s = 0;
    for (int b = 0; b < kNumBasis1; ++b)
        if (!f.c[b].is_zero()) s += f.c[b].eval(pt, mp) * w[b];
    return s;
}

inline double eval_form(const Form2& f, const FiberPoint& pt, const MaterialParams& mp,
                        const std::array<double, kNumBasis1>& wu,
                        const std::array<double, kNumBasis1>& wv) {
    double s = 0;
    for (const auto& [key, g] : f.m) {
        const int i = key.first, j = key.second;
        s += g.eval(pt, mp) * (wu[i] * wv[j] - wu[j] * wv[i]);
    }
    return s;
}

inline double eval_form(const Form3& f, const FiberPoint& pt, const MaterialParams& mp,
                        const std::array<double, kNumBasis1>& wu,
                        const std::array<double, kNumBasis1>& wv,
                        const std::array<double, kNumBasis1>& ww) {
    double s = 0;
    for (const auto& [key, g] : f.m) {
        const double det3 = wu[key[0]] * (wv[key[1]] * ww[key[2]] - wv[key[2]] * ww[key[1]]) -
                            wu[key[1]] * (wv[key[0]] * ww[key[2]] - wv[key[2]] * ww[key[0]]) +
                            wu[key[2]] * (wv[key[0]] * ww[key[1]] - wv[key[1]] * ww[key[0]]);
        s += g.eval(pt, mp) * det3;
    }
    return s;
}

} // namespace memshape
