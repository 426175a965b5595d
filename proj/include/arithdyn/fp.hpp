#pragma once

// Arithmetic over the residue field Z/p: dense polynomials and binary forms.
// Coefficients are kept as Integers in [0, p); p itself can be any prime.

#include "arithdyn/binform.hpp"
#include "arithdyn/integers.hpp"
#include "arithdyn/poly.hpp"

#include <utility>
#include <vector>

namespace arithdyn {

class FpContext {
public:
    explicit FpContext(const PadicContext& ctx) : p_(ctx.p()) {}
    explicit FpContext(Integer p) : p_(std::move(p)) {
        if (!is_prime(p_)) throw std::invalid_argument("FpContext: modulus not prime");
    }

    const Integer& p() const { return p_; }

    Integer norm(const Integer& a) const {
        Integer r = a % p_;
        if (r < 0) r += p_;
        return r;
    }
    Integer add(const Integer& a, const Integer& b) const { return norm(a + b); }
    Integer sub(const Integer& a, const Integer& b) const { return norm(a - b); }
    Integer mul(const Integer& a, const Integer& b) const { return norm(a * b); }
    Integer inv(const Integer& a) const {
        Integer g = norm(a);
        if (g.is_zero()) throw std::domain_error("FpContext: inverse of zero");
        return boost::multiprecision::powm(g, p_ - 2, p_);
    }

private:
    Integer p_;
};

// ---------------------------------------------------------------------------

class FpPoly {
public:
    FpPoly() = default;
    static FpPoly reduce(const IntPoly& f, const FpContext& F) {
        std::vector<Integer> c;
        c.reserve(f.coeffs().size());
        for (const auto& a : f.coeffs()) c.push_back(F.norm(a));
        return from_coeffs(std::move(c));
    }
    static FpPoly from_coeffs(std::vector<Integer> c) {
        FpPoly p;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const Integer& coeff(int i) const {
        static const Integer k_zero = 0;
        if (i < 0 || i >= static_cast<int>(c_.size())) return k_zero;
        return c_[static_cast<std::size_t>(i)];
    }
    const Integer& leading() const {
        if (zero()) throw std::logic_error("FpPoly: zero polynomial");
        return c_.back();
    }
    const std::vector<Integer>& coeffs() const { return c_; }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }

    static FpPoly add(const FpPoly& a, const FpPoly& b, const FpContext& F) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return from_coeffs(std::move(r));
    }
    static FpPoly sub(const FpPoly& a, const FpPoly& b, const FpContext& F) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return from_coeffs(std::move(r));
    }
    static FpPoly mul(const FpPoly& a, const FpPoly& b, const FpContext& F) {
        if (a.zero() || b.zero()) return FpPoly();
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = F.norm(r[i + j] + a.c_[i] * b.c_[j]);
        return from_coeffs(std::move(r));
    }
    static FpPoly scale(const Integer& s, const FpPoly& a, const FpContext& F) {
        std::vector<Integer> r = a.c_;
        for (auto& x : r) x = F.mul(s, x);
        return from_coeffs(std::move(r));
    }

    // Division with remainder; divisor nonzero.
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, const FpContext& F) {
        if (b.zero()) throw std::invalid_argument("FpPoly::divmod: zero divisor");
        FpPoly r = a;
        if (a.degree() < b.degree()) return {FpPoly(), r};
        std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Integer(0));
        Integer binv = F.inv(b.leading());
        while (!r.zero() && r.degree() >= b.degree()) {
            Integer qc = F.mul(r.leading(), binv);
            int k = r.degree() - b.degree();
            q[static_cast<std::size_t>(k)] = qc;
            std::vector<Integer> sub_c(static_cast<std::size_t>(k), Integer(0));
            for (const auto& bc : b.c_) sub_c.push_back(F.mul(qc, bc));
            r = FpPoly::sub(r, from_coeffs(std::move(sub_c)), F);
        }
        return {from_coeffs(std::move(q)), r};
    }

    static FpPoly monic(const FpPoly& a, const FpContext& F) {
        if (a.zero()) return a;
        return scale(F.inv(a.leading()), a, F);
    }

    // Monic gcd.
    static FpPoly gcd(FpPoly a, FpPoly b, const FpContext& F) {
        while (!b.zero()) {
            FpPoly r = divmod(a, b, F).second;
            a = b;
            b = r;
        }
        return monic(a, F);
    }

    FpPoly derivative(const FpContext& F) const {
        if (degree() < 1) return FpPoly();
        std::vector<Integer> r(c_.size() - 1, Integer(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F.mul(Integer(static_cast<long>(i)), c_[i]);
        return from_coeffs(std::move(r));
    }

    Integer eval(const Integer& x, const FpContext& F) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = F.norm(acc * x + *it);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Integer> c_;
};

// ---------------------------------------------------------------------------
// Binary forms over Z/p, with the same stated-degree conventions as IntForm.

class FpForm {
public:
    FpForm() : deg_(0), c_(1, Integer(0)) {}
    FpForm(int degree, std::vector<Integer> coeffs) : deg_(degree), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<std::size_t>(degree) + 1)
            throw std::invalid_argument("FpForm: coefficient count must be degree + 1");
    }
    static FpForm reduce(const IntForm& B, const FpContext& F) {
        std::vector<Integer> c;
        c.reserve(B.coeffs().size());
        for (const auto& a : B.coeffs()) c.push_back(F.norm(a));
        return FpForm(B.degree(), std::move(c));
    }
    static FpForm homogenize(const FpPoly& f, int n) {
        if (f.degree() > n) throw std::invalid_argument("FpForm::homogenize: degree exceeds target");
        std::vector<Integer> c(static_cast<std::size_t>(n) + 1, Integer(0));
        for (int i = 0; i <= f.degree(); ++i) c[static_cast<std::size_t>(i)] = f.coeff(i);
        return FpForm(n, std::move(c));
    }

    int degree() const { return deg_; }
    const Integer& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<Integer>& coeffs() const { return c_; }
    bool all_zero() const {
        for (const auto& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }
    FpPoly dehomogenized() const { return FpPoly::from_coeffs(c_); }
    int infinity_multiplicity() const {
        if (all_zero()) throw std::logic_error("FpForm: zero form");
        return deg_ - dehomogenized().degree();
    }

    friend bool operator==(const FpForm& a, const FpForm& b) { return a.deg_ == b.deg_ && a.c_ == b.c_; }

    static FpForm mul(const FpForm& a, const FpForm& b, const FpContext& F) {
        std::vector<Integer> r(static_cast<std::size_t>(a.deg_ + b.deg_) + 1, Integer(0));
        for (int i = 0; i <= a.deg_; ++i)
            for (int j = 0; j <= b.deg_; ++j)
                r[static_cast<std::size_t>(i + j)] =
                    F.norm(r[static_cast<std::size_t>(i + j)] + a.coeff(i) * b.coeff(j));
        return FpForm(a.deg_ + b.deg_, std::move(r));
    }

    FpForm derivative_x(const FpContext& F) const {
        if (deg_ == 0) return FpForm(0, {Integer(0)});
        std::vector<Integer> r(static_cast<std::size_t>(deg_), Integer(0));
        for (int i = 1; i <= deg_; ++i)
            r[static_cast<std::size_t>(i - 1)] = F.mul(Integer(i), coeff(i));
        return FpForm(deg_ - 1, std::move(r));
    }
    FpForm derivative_y(const FpContext& F) const {
        if (deg_ == 0) return FpForm(0, {Integer(0)});
        std::vector<Integer> r(static_cast<std::size_t>(deg_), Integer(0));
        for (int i = 0; i < deg_; ++i)
            r[static_cast<std::size_t>(i)] = F.mul(Integer(deg_ - i), coeff(i));
        return FpForm(deg_ - 1, std::move(r));
    }

    // Projective gcd of two nonzero forms: common finite roots via polynomial
    // gcd plus the shared multiplicity at infinity.
    static FpForm gcd(const FpForm& A, const FpForm& B, const FpContext& F) {
        if (A.all_zero() || B.all_zero()) throw std::invalid_argument("FpForm::gcd: zero form");
        FpPoly g = FpPoly::gcd(A.dehomogenized(), B.dehomogenized(), F);
        int drop = std::min(A.infinity_multiplicity(), B.infinity_multiplicity());
        return homogenize(g, g.degree() + drop);
    }

    // Exact division A / D (throws if not exact).
    static FpForm div_exact(const FpForm& A, const FpForm& D, const FpContext& F) {
        int drop_a = A.infinity_multiplicity(), drop_d = D.infinity_multiplicity();
        if (drop_a < drop_d) throw std::logic_error("FpForm::div_exact: inexact (infinity)");
        auto [q, r] = FpPoly::divmod(A.dehomogenized(), D.dehomogenized(), F);
        if (!r.zero()) throw std::logic_error("FpForm::div_exact: inexact");
        return homogenize(q, A.degree() - D.degree());
    }

    // Scale so the highest nonzero coefficient equals 1 (projective maps and
    // root sets over a field are only defined up to scaling).
    static FpForm canonical(const FpForm& A, const FpContext& F) {
        for (int i = A.deg_; i >= 0; --i) {
            if (!A.coeff(i).is_zero()) {
                Integer s = F.inv(A.coeff(i));
                std::vector<Integer> r = A.c_;
                for (auto& x : r) x = F.mul(s, x);
                return FpForm(A.deg_, std::move(r));
            }
        }
        return A;
    }

    FpForm substituted(const FpForm& X, const FpForm& Y, const FpContext& F) const {
        if (X.degree() != Y.degree()) throw std::invalid_argument("FpForm: substitution degree mismatch");
        int m = X.degree();
        std::vector<FpForm> xp{FpForm(0, {Integer(1)})};
        std::vector<FpForm> yp{FpForm(0, {Integer(1)})};
        for (int i = 1; i <= deg_; ++i) {
            xp.push_back(mul(xp.back(), X, F));
            yp.push_back(mul(yp.back(), Y, F));
        }
        FpForm acc(deg_ * m, std::vector<Integer>(static_cast<std::size_t>(deg_ * m) + 1, Integer(0)));
        for (int i = 0; i <= deg_; ++i) {
            if (coeff(i).is_zero()) continue;
            FpForm term = mul(xp[static_cast<std::size_t>(i)], yp[static_cast<std::size_t>(deg_ - i)], F);
            std::vector<Integer> r = acc.c_;
            for (int k = 0; k <= acc.deg_; ++k) r[static_cast<std::size_t>(k)] = F.norm(r[static_cast<std::size_t>(k)] + coeff(i) * term.coeff(k));
            acc = FpForm(acc.deg_, std::move(r));
        }
        return acc;
    }

    Integer eval(const Integer& x, const Integer& y, const FpContext& F) const {
        Integer acc = 0;
        Integer xp = 1;
        std::vector<Integer> ypow(static_cast<std::size_t>(deg_) + 1, Integer(1));
        for (int j = 1; j <= deg_; ++j) ypow[static_cast<std::size_t>(j)] = F.mul(ypow[static_cast<std::size_t>(j - 1)], y);
        for (int i = 0; i <= deg_; ++i) {
            acc = F.norm(acc + coeff(i) * xp * ypow[static_cast<std::size_t>(deg_ - i)]);
            xp = F.mul(xp, x);
        }
        return acc;
    }

    // Are the projective roots over the algebraic closure pairwise distinct?
    bool squarefree(const FpContext& F) const {
        if (all_zero()) throw std::logic_error("FpForm: zero form");
        if (infinity_multiplicity() >= 2) return false;
        FpPoly f = dehomogenized();
        if (f.degree() < 1) return true;
        FpPoly d = f.derivative(F);
        if (d.zero()) return f.degree() == 0;
        return FpPoly::gcd(f, d, F).degree() == 0;
    }

private:
    int deg_;
    std::vector<Integer> c_;
};

}  // namespace arithdyn
