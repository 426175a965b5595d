#pragma once

// Critical points, branch values and the collision tests behind crv / CGR.
// Algebraic point sets are carried as squarefree primitive integer forms, so
// every collision verdict is a statement about an integer discriminant.

#include "arithdyn/binform.hpp"
#include "arithdyn/fp.hpp"
#include "arithdyn/integers.hpp"
#include "arithdyn/poly.hpp"
#include "arithdyn/ratmap.hpp"

#include <optional>
#include <vector>

namespace arithdyn {

// A finite Galois-stable subset of P^1 encoded by a squarefree primitive form.
// Source sets live in the (x : y) chart, target sets in (t : u).
enum class VarRole { source, target };

struct PointSetForm {
    IntForm form;
    VarRole role;

    static PointSetForm of(const IntForm& raw, VarRole role) {
        IntForm s = squarefree_form(raw);
        if (s.degree() >= 2 && form_discriminant(s) == 0)
            throw std::logic_error("PointSetForm: squarefree reduction failed");
        return PointSetForm{s, role};
    }
    int size() const { return form.degree(); }  // number of distinct roots
};

// W = dF/dx dG/dy - dF/dy dG/dx, the (2n-2)-form cutting out the critical
// points (with ramification weights) in characteristic zero.
inline IntForm wronskian_form(const RationalMap& phi) {
    if (phi.degree() < 2) throw std::invalid_argument("wronskian_form: degree must be >= 2");
    const IntForm& F = phi.numerator_form();
    const IntForm& G = phi.denominator_form();
    IntForm W = F.derivative_x() * G.derivative_y() + Integer(-1) * (F.derivative_y() * G.derivative_x());
    if (W.all_zero()) throw std::logic_error("wronskian_form: vanished identically");
    return W;
}

inline PointSetForm critical_form(const RationalMap& phi) {
    return PointSetForm::of(wronskian_form(phi), VarRole::source);
}

// The pencil u F(x,y) - t G(x,y) with u = 1, as a form in (x,y) over Z[t].
inline BinForm<IntPoly> pencil_form(const RationalMap& phi) {
    int n = phi.degree();
    std::vector<IntPoly> c;
    c.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        c.push_back(IntPoly::from_coeffs({phi.numerator_form().coeff(i), -phi.denominator_form().coeff(i)}));
    return BinForm<IntPoly>(n, std::move(c));
}

// Re-homogenize a polynomial in t to a (t,u)-form of the stated degree; the
// degree deficit becomes the root at infinity.
inline IntForm homogenize_target(const IntPoly& d, int stated_degree) {
    return IntForm::homogenize(d, stated_degree);
}

// Branch values Phi(R_Phi) as a squarefree primitive (t:u)-form: the
// discriminant of the pencil with respect to the source variables.
inline PointSetForm branch_form(const RationalMap& phi) {
    if (phi.degree() < 2) throw std::invalid_argument("branch_form: degree must be >= 2");
    int n = phi.degree();
    IntPoly d = form_discriminant(pencil_form(phi));
    if (d.zero()) throw std::logic_error("branch_form: pencil discriminant vanished identically");
    return PointSetForm::of(homogenize_target(d, 2 * n - 2), VarRole::target);
}

// Do the roots stay pairwise distinct after reduction mod p? Decided by the
// discriminant valuation; degree <= 1 sets can never collide.
inline bool collision_free(const PointSetForm& s, const PadicContext& ctx) {
    if (s.form.degree() <= 1) return true;
    return form_discriminant(s.form) % ctx.p() != 0;
}

inline bool crv_test(const RationalMap& phi, const PadicContext& ctx) {
    return collision_free(branch_form(phi), ctx);
}

// Critically good reduction: both the branch values and the critical points
// stay pairwise distinct mod p.
inline bool cgr_test(const RationalMap& phi, const PadicContext& ctx) {
    return crv_test(phi, ctx) && collision_free(critical_form(phi), ctx);
}

// ---------------------------------------------------------------------------

struct FiberProfile {
    ProjPoint branch_value;
    std::vector<int> multiplicities;  // descending, sums to deg Phi
};

// Ramification structure of the fiber over a rational point: multiplicity
// multiset of the form q F - p G for lambda = (p : q).
inline FiberProfile rational_fiber_profile(const RationalMap& phi, const ProjPoint& lambda) {
    IntForm fiber = lambda.y() * phi.numerator_form() + (-lambda.x()) * phi.denominator_form();
    if (fiber.all_zero()) throw std::logic_error("rational_fiber_profile: degenerate fiber");
    std::vector<int> mult = form_multiplicities(fiber);
    int total = 0;
    for (int m : mult) total += m;
    if (total != phi.degree()) throw std::logic_error("rational_fiber_profile: multiplicities do not sum to degree");
    return FiberProfile{lambda, std::move(mult)};
}

// The CGR <=> SGR + crv equivalence (valid when the reduced map is
// separable); evaluates both routes and insists they agree. Returns nullopt
// when the separability precondition fails, so no verdict is issued.
inline std::optional<bool> cpt_crosscheck(const RationalMap& phi, const PadicContext& ctx) {
    if (!separable_test(phi.reduce(ctx))) return std::nullopt;
    bool via_cgr = cgr_test(phi, ctx);
    bool via_sgr = sgr_test(phi, ctx) && crv_test(phi, ctx);
    if (via_cgr != via_sgr) throw std::logic_error("cpt_crosscheck: the two routes disagree");
    return via_cgr;
}

}  // namespace arithdyn
