#pragma once

// Implementation details behind monodromy() and track_loop(). Included at the
// end of monodromy.hpp.

#include <tuple>

namespace arithdyn {
namespace numeric {

// Stem assembly: straight run from `from` to `to`, detouring around any
// obstruction whose clearance disk the segment crosses. Detours stay on the
// side of the obstruction the segment already favors; an obstruction sitting
// exactly on the segment is passed on the left of the travel direction.
template <class C>
void append_stem(std::vector<PathPiece<C>>& out, const C& from, const C& to,
                 const std::vector<C>& obstructions, const typename C::value_type& clearance) {
    using R = typename C::value_type;
    const R two_pi = 2 * boost::math::constants::pi<R>();
    C seg = to - from;
    R seglen2 = norm(seg);
    C unit = seg / C(abs(seg));

    struct Detour {
        R s1, s2;
        C center;
    };
    std::vector<Detour> detours;
    for (const C& c : obstructions) {
        C rel = c - from;
        R proj = (rel.real() * seg.real() + rel.imag() * seg.imag());
        R tau = proj / seglen2;
        if (tau <= 0 || tau >= 1) continue;
        C foot = from + seg * C(tau);
        if (abs(c - foot) >= clearance) continue;
        R cq = norm(rel) - clearance * clearance;
        R disc = proj * proj - seglen2 * cq;
        if (disc <= 0) continue;
        R sq = sqrt(disc);
        Detour d;
        d.center = c;
        d.s1 = (proj - sq) / seglen2;
        d.s2 = (proj + sq) / seglen2;
        if (d.s1 <= 0 || d.s2 >= 1) continue;
        detours.push_back(d);
    }
    std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.s1 < b.s1; });

    C cursor = from;
    for (const auto& d : detours) {
        C p1 = from + seg * C(d.s1);
        C p2 = from + seg * C(d.s2);
        PathPiece<C> line;
        line.from = cursor;
        line.to = p1;
        out.push_back(line);

        R a1 = atan2((p1 - d.center).imag(), (p1 - d.center).real());
        R a2 = atan2((p2 - d.center).imag(), (p2 - d.center).real());
        R sweep_ccw = a2 - a1;
        while (sweep_ccw <= 0) sweep_ccw += two_pi;
        R sweep_cw = sweep_ccw - two_pi;
        auto side_of = [&](const R& sweep) {
            C mid = d.center + polar<C>(clearance, a1 + sweep / 2);
            return ((mid - p1) / unit).imag();
        };
        C relc = (d.center - from) / unit;
        bool pass_left = relc.imag() <= 0;  // obstruction on the right or on the line
        R s_ccw = side_of(sweep_ccw), s_cw = side_of(sweep_cw);
        R sweep;
        if (pass_left)
            sweep = (s_ccw >= s_cw) ? sweep_ccw : sweep_cw;
        else
            sweep = (s_ccw <= s_cw) ? sweep_ccw : sweep_cw;

        PathPiece<C> arc;
        arc.is_arc = true;
        arc.center = d.center;
        arc.radius = clearance;
        arc.angle0 = a1;
        arc.sweep = sweep;
        out.push_back(arc);
        cursor = p2;
    }
    PathPiece<C> last;
    last.from = cursor;
    last.to = to;
    out.push_back(last);
}

template <class C>
std::vector<PathPiece<C>> lollipop_pieces(const C& base, const C& center,
                                          const typename C::value_type& radius,
                                          const std::vector<C>& obstructions,
                                          const typename C::value_type& clearance) {
    using R = typename C::value_type;
    C unit = (center - base) / C(abs(center - base));
    C entry = center - unit * C(radius);

    std::vector<PathPiece<C>> stem;
    append_stem(stem, base, entry, obstructions, clearance);

    std::vector<PathPiece<C>> out = stem;
    PathPiece<C> circle;
    circle.is_arc = true;
    circle.center = center;
    circle.radius = radius;
    circle.angle0 = atan2((entry - center).imag(), (entry - center).real());
    circle.sweep = 2 * boost::math::constants::pi<R>();
    out.push_back(circle);
    for (auto it = stem.rbegin(); it != stem.rend(); ++it) {
        PathPiece<C> rev = *it;
        if (rev.is_arc) {
            rev.angle0 = it->angle0 + it->sweep;
            rev.sweep = -it->sweep;
        } else {
            std::swap(rev.from, rev.to);
        }
        out.push_back(rev);
    }
    return out;
}

// Loop order: counterclockwise from the rightward cut at the base point;
// collinear ties are taken nearer-first (matching the detour convention).
template <class C>
std::vector<std::size_t> loop_order(const std::vector<C>& centers, const C& base) {
    using R = typename C::value_type;
    const R pi = boost::math::constants::pi<R>();
    auto theta = [&](const C& c) {
        R a = atan2((c - base).imag(), (c - base).real());
        if (a <= 0) a += 2 * pi;
        return a;
    };
    R tie_tol = R(1) / 1000000;
    std::vector<std::size_t> idx(centers.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        R ta = theta(centers[a]), tb = theta(centers[b]);
        if (abs(ta - tb) > tie_tol) return ta < tb;
        return abs(centers[a] - base) < abs(centers[b] - base);
    });
    return idx;
}

template <class C>
MonodromyData monodromy_at(const RationalMap& phi, int nudge) {
    using R = typename C::value_type;
    const int n = phi.degree();

    PointSetForm bform = branch_form(phi);
    FormRootsT<C> roots = form_roots_t<C>(bform.form);
    const bool infinity_branched = roots.includes_infinity;

    // exact rational branch values, matched to their approximations
    std::vector<std::optional<Rational>> exact(roots.finite.size());
    for (const auto& [num, den] : rational_form_roots(bform.form)) {
        if (den == 0) continue;
        Rational val(num, den);
        C approx = from_rational<C>(val);
        int hit = -1;
        for (std::size_t i = 0; i < roots.finite.size(); ++i) {
            if (abs(roots.finite[i] - approx) <= roots.radii[i] * 2 + std::numeric_limits<R>::epsilon() * 16) {
                if (hit >= 0) throw TrackingLost("rational branch value matches two approximations");
                hit = static_cast<int>(i);
            }
        }
        if (hit < 0) throw TrackingLost("rational branch value missing among approximations");
        exact[static_cast<std::size_t>(hit)] = val;
    }

    // base point, loop radius
    R maxabs(0);
    for (const auto& c : roots.finite)
        if (abs(c) > maxabs) maxabs = abs(c);
    C base(1 + 2 * maxabs, nudge == 0 ? R(0) : (1 + maxabs) * R(nudge) / 3);

    R dmin(-1);
    for (std::size_t i = 0; i < roots.finite.size(); ++i)
        for (std::size_t j = i + 1; j < roots.finite.size(); ++j) {
            R d = abs(roots.finite[i] - roots.finite[j]);
            if (dmin < 0 || d < dmin) dmin = d;
        }
    if (dmin < 0) dmin = 1 + maxabs;
    R radius = dmin / 3;
    for (std::size_t i = 0; i < roots.finite.size(); ++i)
        if (roots.radii[i] > radius / 64) throw TrackingLost("branch points not separated well enough");

    // the base fiber must not degenerate: keep the pencil's top coefficient away from 0
    PencilTracker<C> tracker(phi.numerator_form(), phi.denominator_form());
    const Integer& an = phi.numerator_form().coeff(n);
    const Integer& bn = phi.denominator_form().coeff(n);
    for (int tries = 0; tries < 16; ++tries) {
        C lead = from_integer<C>(an) - base * from_integer<C>(bn);
        if (abs(lead) > R(1) / 1000) break;
        base += C(1);
    }

    std::vector<Strand<C>> fiber0 = tracker.initial_fiber(base, n);

    std::vector<std::size_t> order = loop_order(roots.finite, base);

    MonodromyData data;
    data.degree = n;
    std::vector<Permutation> finite_gens;
    Permutation product = Permutation::identity(n);
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t ri = order[oi];
        std::vector<C> obstructions;
        for (std::size_t j = 0; j < roots.finite.size(); ++j)
            if (j != ri) obstructions.push_back(roots.finite[j]);
        auto pieces = lollipop_pieces(base, roots.finite[ri], radius, obstructions, radius);
        std::vector<Strand<C>> fiber = fiber0;
        for (const auto& piece : pieces) tracker.track_piece(fiber, piece);
        Permutation sigma = tracker.match(fiber0, fiber);
        if (sigma.is_identity())
            throw TrackingLost("trivial local monodromy at a branch point");

        BranchPointInfo info;
        info.at_infinity = false;
        info.location = Complex50(Real50(roots.finite[ri].real()), Real50(roots.finite[ri].imag()));
        info.radius = Real50(roots.radii[ri]);
        info.exact = exact[ri];
        info.generator = sigma;
        info.cycle_type = sigma.cycle_type();
        data.points.push_back(std::move(info));
        finite_gens.push_back(sigma);
        product = sigma * product;

        // exact cross-check at rational branch values
        if (exact[ri]) {
            FiberProfile fp = rational_fiber_profile(phi, ProjPoint::from_rational(*exact[ri]));
            if (fp.multiplicities != data.points.back().cycle_type)
                throw TrackingLost("cycle type disagrees with the rational fiber profile");
        }
    }

    Permutation sigma_inf = product.inverse();
    std::vector<int> g_profile = form_multiplicities(phi.denominator_form());
    if (infinity_branched) {
        if (sigma_inf.cycle_type() != g_profile)
            throw TrackingLost("infinity generator disagrees with the denominator profile");
        BranchPointInfo info;
        info.at_infinity = true;
        info.generator = sigma_inf;
        info.cycle_type = sigma_inf.cycle_type();
        data.points.push_back(std::move(info));
    } else if (!sigma_inf.is_identity()) {
        throw TrackingLost("unbranched infinity received a nontrivial generator");
    }

    // Riemann-Hurwitz across all generators
    int excess = 0;
    for (const auto& b : data.points)
        for (int e : b.cycle_type) excess += e - 1;
    if (excess != 2 * n - 2) throw TrackingLost("Riemann-Hurwitz count failed");

    if (!transitive_on(finite_gens, n)) throw TrackingLost("monodromy group not transitive");

    data.order = permutation_group_order(finite_gens, n);
    if (!data.ordered_product().is_identity())
        throw std::logic_error("monodromy: ordered product is not the identity");
    return data;
}

}  // namespace numeric

inline MonodromyData monodromy(const RationalMap& phi, const MonodromySettings& settings) {
    if (phi.degree() < 2) throw std::invalid_argument("monodromy: degree must be >= 2");
    if (phi.degree() > settings.degree_cap) throw std::length_error("monodromy: degree cap exceeded");
    std::string last = "monodromy failed";
    for (int digits = std::max(settings.digits, 50); digits <= settings.max_digits; digits *= 2) {
        for (int nudge = 0; nudge <= settings.base_retries; ++nudge) {
            try {
                if (digits <= 50) return numeric::monodromy_at<numeric::ComplexOf<50>>(phi, nudge);
                if (digits <= 100) return numeric::monodromy_at<numeric::ComplexOf<100>>(phi, nudge);
                if (digits <= 200) return numeric::monodromy_at<numeric::ComplexOf<200>>(phi, nudge);
                if (digits <= 400) return numeric::monodromy_at<numeric::ComplexOf<400>>(phi, nudge);
                return numeric::monodromy_at<numeric::ComplexOf<800>>(phi, nudge);
            } catch (const TrackingLost& e) {
                last = e.what();
            } catch (const PrecisionExhausted& e) {
                last = e.what();
            }
        }
    }
    throw TrackingLost("monodromy: precision ladder exhausted: " + last);
}

namespace numeric {

template <class C>
Permutation track_loop_at(const RationalMap& phi, const LoopSpec& loop,
                          const std::vector<Complex50>& start_fiber) {
    using R = typename C::value_type;
    PencilTracker<C> tracker(phi.numerator_form(), phi.denominator_form());
    std::vector<Strand<C>> fiber;
    C base(R(loop.base.real()), R(loop.base.imag()));
    for (const auto& z : start_fiber) fiber.push_back(Strand<C>{C(R(z.real()), R(z.imag())), false});
    // polish the provided fiber onto the curve
    PathPiece<C> hold;
    hold.from = base;
    hold.to = base;
    tracker.track_piece(fiber, hold);
    std::vector<Strand<C>> fiber0 = fiber;
    C center(R(loop.center.real()), R(loop.center.imag()));
    auto pieces = lollipop_pieces(base, center, R(loop.radius), std::vector<C>{}, R(loop.radius));
    for (const auto& piece : pieces) tracker.track_piece(fiber, piece);
    return tracker.match(fiber0, fiber);
}

}  // namespace numeric

inline Permutation track_loop(const RationalMap& phi, const LoopSpec& loop,
                              const std::vector<Complex50>& start_fiber, int digits) {
    if (digits <= 50) return numeric::track_loop_at<numeric::ComplexOf<50>>(phi, loop, start_fiber);
    if (digits <= 100) return numeric::track_loop_at<numeric::ComplexOf<100>>(phi, loop, start_fiber);
    if (digits <= 200) return numeric::track_loop_at<numeric::ComplexOf<200>>(phi, loop, start_fiber);
    if (digits <= 400) return numeric::track_loop_at<numeric::ComplexOf<400>>(phi, loop, start_fiber);
    if (digits <= 800) return numeric::track_loop_at<numeric::ComplexOf<800>>(phi, loop, start_fiber);
    throw std::invalid_argument("track_loop: precision above 800 digits unsupported");
}

}  // namespace arithdyn
