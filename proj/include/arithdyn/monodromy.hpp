#pragma once

// Numerical monodromy of a degree-n cover P^1 -> P^1: branch points from the
// branch form, lollipop loops tracked by adaptive Newton continuation, one
// permutation per finite branch point, the infinity generator recovered from
// the product-one relation. Exact cross-checks (rational fiber profiles,
// Riemann-Hurwitz, the denominator-form profile at infinity) gate the result.

#include "arithdyn/numeric.hpp"
#include "arithdyn/ramification.hpp"
#include "arithdyn/ratmap.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithdyn {

struct TrackingLost : std::runtime_error {
    explicit TrackingLost(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------

class Permutation {
public:
    Permutation() = default;
    static Permutation identity(int n) {
        Permutation p;
        p.img_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p.img_[static_cast<std::size_t>(i)] = i;
        return p;
    }
    static Permutation from_images(std::vector<int> img) {
        std::vector<bool> seen(img.size(), false);
        for (int v : img) {
            if (v < 0 || v >= static_cast<int>(img.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: not a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
        Permutation p;
        p.img_ = std::move(img);
        return p;
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    // (a * b)(x) = a(b(x))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch");
        std::vector<int> img(b.img_.size());
        for (int i = 0; i < b.size(); ++i) img[static_cast<std::size_t>(i)] = a(b(i));
        return from_images(std::move(img));
    }
    Permutation inverse() const {
        std::vector<int> img(img_.size());
        for (int i = 0; i < size(); ++i) img[static_cast<std::size_t>((*this)(i))] = i;
        return from_images(std::move(img));
    }
    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }

    // descending cycle lengths (= ramification profile of the branch point)
    std::vector<int> cycle_type() const {
        std::vector<int> out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            int len = 0, j = i;
            while (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                j = (*this)(j);
                ++len;
            }
            out.push_back(len);
        }
        std::sort(out.begin(), out.end(), std::greater<int>());
        return out;
    }

    std::string cycle_str() const {
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) {
                seen[static_cast<std::size_t>(i)] = true;
                continue;
            }
            out += "(";
            int j = i;
            bool first = true;
            while (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                out += (first ? "" : " ") + std::to_string(j + 1);
                first = false;
                j = (*this)(j);
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

private:
    std::vector<int> img_;
};

// Orbit of a point under a generator set.
inline std::vector<int> orbit_of(int start, const std::vector<Permutation>& gens, int n) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> queue{start}, out;
    seen[static_cast<std::size_t>(start)] = true;
    while (!queue.empty()) {
        int p = queue.back();
        queue.pop_back();
        out.push_back(p);
        for (const auto& g : gens) {
            int q = g(p);
            if (!seen[static_cast<std::size_t>(q)]) {
                seen[static_cast<std::size_t>(q)] = true;
                queue.push_back(q);
            }
        }
    }
    return out;
}

inline bool transitive_on(const std::vector<Permutation>& gens, int n) {
    if (n == 0) return true;
    return static_cast<int>(orbit_of(0, gens, n).size()) == n;
}

// Exact group order by a stabilizer chain (Schreier-Sims). A generator
// stored at level L fixes the base points of all earlier levels, so the
// effective generating set of level i is everything stored at levels >= i.
// After every insertion the chain is driven to the fixpoint where each orbit
// is closed and every Schreier generator sifts to the identity.
class StabilizerChain {
public:
    explicit StabilizerChain(int n) : n_(n) {}

    void insert(const Permutation& g) {
        if (g.is_identity()) return;
        auto [h, level] = sift(g, 0);
        if (h.is_identity()) return;
        place(h, level);
        stabilize();
    }

    Integer order() const {
        Integer o = 1;
        for (const auto& lvl : levels_) o *= static_cast<long>(lvl.transversal.size());
        return o;
    }

    bool contains(const Permutation& g) const { return sift(g, 0).first.is_identity(); }

private:
    struct Level {
        int beta = 0;
        std::vector<Permutation> gens;
        std::map<int, Permutation> transversal;  // point -> rep with rep(beta) = point
    };

    std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const {
        for (std::size_t level = from; level < levels_.size(); ++level) {
            auto it = levels_[level].transversal.find(g(levels_[level].beta));
            if (it == levels_[level].transversal.end()) return {std::move(g), level};
            g = it->second.inverse() * g;
        }
        return {std::move(g), levels_.size()};
    }

    void place(const Permutation& h, std::size_t level) {
        if (level == levels_.size()) {
            int beta = 0;
            while (h(beta) == beta) ++beta;
            Level lvl;
            lvl.beta = beta;
            lvl.transversal.emplace(beta, Permutation::identity(n_));
            levels_.push_back(std::move(lvl));
        }
        levels_[level].gens.push_back(h);
    }

    // One pass over a level: close the orbit, sift all Schreier generators.
    // place() may grow levels_, so everything is accessed by index/value.
    bool complete_pass(std::size_t level) {
        bool changed = false;
        std::vector<Permutation> gens;
        for (std::size_t j = level; j < levels_.size(); ++j)
            for (const auto& g : levels_[j].gens) gens.push_back(g);

        std::vector<int> queue;
        for (const auto& [pt, rep] : levels_[level].transversal) queue.push_back(pt);
        while (!queue.empty()) {
            int pt = queue.back();
            queue.pop_back();
            Permutation rep = levels_[level].transversal.at(pt);
            for (const auto& s : gens) {
                int q = s(pt);
                if (!levels_[level].transversal.count(q)) {
                    levels_[level].transversal.emplace(q, s * rep);
                    queue.push_back(q);
                    changed = true;
                }
            }
        }

        std::vector<std::pair<int, Permutation>> pts(levels_[level].transversal.begin(),
                                                     levels_[level].transversal.end());
        for (const auto& [pt, rep] : pts) {
            for (const auto& s : gens) {
                Permutation schreier = levels_[level].transversal.at(s(pt)).inverse() * (s * rep);
                if (schreier.is_identity()) continue;
                auto [h, j] = sift(std::move(schreier), level + 1);
                if (!h.is_identity()) {
                    place(h, j);
                    changed = true;
                }
            }
        }
        return changed;
    }

    void stabilize() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = levels_.size(); i-- > 0;) {
                if (complete_pass(i)) {
                    changed = true;
                    break;  // deeper levels may have grown; rescan from the bottom
                }
            }
        }
    }

    int n_;
    std::vector<Level> levels_;
};

inline Integer permutation_group_order(const std::vector<Permutation>& gens, int n) {
    StabilizerChain chain(n);
    for (const auto& g : gens) chain.insert(g);
    return chain.order();
}

// ---------------------------------------------------------------------------
// Loop tracking.

namespace numeric {

// A point of the fiber, in the standard chart (z, recip=false) or the
// reciprocal chart w = 1/z (recip=true).
template <class C>
struct Strand {
    C v;
    bool recip = false;
};

// Chordal (sphere) distance between projective points given as (a : b).
template <class C>
typename C::value_type chordal(const C& a1, const C& b1, const C& a2, const C& b2) {
    using R = typename C::value_type;
    R num = abs(a1 * b2 - b1 * a2);
    R d1 = sqrt(norm(a1) + norm(b1));
    R d2 = sqrt(norm(a2) + norm(b2));
    return num / (d1 * d2);
}

template <class C>
typename C::value_type chordal_strands(const Strand<C>& s, const Strand<C>& t) {
    C a1 = s.recip ? C(1) : s.v, b1 = s.recip ? s.v : C(1);
    C a2 = t.recip ? C(1) : t.v, b2 = t.recip ? t.v : C(1);
    return chordal(a1, b1, a2, b2);
}

// One path piece: either a straight segment in the t-plane or a circular arc.
template <class C>
struct PathPiece {
    bool is_arc = false;
    C from, to;                                // segment
    C center;                                  // arc
    typename C::value_type radius{}, angle0{}, sweep{};  // arc: theta = angle0 + s*sweep

    C at(const typename C::value_type& s) const {
        if (!is_arc) return from + (to - from) * C(s);
        return center + polar<C>(radius, angle0 + s * sweep);
    }
};

template <class C>
class PencilTracker {
public:
    using R = typename C::value_type;

    PencilTracker(const IntForm& F, const IntForm& G)
        : f_(complex_coeffs<C>(F.dehomogenized())),
          g_(complex_coeffs<C>(G.dehomogenized())),
          fr_(reversed(F)),
          gr_(reversed(G)),
          newton_tol_(pow(R(10), -static_cast<int>(std::numeric_limits<R>::digits10) + 12)),
          huge_(1000000),
          back_(100000) {}

    // Track all strands along a piece; mutates them. Throws TrackingLost.
    void track_piece(std::vector<Strand<C>>& fiber, const PathPiece<C>& piece) const {
        R s(0);
        R h = R(1) / 16;
        const R h_min = ldexp(R(1), -40);
        while (s < 1) {
            if (h > R(1) - s) h = R(1) - s;
            C t_new = piece.at(s + h);
            R dmin = min_pairwise(fiber);
            std::vector<Strand<C>> cand = fiber;
            bool ok = true;
            for (auto& strand : cand) {
                if (!newton(strand, t_new)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                // no strand may move more than a quarter of the fiber spacing
                for (std::size_t i = 0; i < fiber.size() && ok; ++i)
                    if (chordal_strands(fiber[i], cand[i]) > dmin / 4) ok = false;
            }
            if (!ok) {
                h /= 2;
                if (h < h_min) throw TrackingLost("tracking step control failed");
                continue;
            }
            fiber = std::move(cand);
            rebalance_charts(fiber);
            s += h;
            h = h * 3 / 2;
            if (h > R(1) / 8) h = R(1) / 8;
        }
    }

    std::vector<Strand<C>> initial_fiber(const C& t0, int n) const {
        std::vector<C> pencil = pencil_coeffs(f_, g_, t0, n);
        if (static_cast<int>(pencil.size()) - 1 != n || abs(pencil.back()) == 0)
            throw TrackingLost("base fiber degenerates (degree drop)");
        std::vector<C> roots = poly_roots(pencil);
        std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        std::vector<Strand<C>> out;
        for (const auto& z : roots) out.push_back(Strand<C>{z, false});
        rebalance_charts(out);
        return out;
    }

    // Match the transported fiber against the reference fiber; result[i] is
    // the reference slot where strand i landed.
    Permutation match(const std::vector<Strand<C>>& reference, const std::vector<Strand<C>>& moved) const {
        R dmin = min_pairwise(reference);
        std::vector<int> img(moved.size(), -1);
        std::vector<bool> used(reference.size(), false);
        for (std::size_t i = 0; i < moved.size(); ++i) {
            int best = -1;
            R bestd(0);
            for (std::size_t j = 0; j < reference.size(); ++j) {
                R d = chordal_strands(moved[i], reference[j]);
                if (best < 0 || d < bestd) {
                    best = static_cast<int>(j);
                    bestd = d;
                }
            }
            if (best < 0 || bestd > dmin / 3 || used[static_cast<std::size_t>(best)])
                throw TrackingLost("fiber matching failed after loop");
            used[static_cast<std::size_t>(best)] = true;
            img[i] = best;
        }
        return Permutation::from_images(std::move(img));
    }

    R min_pairwise(const std::vector<Strand<C>>& fiber) const {
        R best(2);  // chordal distance is bounded by 1
        for (std::size_t i = 0; i < fiber.size(); ++i)
            for (std::size_t j = i + 1; j < fiber.size(); ++j) {
                R d = chordal_strands(fiber[i], fiber[j]);
                if (d < best) best = d;
            }
        return best;
    }

private:
    static std::vector<C> reversed(const IntForm& F) {
        std::vector<C> out;
        for (int i = F.degree(); i >= 0; --i) out.push_back(from_integer<C>(F.coeff(i)));
        while (!out.empty() && abs(out.back()) == 0) out.pop_back();
        return out;
    }

    static std::vector<C> pencil_coeffs(const std::vector<C>& f, const std::vector<C>& g, const C& t,
                                        int n) {
        std::vector<C> out(static_cast<std::size_t>(n) + 1, C(0));
        for (std::size_t i = 0; i < f.size(); ++i) out[i] += f[i];
        for (std::size_t i = 0; i < g.size(); ++i) out[i] -= t * g[i];
        while (!out.empty() && abs(out.back()) == 0) out.pop_back();
        return out;
    }

    bool newton(Strand<C>& strand, const C& t) const {
        const std::vector<C>& fc = strand.recip ? fr_ : f_;
        const std::vector<C>& gc = strand.recip ? gr_ : g_;
        C z = strand.v;
        for (int it = 0; it < 60; ++it) {
            C h = eval_poly(fc, z) - t * eval_poly(gc, z);
            C dh = eval_poly_derivative(fc, z) - t * eval_poly_derivative(gc, z);
            if (abs(dh) == 0) return false;
            C step = h / dh;
            z -= step;
            if (abs(step) <= newton_tol_ * (R(1) + abs(z))) {
                strand.v = z;
                return true;
            }
        }
        return false;
    }

    void rebalance_charts(std::vector<Strand<C>>& fiber) const {
        for (auto& s : fiber) {
            if (!s.recip && abs(s.v) > huge_) {
                s.v = C(1) / s.v;
                s.recip = true;
            } else if (s.recip && abs(s.v) > R(1) / back_) {
                if (abs(s.v) == 0) continue;
                C z = C(1) / s.v;
                if (abs(z) < huge_) {
                    s.v = z;
                    s.recip = false;
                }
            }
        }
    }

    std::vector<C> f_, g_, fr_, gr_;
    R newton_tol_, huge_, back_;
};

}  // namespace numeric

// ---------------------------------------------------------------------------
// Public monodromy data.

struct BranchPointInfo {
    bool at_infinity = false;
    Complex50 location{};               // meaningful when finite
    Real50 radius{};                    // inclusion radius of the approximation
    std::optional<Rational> exact;      // set when the branch value is rational
    Permutation generator;              // local monodromy
    std::vector<int> cycle_type;        // = ramification profile of the fiber
};

struct MonodromyData {
    int degree = 0;
    std::vector<BranchPointInfo> points;  // loop order; infinity last when branched
    Integer order;                        // order of the generated group

    // generators in loop order (identity for unbranched points never stored)
    std::vector<Permutation> generators() const {
        std::vector<Permutation> out;
        out.reserve(points.size());
        for (const auto& b : points) out.push_back(b.generator);
        return out;
    }
    Permutation ordered_product() const {  // apply generators in listed order
        Permutation acc = Permutation::identity(degree);
        for (const auto& b : points) acc = b.generator * acc;
        return acc;
    }
};

struct MonodromySettings {
    int digits = 50;        // starting working precision (decimal digits)
    int max_digits = 800;   // precision ladder cap, doubling on failure
    int degree_cap = 12;
    int base_retries = 4;   // deterministic base-point nudges on inconsistency
};

// A lollipop loop in the target plane, for the public track_loop operation:
// stem from the base point, one counterclockwise circle, stem back.
struct LoopSpec {
    Complex50 base;
    Complex50 center;
    Real50 radius;
};

MonodromyData monodromy(const RationalMap& phi, const MonodromySettings& settings = {});
Permutation track_loop(const RationalMap& phi, const LoopSpec& loop,
                       const std::vector<Complex50>& start_fiber, int digits = 50);

}  // namespace arithdyn

#include "arithdyn/monodromy_impl.hpp"
