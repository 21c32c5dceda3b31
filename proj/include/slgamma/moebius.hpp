#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slgamma/clifford.hpp"
#include "slgamma/errors.hpp"
#include "slgamma/format.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma {

enum class ValidationLevel { Unchecked, DeterminantChecked, FullyCertified };

inline const char* to_string(ValidationLevel level) {
    switch (level) {
        case ValidationLevel::Unchecked: return "Unchecked";
        case ValidationLevel::DeterminantChecked: return "DeterminantChecked";
        case ValidationLevel::FullyCertified: return "FullyCertified";
    }
    return "Unchecked";
}

/// 2x2 matrix over the Clifford algebra with optional per-entry Gamma
/// evidence. `level` records which membership checks have passed; operations
/// that cannot preserve a level reset it to Unchecked.
template <class S>
struct CliffordMatrix {
    CliffordNumber<S> a, b, c, d;
    std::optional<GammaElement<S>> ev_a, ev_b, ev_c, ev_d;
    ValidationLevel level = ValidationLevel::Unchecked;

    static CliffordMatrix identity() {
        CliffordMatrix g;
        g.a = CliffordNumber<S>::one();
        g.d = CliffordNumber<S>::one();
        g.level = ValidationLevel::DeterminantChecked;
        return g;
    }
    static CliffordMatrix from_entries(CliffordNumber<S> a, CliffordNumber<S> b,
                                       CliffordNumber<S> c, CliffordNumber<S> d) {
        CliffordMatrix g;
        g.a = std::move(a);
        g.b = std::move(b);
        g.c = std::move(c);
        g.d = std::move(d);
        return g;
    }
    static CliffordMatrix diagonal(const S& r, const S& s) {
        return from_entries(CliffordNumber<S>(r), CliffordNumber<S>(),
                            CliffordNumber<S>(), CliffordNumber<S>(s));
    }
};

/// Delta(g) = a d* - b c*.
template <class S>
CliffordNumber<S> delta(const CliffordMatrix<S>& g) {
    return g.a * star(g.d) - g.b * star(g.c);
}

template <class S>
double max_entry_norm(const CliffordMatrix<S>& g) {
    return std::max(std::max(g.a.norm(), g.b.norm()),
                    std::max(g.c.norm(), g.d.norm()));
}

namespace detail {

template <class S>
void check_vector_condition(const CliffordNumber<S>& product, const char* name,
                            double tol) {
    if (!is_vector_within(product, tol)) throw EntryNotVectorCondition(name);
}

template <class S>
void check_evidence(const CliffordNumber<S>& entry,
                    const std::optional<GammaElement<S>>& ev, const char* name,
                    double tol) {
    if (entry.is_zero()) return;
    if (!ev) throw MissingGammaEvidence(name);
    if (!ev->consistent(tol) || !clifford_eq(ev->value, entry, tol)) {
        throw Error(std::string("Gamma evidence for entry ") + name +
                    " does not multiply to the stored value");
    }
}

}  // namespace detail

/// Checks the SL(Gamma) membership conditions up to `target` and returns the
/// matrix tagged with that level. DeterminantChecked verifies Delta = 1;
/// FullyCertified additionally verifies the four vector conditions
/// ab*, d*b, cd*, c*a and per-entry Gamma evidence.
template <class S>
CliffordMatrix<S> validate(CliffordMatrix<S> g, ValidationLevel target,
                           double tol = 1e-12) {
    if (target == ValidationLevel::Unchecked) {
        g.level = ValidationLevel::Unchecked;
        return g;
    }
    const CliffordNumber<S> det = delta(g);
    if (!clifford_eq(det, CliffordNumber<S>::one(), tol)) {
        throw DeterminantNotOne(to_string(det));
    }
    if (target == ValidationLevel::FullyCertified) {
        detail::check_vector_condition(g.a * star(g.b), "ab*", tol);
        detail::check_vector_condition(star(g.d) * g.b, "d*b", tol);
        detail::check_vector_condition(g.c * star(g.d), "cd*", tol);
        detail::check_vector_condition(star(g.c) * g.a, "c*a", tol);
        detail::check_evidence(g.a, g.ev_a, "a", tol);
        detail::check_evidence(g.b, g.ev_b, "b", tol);
        detail::check_evidence(g.c, g.ev_c, "c", tol);
        detail::check_evidence(g.d, g.ev_d, "d", tol);
    }
    g.level = target;
    return g;
}

struct ValidationOutcome {
    ValidationLevel achieved;
    std::string delta_text;
    std::string blocker;  // why the next level was not reached; empty at top
};

/// Tags the matrix with the highest level whose checks pass; never throws.
template <class S>
ValidationOutcome validate_best(CliffordMatrix<S>& g, double tol = 1e-12) {
    ValidationOutcome out;
    out.delta_text = to_string(delta(g));
    try {
        g = validate(g, ValidationLevel::FullyCertified, tol);
        out.achieved = ValidationLevel::FullyCertified;
        return out;
    } catch (const Error& e) {
        out.blocker = e.what();
    }
    try {
        g = validate(g, ValidationLevel::DeterminantChecked, tol);
        out.achieved = ValidationLevel::DeterminantChecked;
    } catch (const Error& e) {
        out.blocker = e.what();
        g.level = ValidationLevel::Unchecked;
        out.achieved = ValidationLevel::Unchecked;
    }
    return out;
}

/// Entry-wise 2x2 product. Entries of a product are sums of Gamma elements,
/// for which no factorization is derivable, so evidence and level are
/// dropped; validate the result if a tagged matrix is needed.
template <class S>
CliffordMatrix<S> matmul(const CliffordMatrix<S>& g, const CliffordMatrix<S>& h) {
    return CliffordMatrix<S>::from_entries(
        g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
}

/// Closed-form inverse [[d*, -b*], [-c*, a*]]; Gamma evidence transforms
/// factorwise (star reverses the factor order), so level is preserved.
template <class S>
CliffordMatrix<S> inverse(const CliffordMatrix<S>& g) {
    CliffordMatrix<S> r;
    r.a = star(g.d);
    r.b = -star(g.b);
    r.c = -star(g.c);
    r.d = star(g.a);
    if (g.ev_d) r.ev_a = gamma_star(*g.ev_d);
    if (g.ev_b) r.ev_b = gamma_negate(gamma_star(*g.ev_b));
    if (g.ev_c) r.ev_c = gamma_negate(gamma_star(*g.ev_c));
    if (g.ev_a) r.ev_d = gamma_star(*g.ev_a);
    r.level = g.level;
    return r;
}

template <class S>
CliffordNumber<S> trace(const CliffordMatrix<S>& g) {
    return g.a + star(g.d);
}

/// [f, g] = f g f^{-1} g^{-1}, with Delta rechecked on the result.
template <class S>
CliffordMatrix<S> commutator(const CliffordMatrix<S>& f, const CliffordMatrix<S>& g,
                             double tol = 1e-12) {
    CliffordMatrix<S> k = matmul(matmul(f, g), matmul(inverse(f), inverse(g)));
    return validate(std::move(k), ValidationLevel::DeterminantChecked, tol);
}

/// Point of l2 together with the distinguished point at infinity.
template <class S>
class ExtendedPoint {
  public:
    ExtendedPoint() : inf_(true) {}  // infinity
    ExtendedPoint(VectorElement<S> v) : inf_(false), v_(std::move(v)) {}

    static ExtendedPoint infinity() { return ExtendedPoint(); }
    static ExtendedPoint zero() { return ExtendedPoint(VectorElement<S>()); }

    bool is_infinity() const { return inf_; }
    const VectorElement<S>& vector() const {
        if (inf_) throw Error("the point at infinity has no vector value");
        return v_;
    }

    friend bool operator==(const ExtendedPoint& p, const ExtendedPoint& q) = default;

  private:
    bool inf_;
    VectorElement<S> v_;
};

template <class S>
bool point_eq(const ExtendedPoint<S>& p, const ExtendedPoint<S>& q, double tol) {
    if (p.is_infinity() || q.is_infinity()) {
        return p.is_infinity() == q.is_infinity();
    }
    return clifford_eq(p.vector().value(), q.vector().value(), tol);
}

namespace detail {

/// u^{-1} = bar(u)/|u|^2, valid for any u in Gamma (not only vectors).
template <class S>
CliffordNumber<S> gamma_value_inverse(const CliffordNumber<S>& u) {
    const S n = u.norm_sq();
    if (scalar_traits<S>::is_zero(n)) throw ZeroVector("inverse of zero");
    const S one = scalar_traits<S>::from_int(1);
    return bar(u).scaled(one / n);
}

/// Asserts the image is a vector up to tolerance, projecting away float
/// residue below it.
template <class S>
ExtendedPoint<S> as_point(CliffordNumber<S> image, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        if (!image.is_vector()) {
            throw NonVectorResult("image has grade >= 2 support: " + to_string(image));
        }
        return ExtendedPoint<S>(VectorElement<S>(std::move(image)));
    } else {
        const double residue = nonvector_norm(image);
        if (residue > tol) {
            throw NonVectorResult("image has grade >= 2 residue of norm " +
                                  format_double(residue));
        }
        return ExtendedPoint<S>(VectorElement<S>(vector_part(image)));
    }
}

template <class S>
bool zero_within(const CliffordNumber<S>& u, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        return u.is_zero();
    } else {
        return u.norm() <= tol;
    }
}

}  // namespace detail

/// Moebius action x -> (ax + b)(cx + d)^{-1} on l2 plus infinity; the pole
/// maps to infinity and g(infinity) = a c^{-1} (infinity when c = 0).
template <class S>
ExtendedPoint<S> apply(const CliffordMatrix<S>& g, const ExtendedPoint<S>& x,
                       double tol = 1e-12) {
    if (x.is_infinity()) {
        if (detail::zero_within(g.c, tol)) return ExtendedPoint<S>::infinity();
        return detail::as_point(g.a * detail::gamma_value_inverse(g.c), tol);
    }
    const CliffordNumber<S>& v = x.vector().value();
    const CliffordNumber<S> den = g.c * v + g.d;
    if (detail::zero_within(den, tol)) return ExtendedPoint<S>::infinity();
    return detail::as_point((g.a * v + g.b) * detail::gamma_value_inverse(den), tol);
}

/// Distances to the vectorial conditions b* = b, c* = c, tr(g) real; useful
/// for reporting near-misses in float mode.
struct VectorialReport {
    double b_star_defect;
    double c_star_defect;
    double trace_imaginary;
    bool vectorial;
};

template <class S>
VectorialReport vectorial_report(const CliffordMatrix<S>& g, double tol = 1e-12) {
    VectorialReport r;
    r.b_star_defect = (star(g.b) - g.b).norm();
    r.c_star_defect = (star(g.c) - g.c).norm();
    r.trace_imaginary = imaginary_norm(trace(g));
    if constexpr (scalar_traits<S>::exact) {
        r.vectorial = star(g.b) == g.b && star(g.c) == g.c && trace(g).is_real();
    } else {
        r.vectorial = r.b_star_defect <= tol && r.c_star_defect <= tol &&
                      r.trace_imaginary <= tol;
    }
    return r;
}

template <class S>
bool is_vectorial(const CliffordMatrix<S>& g, double tol = 1e-12) {
    return vectorial_report(g, tol).vectorial;
}

/// Necessary-condition filter for hyperbolic elements: tr real and tr^2 > 4.
/// Not a classifier; conjugates of non-hyperbolics can pass.
template <class S>
bool hyperbolic_trace_check(const CliffordMatrix<S>& g, double tol = 1e-12) {
    const CliffordNumber<S> t = trace(g);
    if (!is_real_within(t, tol)) return false;
    const S re = t.real_part();
    return re * re > scalar_traits<S>::from_int(4);
}

template <class S>
struct ClassLabel {
    enum class Kind { Identity, Hyperbolic, Loxodromic, Parabolic, EllipticOrOther };
    Kind kind = Kind::EllipticOrOther;
    S r = scalar_traits<S>::from_int(0);  // Hyperbolic / Loxodromic
    CliffordNumber<S> lambda;             // Loxodromic
    CliffordNumber<S> a, b;               // Parabolic payload

    std::string name() const {
        switch (kind) {
            case Kind::Identity: return "Identity";
            case Kind::Hyperbolic: return "Hyperbolic";
            case Kind::Loxodromic: return "Loxodromic";
            case Kind::Parabolic: return "Parabolic";
            case Kind::EllipticOrOther: return "EllipticOrOther";
        }
        return "EllipticOrOther";
    }
};

template <class S>
struct LabeledMatrix {
    CliffordMatrix<S> matrix;
    ClassLabel<S> label;
};

/// diag(r lambda, r^{-1} lambda') with r real, r != 0, |r| != 1 and lambda a
/// unit-norm Gamma element (Delta = |lambda|^2 forces the unit norm). Labeled
/// Hyperbolic when lambda = +-1, Loxodromic otherwise.
template <class S>
LabeledMatrix<S> make_loxodromic(const S& r, const GammaElement<S>& lambda,
                                 double tol = 1e-12) {
    const S one = scalar_traits<S>::from_int(1);
    if (scalar_traits<S>::is_zero(r)) throw BadParameter("r must be nonzero");
    if (scalar_traits<S>::abs(r) == one) {
        throw BadParameter("|r| must differ from 1");
    }
    if (!scalar_eq(lambda.value.norm_sq(), one, tol)) {
        throw BadParameter("lambda must have norm 1");
    }
    CliffordMatrix<S> g;
    g.a = lambda.value.scaled(r);
    g.d = prime(lambda.value).scaled(one / r);
    GammaElement<S> ev_a = lambda;
    ev_a.factors.insert(ev_a.factors.begin(), VectorElement<S>(r));
    ev_a.value = g.a;
    GammaElement<S> ev_d = gamma_prime(lambda);
    ev_d.factors.insert(ev_d.factors.begin(), VectorElement<S>(one / r));
    ev_d.value = g.d;
    g.ev_a = std::move(ev_a);
    g.ev_d = std::move(ev_d);

    LabeledMatrix<S> out;
    out.matrix = validate(std::move(g), ValidationLevel::FullyCertified, tol);
    const CliffordNumber<S> unit = CliffordNumber<S>::one();
    if (clifford_eq(lambda.value, unit, tol) || clifford_eq(lambda.value, -unit, tol)) {
        out.label.kind = ClassLabel<S>::Kind::Hyperbolic;
    } else {
        out.label.kind = ClassLabel<S>::Kind::Loxodromic;
        out.label.lambda = lambda.value;
    }
    out.label.r = r;
    return out;
}

/// Hyperbolic normal form diag(r, 1/r).
template <class S>
LabeledMatrix<S> make_hyperbolic(const S& r, double tol = 1e-12) {
    return make_loxodromic(r, gamma_scalar(scalar_traits<S>::from_int(1)), tol);
}

/// [[a, b], [0, a']] with |a| = 1, b != 0 and ab = b a'. The constructed
/// matrix still runs full validation: the payload conditions do not by
/// themselves guarantee the vector conditions for arbitrary Gamma entries.
template <class S>
LabeledMatrix<S> make_parabolic(const GammaElement<S>& a, const GammaElement<S>& b,
                                double tol = 1e-12) {
    const S one = scalar_traits<S>::from_int(1);
    if (!scalar_eq(a.value.norm_sq(), one, tol)) {
        throw BadParameter("a must have norm 1");
    }
    if (b.value.is_zero()) throw BadParameter("b must be nonzero");
    if (!clifford_eq(a.value * b.value, b.value * prime(a.value), tol)) {
        throw BadParameter("ab = b a' must hold");
    }
    CliffordMatrix<S> g;
    g.a = a.value;
    g.b = b.value;
    g.d = prime(a.value);
    g.ev_a = a;
    g.ev_b = b;
    g.ev_d = gamma_prime(a);

    LabeledMatrix<S> out;
    out.matrix = validate(std::move(g), ValidationLevel::FullyCertified, tol);
    out.label.kind = ClassLabel<S>::Kind::Parabolic;
    out.label.a = a.value;
    out.label.b = b.value;
    return out;
}

struct OrbitReport {
    std::size_t points_found = 0;
    bool saturated = false;
};

/// Breadth-first closure of x under the generators and their inverses, up to
/// `depth` expansion rounds. `saturated` means the frontier emptied before
/// the depth budget: the full (finite) orbit was found — evidence that the
/// group is elementary. A non-saturated run is inconclusive.
template <class S>
OrbitReport orbit_probe(const std::vector<CliffordMatrix<S>>& generators,
                        const ExtendedPoint<S>& x, std::size_t depth,
                        double tol = 1e-12) {
    std::vector<CliffordMatrix<S>> step = generators;
    for (const auto& g : generators) step.push_back(inverse(g));

    std::vector<ExtendedPoint<S>> seen{x};
    std::vector<ExtendedPoint<S>> frontier{x};
    const auto known = [&](const ExtendedPoint<S>& p) {
        return std::any_of(seen.begin(), seen.end(), [&](const ExtendedPoint<S>& q) {
            return point_eq(p, q, tol);
        });
    };

    OrbitReport report;
    for (std::size_t round = 0; round < depth && !frontier.empty(); ++round) {
        std::vector<ExtendedPoint<S>> next;
        for (const auto& p : frontier) {
            for (const auto& g : step) {
                ExtendedPoint<S> q = apply(g, p, tol);
                if (!known(q)) {
                    seen.push_back(q);
                    next.push_back(std::move(q));
                }
            }
        }
        frontier = std::move(next);
    }
    report.points_found = seen.size();
    report.saturated = frontier.empty();
    return report;
}

}  // namespace slgamma
