#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "slgamma/clifford.hpp"
#include "slgamma/errors.hpp"
#include "slgamma/moebius.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma {

/// Parameters of f = diag(r, 1/r) with r real, r != 0, |r| != 1.
template <class S>
struct DiagonalHyperbolic {
    S r;
    S K;  // (r - 1/r)^2 = tr^2(f) - 4
};

/// Recognizes f = diag(r, 1/r) and extracts r and K = (r - 1/r)^2; throws
/// NotDiagonalHyperbolic naming the violated condition otherwise.
template <class S>
DiagonalHyperbolic<S> diagonal_hyperbolic_params(const CliffordMatrix<S>& f,
                                                 double tol = 1e-12) {
    const auto zero_entry = [&](const CliffordNumber<S>& e) {
        if constexpr (scalar_traits<S>::exact) {
            return e.is_zero();
        } else {
            return e.norm() <= tol;
        }
    };
    if (!zero_entry(f.b) || !zero_entry(f.c)) {
        throw NotDiagonalHyperbolic("f must be diagonal");
    }
    if (!is_real_within(f.a, tol) || !is_real_within(f.d, tol)) {
        throw NotDiagonalHyperbolic("diagonal entries of f must be real");
    }
    const S r = f.a.real_part();
    if (scalar_traits<S>::is_zero(r)) {
        throw NotDiagonalHyperbolic("r must be nonzero");
    }
    const S one = scalar_traits<S>::from_int(1);
    if (!scalar_eq(r * f.d.real_part(), one, tol)) {
        throw NotDiagonalHyperbolic("f must be diag(r, 1/r)");
    }
    if (scalar_traits<S>::abs(r) == one) {
        throw NotDiagonalHyperbolic("|r| must differ from 1");
    }
    const S s = r - one / r;
    return DiagonalHyperbolic<S>{r, s * s};
}

/// K = (r - 1/r)^2 for f = diag(r, 1/r).
template <class S>
S K_of(const CliffordMatrix<S>& f, double tol = 1e-12) {
    return diagonal_hyperbolic_params(f, tol).K;
}

namespace detail {

/// Rational upper bound on sqrt(q) for q >= 0: one Newton step from the
/// float estimate, (u^2 + q)/(2u) >= sqrt(q) for every u > 0.
template <class S>
S sqrt_upper(const S& q) {
    if constexpr (scalar_traits<S>::exact) {
        if (scalar_traits<S>::is_zero(q)) return q;
        if (auto root = scalar_traits<S>::exact_sqrt(q)) return *root;
        S u = scalar_traits<S>::from_double(std::sqrt(scalar_traits<S>::to_double(q)));
        if (!(u > scalar_traits<S>::from_int(0))) {
            u = q + scalar_traits<S>::from_int(1);
        }
        const S two = scalar_traits<S>::from_int(2);
        return (u * u + q) / (two * u);
    } else {
        return std::sqrt(q);
    }
}

/// Euclidean norm of a non-real value as an S: exact when |x|^2 is a
/// perfect rational square, double-derived otherwise.
template <class S>
S euclidean_norm(const CliffordNumber<S>& x) {
    if (auto root = scalar_traits<S>::exact_sqrt(x.norm_sq())) return *root;
    return scalar_traits<S>::from_double(x.norm());
}

/// |c - shift| for a trace-like value: exact scalar abs when c is real,
/// Euclidean norm otherwise.
template <class S>
std::pair<S, bool> norm_distance(const CliffordNumber<S>& c, long shift, double tol) {
    const CliffordNumber<S> d = c - CliffordNumber<S>(scalar_traits<S>::from_int(shift));
    if (is_real_within(d, tol)) {
        return {scalar_traits<S>::abs(d.real_part()), true};
    }
    return {euclidean_norm(d), false};
}

/// K(1 + |w|): exact scalar abs when w is real.
template <class S>
S alpha_at(const S& K, const CliffordNumber<S>& w, double tol) {
    const S one = scalar_traits<S>::from_int(1);
    if (is_real_within(w, tol)) {
        return K * (one + scalar_traits<S>::abs(w.real_part()));
    }
    return K * (one + euclidean_norm(w));
}

/// Decides K(1 + |w|) < 1 without square roots: requires K < 1 and
/// |w|^2 < ((1-K)/K)^2. Exact in rational mode; float mode uses the slack
/// alpha < 1 - tol.
template <class S>
bool alpha_below_one(const S& K, const CliffordNumber<S>& w, double tol) {
    const S one = scalar_traits<S>::from_int(1);
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        if (!(K < one)) return false;
        const S bound = (one - K) / K;
        return w.norm_sq() < bound * bound;
    } else {
        return scalar_traits<S>::to_double(K) * (1.0 + w.norm()) < 1.0 - tol;
    }
}

}  // namespace detail

/// Terms of the Theorem 3.1 functional J(f, g) = |tr^2(f) - 4| +
/// |tr([f, g]) - 2|. The trace_*_real flags record whether each absolute
/// value is an exact scalar |.| or the Euclidean norm of a non-real trace
/// (the latter is float-derived even in rational mode).
template <class S>
struct JorgensenReport {
    S K{};                 // tr^2(f) - 4 as a real scalar; (r - 1/r)^2 for diagonal f
    CliffordNumber<S> w0;  // b star(c) of g
    S term_f{};            // |tr^2(f) - 4|
    S term_comm{};         // |tr([f, g]) - 2|
    S J{};                 // term_f + term_comm
    bool commutator_vectorial = false;
    bool trace_f_real = true;
    bool trace_comm_real = true;
};

template <class S>
JorgensenReport<S> jorgensen_value(const CliffordMatrix<S>& f,
                                   const CliffordMatrix<S>& g, double tol = 1e-12) {
    JorgensenReport<S> rep;
    const CliffordNumber<S> tf = trace(f);
    const CliffordNumber<S> tf2 = tf * tf;
    auto [term_f, f_real] = detail::norm_distance(tf2, 4, tol);
    rep.term_f = std::move(term_f);
    rep.trace_f_real = f_real;
    if (f_real) {
        rep.K = tf2.real_part() - scalar_traits<S>::from_int(4);
    } else {
        rep.K = rep.term_f;
    }

    const CliffordMatrix<S> comm = matmul(matmul(f, g), matmul(inverse(f), inverse(g)));
    auto [term_comm, comm_real] = detail::norm_distance(trace(comm), 2, tol);
    rep.term_comm = std::move(term_comm);
    rep.trace_comm_real = comm_real;
    rep.J = rep.term_f + rep.term_comm;
    rep.w0 = g.b * star(g.c);
    rep.commutator_vectorial = is_vectorial(comm, tol);
    return rep;
}

/// Checks tr([f, g]) - 2 = -K b c* entrywise in the algebra.
template <class S>
bool commutator_trace_identity_check(const CliffordMatrix<S>& f,
                                     const CliffordMatrix<S>& g,
                                     double tol = 1e-12) {
    const S K = K_of(f, tol);
    const CliffordMatrix<S> comm =
        matmul(matmul(f, g), matmul(inverse(f), inverse(g)));
    const CliffordNumber<S> lhs =
        trace(comm) - CliffordNumber<S>(scalar_traits<S>::from_int(2));
    const CliffordNumber<S> rhs = (g.b * star(g.c)).scaled(-K);
    return clifford_eq(lhs, rhs, tol);
}

template <class S>
struct IterationState {
    std::size_t m = 0;
    CliffordMatrix<S> g_m;
    CliffordNumber<S> w_m;  // b_m star(c_m), recomputed from the entries
    S w_re{};               // real part of w_m
    double w_norm = 0;      // |w_m|
    S alpha{};              // K(1 + |w_m|); exact when w_m is real
    S J_m{};                // J(f, g_m) recomputed from the commutator trace
    double entry_max_norm = 0;
};

enum class IterationStatus { Converged, Diverged, BudgetExhausted };

inline const char* to_string(IterationStatus s) {
    switch (s) {
        case IterationStatus::Converged: return "converged";
        case IterationStatus::Diverged: return "diverged";
        case IterationStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "budget-exhausted";
}

template <class S>
struct IterationTrace {
    std::vector<IterationState<S>> states;
    IterationStatus status = IterationStatus::BudgetExhausted;
    S r{};
    S K{};
};

namespace detail {

/// One conjugation step g -> g f g^{-1}. In float mode the result is rescaled
/// by 1/sqrt(Delta) so the determinant stays at 1; without this the relative
/// error of the entries doubles every step and the iteration breaks down
/// around m = 55. Exact mode preserves Delta = 1 as is.
template <class S>
CliffordMatrix<S> conjugate_step(const CliffordMatrix<S>& g, const CliffordMatrix<S>& f,
                                 bool& degenerate) {
    CliffordMatrix<S> next = matmul(matmul(g, f), inverse(g));
    if constexpr (!scalar_traits<S>::exact) {
        const double det_re = scalar_traits<S>::to_double(delta(next).real_part());
        if (!(det_re > 0) || !std::isfinite(det_re)) {
            degenerate = true;
            return next;
        }
        const double scale = 1.0 / std::sqrt(det_re);
        next.a = next.a.scaled(scale);
        next.b = next.b.scaled(scale);
        next.c = next.c.scaled(scale);
        next.d = next.d.scaled(scale);
    }
    degenerate = false;
    return next;
}

template <class S>
IterationState<S> observe(std::size_t m, CliffordMatrix<S> g, const S& K,
                          const CliffordMatrix<S>& f, double tol) {
    IterationState<S> st;
    st.m = m;
    st.w_m = g.b * star(g.c);
    st.w_re = st.w_m.real_part();
    st.w_norm = st.w_m.norm();
    st.alpha = alpha_at(K, st.w_m, tol);
    const CliffordMatrix<S> comm =
        matmul(matmul(f, g), matmul(inverse(f), inverse(g)));
    st.J_m = K + norm_distance(trace(comm), 2, tol).first;
    st.entry_max_norm = max_entry_norm(g);
    st.g_m = std::move(g);
    return st;
}

}  // namespace detail

/// Runs g_0 = g, g_{m+1} = g_m f g_m^{-1} for m = 0..max_steps, recording
/// w_m = b_m star(c_m) from the entries at every step. Stops early when
/// |w_m| < tolerance at some m >= 1 (converged) or an entry norm exceeds
/// overflow_bound or turns non-finite (diverged).
template <class S>
IterationTrace<S> iterate(const CliffordMatrix<S>& f, const CliffordMatrix<S>& g,
                          std::size_t max_steps, double tolerance = 1e-12,
                          double overflow_bound = 1e30) {
    const DiagonalHyperbolic<S> par = diagonal_hyperbolic_params(f, tolerance);
    IterationTrace<S> trace;
    trace.r = par.r;
    trace.K = par.K;
    trace.states.reserve(max_steps + 1);

    CliffordMatrix<S> cur = g;
    for (std::size_t m = 0;; ++m) {
        IterationState<S> st = detail::observe(m, std::move(cur), par.K, f, tolerance);
        const double entry_norm = st.entry_max_norm;
        const double w_norm = st.w_norm;
        trace.states.push_back(std::move(st));

        if (!std::isfinite(entry_norm) || entry_norm > overflow_bound) {
            trace.status = IterationStatus::Diverged;
            return trace;
        }
        if (m >= 1 && w_norm < tolerance) {
            trace.status = IterationStatus::Converged;
            return trace;
        }
        if (m == max_steps) {
            trace.status = IterationStatus::BudgetExhausted;
            return trace;
        }
        bool degenerate = false;
        cur = detail::conjugate_step(trace.states.back().g_m, f, degenerate);
        if (degenerate) {
            trace.status = IterationStatus::Diverged;
            return trace;
        }
    }
}

/// Per-step result of replaying the recursion w_{m+1} = -K(1 + w_m) w_m.
/// Steps with non-real w_m are skipped (applicable = false), never failed:
/// the recursion is only established for real w_m.
struct RecursionStepCheck {
    std::size_t m = 0;  // compares step m against step m + 1
    bool applicable = true;
    bool passed = true;
};

template <class S>
std::vector<RecursionStepCheck> recursion_check(const IterationTrace<S>& trace,
                                                const S& K, double tol = 1e-12) {
    std::vector<RecursionStepCheck> out;
    if (trace.states.empty()) return out;
    out.reserve(trace.states.size() - 1);
    const S one = scalar_traits<S>::from_int(1);
    for (std::size_t m = 0; m + 1 < trace.states.size(); ++m) {
        RecursionStepCheck chk;
        chk.m = m;
        const CliffordNumber<S>& w = trace.states[m].w_m;
        if (!is_real_within(w, tol)) {
            chk.applicable = false;
            out.push_back(chk);
            continue;
        }
        const S w_re = w.real_part();
        const S predicted = -(K * (one + w_re) * w_re);
        chk.passed = clifford_eq(trace.states[m + 1].w_m,
                                 CliffordNumber<S>(predicted), tol);
        out.push_back(chk);
    }
    return out;
}

/// Verifies |w_{m+n}| <= alpha_m^n |w_m| for every recorded n and that |w|
/// is non-increasing from m on. Requires alpha_m < 1. Exact mode compares
/// squared norms against a rational upper bound of alpha_m, so a pass is a
/// proof; float mode compares doubles.
template <class S>
bool contraction_bound_check(const IterationTrace<S>& trace, const S& K,
                             std::size_t m, double tol = 1e-12) {
    if (m >= trace.states.size()) {
        throw PreconditionNotMet("step index beyond the recorded trace");
    }
    const CliffordNumber<S>& w_m = trace.states[m].w_m;
    if (!detail::alpha_below_one(K, w_m, tol)) {
        throw PreconditionNotMet("alpha_m = K(1 + |w_m|) must be below 1");
    }
    if constexpr (scalar_traits<S>::exact) {
        const S one = scalar_traits<S>::from_int(1);
        const S alpha_up = K * (one + detail::sqrt_upper(w_m.norm_sq()));
        const S alpha_sq = alpha_up * alpha_up;
        S factor = one;  // alpha_up^{2n}
        S prev_sq = w_m.norm_sq();
        for (std::size_t n = 1; m + n < trace.states.size(); ++n) {
            factor = factor * alpha_sq;
            const S cur_sq = trace.states[m + n].w_m.norm_sq();
            if (!(cur_sq <= factor * w_m.norm_sq())) return false;
            if (!(cur_sq <= prev_sq)) return false;
            prev_sq = cur_sq;
        }
        return true;
    } else {
        const double alpha = scalar_traits<S>::to_double(
            detail::alpha_at(K, w_m, tol));
        const double w0 = w_m.norm();
        double factor = 1.0;
        double prev = w0;
        const double slack = 1.0 + 1e-9;  // roundoff headroom on the bound
        for (std::size_t n = 1; m + n < trace.states.size(); ++n) {
            factor *= alpha;
            const double cur = trace.states[m + n].w_m.norm();
            if (cur > factor * w0 * slack) return false;
            if (cur > prev * slack) return false;
            prev = cur;
        }
        return true;
    }
}

/// Outcome of the Theorem 3.2 strictness replay. The engine's conclusions
/// are one-sided: ContractionDetected means the pair cannot generate a
/// discrete non-elementary group with J = 1; it never claims discreteness.
template <class S>
struct CertificateOutcome {
    enum class Kind { ContractionDetected, EqualityPersisted, NotCandidate, SignViolation };
    Kind kind = Kind::NotCandidate;
    std::size_t m = 0;
    S alpha{};  // K(1 + |w_m|) at the terminal step
    S J{};
    S K{};

    std::string name() const {
        switch (kind) {
            case Kind::ContractionDetected: return "ContractionDetected";
            case Kind::EqualityPersisted: return "EqualityPersisted";
            case Kind::NotCandidate: return "NotCandidate";
            case Kind::SignViolation: return "SignViolation";
        }
        return "NotCandidate";
    }
};

/// Replays the proof of Theorem 3.2 on a concrete pair. For J = 1 candidates
/// it iterates until alpha_m = K(1 + |w_m|) drops below 1 (the proof's
/// contradiction, reported with the step), checks the forced positivity of a
/// real w_0 first, and reports EqualityPersisted only if the budget runs out
/// with alpha pinned at 1.
template <class S>
CertificateOutcome<S> strictness_certificate(const CliffordMatrix<S>& f,
                                             const CliffordMatrix<S>& g,
                                             std::size_t max_steps = 100,
                                             double tolerance = 1e-12) {
    const DiagonalHyperbolic<S> par = diagonal_hyperbolic_params(f, tolerance);
    const JorgensenReport<S> rep = jorgensen_value(f, g, tolerance);

    CertificateOutcome<S> out;
    out.K = par.K;
    out.J = rep.J;

    const S one = scalar_traits<S>::from_int(1);
    const bool K_below_one = par.K < one;
    const bool J_is_one = scalar_eq(rep.J, one, tolerance);
    if (!K_below_one || !J_is_one) {
        out.kind = CertificateOutcome<S>::Kind::NotCandidate;
        out.alpha = detail::alpha_at(par.K, rep.w0, tolerance);
        return out;
    }

    // The proof forces w_0 > 0 when it is real: equality K(1+|w_0|) = 1 with
    // a negative real w_0 contradicts the triangle equality |1+w| = 1+|w|.
    if (is_real_within(rep.w0, tolerance)) {
        const S w0_re = rep.w0.real_part();
        const bool negative = scalar_traits<S>::exact
                                  ? w0_re < scalar_traits<S>::from_int(0)
                                  : scalar_traits<S>::to_double(w0_re) < -tolerance;
        if (negative) {
            out.kind = CertificateOutcome<S>::Kind::SignViolation;
            out.m = 0;
            out.alpha = detail::alpha_at(par.K, rep.w0, tolerance);
            return out;
        }
    }

    CliffordMatrix<S> cur = g;
    for (std::size_t m = 0;; ++m) {
        const CliffordNumber<S> w = cur.b * star(cur.c);
        if (detail::alpha_below_one(par.K, w, tolerance)) {
            out.kind = CertificateOutcome<S>::Kind::ContractionDetected;
            out.m = m;
            out.alpha = detail::alpha_at(par.K, w, tolerance);
            return out;
        }
        if (m == max_steps) {
            out.kind = CertificateOutcome<S>::Kind::EqualityPersisted;
            out.m = m;
            out.alpha = detail::alpha_at(par.K, w, tolerance);
            return out;
        }
        bool degenerate = false;
        cur = detail::conjugate_step(cur, f, degenerate);
        if (degenerate) {
            out.kind = CertificateOutcome<S>::Kind::EqualityPersisted;
            out.m = m;
            out.alpha = detail::alpha_at(par.K, w, tolerance);
            return out;
        }
    }
}

/// One grid point of the scan over the family f = diag(r, 1/r),
/// g = [[1, w0], [1, 1 + w0]] (determinant 1 by construction).
template <class S>
struct ScanRow {
    S r{};
    S w0{};
    S K{};
    S J{};
    typename CertificateOutcome<S>::Kind outcome =
        CertificateOutcome<S>::Kind::NotCandidate;
    std::string outcome_name;
    std::size_t m = 0;
    S alpha{};
};

template <class S>
struct ScanResult {
    std::vector<ScanRow<S>> rows;  // ordered by (r, w0) position in the input
    std::vector<S> skipped_r;      // r values with |r| = 1 or r = 0
};

/// Evaluates the certificate over the cross product of the two value lists.
/// Rows are computed in parallel but stored by grid index, so the output
/// order is deterministic. Input order is preserved; callers sort the value
/// lists if they need sorted output.
template <class S>
ScanResult<S> scan_grid(const std::vector<S>& r_values, const std::vector<S>& w0_values,
                        std::size_t max_steps = 100, double tolerance = 1e-12,
                        std::size_t workers = 0) {
    ScanResult<S> result;
    const S one = scalar_traits<S>::from_int(1);
    std::vector<S> usable_r;
    for (const S& r : r_values) {
        if (scalar_traits<S>::is_zero(r) || scalar_traits<S>::abs(r) == one) {
            result.skipped_r.push_back(r);
        } else {
            usable_r.push_back(r);
        }
    }
    const std::size_t total = usable_r.size() * w0_values.size();
    result.rows.resize(total);
    if (total == 0) return result;

    const auto eval_point = [&](std::size_t idx) {
        const S& r = usable_r[idx / w0_values.size()];
        const S& w0 = w0_values[idx % w0_values.size()];
        const CliffordMatrix<S> f = CliffordMatrix<S>::diagonal(r, one / r);
        const CliffordMatrix<S> g = CliffordMatrix<S>::from_entries(
            CliffordNumber<S>::one(), CliffordNumber<S>(w0),
            CliffordNumber<S>::one(), CliffordNumber<S>(one + w0));
        const CertificateOutcome<S> cert =
            strictness_certificate(f, g, max_steps, tolerance);
        ScanRow<S>& row = result.rows[idx];
        row.r = r;
        row.w0 = w0;
        row.K = cert.K;
        row.J = cert.J;
        row.outcome = cert.kind;
        row.outcome_name = cert.name();
        row.m = cert.m;
        row.alpha = cert.alpha;
    };

    std::size_t n_workers = workers == 0 ? std::thread::hardware_concurrency() : workers;
    if (n_workers == 0) n_workers = 1;
    n_workers = std::min(n_workers, total);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) eval_point(i);
        return result;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < total; i += n_workers) eval_point(i);
        });
    }
    for (auto& th : pool) th.join();
    return result;
}

}  // namespace slgamma
