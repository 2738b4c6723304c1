#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jordet/decision.hpp"
#include "jordet/linalg.hpp"
#include "jordet/matrix.hpp"
#include "jordet/sym2.hpp"

namespace jordet {

/// A linear map on M_n, stored as the (n^2)x(n^2) matrix acting on vec(x).
template <class R>
struct LinMap {
    int n = 0;
    Matrix<R> mat;
};

template <class R>
Matrix<R> apply(const R& ring, const LinMap<R>& f, const Matrix<R>& x) {
    if (x.rows != f.n || x.cols != f.n) throw SizeMismatch("LinMap argument size");
    Vec<R> in = vec(x);
    Vec<R> out(in.size(), ring.zero());
    for (int r = 0; r < f.mat.rows; ++r) {
        auto acc = ring.zero();
        for (int c = 0; c < f.mat.cols; ++c) acc = ring.add(acc, ring.mul(f.mat.at(r, c), in[static_cast<std::size_t>(c)]));
        out[static_cast<std::size_t>(r)] = acc;
    }
    return unvec(ring, f.n, out);
}

template <class R>
LinMap<R> identity_map(const R& ring, int n) {
    return {n, identity(ring, n * n)};
}

/// Builds a LinMap column by column from its action on matrix units.
template <class R, class F>
LinMap<R> linmap_from_action(const R& ring, int n, F&& action) {
    LinMap<R> f{n, Matrix<R>(ring, n * n, n * n)};
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
            auto img = action(unit(ring, n, k, l));
            int col = (k - 1) * n + (l - 1);
            auto v = vec(img);
            for (int r = 0; r < n * n; ++r) f.mat.at(r, col) = v[static_cast<std::size_t>(r)];
        }
    return f;
}

/// ad_M : x -> Mx - xM. Kills I and satisfies the Jordan derivation law.
template <class R>
LinMap<R> inner_derivation(const R& ring, const Matrix<R>& m) {
    return linmap_from_action(ring, m.rows, [&](const Matrix<R>& u) {
        return sub(ring, mul(ring, m, u), mul(ring, u, m));
    });
}

template <class R>
Matrix<R> inverse(const R& ring, const Matrix<R>& s) {
    static_assert(R::is_field, "matrix inverse needs a field ring");
    const int n = s.rows;
    Matrix<R> aug(ring, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = s.at(i, j);
        aug.at(i, n + i) = ring.one();
    }
    auto rr = rref(ring, std::move(aug));
    if (rr.rank < n || rr.pivot_cols[static_cast<std::size_t>(n - 1)] != n - 1)
        throw NotInvertible("matrix is singular");
    Matrix<R> inv(ring, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = rr.reduced.at(i, n + j);
    return inv;
}

/// x -> s x s^{-1} for invertible s.
template <class R>
LinMap<R> inner_automorphism(const R& ring, const Matrix<R>& s) {
    auto si = inverse(ring, s);
    return linmap_from_action(ring, s.rows, [&](const Matrix<R>& u) {
        return mul(ring, mul(ring, s, u), si);
    });
}

/// d(x o y) = d(x) o y + x o d(y) for all x, y; by bilinearity it is enough
/// to check all unordered unit pairs.
template <class R>
bool is_jordan_derivation(const R& ring, const LinMap<R>& d) {
    const int n = d.n;
    for (int alpha = 1; alpha <= n * n; ++alpha) {
        auto [ai, aj] = unflat_index(n, alpha);
        auto ea = unit(ring, n, ai, aj);
        auto dea = apply(ring, d, ea);
        for (int beta = alpha; beta <= n * n; ++beta) {
            auto [bi, bj] = unflat_index(n, beta);
            auto eb = unit(ring, n, bi, bj);
            auto lhs = apply(ring, d, jordan(ring, ea, eb));
            auto rhs = add(ring, jordan(ring, dea, eb), jordan(ring, ea, apply(ring, d, eb)));
            if (!equal(ring, lhs, rhs)) return false;
        }
    }
    return true;
}

template <class R>
struct DerivableSpaceReport {
    Matrix<R> point;
    std::string strategy;
    std::uint64_t seed = 0;
    long constraint_rank = 0;
    long solution_dim = 0;
    std::vector<LinMap<R>> basis;
    bool all_solutions_are_jordan_derivations = false;
    long long pairs_used = 0;
    long long elapsed_ms = 0;
};

namespace app_detail {

/// Adds to `acc` the linear constraints on the unknown map tau imposed by
/// one fiber slice of a: tau(a) = tau(S) o y0 + S o tau(y0) at the
/// particular solution, and tau(S) o k + S o tau(k) = 0 per kernel
/// direction (the linearization of quantifying over the whole slice).
/// Unknown layout: tau as N x N matrix, entry (w, c) at w*N + c, N = n^2.
template <class R>
void insert_slice_constraints(const R& ring, int n, const Matrix<R>& a, const FiberSlice<R>& slice,
                              SpanAccumulator<R>& acc) {
    const int N = n * n;
    auto va = vec(a);
    auto vs = vec(slice.x);
    auto vy0 = vec(slice.y0);
    auto ts = jordan_operator(ring, slice.x);
    auto ty0 = jordan_operator(ring, slice.y0);

    Vec<R> row(static_cast<std::size_t>(N) * N, ring.zero());
    for (int o = 0; o < N; ++o) {
        std::fill(row.begin(), row.end(), ring.zero());
        for (int w = 0; w < N; ++w) {
            for (int c = 0; c < N; ++c) {
                auto coeff = ring.zero();
                if (w == o) coeff = va[static_cast<std::size_t>(c)];
                coeff = ring.sub(coeff, ring.mul(ty0.at(o, w), vs[static_cast<std::size_t>(c)]));
                coeff = ring.sub(coeff, ring.mul(ts.at(o, w), vy0[static_cast<std::size_t>(c)]));
                row[static_cast<std::size_t>(w) * N + c] = coeff;
            }
        }
        acc.insert(ring, row);
    }
    for (const auto& k : slice.kernel_dirs) {
        auto vk = vec(k);
        auto tk = jordan_operator(ring, k);
        for (int o = 0; o < N; ++o) {
            std::fill(row.begin(), row.end(), ring.zero());
            for (int w = 0; w < N; ++w)
                for (int c = 0; c < N; ++c)
                    row[static_cast<std::size_t>(w) * N + c] =
                        ring.add(ring.mul(tk.at(o, w), vs[static_cast<std::size_t>(c)]),
                                 ring.mul(ts.at(o, w), vk[static_cast<std::size_t>(c)]));
            acc.insert(ring, row);
        }
    }
}

} // namespace app_detail

/// Solves for the space of linear maps Jordan-derivable at `a` with
/// tau(I) = 0. The constraint rank can never exceed n^4 - (n^2 - 1) because
/// every inner derivation ad_M satisfies all constraints; reaching that
/// ceiling certifies saturation and stops an exhaustive sweep early.
template <class R>
DerivableSpaceReport<R> derivable_space(const R& ring, const Matrix<R>& a, const Strategy<R>& strategy) {
    static_assert(R::is_field, "derivable_space needs a field ring");
    const int n = a.rows;
    const int N = n * n;
    const long ambient = static_cast<long>(N) * N;
    const long ceiling = ambient - (N - 1);

    auto t0 = std::chrono::steady_clock::now();
    DerivableSpaceReport<R> report;
    report.point = a;

    SpanAccumulator<R> acc(static_cast<int>(ambient));

    // tau(I) = 0
    {
        auto vi = vec(identity(ring, n));
        Vec<R> row(static_cast<std::size_t>(ambient), ring.zero());
        for (int o = 0; o < N; ++o) {
            std::fill(row.begin(), row.end(), ring.zero());
            for (int c = 0; c < N; ++c) row[static_cast<std::size_t>(o) * N + c] = vi[static_cast<std::size_t>(c)];
            acc.insert(ring, row);
        }
    }

    bool early_exit = true;
    if (std::holds_alternative<ExhaustiveStrategy>(strategy)) {
        const auto& st = std::get<ExhaustiveStrategy>(strategy);
        report.strategy = "exhaustive";
        early_exit = st.early_exit;
        if constexpr (!R::is_finite) {
            throw StrategyUnsupported("exhaustive sweep needs a finite prime field");
        } else {
            detail::sweep_matrices(ring, n, 1, 0, [&](const Matrix<R>& x) {
                if (auto slice = fiber_slice(ring, x, a)) {
                    ++report.pairs_used;
                    app_detail::insert_slice_constraints(ring, n, a, *slice, acc);
                }
                return !(early_exit && acc.rank() >= ceiling);
            });
        }
    } else if (std::holds_alternative<RandomStrategy>(strategy)) {
        const auto& st = std::get<RandomStrategy>(strategy);
        report.strategy = "random";
        report.seed = st.seed;
        std::mt19937_64 rng(st.seed);
        for (long long i = 0; i < st.max_samples; ++i) {
            auto x = random_matrix(ring, n, rng);
            if (auto slice = fiber_slice(ring, x, a)) {
                ++report.pairs_used;
                app_detail::insert_slice_constraints(ring, n, a, *slice, acc);
            }
            if (acc.rank() >= ceiling) break;
        }
    } else {
        throw StrategyUnsupported("derivable_space supports exhaustive and random strategies");
    }

    report.constraint_rank = acc.rank();
    auto kernel = null_space(ring, acc.basis(), static_cast<int>(ambient));
    report.solution_dim = static_cast<long>(kernel.size());
    report.basis.reserve(kernel.size());
    bool all_derivations = true;
    for (const auto& v : kernel) {
        LinMap<R> f{n, Matrix<R>(ring, N, N)};
        f.mat.a = v;
        if (!is_jordan_derivation(ring, f)) all_derivations = false;
        report.basis.push_back(std::move(f));
    }
    report.all_solutions_are_jordan_derivations = all_derivations;
    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

enum class MultOutcome { ConclusionHolds, HypothesisFails, ConclusionFails };

inline std::string mult_outcome_name(MultOutcome o) {
    switch (o) {
        case MultOutcome::ConclusionHolds: return "conclusion-holds";
        case MultOutcome::HypothesisFails: return "hypothesis-fails";
        case MultOutcome::ConclusionFails: return "conclusion-fails";
    }
    return "?";
}

template <class R>
struct MultReport {
    Matrix<R> point;
    std::string strategy;
    std::uint64_t seed = 0;
    MultOutcome outcome = MultOutcome::ConclusionHolds;
    std::optional<std::pair<Matrix<R>, Matrix<R>>> failing_pair;
    long long pairs_checked = 0;
    bool hypothesis_exhaustive = false;
    bool paper_contradiction = false;
    long long elapsed_ms = 0;
};

template <class R>
bool is_matrix_unit(const R& ring, const Matrix<R>& a) {
    int ones = 0;
    for (const auto& v : a.a) {
        if (ring.is_zero(v)) continue;
        if (!ring.eq(v, ring.one())) return false;
        ++ones;
    }
    return ones == 1;
}

/// Checks the hypothesis "phi is Jordan-multiplicative at a" over the fiber
/// (per strategy), then the conclusion "phi is Jordan-multiplicative
/// everywhere" on all unit pairs. A failing conclusion after an exhaustively
/// verified hypothesis at a matrix-unit point with n >= 3 is flagged as a
/// contradiction of the underlying theorem.
template <class R>
MultReport<R> multiplicative_check(const R& ring, const LinMap<R>& phi, const Matrix<R>& a,
                                   const Strategy<R>& strategy) {
    static_assert(R::is_field, "multiplicative_check needs a field ring");
    const int n = a.rows;
    if (phi.n != n) throw SizeMismatch("map size does not match point size");
    if (!equal(ring, apply(ring, phi, identity(ring, n)), identity(ring, n)))
        throw PreconditionFailed("map must satisfy phi(I) = I");

    auto t0 = std::chrono::steady_clock::now();
    MultReport<R> report;
    report.point = a;
    auto phi_a = apply(ring, phi, a);

    // Phase 1: for a slice (S, y0 + span(dirs)), phi(a) = phi(S) o phi(y)
    // for all y in the slice iff it holds at y0 and phi(S) o phi(k) = 0 for
    // every kernel direction k.
    auto check_slice = [&](const FiberSlice<R>& slice) -> bool {
        ++report.pairs_checked;
        auto ps = apply(ring, phi, slice.x);
        if (!equal(ring, jordan(ring, ps, apply(ring, phi, slice.y0)), phi_a)) {
            report.failing_pair = {slice.x, slice.y0};
            return false;
        }
        for (const auto& k : slice.kernel_dirs) {
            if (!is_zero(ring, jordan(ring, ps, apply(ring, phi, k)))) {
                report.failing_pair = {slice.x, add(ring, slice.y0, k)};
                return false;
            }
        }
        return true;
    };

    bool hypothesis_ok = true;
    if (std::holds_alternative<ExhaustiveStrategy>(strategy)) {
        report.strategy = "exhaustive";
        if constexpr (!R::is_finite) {
            throw StrategyUnsupported("exhaustive sweep needs a finite prime field");
        } else {
            detail::sweep_matrices(ring, n, 1, 0, [&](const Matrix<R>& x) {
                if (auto slice = fiber_slice(ring, x, a))
                    if (!check_slice(*slice)) {
                        hypothesis_ok = false;
                        return false;
                    }
                return true;
            });
            report.hypothesis_exhaustive = hypothesis_ok;
        }
    } else if (std::holds_alternative<RandomStrategy>(strategy)) {
        const auto& st = std::get<RandomStrategy>(strategy);
        report.strategy = "random";
        report.seed = st.seed;
        std::mt19937_64 rng(st.seed);
        for (long long i = 0; i < st.max_samples && hypothesis_ok; ++i) {
            auto x = random_matrix(ring, n, rng);
            if (auto slice = fiber_slice(ring, x, a)) hypothesis_ok = check_slice(*slice);
        }
    } else {
        throw StrategyUnsupported("multiplicative_check supports exhaustive and random strategies");
    }

    if (!hypothesis_ok) {
        report.outcome = MultOutcome::HypothesisFails;
    } else {
        report.outcome = MultOutcome::ConclusionHolds;
        for (int alpha = 1; alpha <= n * n && report.outcome == MultOutcome::ConclusionHolds; ++alpha) {
            auto [ai, aj] = unflat_index(n, alpha);
            auto ea = unit(ring, n, ai, aj);
            auto pea = apply(ring, phi, ea);
            for (int beta = alpha; beta <= n * n; ++beta) {
                auto [bi, bj] = unflat_index(n, beta);
                auto eb = unit(ring, n, bi, bj);
                auto lhs = apply(ring, phi, jordan(ring, ea, eb));
                auto rhs = jordan(ring, pea, apply(ring, phi, eb));
                if (!equal(ring, lhs, rhs)) {
                    report.outcome = MultOutcome::ConclusionFails;
                    report.failing_pair = {ea, eb};
                    break;
                }
            }
        }
        if (report.outcome == MultOutcome::ConclusionFails && report.hypothesis_exhaustive &&
            is_matrix_unit(ring, a) && n >= 3)
            report.paper_contradiction = true;
    }

    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace jordet
