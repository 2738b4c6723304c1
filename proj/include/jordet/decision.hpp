#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "jordet/linalg.hpp"
#include "jordet/matrix.hpp"
#include "jordet/sym2.hpp"

namespace jordet {

/// Cost guardrail: the decision procedure refuses points of M_n for n > 6.
inline constexpr int kMaxDecisionSize = 6;

enum class Verdict { Determined, NotDetermined, Inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Determined: return "determined";
        case Verdict::NotDetermined: return "not-determined";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// One x-slice of the fiber {(x, y) : x o y = a}: a particular solution y0
/// and a basis of {k : x o k = 0}, so the slice is y0 + span(kernel_dirs).
template <class R>
struct FiberSlice {
    Matrix<R> x;
    Matrix<R> y0;
    std::vector<Matrix<R>> kernel_dirs;
};

/// Canonical base point of every fiber: (a/2) o I = a.
template <class R>
std::pair<Matrix<R>, Matrix<R>> base_pair(const R& ring, const Matrix<R>& a) {
    auto half = ring.from_ratio(1, 2);
    return {scale(ring, half, a), identity(ring, a.rows)};
}

template <class R>
std::optional<FiberSlice<R>> fiber_slice(const R& ring, const Matrix<R>& x, const Matrix<R>& a) {
    if (!x.square() || x.rows != a.rows || x.cols != a.cols) throw SizeMismatch("fiber_slice operands");
    auto t = jordan_operator(ring, x);
    auto sol = solve_linear(ring, t, vec(a));
    if (!sol) return std::nullopt;
    FiberSlice<R> slice;
    slice.x = x;
    slice.y0 = unvec(ring, x.rows, sol->particular);
    slice.kernel_dirs.reserve(sol->kernel_basis.size());
    for (auto& k : sol->kernel_basis) slice.kernel_dirs.push_back(unvec(ring, x.rows, k));
    return slice;
}

struct ExhaustiveStrategy {
    bool early_exit = true;
    int threads = 1;
};

struct RandomStrategy {
    std::uint64_t seed = 0;
    long long max_samples = 5000;
};

/// Witness pairs (x, y) with x o y = point, e.g. instantiated from a replay
/// catalog. The decision only ever uses them as fiber points.
template <class R>
struct StructuredStrategy {
    std::string name;
    std::vector<std::pair<Matrix<R>, Matrix<R>>> witnesses;
};

template <class R>
using Strategy = std::variant<ExhaustiveStrategy, RandomStrategy, StructuredStrategy<R>>;

/// A non-determination certificate: a functional on Sym^2 vanishing on the
/// swept fiber span W_A but not on K. The induced bilinear map is constant
/// on the fiber of A yet does not factor through the Jordan product.
template <class R>
struct Certificate {
    Vec<R> functional;
    Vec<R> witness_kernel_vector;
};

template <class R>
struct DecisionReport {
    Matrix<R> point;
    RingSpec ring;
    std::string strategy;
    std::uint64_t seed = 0;
    long long max_samples = 0;
    bool early_exit = true;
    int threads = 1;
    long dim_sym2 = 0;
    long dim_kernel = 0;
    long dim_span = 0;
    Verdict verdict = Verdict::Inconclusive;
    long long samples_used = 0;
    long long elapsed_ms = 0;
    std::optional<Certificate<R>> certificate;
};

namespace detail {

/// Inserts the contribution of one fiber slice into the span of fiber
/// differences. Since sigma is linear in y for fixed x, the whole slice
/// contributes sigma(x, y0) - sigma(base) plus one vector per kernel
/// direction. Every inserted vector must lie in ker J; this is checked.
template <class R>
void insert_slice(const R& ring, int n, const FiberSlice<R>& slice, const Vec<R>& base_sigma,
                  SpanAccumulator<R>& w_span) {
    auto diff = sigma(ring, slice.x, slice.y0);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ring.sub(diff[i], base_sigma[i]);
    if (!in_jordan_kernel(ring, n, diff))
        throw std::logic_error("fiber difference escaped ker J; slice solver is broken");
    w_span.insert(ring, std::move(diff));
    for (const auto& k : slice.kernel_dirs) {
        auto v = sigma(ring, slice.x, k);
        if (!in_jordan_kernel(ring, n, v))
            throw std::logic_error("kernel-direction vector escaped ker J");
        w_span.insert(ring, std::move(v));
    }
}

/// Enumerates all matrices over F_p in lexicographic order of vec(x),
/// restricted to a residue class of the two leading digits (for threading).
template <class R, class F>
void sweep_matrices(const R& ring, int n, int stride, int offset, F&& visit) {
    const auto p = ring.field_size();
    const int nn = n * n;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(nn), 0);
    Matrix<R> x(ring, n, n);
    for (std::uint64_t d0 = 0; d0 < p; ++d0) {
        for (std::uint64_t d1 = 0; d1 < p; ++d1) {
            if (static_cast<int>((d0 * p + d1) % static_cast<std::uint64_t>(stride)) != offset) continue;
            std::fill(digits.begin(), digits.end(), 0);
            digits[0] = d0;
            digits[1] = d1;
            while (true) {
                for (int i = 0; i < nn; ++i) x.a[static_cast<std::size_t>(i)] = digits[static_cast<std::size_t>(i)];
                if (!visit(x)) return;
                int pos = nn - 1;
                while (pos >= 2 && digits[static_cast<std::size_t>(pos)] + 1 == p) {
                    digits[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 2) break;
                ++digits[static_cast<std::size_t>(pos)];
            }
        }
    }
}

} // namespace detail

/// Extracts a certificate once an exhaustive sweep has saturated w_span with
/// dim(w_span) < dim(K): a functional annihilating w_span but not K.
template <class R>
std::optional<Certificate<R>> certificate_extract(const R& ring, const SpanAccumulator<R>& w_span,
                                                  const std::vector<Vec<R>>& kernel) {
    if (w_span.rank() >= static_cast<int>(kernel.size())) return std::nullopt;
    auto annihilator = null_space(ring, w_span.basis(), w_span.ambient_dim());
    for (const auto& lam : annihilator) {
        for (const auto& v : kernel) {
            if (!ring.is_zero(dot(ring, lam, v))) {
                Certificate<R> cert;
                cert.functional = lam;
                cert.witness_kernel_vector = v;
                return cert;
            }
        }
    }
    return std::nullopt;
}

/// Re-checks a certificate against `samples` random consistent fiber slices:
/// the functional must be constant across the fiber (evaluate to 0 on all
/// sampled differences) and nonzero on the witness kernel vector.
template <class R>
bool certificate_validate(const R& ring, const Certificate<R>& cert, const Matrix<R>& a,
                          long long samples, std::uint64_t seed) {
    const int n = a.rows;
    if (!in_jordan_kernel(ring, n, cert.witness_kernel_vector)) return false;
    if (ring.is_zero(dot(ring, cert.functional, cert.witness_kernel_vector))) return false;
    auto [bx, by] = base_pair(ring, a);
    auto base_sigma = sigma(ring, bx, by);
    std::mt19937_64 rng(seed);
    long long seen = 0;
    long long attempts = 0;
    const long long max_attempts = samples * 64 + 64;
    while (seen < samples && attempts < max_attempts) {
        ++attempts;
        auto x = random_matrix(ring, n, rng);
        auto slice = fiber_slice(ring, x, a);
        if (!slice) continue;
        ++seen;
        auto y = slice->y0;
        for (const auto& k : slice->kernel_dirs) {
            auto c = ring.random_element(rng);
            y = add(ring, y, scale(ring, c, k));
        }
        auto s = sigma(ring, x, y);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = ring.sub(s[i], base_sigma[i]);
        if (!ring.is_zero(dot(ring, cert.functional, s))) return false;
    }
    return true;
}

/// The decision procedure. Computes K = ker J once, accumulates the span
/// W_A of fiber differences per strategy, and compares dimensions:
/// A is Jordan product determined iff W_A = K.
template <class R>
DecisionReport<R> decide(const R& ring, const Matrix<R>& a, const Strategy<R>& strategy) {
    static_assert(R::is_field, "decide needs a field ring");
    if (!a.square()) throw SizeMismatch("decision point must be square");
    const int n = a.rows;
    if (n < 2) throw PreconditionFailed("decision point needs n >= 2");
    if (n > kMaxDecisionSize)
        throw PreconditionFailed("decision limited to n <= " + std::to_string(kMaxDecisionSize));

    auto t0 = std::chrono::steady_clock::now();
    DecisionReport<R> report;
    report.point = a;
    report.ring = ring.spec();
    report.dim_sym2 = sym_dim(n);

    auto kernel = kernel_of_jordan(ring, n);
    report.dim_kernel = static_cast<long>(kernel.size());

    SpanAccumulator<R> w_span(static_cast<int>(sym_dim(n)));
    auto [bx, by] = base_pair(ring, a);
    auto base_sigma = sigma(ring, bx, by);

    bool swept_exhaustively = false;

    if (std::holds_alternative<ExhaustiveStrategy>(strategy)) {
        const auto& st = std::get<ExhaustiveStrategy>(strategy);
        report.strategy = "exhaustive";
        report.early_exit = st.early_exit;
        report.threads = st.threads;
        if constexpr (!R::is_finite) {
            throw StrategyUnsupported("exhaustive sweep needs a finite prime field");
        } else {
            long long visited = 0;
            bool saturated = false;
            if (st.threads <= 1) {
                detail::sweep_matrices(ring, n, 1, 0, [&](const Matrix<R>& x) {
                    ++visited;
                    if (auto slice = fiber_slice(ring, x, a))
                        detail::insert_slice(ring, n, *slice, base_sigma, w_span);
                    if (st.early_exit && w_span.rank() == report.dim_kernel) {
                        saturated = true;
                        return false;
                    }
                    return true;
                });
            } else {
                // Partitioned full sweep: each worker accumulates locally and the
                // canonical rref bases merge to a partition-independent result.
                // Early exit is only effective single-threaded.
                std::vector<SpanAccumulator<R>> locals;
                std::vector<long long> counts(static_cast<std::size_t>(st.threads), 0);
                locals.reserve(static_cast<std::size_t>(st.threads));
                for (int w = 0; w < st.threads; ++w) locals.emplace_back(static_cast<int>(sym_dim(n)));
                std::vector<std::thread> pool;
                for (int w = 0; w < st.threads; ++w) {
                    pool.emplace_back([&, w] {
                        detail::sweep_matrices(ring, n, st.threads, w, [&](const Matrix<R>& x) {
                            ++counts[static_cast<std::size_t>(w)];
                            if (auto slice = fiber_slice(ring, x, a))
                                detail::insert_slice(ring, n, *slice, base_sigma, locals[static_cast<std::size_t>(w)]);
                            return true;
                        });
                    });
                }
                for (auto& t : pool) t.join();
                for (int w = 0; w < st.threads; ++w) {
                    w_span.merge(ring, locals[static_cast<std::size_t>(w)]);
                    visited += counts[static_cast<std::size_t>(w)];
                }
            }
            report.samples_used = visited;
            swept_exhaustively = !saturated;
        }
    } else if (std::holds_alternative<RandomStrategy>(strategy)) {
        const auto& st = std::get<RandomStrategy>(strategy);
        report.strategy = "random";
        report.seed = st.seed;
        report.max_samples = st.max_samples;
        std::mt19937_64 rng(st.seed);
        for (long long i = 0; i < st.max_samples; ++i) {
            ++report.samples_used;
            auto x = random_matrix(ring, n, rng);
            if (auto slice = fiber_slice(ring, x, a))
                detail::insert_slice(ring, n, *slice, base_sigma, w_span);
            if (w_span.rank() == report.dim_kernel) break;
        }
    } else {
        const auto& st = std::get<StructuredStrategy<R>>(strategy);
        report.strategy = "structured:" + st.name;
        for (const auto& [x, y] : st.witnesses) {
            ++report.samples_used;
            if (!equal(ring, jordan(ring, x, y), a))
                throw PreconditionFailed("structured witness pair is not in the fiber of the point");
            auto diff = sigma(ring, x, y);
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ring.sub(diff[i], base_sigma[i]);
            if (!in_jordan_kernel(ring, n, diff))
                throw std::logic_error("structured witness difference escaped ker J");
            w_span.insert(ring, std::move(diff));
            if (w_span.rank() == report.dim_kernel) break;
        }
    }

    report.dim_span = w_span.rank();
    if (report.dim_span == report.dim_kernel) {
        report.verdict = Verdict::Determined;
    } else if (swept_exhaustively) {
        report.verdict = Verdict::NotDetermined;
        report.certificate = certificate_extract(ring, w_span, kernel);
    } else {
        report.verdict = Verdict::Inconclusive;
    }

    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

} // namespace jordet
